import os
import subprocess
import sys
from pathlib import Path

from hypothesis import settings, strategies as st

from schreierkit.ordinal import Ordinal, ONE, OMEGA, ZERO, add, mul, omega_power, parse_ordinal

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"

SMALL_ALPHAS = ["0", "1", "2", "3", "w", "w + 1", "w*2", "w^2"]


def ords(*texts):
    return [parse_ordinal(t) for t in texts]


@st.composite
def ordinals(draw, max_terms=3, depth=1):
    """Ordinals below w^(w*2) whose exponents are themselves small ordinals."""
    if depth == 0:
        return Ordinal(()) if draw(st.booleans()) else parse_ordinal(str(draw(st.integers(1, 4))))
    exps = draw(st.lists(ordinals(max_terms=2, depth=depth - 1), min_size=0, max_size=max_terms))
    total = ZERO
    for e in exps:
        total = add(total, omega_power(e, draw(st.integers(1, 3))))
    return total


@st.composite
def finsets(draw, lo=2, hi=14, max_size=8):
    items = draw(st.sets(st.integers(lo, hi), max_size=max_size))
    return tuple(sorted(items))


def run_cli(*args):
    env = dict(os.environ)
    return subprocess.run(
        [sys.executable, "-m", "schreierkit.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
