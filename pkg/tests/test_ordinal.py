import random

import pytest
from hypothesis import given, strategies as st

from conftest import ordinals
from schreierkit.ordinal import (
    ONE,
    OMEGA,
    ZERO,
    Ordinal,
    OrdinalSyntaxError,
    add,
    cmp,
    eta_approx,
    format_ordinal,
    is_valid_split,
    lambda_approx,
    mul,
    omega_power,
    parse_ordinal,
    split,
    theta_approx,
)
from schreierkit.schreier import enumerate_family, is_member

P = parse_ordinal


def test_cmp_examples():
    assert cmp(ZERO, OMEGA) == -1
    assert cmp(P("w*2+1"), P("w*2+1")) == 0
    assert cmp(P("w^(w)"), P("w^3*5")) == 1


@pytest.mark.parametrize(
    "a, b, expected",
    [("1", "w", "w"), ("w", "1", "w + 1"), ("w*2 + 3", "w", "w*3"), ("w^2", "w^3", "w^(3)")],
)
def test_add_examples(a, b, expected):
    assert add(P(a), P(b)) == P(expected)


def test_mul_examples():
    assert mul(OMEGA, ZERO) == ZERO
    assert mul(P("w^w"), P("w*2+3")) == P("w^(w+1)*2 + w^(w)*3")
    assert mul(OMEGA, OMEGA) == P("w^2")
    assert mul(P("2"), OMEGA) == OMEGA
    assert mul(OMEGA, P("2")) == P("w*2")


def test_split_examples():
    assert split(P("w^2*2 + w*3"), 1, 0) == (P("w^2*2"), P("w*3"))
    assert split(P("w*3"), 0, 1) == (OMEGA, P("w*2"))
    assert split(P("w^w"), 0, 0) == (ZERO, P("w^w"))
    with pytest.raises(IndexError):
        split(P("w"), 3, 0)
    with pytest.raises(ValueError):
        split(P("w*2"), 0, 3)


def test_lambda_examples():
    for n in range(1, 8):
        assert lambda_approx(OMEGA, n) == P(str(n))
    assert lambda_approx(P("w^2"), 3) == P("w*3")
    assert lambda_approx(P("w^2*2"), 2) == P("w^2 + w*2")
    assert lambda_approx(P("w^w"), 4) == P("w^4")
    with pytest.raises(ValueError):
        lambda_approx(P("w+1"), 2)


def test_lambda_sequences_increase_and_stay_below():
    for text in ["w", "w*3", "w^2", "w^w", "w^(w+1) + w^2", "w^(w*2)"]:
        alpha = P(text)
        seq = [lambda_approx(alpha, n) for n in range(1, 12)]
        assert all(x < alpha for x in seq)
        assert all(x < y for x, y in zip(seq, seq[1:]))


@pytest.mark.parametrize("alpha", ["w", "w^2", "w^w"])
def test_lambda_hierarchy_is_nested(alpha):
    # S_lambda(alpha, n) is contained in S_lambda(alpha, n + 1) on a ground set
    ground = range(2, 10)
    alpha = P(alpha)
    for n in range(1, 5):
        lo, hi = lambda_approx(alpha, n), lambda_approx(alpha, n + 1)
        assert all(is_member(hi, A) for A in enumerate_family(lo, ground))


def test_eta_examples():
    for n in range(1, 10):
        assert eta_approx(OMEGA, OMEGA, n) == P(str(n))
        assert eta_approx(OMEGA, P("w*2"), n) == add(OMEGA, P(str(n)))
    assert theta_approx(ONE, 5) == P("5")
    with pytest.raises(ValueError):
        eta_approx(P("w^2"), OMEGA, 3)  # w^2 is not w^(w^xi)
    with pytest.raises(ValueError):
        eta_approx(OMEGA, P("w+1"), 3)


@pytest.mark.parametrize(
    "beta, gamma",
    [("w", "w"), ("w", "w*2"), ("w", "w^2 + w"), ("w^w", "w"), ("w^w", "w^3*2 + w"), ("w^w", "w^w")],
)
def test_eta_matches_lambda_of_product(beta, gamma):
    beta, gamma = P(beta), P(gamma)
    for n in range(1, 15):
        assert mul(beta, eta_approx(beta, gamma, n)) == lambda_approx(mul(beta, gamma), n)


def test_parse_examples():
    assert P("0") == ZERO
    assert P("w^(w)*1 + w*2 + 5") == add(add(omega_power(OMEGA), P("w*2")), P("5"))
    assert P("ω^ω") == P("w^(w)")
    assert format_ordinal(P("w^(w)*1 + w*2 + 5")) == "w^(w) + w*2 + 5"
    assert format_ordinal(P("3 + w + w")) == "w*2"


@pytest.mark.parametrize("bad", ["", "w+", "x", "w^", "(w)", "w**2", "w^(w"])
def test_parse_rejects(bad):
    with pytest.raises(OrdinalSyntaxError):
        P(bad)


def test_syntax_error_position():
    with pytest.raises(OrdinalSyntaxError) as info:
        P("w + x")
    assert info.value.position == 4


def test_valid_split():
    assert is_valid_split(P("w^2"), P("w"))
    assert is_valid_split(P("w"), P("w"))
    assert not is_valid_split(P("1"), P("w"))
    assert is_valid_split(ZERO, P("w"))


@given(ordinals())
def test_format_round_trip(a):
    assert P(format_ordinal(a)) == a


@given(ordinals(), ordinals(), ordinals())
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals(), ordinals())
def test_mul_associative_and_left_distributive(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@given(ordinals(), ordinals())
def test_order_is_total_and_monotone(a, b):
    assert cmp(a, b) == -cmp(b, a)
    assert (cmp(a, b) == 0) == (a == b)
    # right addition is weakly increasing, left addition strictly increasing
    assert not add(a, b) < a
    if not b.is_zero:
        assert a < add(a, b)


@given(ordinals(), st.integers(1, 30))
def test_lambda_below_limit(a, n):
    if a.is_limit:
        assert lambda_approx(a, n) < a
        assert lambda_approx(a, n) < lambda_approx(a, n + 1)


@given(ordinals())
def test_successor_predecessor(a):
    assert add(a, ONE).predecessor() == a
    assert add(a, ONE).is_successor


def _random_ordinal(rng, depth=2):
    total = ZERO
    for _ in range(rng.randint(0, 3)):
        exp = _random_ordinal(rng, depth - 1) if depth and rng.random() < 0.5 else P(str(rng.randint(0, 3)))
        total = add(total, omega_power(exp, rng.randint(1, 4)))
    return total


def test_algebra_laws_on_ten_thousand_triples():
    rng = random.Random(11)
    for _ in range(10_000):
        a, b, c = (_random_ordinal(rng) for _ in range(3))
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert cmp(a, b) == -cmp(b, a)
        if cmp(a, b) <= 0 and cmp(b, c) <= 0:
            assert cmp(a, c) <= 0
