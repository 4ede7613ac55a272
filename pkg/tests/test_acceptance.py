"""Acceptance criteria, each checked exactly and reported as one PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for the report alone, or
through pytest, where the lines appear in the terminal summary.
"""

import random
from fractions import Fraction as F
from itertools import product
from math import lcm
from operator import le

import pytest

from schreierkit.analysis import (
    InfeasibleFamily,
    beta_analysis,
    chain_failures,
    check_special_family,
    check_tree,
    demote_family,
    minima_maximality_failures,
    outside_mass,
    partition_sides,
    special_convex_family,
)
from schreierkit.averages import prime_shift_gap, z_vector, zeta
from schreierkit.embeddings import audit
from schreierkit.metrics import counterexample_specs, d1, dinf, stability_table
from schreierkit.ordinal import (
    OMEGA,
    add,
    as_ordinal,
    eta_approx,
    format_ordinal,
    lambda_approx,
    mul,
    omega_power,
    parse_ordinal,
)
from schreierkit.schreier import enumerate_family, greedy_blocks, is_prefix, maximal_sets, powerset
from schreierkit.spaces import NORMS, SparseVec, SpreadCodec, biorth_tree

ALPHAS = ["1", "2", "3", "w", "w+1", "w*2", "w^2"]
GROUND12 = range(2, 13)
RESULTS: dict[int, str] = {}


def _report(number, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def _vacuous(counts):
    empty = [a for a, n in counts.items() if n == 0]
    return f"; no maximal sets inside the ground for alpha in {{{', '.join(empty)}}}" if empty else ""


def criterion_1():
    bad, counts = [], {}
    for alpha in ALPHAS:
        maxes = maximal_sets(alpha, GROUND12)
        counts[alpha] = len(maxes)
        bad += [(alpha, B) for B in maxes if sum(z_vector(alpha, B).values()) != 1]
    total = sum(counts.values())
    return _report(1, not bad, f"{total} maximal sets, {len(bad)} with total mass != 1{_vacuous(counts)}")


def criterion_2():
    bad, checked, counts = [], 0, {}
    for alpha in ALPHAS:
        maxes = maximal_sets(alpha, GROUND12)
        counts[alpha] = len(maxes)
        vectors = {B: z_vector(alpha, B) for B in maxes}
        for A in enumerate_family(alpha, GROUND12):
            exts = [B for B in maxes if is_prefix(A, B) and B != A]
            if len(exts) < 2:
                continue
            checked += 1
            for k in range(1, len(A) + 1):
                if len({vectors[B][A[k - 1]] for B in exts}) != 1:
                    bad.append((alpha, A))
                    break
    return _report(2, not bad, f"{checked} sets with several maximal extensions, {len(bad)} disagreements{_vacuous(counts)}")


def _product_failures(gamma, g1, g2, D):
    blocks = greedy_blocks(g1, D)
    minima = tuple(b[0] for b in blocks)
    return zeta(gamma, D) != zeta(g2, minima) * zeta(g1, blocks[-1])


def criterion_3():
    ground = range(2, 11)
    maximal_checked = prefix_checked = 0
    bad = []
    for gamma, g1, g2 in (("w+1", "w", "1"), ("w*2", "w", "w")):
        for B in maximal_sets(gamma, ground):
            for k in range(1, len(B) + 1):
                maximal_checked += 1
                if _product_failures(gamma, g1, g2, B[:k]):
                    bad.append((gamma, B[:k]))
        # every member is a prefix of a maximal set with the same leading blocks
        for D in enumerate_family(gamma, ground):
            if D:
                prefix_checked += 1
                if _product_failures(gamma, g1, g2, D):
                    bad.append((gamma, D))
    return _report(
        3,
        not bad,
        f"{maximal_checked} prefixes of maximal sets and {prefix_checked} members checked, {len(bad)} failures"
        + ("; no maximal sets inside {2..10}, members checked as prefixes" if not maximal_checked else ""),
    )


def _as_int_matrix(M):
    den = 1
    for row in M:
        for q in row:
            den = lcm(den, q.denominator)
    return [[int(q * den) for q in row] for row in M]


def criterion_4():
    ground = range(2, 10)
    sandwich_bad, triangle_bad, triples = 0, 0, 0
    for alpha in ALPHAS:
        members = enumerate_family(alpha, ground)
        D1 = [[d1(alpha, A, B) for B in members] for A in members]
        for i, A in enumerate(members):
            for j, B in enumerate(members):
                if dinf(alpha, A, B) > D1[i][j]:
                    sandwich_bad += 1
        M = _as_int_matrix(D1)
        n = len(members)
        triples += n**3
        for i in range(n):
            row_i = M[i]
            for j in range(n):
                mij, row_j = M[i][j], M[j]
                if not all(map(le, row_i, (mij + x for x in row_j))):
                    triangle_bad += 1
    return _report(
        4,
        not sandwich_bad and not triangle_bad,
        f"{triples} triples on {{2..9}}; {sandwich_bad} pairs with dinf > d1, {triangle_bad} triangle failures",
    )


def criterion_5():
    bad, pairs = [], 0
    for alpha in ALPHAS:
        report = audit(alpha, range(2, 10), "ell1")
        pairs += report.pairs
        if report.pairs and not (report.upper_ratio == report.min_ratio_d1 == 1):
            bad.append(alpha)
    return _report(5, not bad, f"{pairs} pairs, l1 distance equals d1 exactly; failing alpha: {bad or 'none'}")


def criterion_6():
    bad, lows = [], []
    for alpha in ["1", "2", "w"]:
        report = audit(alpha, range(2, 10), "summing")
        lows.append(f"{alpha}: {report.lower_ratio}")
        if report.lower_ratio < F(1, 8) or report.upper_ratio > 1:
            bad.append(alpha)
    return _report(6, not bad, f"empirical lower ratios {', '.join(lows)}; bounds 1/8 and 1")


def criterion_7():
    a_spec, b_spec = counterexample_specs()
    stable = stability_table(1, a_spec, b_spec, 6, "d1")
    unstable = stability_table(1, a_spec, b_spec, 6, "dinf")
    ok = (
        stable.settled
        and stable.row_iterated == stable.col_iterated
        and unstable.settled
        and unstable.row_iterated <= F(2, 3)
        and unstable.col_iterated >= 1
    )
    return _report(
        7,
        ok,
        f"d1 limits {stable.row_iterated}, {stable.col_iterated}; "
        f"dinf limits {unstable.row_iterated}, {unstable.col_iterated}",
    )


def _unit_vector(rng, kind):
    while True:
        v = SparseVec.from_dict({i: F(rng.randint(-9, 9), rng.randint(1, 9)) for i in range(1, 6)})
        if v:
            return v * (1 / v.norm(kind))


def criterion_8():
    rng = random.Random(20261016)
    bad, trials = [], 0
    for alpha in ["1", "2", "w"]:
        for B in maximal_sets(alpha, range(2, 11)):
            bound = F(2, B[0])
            for kind in NORMS:
                for _ in range(100):
                    vectors = {B[:k]: _unit_vector(rng, kind) for k in range(1, len(B) + 1)}
                    trials += 1
                    if prime_shift_gap(alpha, B, vectors, lambda v: v.norm(kind)) > bound:
                        bad.append((alpha, B, kind))
    return _report(8, not bad, f"{trials} random assignments, {len(bad)} above 2/min B")


def criterion_9():
    failures, counts = 0, []
    for gamma, lo in product([1, 2, 3], [2, 3]):
        alpha = "w" if gamma == 1 else f"w*{gamma}"
        grounds = range(lo, lo + 11)
        Bs = [B for B in enumerate_family(alpha, grounds) if B and B[0] == lo]
        for B in Bs:
            root = beta_analysis("w", gamma, B, truncated=True)
            failures += len(check_tree(root, "w"))
            failures += len(minima_maximality_failures("w", gamma, B, truncated=True))
            failures += len(chain_failures("w", gamma, B, truncated=True))
            failures += outside_mass("w", gamma, B, truncated=True) >= F(2, B[0])
            if gamma >= 2:
                left, right = partition_sides("w", gamma, B, truncated=True)
                failures += left != right
        counts.append(f"gamma {gamma} min {lo}: {len(Bs)}")
    return _report(9, not failures, f"{failures} failures over truncated B ({'; '.join(counts)})")


def criterion_10():
    failures, families, demoted = 0, 0, 0
    for B in enumerate_family("w*2", range(2, 13)):
        if not B or B[0] != 2:
            continue
        for alpha0 in (0, 1):
            try:
                fam = special_convex_family("w", 2, B, alpha0, truncated=True)
            except InfeasibleFamily:
                failures += 1
                continue
            families += 1
            failures += len(check_special_family(fam))
            blocks = greedy_blocks("w", B)
            if alpha0 == 1 and fam.coeffs:
                for j in range(1, len(blocks)):
                    demoted += 1
                    failures += len(check_special_family(demote_family(fam, j)))
    return _report(10, not failures, f"{families} families and {demoted} demotions checked, {failures} failures")


def criterion_11():
    ground = range(2, 8)
    codec = SpreadCodec(ground)
    subsets = [A for A in powerset(ground) if A]
    trees = {A: biorth_tree(A, codec) for A in subsets}
    bad = sum(
        trees[A][1].dot(trees[B][0]) != (1 if is_prefix(A, B) else 0) for A in subsets for B in subsets
    )
    return _report(11, not bad, f"{len(subsets) ** 2} pairs on {{2..7}}, {bad} mismatches")


def _limit_gammas(beta):
    """Limit ordinals ``<= beta`` with at most three CNF terms, exponents and
    coefficients below 4 when ``beta = w^w``."""
    if beta == OMEGA:
        return [OMEGA]
    out = [beta]
    for size in (1, 2, 3):
        for exps in product(range(3, -1, -1), repeat=size):
            if list(exps) != sorted(set(exps), reverse=True) or exps[-1] == 0:
                continue
            for coeffs in product(range(1, 4), repeat=size):
                g = as_ordinal(0)
                for e, c in zip(exps, coeffs):
                    g = add(g, omega_power(e, c))
                out.append(g)
    return out


def criterion_12():
    bad, checked = [], 0
    for text in ("w", "w^w"):
        beta = parse_ordinal(text)
        for gamma in _limit_gammas(beta):
            for n in range(1, 21):
                checked += 1
                if mul(beta, eta_approx(beta, gamma, n)) != lambda_approx(mul(beta, gamma), n):
                    bad.append((text, format_ordinal(gamma), n))
    return _report(12, not bad, f"{checked} (beta, gamma, n) cases, {len(bad)} mismatches")


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 13)])
def test_acceptance(check):
    assert check(), RESULTS.get(CRITERIA.index(check) + 1)


if __name__ == "__main__":
    for check in CRITERIA:
        check()
