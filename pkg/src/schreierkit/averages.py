"""Repeated averages on Schreier sets.

For ``B`` maximal in ``S_alpha`` the repeated average ``z_(alpha, B)`` is a
probability vector supported on ``B``: at ``alpha = 0`` it is the unit
vector of the single element, at a successor it is the uniform average of
the vectors of its ``min B`` blocks, and at a limit it is the vector for the
approximating ordinal ``lambda(alpha, min B)``.  ``zeta(alpha, D)`` is the
coefficient at ``max D`` and does not depend on how ``D`` is extended.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ordinal import Ordinal, OrdinalLike, as_ordinal, lambda_approx
from .schreier import (
    FinSet,
    _greedy,
    _maximal,
    _member,
    finset,
    format_finset,
)

__all__ = [
    "zeta",
    "zeta_profile",
    "z_vector",
    "mass",
    "s1_decomposition",
    "l1",
    "SmallnessReport",
    "smallness_check",
    "smallness_brute",
    "prime_shift_gap",
    "frac_str",
]


def frac_str(q: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _require_member(alpha: Ordinal, A: FinSet) -> None:
    if not _member(alpha, A):
        raise ValueError(f"{format_finset(A)} is not in S_{alpha}")


@functools.lru_cache(maxsize=None)
def _zeta(alpha: Ordinal, A: FinSet) -> Fraction:
    if not A:
        return Fraction(0)
    if alpha.is_zero:
        return Fraction(1)
    if alpha.is_limit:
        return _zeta(lambda_approx(alpha, A[0]), A)
    last = _greedy(alpha.predecessor(), A)[-1]
    return _zeta(alpha.predecessor(), last) / A[0]


def zeta(alpha: OrdinalLike, A: Sequence[int]) -> Fraction:
    """Coefficient at ``max A`` of the repeated average of any maximal
    extension of ``A``; zero for the empty set."""
    alpha, A = as_ordinal(alpha), finset(A)
    _require_member(alpha, A)
    return _zeta(alpha, A)


def zeta_profile(alpha: OrdinalLike, A: Sequence[int]) -> dict[int, Fraction]:
    """``{a: zeta(alpha, A ∩ [1, a])}`` for every ``a`` in ``A``."""
    alpha, A = as_ordinal(alpha), finset(A)
    _require_member(alpha, A)
    return {A[k - 1]: _zeta(alpha, A[:k]) for k in range(1, len(A) + 1)}


def mass(alpha: OrdinalLike, A: Sequence[int]) -> Fraction:
    """Total of the prefix coefficients of ``A``; equals 1 iff ``A`` is maximal."""
    return sum(zeta_profile(alpha, A).values(), Fraction(0))


def _average(alpha: Ordinal, B: FinSet) -> dict[int, Fraction]:
    if alpha.is_zero:
        return {B[0]: Fraction(1)}
    if alpha.is_limit:
        return _average(lambda_approx(alpha, B[0]), B)
    gamma = alpha.predecessor()
    blocks = _greedy(gamma, B)
    out: dict[int, Fraction] = {}
    for block in blocks:
        for a, w in _average(gamma, block).items():
            out[a] = w / len(blocks)
    return out


def z_vector(alpha: OrdinalLike, B: Sequence[int]) -> dict[int, Fraction]:
    """Repeated-average probability vector of a maximal set, built top-down
    by averaging the vectors of its blocks."""
    alpha, B = as_ordinal(alpha), finset(B)
    _require_member(alpha, B)
    if not _maximal(alpha, B):
        raise ValueError(f"{format_finset(B)} is not maximal in S_{alpha}")
    return _average(alpha, B)


def s1_decomposition(A: Sequence[int]) -> tuple[list[FinSet], int]:
    """Optimal ``S_1`` blocks of ``A`` and ``l1(A) = min(last) - #last``."""
    A = finset(A)
    if not A:
        return [], 0
    one = as_ordinal(1)
    blocks = list(_greedy(one, A))
    last = blocks[-1]
    return blocks, last[0] - len(last)


def l1(A: Sequence[int]) -> int:
    return s1_decomposition(A)[1]


@dataclass(frozen=True)
class SmallnessReport:
    alpha: Ordinal
    gamma: Ordinal
    ground: FinSet
    epsilon: Fraction
    value: Fraction
    witness_B: FinSet
    witness_A: FinSet
    holds_on_ground: bool

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "gamma": str(self.gamma),
            "ground": list(self.ground),
            "epsilon": frac_str(self.epsilon),
            "max_mass": frac_str(self.value),
            "witness_B": list(self.witness_B),
            "witness_A": list(self.witness_A),
            "holds_on_ground": self.holds_on_ground,
        }


def _signature_step(sig: tuple, x: int) -> tuple:
    minima, last = sig
    if minima and last < minima[-1]:
        return minima, last + 1
    return minima + (x,), 1


def _representative(sig: tuple) -> FinSet:
    """Smallest set with the given optimal ``S_1`` block minima and last length."""
    minima, last = sig
    out: list[int] = []
    for k, m in enumerate(minima):
        size = last if k == len(minima) - 1 else m
        out.extend(range(m, m + size))
    return tuple(out)


def smallness_check(
    alpha: OrdinalLike, gamma: OrdinalLike, ground: Sequence[int], epsilon: Fraction | int | str
) -> SmallnessReport:
    """Largest mass ``sum_(a in A) z_(alpha, B)(a)`` over members ``B`` of
    ``S_alpha`` and ``A`` in ``S_gamma``, both inside ``ground``.

    Adding elements to ``B`` never changes the weights already present, so
    the maximum over members equals the maximum over sets that are maximal
    within the ground.  Membership and coefficients only depend on the
    minima of the optimal ``S_1`` blocks and the length of the last block,
    so the search is a dynamic program over those signatures.
    """
    alpha, gamma, ground = as_ordinal(alpha), as_ordinal(gamma), finset(ground)
    epsilon = Fraction(epsilon)
    if not gamma < alpha:
        raise ValueError(f"need gamma < alpha, got {gamma} >= {alpha}")
    empty = ((), 0)

    @functools.lru_cache(maxsize=None)
    def best(i: int, bsig: tuple, asig: tuple) -> tuple[Fraction, int]:
        # returns (value, choice) with choice 0 skip, 1 into B, 2 into A and B
        if i == len(ground):
            return Fraction(0), 0
        x = ground[i]
        value, choice = best(i + 1, bsig, asig)[0], 0
        b2 = _signature_step(bsig, x)
        rep = _representative(b2)
        if _member(alpha, rep):
            v = best(i + 1, b2, asig)[0]
            if v > value:
                value, choice = v, 1
            a2 = _signature_step(asig, x)
            if _member(gamma, _representative(a2)):
                v = best(i + 1, b2, a2)[0] + _zeta(alpha, rep)
                if v > value:
                    value, choice = v, 2
        return value, choice

    value = best(0, empty, empty)[0]
    B: list[int] = []
    A: list[int] = []
    bsig = asig = empty
    for i, x in enumerate(ground):
        choice = best(i, bsig, asig)[1]
        if choice:
            B.append(x)
            bsig = _signature_step(bsig, x)
        if choice == 2:
            A.append(x)
            asig = _signature_step(asig, x)
    best.cache_clear()
    return SmallnessReport(alpha, gamma, ground, epsilon, value, tuple(B), tuple(A), value < epsilon)


def smallness_brute(alpha: OrdinalLike, gamma: OrdinalLike, ground: Sequence[int]) -> Fraction:
    """Exhaustive version of :func:`smallness_check` (value only), for small grounds."""
    alpha, gamma, ground = as_ordinal(alpha), as_ordinal(gamma), finset(ground)
    top = Fraction(0)

    def walk(i: int, B: FinSet, A: FinSet, got: Fraction) -> None:
        nonlocal top
        top = max(top, got)
        for j in range(i, len(ground)):
            B2 = B + (ground[j],)
            if not _member(alpha, B2):
                continue
            A2 = A + (ground[j],)
            if _member(gamma, A2):
                walk(j + 1, B2, A2, got + _zeta(alpha, B2))
            walk(j + 1, B2, A, got)

    walk(0, (), (), Fraction(0))
    return top


def prime_shift_gap(alpha: OrdinalLike, B: Sequence[int], vectors: dict[FinSet, object], norm):
    """``norm(sum zeta(A) x_A - sum zeta(A') x_A)`` over prefixes ``A`` of ``B``.

    ``A'`` drops the last element of ``A``.  ``vectors`` maps each nonempty
    prefix to a vector supporting ``+``, ``-`` and scalar ``*``; ``norm`` is
    applied to the difference.
    """
    alpha, B = as_ordinal(alpha), finset(B)
    _require_member(alpha, B)
    total = None
    for k in range(1, len(B) + 1):
        A = B[:k]
        c = _zeta(alpha, A) - _zeta(alpha, A[:-1])
        term = vectors[A] * c
        total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return norm(total)
