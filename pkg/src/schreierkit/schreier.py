"""Schreier families, fine Schreier families and explicit finite families.

Finite subsets of the positive integers are plain ``tuple[int, ...]`` values
kept in increasing order (see :func:`finset`).  Membership in ``S_alpha`` is
decided by the recursion

* ``S_0``: sets with at most one element,
* ``S_(g+1)``: unions of at most ``min A`` successive ``S_g`` blocks,
* limit ``alpha``: ``A`` lies in ``S_lambda(alpha, min A)``,

with the fundamental sequences of :mod:`schreierkit.ordinal`.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .ordinal import (
    Ordinal,
    OrdinalLike,
    add,
    as_ordinal,
    beta_log,
    eta_approx,
    is_valid_split,
    lambda_approx,
    omega_power,
)

__all__ = [
    "FinSet",
    "FamilySnapshot",
    "finset",
    "parse_finset",
    "format_finset",
    "enum_key",
    "is_prefix",
    "prefixes",
    "is_member",
    "greedy_blocks",
    "is_maximal",
    "enumerate_family",
    "maximal_sets",
    "fine_is_member",
    "fine_is_maximal",
    "enumerate_fine",
    "join",
    "snapshot",
    "derivative",
    "spread_onto",
    "decomposition_check",
    "inclusion_threshold",
    "brute_member",
    "powerset",
]

FinSet = tuple  # tuple[int, ...] in strictly increasing order


def finset(items: Iterable[int]) -> FinSet:
    """Validate and return ``items`` as a strictly increasing tuple."""
    out = tuple(items)
    for x in out:
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise ValueError(f"elements must be positive integers, got {x!r}")
    if any(a >= b for a, b in zip(out, out[1:])):
        raise ValueError(f"elements must be strictly increasing: {out}")
    return out


_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


def parse_finset(text: str) -> FinSet:
    """Parse ``{2,3,5}``; ``{a..b}`` expands to the integers ``a..b``."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"set literal must be braced: {text!r}")
    body = body[1:-1]
    if not body.strip():
        return ()
    items: list[int] = []
    for chunk in body.split(","):
        m = _RANGE.match(chunk)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ValueError(f"empty range {chunk.strip()!r}")
            items.extend(range(lo, hi + 1))
        else:
            try:
                items.append(int(chunk))
            except ValueError:
                raise ValueError(f"bad set element {chunk.strip()!r}") from None
    return finset(items)


def format_finset(A: Sequence[int]) -> str:
    return "{" + ",".join(map(str, A)) + "}"


def enum_key(A: FinSet) -> tuple:
    """Sort key of the consistent enumeration: by max, then lexicographic."""
    return (A[-1] if A else 0, A)


def is_prefix(A: FinSet, B: FinSet) -> bool:
    """``A`` is an initial segment of ``B`` (``A`` may equal ``B``)."""
    return len(A) <= len(B) and B[: len(A)] == A


def prefixes(A: FinSet, *, empty: bool = False) -> Iterator[FinSet]:
    """Initial segments of ``A`` in increasing length, ``A`` included."""
    for k in range(0 if empty else 1, len(A) + 1):
        yield A[:k]


# -- Schreier families -------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _member(alpha: Ordinal, A: FinSet) -> bool:
    if len(A) <= 1:
        return True
    if alpha.is_zero:
        return False
    if len(A) <= A[0]:
        return True  # S_1 lies inside every S_alpha with alpha >= 1
    head, unit = _last_unit(alpha)
    if not head.is_zero:
        # S_(head + w^xi) = S_(w^xi)[S_head]; greedy blocks have the most spread minima
        return _member(unit, tuple(b[0] for b in _greedy(head, A)))
    if alpha.is_limit:
        return _member(lambda_approx(alpha, A[0]), A)
    return len(A) <= A[0]


def _last_unit(alpha: Ordinal) -> tuple[Ordinal, Ordinal]:
    """Split ``alpha = head + w^xi`` at its last unit."""
    exp, coef = alpha.terms[-1]
    rest = alpha.terms[:-1] + (((exp, coef - 1),) if coef > 1 else ())
    return Ordinal(rest), omega_power(exp)


@functools.lru_cache(maxsize=None)
def _greedy(gamma: Ordinal, A: FinSet) -> tuple[FinSet, ...]:
    blocks = []
    i = 0
    while i < len(A):
        j = i + 1
        while j < len(A) and _member(gamma, A[i : j + 1]):
            j += 1
        blocks.append(A[i:j])
        i = j
    return tuple(blocks)


def is_member(alpha: OrdinalLike, A: Sequence[int]) -> bool:
    """True iff ``A`` belongs to ``S_alpha``."""
    return _member(as_ordinal(alpha), finset(A))


def greedy_blocks(gamma: OrdinalLike, A: Sequence[int]) -> list[FinSet]:
    """Split ``A`` into successive blocks, each the longest prefix in ``S_gamma``.

    Every block but the last is maximal in ``S_gamma``, and no decomposition
    of ``A`` into ``S_gamma`` blocks uses fewer pieces.
    """
    return list(_greedy(as_ordinal(gamma), finset(A)))


@functools.lru_cache(maxsize=None)
def _maximal(alpha: Ordinal, A: FinSet) -> bool:
    if not A:
        return False
    if alpha.is_zero:
        return len(A) == 1
    head, unit = _last_unit(alpha)
    if not head.is_zero:
        blocks = _greedy(head, A)
        return _maximal(head, blocks[-1]) and _maximal(unit, tuple(b[0] for b in blocks))
    if alpha.is_limit:
        return _maximal(lambda_approx(alpha, A[0]), A)
    return len(A) == A[0]


def is_maximal(alpha: OrdinalLike, A: Sequence[int]) -> bool:
    """True iff ``A`` is a member of ``S_alpha`` with no proper extension in it."""
    alpha, A = as_ordinal(alpha), finset(A)
    if not _member(alpha, A):
        raise ValueError(f"{format_finset(A)} is not in S_{alpha}")
    return _maximal(alpha, A)


def _grow(test, ground: FinSet) -> list[FinSet]:
    """All subsets of ``ground`` accepted by a prefix-closed predicate."""
    found = [()]
    stack = [((), 0)]
    while stack:
        A, start = stack.pop()
        for i in range(start, len(ground)):
            B = A + (ground[i],)
            if test(B):
                found.append(B)
                stack.append((B, i + 1))
    found.sort(key=enum_key)
    return found


def enumerate_family(alpha: OrdinalLike, ground: Sequence[int]) -> list[FinSet]:
    """Members of ``S_alpha`` drawn from ``ground``, in enumeration order."""
    alpha = as_ordinal(alpha)
    return _grow(lambda B: _member(alpha, B), finset(ground))


def maximal_sets(alpha: OrdinalLike, ground: Sequence[int]) -> list[FinSet]:
    """Members of ``MAX(S_alpha)`` drawn from ``ground``."""
    alpha = as_ordinal(alpha)
    return [A for A in enumerate_family(alpha, ground) if _maximal(alpha, A)]


# -- fine Schreier families ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def _fine(beta: Ordinal, gamma: Ordinal, A: FinSet) -> bool:
    if not A:
        return True
    if gamma.is_zero:
        return False
    if gamma.is_successor:
        return _fine(beta, gamma.predecessor(), A[1:])
    return _fine(beta, eta_approx(beta, gamma, A[0]), A)


def _check_fine_index(beta: Ordinal, gamma: Ordinal) -> None:
    beta_log(beta)
    if beta < gamma:
        raise ValueError(f"fine families need gamma <= beta, got {gamma} > {beta}")


def fine_is_member(beta: OrdinalLike, gamma: OrdinalLike, A: Sequence[int]) -> bool:
    """Membership in the fine Schreier family ``F_(beta, gamma)``."""
    beta, gamma = as_ordinal(beta), as_ordinal(gamma)
    _check_fine_index(beta, gamma)
    return _fine(beta, gamma, finset(A))


def fine_is_maximal(beta: OrdinalLike, gamma: OrdinalLike, A: Sequence[int]) -> bool:
    """Maximality in ``F_(beta, gamma)``; ``A`` must be a member.

    The family is spreading, so ``A`` is maximal exactly when appending
    ``max A + 1`` leaves it.
    """
    beta, gamma, A = as_ordinal(beta), as_ordinal(gamma), finset(A)
    _check_fine_index(beta, gamma)
    if not _fine(beta, gamma, A):
        raise ValueError(f"{format_finset(A)} is not in F_({beta}, {gamma})")
    nxt = (A[-1] if A else 0) + 1
    return not _fine(beta, gamma, A + (nxt,))


def enumerate_fine(beta: OrdinalLike, gamma: OrdinalLike, ground: Sequence[int]) -> list[FinSet]:
    beta, gamma = as_ordinal(beta), as_ordinal(gamma)
    _check_fine_index(beta, gamma)
    return _grow(lambda B: _fine(beta, gamma, B), finset(ground))


def join(first: Iterable[FinSet], second: Iterable[FinSet]) -> list[FinSet]:
    """``{A + B : A in first, B in second, max A < min B}``, deduplicated."""
    second = list(second)
    out = set()
    for A in first:
        top = A[-1] if A else 0
        for B in second:
            if not B or B[0] > top:
                out.add(A + B)
    return sorted(out, key=enum_key)


# -- explicit finite families ------------------------------------------------


@dataclass(frozen=True)
class FamilySnapshot:
    """A finite family of subsets of ``ground``, closed under initial segments."""

    ground: FinSet
    members: tuple[FinSet, ...]

    def __post_init__(self) -> None:
        ground = finset(self.ground)
        members = sorted({finset(m) for m in self.members}, key=enum_key)
        allowed = set(ground)
        present = set(members)
        for m in members:
            if not allowed.issuperset(m):
                raise ValueError(f"{format_finset(m)} is not inside the ground set")
            if m and m[:-1] not in present:
                raise ValueError(f"{format_finset(m)} is present but {format_finset(m[:-1])} is not")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", tuple(members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, A: object) -> bool:
        return A in set(self.members)

    def to_json(self) -> list[list[int]]:
        return [list(m) for m in self.members]


def snapshot(alpha: OrdinalLike, ground: Sequence[int]) -> FamilySnapshot:
    ground = finset(ground)
    return FamilySnapshot(ground, tuple(enumerate_family(alpha, ground)))


def derivative(F: FamilySnapshot, alpha: OrdinalLike | None = None) -> FamilySnapshot:
    """Drop the members that no other member of ``F`` extends.

    On restrictions of spreading families this stands in for removing the
    isolated points; it is a finite proxy, not a transfinite derivative.
    Given ``alpha``, ``F`` is read as a restriction of ``S_alpha`` and the
    members maximal in ``S_alpha`` are dropped instead, which is the exact
    first derivative of ``S_alpha`` restricted to the ground.
    """
    if alpha is not None:
        alpha = as_ordinal(alpha)
        return FamilySnapshot(F.ground, tuple(m for m in F.members if not _maximal(alpha, m)))
    extended = {m[:-1] for m in F.members if m}
    return FamilySnapshot(F.ground, tuple(m for m in F.members if m in extended))


def spread_onto(F: FamilySnapshot, N: Sequence[int]) -> FamilySnapshot:
    """Relabel every member ``A`` of ``F`` as ``{n_j : j in A}`` (1-based)."""
    N = finset(N)
    top = max((m[-1] for m in F.members if m), default=0)
    if top > len(N):
        raise ValueError(f"spread target has {len(N)} elements, need {top}")
    return FamilySnapshot(N, tuple(tuple(N[j - 1] for j in m) for m in F.members))


# -- decompositions and inclusions ---------------------------------------------


def decomposition_check(gamma1: OrdinalLike, gamma2: OrdinalLike, A: Sequence[int]) -> bool:
    """Search for ``A = B_1 u ... u B_k`` with ``B_1 < ... < B_k`` in ``S_gamma1``
    and ``{min B_i}`` in ``S_gamma2``.

    Every composition of ``A`` into consecutive blocks is tried (pruning on
    heredity of the minima set), so this does not rely on greedy choices.
    """
    g1, g2, A = as_ordinal(gamma1), as_ordinal(gamma2), finset(A)
    if not is_valid_split(g1, g2):
        raise ValueError(f"({g1}, {g2}) is not a valid split of {add(g1, g2)}")
    if not A:
        return True

    def search(start: int, minima: FinSet) -> bool:
        if start == len(A):
            return True
        for stop in range(start + 1, len(A) + 1):
            if not _member(g1, A[start:stop]):
                break
            nxt = minima + (A[start],)
            if _member(g2, nxt) and search(stop, nxt):
                return True
        return False

    return search(0, ())


def inclusion_threshold(
    alpha: OrdinalLike, beta: OrdinalLike, ground: Sequence[int]
) -> int | None:
    """Least ``n`` in ``ground`` with every member of ``S_alpha`` inside
    ``ground ∩ [n, oo)`` also in ``S_beta``; ``None`` if there is none.

    This only reflects the given ground set, not all of the naturals.
    """
    alpha, beta, ground = as_ordinal(alpha), as_ordinal(beta), finset(ground)
    for i, n in enumerate(ground):
        tail = ground[i:]
        if all(_member(beta, A) for A in enumerate_family(alpha, tail)):
            return n
    return None


def brute_member(alpha: OrdinalLike, A: Sequence[int]) -> bool:
    """Membership oracle that tries every block decomposition at successors."""
    return _brute(as_ordinal(alpha), finset(A))


@functools.lru_cache(maxsize=None)
def _brute(alpha: Ordinal, A: FinSet) -> bool:
    if len(A) <= 1:
        return True
    if alpha.is_zero:
        return False
    if alpha.is_limit:
        return _brute(lambda_approx(alpha, A[0]), A)
    gamma = alpha.predecessor()
    n = len(A)
    for k in range(1, min(A[0], n) + 1):
        for cuts in combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            if all(_brute(gamma, A[a:b]) for a, b in zip(bounds, bounds[1:])):
                return True
    return False


def powerset(ground: Sequence[int]) -> Iterator[FinSet]:
    ground = finset(ground)
    for k in range(len(ground) + 1):
        yield from combinations(ground, k)

