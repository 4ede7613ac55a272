"""Weighted tree distance ``d1`` and weighted interlacing distance ``dinf``.

Both metrics weigh an element ``a`` of ``A`` by ``zeta(alpha, A ∩ [1, a])``.
``d1`` adds the weights of both tails beyond the common prefix; ``dinf`` adds
the heaviest part of ``A`` that falls strictly inside one gap of ``B`` and the
heaviest part of ``B`` inside one gap of ``A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal, Sequence

from .averages import _zeta, frac_str, l1
from .ordinal import Ordinal, OrdinalLike, add, as_ordinal, is_valid_split, mul, ONE
from .schreier import FinSet, _maximal, _member, finset, format_finset

__all__ = [
    "common_prefix",
    "d1",
    "dinf",
    "metric",
    "RescaleError",
    "RescaleReport",
    "rescale_check",
    "TailSpec",
    "StabilityTable",
    "stability_table",
    "triangle_violation",
    "distance_matrix",
    "counterexample_specs",
]


def common_prefix(A: Sequence[int], B: Sequence[int]) -> FinSet:
    """Longest common initial segment of ``A`` and ``B``."""
    A, B = finset(A), finset(B)
    k = 0
    while k < min(len(A), len(B)) and A[k] == B[k]:
        k += 1
    return A[:k]


def _checked(alpha: OrdinalLike, *sets: Sequence[int]) -> tuple:
    alpha = as_ordinal(alpha)
    out = []
    for S in sets:
        S = finset(S)
        if not _member(alpha, S):
            raise ValueError(f"{format_finset(S)} is not in S_{alpha}")
        out.append(S)
    return (alpha, *out)


def _tail_mass(alpha: Ordinal, A: FinSet, start: int) -> Fraction:
    return sum((_zeta(alpha, A[:k]) for k in range(start + 1, len(A) + 1)), Fraction(0))


def d1(alpha: OrdinalLike, A: Sequence[int], B: Sequence[int]) -> Fraction:
    alpha, A, B = _checked(alpha, A, B)
    c = len(common_prefix(A, B))
    return _tail_mass(alpha, A, c) + _tail_mass(alpha, B, c)


def _gap_mass(alpha: Ordinal, A: FinSet, B: FinSet) -> Fraction:
    """Heaviest part of ``A`` lying strictly between consecutive points of
    ``0 < b_1 < ... < b_m < oo``."""
    cuts = (0,) + B + (math.inf,)
    best = Fraction(0)
    k = 0
    for lo, hi in zip(cuts, cuts[1:]):
        total = Fraction(0)
        while k < len(A) and A[k] < hi:
            if A[k] > lo:
                total += _zeta(alpha, A[: k + 1])
            k += 1
        best = max(best, total)
    return best


def dinf(alpha: OrdinalLike, A: Sequence[int], B: Sequence[int]) -> Fraction:
    alpha, A, B = _checked(alpha, A, B)
    return _gap_mass(alpha, A, B) + _gap_mass(alpha, B, A)


MetricName = Literal["d1", "dinf"]


def metric(name: str) -> Callable[[OrdinalLike, Sequence[int], Sequence[int]], Fraction]:
    try:
        return {"d1": d1, "dinf": dinf}[name]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}; expected 'd1' or 'dinf'") from None


def distance_matrix(alpha: OrdinalLike, sets: Sequence[FinSet], name: str = "d1") -> list[list[Fraction]]:
    dist = metric(name)
    n = len(sets)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out[i][j] = out[j][i] = dist(alpha, sets[i], sets[j])
    return out


def triangle_violation(
    alpha: OrdinalLike, sets: Sequence[FinSet], name: str = "d1"
) -> tuple[FinSet, FinSet, FinSet] | None:
    """First triple ``(A, B, C)`` with ``d(A, C) > d(A, B) + d(B, C)``, if any."""
    D = distance_matrix(alpha, sets, name)
    scale = math.lcm(*(q.denominator for row in D for q in row)) if D else 1
    M = [[int(q * scale) for q in row] for row in D]
    n = len(sets)
    for i in range(n):
        Mi = M[i]
        for k in range(n):
            dik, Mk = Mi[k], M[k]
            for j in range(n):
                if Mi[j] > dik + Mk[j]:
                    return sets[i], sets[k], sets[j]
    return None


# -- rescaling ------------------------------------------------------------------


class RescaleError(ValueError):
    """Violated precondition; ``code`` names which one."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class RescaleReport:
    beta: Ordinal
    gamma: Ordinal
    factor: Fraction
    d1_inner: Fraction
    d1_outer: Fraction
    dinf_inner: Fraction
    dinf_outer: Fraction

    @property
    def holds(self) -> bool:
        return (
            self.d1_inner * self.factor == self.d1_outer
            and self.dinf_inner * self.factor == self.dinf_outer
        )

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "zeta_bbar": frac_str(self.factor),
            "d1_inner": frac_str(self.d1_inner),
            "d1_outer": frac_str(self.d1_outer),
            "dinf_inner": frac_str(self.dinf_inner),
            "dinf_outer": frac_str(self.dinf_outer),
            "holds": self.holds,
        }


def rescale_check(
    beta: OrdinalLike,
    gamma: OrdinalLike,
    blocks: Sequence[Sequence[int]],
    A: Sequence[int],
    B: Sequence[int],
) -> RescaleReport:
    """Compare distances in ``S_(beta gamma)`` with distances after prepending
    ``D = B_1 u ... u B_d`` in ``S_(beta (gamma + 1))``.

    The blocks must be maximal in ``S_(beta gamma)`` and their minima must
    form a set of ``S_beta`` with positive ``l1``.  Then both distances scale
    by the coefficient ``zeta(beta, minima)``.
    """
    beta, gamma = as_ordinal(beta), as_ordinal(gamma)
    if len(beta.terms) != 1 or beta.terms[0][1] != 1 or beta.is_finite:
        raise RescaleError("beta-form", f"{beta} is not an infinite power of w")
    inner = mul(beta, gamma)
    outer = mul(beta, add(gamma, ONE))
    if not is_valid_split(inner, beta):
        raise RescaleError("beta-form", f"({inner}, {beta}) is not a valid split")
    blocks = [finset(b) for b in blocks]
    if not blocks:
        raise RescaleError("no-blocks", "at least one block is needed")
    for left, right in zip(blocks, blocks[1:]):
        if not left or not right or left[-1] >= right[0]:
            raise RescaleError("block-order", "blocks must be nonempty and increasing")
    for b in blocks:
        if not (_member(inner, b) and _maximal(inner, b)):
            raise RescaleError("block-not-maximal", f"{format_finset(b)} is not maximal in S_{inner}")
    bbar = tuple(b[0] for b in blocks)
    if not _member(beta, bbar):
        raise RescaleError("bbar-not-member", f"{format_finset(bbar)} is not in S_{beta}")
    if l1(bbar) == 0:
        raise RescaleError("l1-zero", f"l1({format_finset(bbar)}) = 0")
    if _maximal(beta, bbar):
        raise RescaleError("bbar-maximal", f"{format_finset(bbar)} is maximal in S_{beta}")
    A, B = finset(A), finset(B)
    for S in (A, B):
        if not _member(inner, S):
            raise RescaleError("not-member", f"{format_finset(S)} is not in S_{inner}")
        if S and S[0] <= blocks[-1][-1]:
            raise RescaleError("order", f"{format_finset(S)} does not lie above the blocks")
    D = tuple(x for b in blocks for x in b)
    return RescaleReport(
        beta,
        gamma,
        _zeta(beta, bbar),
        d1(inner, A, B),
        d1(outer, D + A, D + B),
        dinf(inner, A, B),
        dinf(outer, D + A, D + B),
    )


# -- stability experiments --------------------------------------------------------


@dataclass(frozen=True)
class TailSpec:
    """Sets ``prefix u {t_n, t_n + 1, ..., t_n + len_n - 1}`` for ``n = 1, 2, ...``.

    ``t_n = start + stride * (n - 1)`` or, if ``ratio`` is given,
    ``start * ratio ** (n - 1)``.  The tail length is ``length`` or, if
    ``length_divisor`` is given, ``t_n // length_divisor``.
    """

    prefix: tuple[int, ...] = ()
    start: int = 1
    stride: int = 1
    ratio: int | None = None
    length: int = 1
    length_divisor: int | None = None

    def __post_init__(self) -> None:
        finset(self.prefix)
        if self.start < 1 or self.stride < 1:
            raise ValueError("start and stride must be positive")
        if self.ratio is not None and self.ratio < 2:
            raise ValueError("ratio must be at least 2")
        if self.length_divisor is None and self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.length_divisor is not None and self.length_divisor < 1:
            raise ValueError("length_divisor must be positive")
        if self.prefix and self.start <= self.prefix[-1]:
            raise ValueError("tails must start above the prefix")

    def __call__(self, n: int) -> FinSet:
        if n < 1:
            raise ValueError("sequence index starts at 1")
        if self.ratio is None:
            t = self.start + self.stride * (n - 1)
        else:
            t = self.start * self.ratio ** (n - 1)
        size = t // self.length_divisor if self.length_divisor else self.length
        return tuple(self.prefix) + tuple(range(t, t + size))

    @classmethod
    def from_json(cls, data: dict) -> "TailSpec":
        unknown = set(data) - {"prefix", "start", "stride", "ratio", "length", "length_divisor"}
        if unknown:
            raise ValueError(f"unknown tail spec keys: {sorted(unknown)}")
        data = dict(data)
        data["prefix"] = tuple(data.get("prefix", ()))
        return cls(**data)

    def to_json(self) -> dict:
        out = {"prefix": list(self.prefix), "start": self.start}
        if self.ratio is None:
            out["stride"] = self.stride
        else:
            out["ratio"] = self.ratio
        if self.length_divisor is None:
            out["length"] = self.length
        else:
            out["length_divisor"] = self.length_divisor
        return out


@dataclass
class StabilityTable:
    alpha: Ordinal
    metric: str
    depth: int
    matrix: list[list[Fraction]]
    row_limits: list[Fraction | None]
    col_limits: list[Fraction | None]
    row_iterated: Fraction | None
    col_iterated: Fraction | None
    notes: list[str] = field(default_factory=list)

    @property
    def settled(self) -> bool:
        return self.row_iterated is not None and self.col_iterated is not None

    @property
    def stable(self) -> bool | None:
        if not self.settled:
            return None
        return self.row_iterated == self.col_iterated

    def to_json(self) -> dict:
        show = lambda q: None if q is None else frac_str(q)  # noqa: E731
        return {
            "alpha": str(self.alpha),
            "metric": self.metric,
            "depth": self.depth,
            "matrix": [[frac_str(q) for q in row] for row in self.matrix],
            "row_limits": [show(q) for q in self.row_limits],
            "col_limits": [show(q) for q in self.col_limits],
            "row_iterated": show(self.row_iterated),
            "col_iterated": show(self.col_iterated),
            "stable": self.stable,
            "notes": self.notes,
        }


def _settled(values: Sequence[Fraction]) -> Fraction | None:
    return values[-1] if all(v == values[-1] for v in values) else None


def stability_table(
    alpha: OrdinalLike, a_spec: TailSpec, b_spec: TailSpec, depth: int, name: str = "d1"
) -> StabilityTable:
    """Distances ``d(A_m, B_n)`` for ``m, n <= depth`` plus iterated limits.

    Entries are computed up to ``2 * depth``.  The limit of row ``m`` is the
    value at ``n = 2 * depth``, accepted only if the row is constant on
    ``depth < n <= 2 * depth``; the iterated limit is the last row limit,
    accepted only if row limits are constant on the upper half of
    ``1..depth``.  Columns are treated the same way.
    """
    alpha = as_ordinal(alpha)
    if depth < 2:
        raise ValueError("depth must be at least 2")
    dist = metric(name)
    horizon = 2 * depth
    A = [a_spec(m) for m in range(1, horizon + 1)]
    B = [b_spec(n) for n in range(1, horizon + 1)]
    for label, seq in (("A", A), ("B", B)):
        for k, S in enumerate(seq, 1):
            if not _member(alpha, S):
                raise ValueError(f"{label}_{k} = {format_finset(S)} is not in S_{alpha}")
    full = [[dist(alpha, a, b) for b in B] for a in A]
    notes = []
    rows = [_settled(full[m][depth:]) for m in range(depth)]
    cols = [_settled([full[m][n] for m in range(depth, horizon)]) for n in range(depth)]
    half = depth // 2
    row_it = col_it = None
    if None in rows[half:]:
        notes.append("rows are not eventually constant within the horizon")
    else:
        row_it = _settled(rows[half:])
        if row_it is None:
            notes.append("row limits do not settle")
    if None in cols[half:]:
        notes.append("columns are not eventually constant within the horizon")
    else:
        col_it = _settled(cols[half:])
        if col_it is None:
            notes.append("column limits do not settle")
    return StabilityTable(
        alpha,
        name,
        depth,
        [row[:depth] for row in full[:depth]],
        rows,
        cols,
        row_it,
        col_it,
        notes,
    )


def counterexample_specs() -> tuple[TailSpec, TailSpec]:
    """Sequences at ``alpha = 1`` making ``dinf`` unstable.

    ``A_m`` is an ``S_1`` set of mass ``1/6`` moving right geometrically;
    ``B_n = {2, t_n}`` is maximal with ``d(0, {2}) = 1/2``.
    """
    a_spec = TailSpec(prefix=(), start=12, ratio=2, length_divisor=6)
    b_spec = TailSpec(prefix=(2,), start=20, ratio=2, length=1)
    return a_spec, b_spec
