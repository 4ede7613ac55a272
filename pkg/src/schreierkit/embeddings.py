"""Explicit embeddings of Schreier families and an exact distortion audit."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, TextIO

from .averages import _zeta, frac_str
from .metrics import d1, dinf
from .ordinal import Ordinal, OrdinalLike, as_ordinal
from .schreier import FinSet, _member, enumerate_family, finset, format_finset
from .spaces import SparseVec, SpreadCodec

__all__ = [
    "phi_ell1",
    "phi_summing",
    "DistortionReport",
    "audit",
    "write_pairs_csv",
    "KINDS",
]

KINDS = ("ell1", "summing")


def _prefix_terms(alpha: Ordinal, A: FinSet):
    if not _member(alpha, A):
        raise ValueError(f"{format_finset(A)} is not in S_{alpha}")
    for k in range(1, len(A) + 1):
        yield A[:k], _zeta(alpha, A[:k])


def phi_ell1(alpha: OrdinalLike, A: Sequence[int], codec: SpreadCodec) -> SparseVec:
    """``sum over prefixes D of zeta(alpha, D) e_(max ~D)``; isometric for ``d1``."""
    alpha, A = as_ordinal(alpha), finset(A)
    return SparseVec(tuple((codec.code(D), z) for D, z in _prefix_terms(alpha, A)))


def phi_summing(alpha: OrdinalLike, A: Sequence[int]) -> SparseVec:
    """``sum over prefixes D of zeta(alpha, D) e_(max D)``, read in the summing norm."""
    alpha, A = as_ordinal(alpha), finset(A)
    return SparseVec(tuple((D[-1], z) for D, z in _prefix_terms(alpha, A)))


@dataclass
class DistortionReport:
    alpha: Ordinal
    ground: FinSet
    kind: str
    pairs: int
    lower_ratio: Fraction | None
    upper_ratio: Fraction | None
    min_ratio_d1: Fraction | None
    witnesses: dict[str, tuple[FinSet, FinSet]] = field(default_factory=dict)

    def to_json(self) -> dict:
        show = lambda q: None if q is None else frac_str(q)  # noqa: E731
        return {
            "schema": 1,
            "alpha": str(self.alpha),
            "ground": list(self.ground),
            "kind": self.kind,
            "pairs": self.pairs,
            "lower_ratio": show(self.lower_ratio),
            "upper_ratio": show(self.upper_ratio),
            "min_ratio_d1": show(self.min_ratio_d1),
            "witnesses": {k: [list(a), list(b)] for k, (a, b) in self.witnesses.items()},
        }


def _embedder(alpha: Ordinal, ground: FinSet, kind: str):
    if kind == "ell1":
        codec = SpreadCodec(ground)
        return (lambda A: phi_ell1(alpha, A, codec)), "l1"
    if kind == "summing":
        return (lambda A: phi_summing(alpha, A)), "summing"
    raise ValueError(f"unknown embedding {kind!r}; expected one of {KINDS}")


def _pair_rows(alpha: Ordinal, ground: FinSet, kind: str):
    phi, norm = _embedder(alpha, ground, kind)
    members = enumerate_family(alpha, ground)
    images = [phi(A) for A in members]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            A, B = members[i], members[j]
            yield A, B, d1(alpha, A, B), dinf(alpha, A, B), (images[i] - images[j]).norm(norm)


def audit(alpha: OrdinalLike, ground: Sequence[int], kind: str = "ell1") -> DistortionReport:
    """Exact extreme ratios ``|Phi A - Phi B| / d`` over all member pairs.

    ``lower_ratio`` is the minimum against ``dinf``, ``upper_ratio`` the
    maximum against ``d1`` and ``min_ratio_d1`` the minimum against ``d1``.
    Pairs are visited in enumeration order and a witness is replaced only by
    a strictly better pair, so the first extremal pair is reported.
    """
    alpha, ground = as_ordinal(alpha), finset(ground)
    report = DistortionReport(alpha, ground, kind, 0, None, None, None)
    for A, B, m1, mi, nd in _pair_rows(alpha, ground, kind):
        report.pairs += 1
        if mi:
            r = nd / mi
            if report.lower_ratio is None or r < report.lower_ratio:
                report.lower_ratio = r
                report.witnesses["lower"] = (A, B)
        if m1:
            r = nd / m1
            if report.upper_ratio is None or r > report.upper_ratio:
                report.upper_ratio = r
                report.witnesses["upper"] = (A, B)
            if report.min_ratio_d1 is None or r < report.min_ratio_d1:
                report.min_ratio_d1 = r
                report.witnesses["min_d1"] = (A, B)
    return report


def write_pairs_csv(alpha: OrdinalLike, ground: Sequence[int], kind: str, out: TextIO) -> int:
    """Dump every pair as ``A, B, d1, dinf, norm_diff``; returns the row count."""
    alpha, ground = as_ordinal(alpha), finset(ground)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["A", "B", "d1", "dinf", "norm_diff"])
    rows = 0
    for A, B, m1, mi, nd in _pair_rows(alpha, ground, kind):
        writer.writerow([format_finset(A), format_finset(B), frac_str(m1), frac_str(mi), frac_str(nd)])
        rows += 1
    return rows
