"""Finitely supported rational vectors and the spread coding of finite sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .schreier import FinSet, enum_key, finset, format_finset

__all__ = [
    "SparseVec",
    "NORMS",
    "SpreadCodec",
    "spread_code",
    "biorth_tree",
]

NORMS = ("l1", "sup", "summing")


@dataclass(frozen=True)
class SparseVec:
    """Rational sequence with finite support; zero entries are never stored."""

    items: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, Fraction] = {}
        for k, v in self.items:
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise ValueError(f"coordinates must be positive integers, got {k!r}")
            merged[k] = merged.get(k, Fraction(0)) + Fraction(v)
        clean = tuple(sorted((k, v) for k, v in merged.items() if v))
        object.__setattr__(self, "items", clean)

    @classmethod
    def from_dict(cls, entries: Mapping[int, Fraction | int | str]) -> "SparseVec":
        return cls(tuple((int(k), Fraction(v)) for k, v in entries.items()))

    @classmethod
    def unit(cls, n: int) -> "SparseVec":
        return cls(((n, Fraction(1)),))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.items)

    def __getitem__(self, k: int) -> Fraction:
        return dict(self.items).get(k, Fraction(0))

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __add__(self, other: "SparseVec") -> "SparseVec":
        if not isinstance(other, SparseVec):
            return NotImplemented
        return SparseVec(self.items + other.items)

    def __neg__(self) -> "SparseVec":
        return SparseVec(tuple((k, -v) for k, v in self.items))

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        if not isinstance(other, SparseVec):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c: Fraction | int) -> "SparseVec":
        c = Fraction(c)
        return SparseVec(tuple((k, v * c) for k, v in self.items))

    __rmul__ = __mul__

    def dot(self, other: "SparseVec") -> Fraction:
        theirs = dict(other.items)
        return sum((v * theirs[k] for k, v in self.items if k in theirs), Fraction(0))

    def norm(self, kind: str = "l1") -> Fraction:
        """``l1``, ``sup`` or ``summing`` (largest absolute partial sum)."""
        if kind == "l1":
            return sum((abs(v) for _, v in self.items), Fraction(0))
        if kind == "sup":
            return max((abs(v) for _, v in self.items), default=Fraction(0))
        if kind == "summing":
            best = total = Fraction(0)
            for _, v in self.items:
                total += v
                best = max(best, abs(total))
            return best
        raise ValueError(f"unknown norm {kind!r}; expected one of {NORMS}")

    def to_json(self) -> dict[str, str]:
        from .averages import frac_str

        return {str(k): frac_str(v) for k, v in self.items}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "SparseVec":
        return cls.from_dict({int(k): Fraction(v) for k, v in data.items()})


class SpreadCodec:
    """Assigns every subset ``A`` of a declared ground set a spread ``~A``.

    Subsets are visited in enumeration order.  Each gets a fresh code
    ``g(A) = max(previous code, max A) + 1`` and ``~A = ~A' u {g(A)}`` where
    ``A'`` drops the last element.  Codes are distinct, so two coded sets
    share exactly the codes of their common initial segment.

    The codes depend on the ground set, which is part of the codec state.
    """

    def __init__(self, ground: Iterable[int]):
        self.ground: FinSet = finset(ground)
        if len(self.ground) > 20:
            raise ValueError("ground set too large for exhaustive coding")
        subsets = [
            c for k in range(1, len(self.ground) + 1) for c in combinations(self.ground, k)
        ]
        subsets.sort(key=enum_key)
        self._code: dict[FinSet, int] = {}
        last = 0
        for A in subsets:
            last = max(last, A[-1]) + 1
            self._code[A] = last

    def code(self, A: Sequence[int]) -> int:
        A = finset(A)
        try:
            return self._code[A]
        except KeyError:
            raise ValueError(f"{format_finset(A)} is empty or not inside the codec ground") from None

    def encode(self, A: Sequence[int]) -> FinSet:
        A = finset(A)
        return tuple(self.code(A[:k]) for k in range(1, len(A) + 1))

    def to_json(self) -> dict:
        return {
            "ground": list(self.ground),
            "codes": [[list(A), g] for A, g in sorted(self._code.items(), key=lambda t: enum_key(t[0]))],
        }


def spread_code(A: Sequence[int], codec: SpreadCodec) -> FinSet:
    return codec.encode(A)


def biorth_tree(A: Sequence[int], codec: SpreadCodec) -> tuple[SparseVec, SparseVec]:
    """``z_A`` (indicator of ``~A``) and ``z*_A`` (unit functional at ``max ~A``)."""
    coded = codec.encode(A)
    z = SparseVec(tuple((c, Fraction(1)) for c in coded))
    zstar = SparseVec.unit(coded[-1]) if coded else SparseVec()
    return z, zstar
