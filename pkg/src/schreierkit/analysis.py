"""Analysis trees, components and special convex families for ``S_(beta gamma)``.

``beta`` has the form ``w^(w^xi)`` and ``1 <= gamma <= beta``.  A maximal set
of ``S_(beta (gamma + 1))`` splits uniquely into maximal ``S_(beta gamma)``
blocks whose minima form a maximal ``S_beta`` set; repeating this down to
``gamma = 1`` gives the analysis tree.  At limit ``gamma`` everything is
delegated to ``eta(gamma, min B)``.

True maximal sets for ``gamma >= 2`` are far too large to enumerate, so the
functions taking ``B`` accept ``truncated=True``: ``B`` may then be any
nonempty member, read as an initial segment of a maximal set.  The tree is
then the tree of any maximal extension cut down to ``B``; components depend
only on ``A``, so statements about prefixes of ``B`` stay meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .averages import _zeta, frac_str
from .ordinal import ONE, Ordinal, OrdinalLike, as_ordinal, beta_log, eta_approx, mul
from .schreier import (
    FinSet,
    _fine,
    _greedy,
    _maximal,
    _member,
    finset,
    format_finset,
    is_prefix,
)

__all__ = [
    "AnalysisNode",
    "ComponentDecomp",
    "ConvexFamily",
    "beta_analysis",
    "check_tree",
    "components",
    "e_family",
    "maximal_chain",
    "minima_maximality_failures",
    "partition_sides",
    "outside_mass",
    "chain_failures",
    "special_convex_family",
    "check_special_family",
    "demote_family",
    "InfeasibleFamily",
]


def _check_indices(beta: Ordinal, gamma: Ordinal) -> None:
    beta_log(beta)
    if gamma.is_zero or beta < gamma:
        raise ValueError(f"need 1 <= gamma <= beta, got gamma = {gamma}")


def _check_top(beta: Ordinal, gamma: Ordinal, B: FinSet, truncated: bool) -> Ordinal:
    _check_indices(beta, gamma)
    alpha = mul(beta, gamma)
    if not B or not _member(alpha, B):
        raise ValueError(f"{format_finset(B)} is not a nonempty member of S_{alpha}")
    if not truncated and not _maximal(alpha, B):
        raise ValueError(f"{format_finset(B)} is not maximal in S_{alpha}")
    return alpha


# -- analysis tree -------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisNode:
    """A node of the analysis tree; ``path`` (child indices from the root)
    identifies it, ``level`` is the ``gamma`` at which it was split."""

    path: tuple[int, ...]
    elements: FinSet
    level: Ordinal
    children: tuple["AnalysisNode", ...] = ()

    def walk(self) -> Iterator["AnalysisNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self) -> list["AnalysisNode"]:
        return [n for n in self.walk() if not n.children]

    def to_json(self) -> dict:
        return {
            "set": list(self.elements),
            "level": str(self.level),
            "children": [c.to_json() for c in self.children],
        }


def _settle(beta: Ordinal, gamma: Ordinal, A: FinSet) -> Ordinal:
    while gamma.is_limit:
        gamma = eta_approx(beta, gamma, A[0])
    return gamma


def _build(beta: Ordinal, gamma: Ordinal, B: FinSet, path: tuple[int, ...]) -> AnalysisNode:
    gamma = _settle(beta, gamma, B)
    if gamma == ONE:
        return AnalysisNode(path, B, gamma)
    delta = gamma.predecessor()
    blocks = _greedy(mul(beta, delta), B)
    kids = tuple(_build(beta, delta, b, path + (j,)) for j, b in enumerate(blocks))
    return AnalysisNode(path, B, gamma, kids)


def beta_analysis(
    beta: OrdinalLike, gamma: OrdinalLike, B: Sequence[int], *, truncated: bool = False
) -> AnalysisNode:
    beta, gamma, B = as_ordinal(beta), as_ordinal(gamma), finset(B)
    _check_top(beta, gamma, B, truncated)
    return _build(beta, gamma, B, ())


def check_tree(root: AnalysisNode, beta: OrdinalLike) -> list[str]:
    """Structural properties of an analysis tree; returns the failures."""
    beta = as_ordinal(beta)
    failures = []
    nodes = list(root.walk())
    for node in nodes:
        if node.children:
            joined = tuple(x for c in node.children for x in c.elements)
            if joined != node.elements:
                failures.append(f"children of {format_finset(node.elements)} do not partition it")
            for left, right in zip(node.children, node.children[1:]):
                if not left.elements[-1] < right.elements[0]:
                    failures.append(f"children of {format_finset(node.elements)} are not increasing")
        elif not _member(beta, node.elements):
            failures.append(f"leaf {format_finset(node.elements)} is not in S_{beta}")
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            sa, sb = set(a.elements), set(b.elements)
            comparable = a.path == b.path[: len(a.path)] or b.path == a.path[: len(b.path)]
            if comparable:
                if not (sa <= sb or sb <= sa):
                    failures.append(f"nested paths {a.path}, {b.path} are not nested sets")
            elif not (a.elements[-1] < b.elements[0] or b.elements[-1] < a.elements[0]):
                failures.append(f"nodes {a.path}, {b.path} are not order separated")
    return failures


# -- components ------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentDecomp:
    parts: tuple[FinSet, ...]

    @property
    def s(self) -> int:
        return len(self.parts)

    @property
    def minima(self) -> tuple[int | None, ...]:
        return tuple(p[0] if p else None for p in self.parts)

    @property
    def all_nonempty(self) -> bool:
        return all(self.parts)

    def to_json(self) -> dict:
        return {"s": self.s, "parts": [list(p) for p in self.parts]}


def _components(beta: Ordinal, gamma: Ordinal, A: FinSet) -> tuple[FinSet, ...]:
    gamma = _settle(beta, gamma, A)
    if gamma == ONE:
        return (A,)
    delta = gamma.predecessor()
    blocks = _greedy(mul(beta, delta), A)
    head = tuple(x for b in blocks[:-1] for x in b)
    return (head,) + _components(beta, delta, blocks[-1])


def components(beta: OrdinalLike, gamma: OrdinalLike, A: Sequence[int]) -> ComponentDecomp:
    beta, gamma, A = as_ordinal(beta), as_ordinal(gamma), finset(A)
    _check_indices(beta, gamma)
    if not A or not _member(mul(beta, gamma), A):
        raise ValueError(f"{format_finset(A)} is not a nonempty member of S_{mul(beta, gamma)}")
    return ComponentDecomp(_components(beta, gamma, A))


def e_family(
    beta: OrdinalLike, gamma: OrdinalLike, B: Sequence[int], *, truncated: bool = False
) -> list[FinSet]:
    """Nonempty prefixes of ``B`` whose components are all nonempty."""
    beta, gamma, B = as_ordinal(beta), as_ordinal(gamma), finset(B)
    _check_top(beta, gamma, B, truncated)
    return [B[:k] for k in range(1, len(B) + 1) if all(_components(beta, gamma, B[:k]))]


def maximal_chain(
    beta: OrdinalLike,
    gamma: OrdinalLike,
    B: Sequence[int],
    A: Sequence[int],
    *,
    truncated: bool = False,
    root: AnalysisNode | None = None,
) -> list[AnalysisNode]:
    """Chain ``B = D_1 ⊋ D_2 ⊋ ...`` of tree nodes following ``max A``.

    Its length is the number of components of ``A``.  When the chain is not
    unique the one through the node containing ``max A`` is taken.
    """
    beta, gamma, B, A = as_ordinal(beta), as_ordinal(gamma), finset(B), finset(A)
    if root is None:
        root = beta_analysis(beta, gamma, B, truncated=truncated)
    if not A or not is_prefix(A, B):
        raise ValueError(f"{format_finset(A)} is not a nonempty prefix of {format_finset(B)}")
    s = len(_components(beta, gamma, A))
    chain = [root]
    top = A[-1]
    while len(chain) < s:
        node = chain[-1]
        nxt = [c for c in node.children if c.elements[0] <= top]
        if not nxt:
            raise ValueError("analysis tree is shallower than the components")
        chain.append(nxt[-1])
    return chain


# -- structural checks ---------------------------------------------------------------


def minima_maximality_failures(
    beta: OrdinalLike, gamma: OrdinalLike, B: Sequence[int], *, truncated: bool = False
) -> list[FinSet]:
    """Members of the E-family whose component minima are not maximal in
    ``F_(beta, gamma)``."""
    beta, gamma, B = as_ordinal(beta), as_ordinal(gamma), finset(B)
    bad = []
    for A in e_family(beta, gamma, B, truncated=truncated):
        minima = tuple(p[0] for p in _components(beta, gamma, A))
        if not _fine(beta, gamma, minima) or _fine(beta, gamma, minima + (minima[-1] + 1,)):
            bad.append(A)
    return bad


def partition_sides(
    beta: OrdinalLike, gamma: OrdinalLike, B: Sequence[int], *, truncated: bool = False
) -> tuple[set[FinSet], set[FinSet]]:
    """Both sides of the partition of the prefixes of ``B`` outside the
    E-family, for successor ``gamma = delta + 1 >= 2``.

    Left: prefixes of ``B`` (``∅`` included) outside ``E_(beta, gamma)(B)``.
    Right: prefixes of the first block, together with ``B_1 u ... u B_(m-1) u A``
    for ``m >= 2`` and nonempty prefixes ``A`` of ``B_m`` outside
    ``E_(beta, delta)(B_m)``.
    """
    beta, gamma, B = as_ordinal(beta), as_ordinal(gamma), finset(B)
    _check_top(beta, gamma, B, truncated)
    if not gamma.is_successor or gamma == ONE:
        raise ValueError("the partition needs a successor gamma >= 2")
    delta = gamma.predecessor()
    inner = set(e_family(beta, gamma, B, truncated=truncated))
    left = {B[:k] for k in range(len(B) + 1)} - inner
    blocks = _greedy(mul(beta, delta), B)
    right = {blocks[0][:k] for k in range(len(blocks[0]) + 1)}
    head: FinSet = ()
    for m, block in enumerate(blocks):
        if m:
            inside = set(e_family(beta, delta, block, truncated=True))
            right |= {head + block[:k] for k in range(1, len(block) + 1) if block[:k] not in inside}
        head += block
    return left, right


def outside_mass(
    beta: OrdinalLike, gamma: OrdinalLike, B: Sequence[int], *, truncated: bool = False
) -> Fraction:
    """Total ``zeta(beta gamma, A)`` over prefixes of ``B`` outside the E-family."""
    beta, gamma, B = as_ordinal(beta), as_ordinal(gamma), finset(B)
    alpha = _check_top(beta, gamma, B, truncated)
    inner = set(e_family(beta, gamma, B, truncated=truncated))
    return sum((_zeta(alpha, B[:k]) for k in range(1, len(B) + 1) if B[:k] not in inner), Fraction(0))


def chain_failures(
    beta: OrdinalLike, gamma: OrdinalLike, B: Sequence[int], *, truncated: bool = False
) -> list[str]:
    """Checks, over all pairs of the E-family, that chains satisfy the prefix
    conditions, that equal nodes force equal earlier nodes, and that equal
    nodes coincide with equal component minima."""
    beta, gamma, B = as_ordinal(beta), as_ordinal(gamma), finset(B)
    root = beta_analysis(beta, gamma, B, truncated=truncated)
    fam = e_family(beta, gamma, B, truncated=truncated)
    chains = {A: maximal_chain(beta, gamma, B, A, root=root) for A in fam}
    parts = {A: _components(beta, gamma, A) for A in fam}
    failures = []
    for A in fam:
        ch, cp = chains[A], parts[A]
        if len(ch) != len(cp):
            failures.append(f"chain of {format_finset(A)} has the wrong length")
            continue
        for i, (node, part) in enumerate(zip(ch, cp)):
            if not is_prefix(part, node.elements):
                failures.append(f"component {i + 1} of {format_finset(A)} is not a prefix of its node")
            if i < len(cp) - 1 and part == node.elements:
                failures.append(f"component {i + 1} of {format_finset(A)} fills its node")
        for a, b in zip(ch, ch[1:]):
            if not (set(b.elements) < set(a.elements)):
                failures.append(f"chain of {format_finset(A)} is not strictly decreasing")
    for x in fam:
        for y in fam:
            for i in range(min(len(chains[x]), len(chains[y]))):
                same = chains[x][i].path == chains[y][i].path
                if same and any(chains[x][j].path != chains[y][j].path for j in range(i)):
                    failures.append(f"chains of {format_finset(x)}, {format_finset(y)} rejoin at {i + 1}")
                if same != (parts[x][i][0] == parts[y][i][0]):
                    failures.append(
                        f"node equality and minimum equality differ for {format_finset(x)}, "
                        f"{format_finset(y)} at {i + 1}"
                    )
    return failures


# -- special convex families ---------------------------------------------------------


class InfeasibleFamily(ValueError):
    """The component minima have no maximal ``S_alpha0`` initial segment."""


@dataclass
class ConvexFamily:
    beta: Ordinal
    gamma: Ordinal
    B: FinSet
    coeffs: dict[FinSet, tuple[Fraction, ...]] = field(default_factory=dict)
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "B": list(self.B),
            "truncated": self.truncated,
            "coefficients": [
                {"A": list(A), "r": [frac_str(q) for q in r]} for A, r in self.coeffs.items()
            ],
        }


def special_convex_family(
    beta: OrdinalLike,
    gamma: OrdinalLike,
    B: Sequence[int],
    alpha0: OrdinalLike,
    *,
    truncated: bool = False,
) -> ConvexFamily:
    """``r(A, k) = zeta(alpha0, ~A_k)`` where ``~A`` is the longest initial
    segment of the component minima of ``A`` lying in ``S_alpha0``.

    ``~A`` must be maximal in ``S_alpha0``; otherwise :class:`InfeasibleFamily`
    is raised.  Coefficients past ``#~A`` are zero.
    """
    beta, gamma, B, alpha0 = as_ordinal(beta), as_ordinal(gamma), finset(B), as_ordinal(alpha0)
    fam = ConvexFamily(beta, gamma, B, truncated=truncated)
    for A in e_family(beta, gamma, B, truncated=truncated):
        minima = tuple(p[0] for p in _components(beta, gamma, A))
        k = 1
        while k < len(minima) and _member(alpha0, minima[: k + 1]):
            k += 1
        head = minima[:k]
        if not _maximal(alpha0, head):
            raise InfeasibleFamily(
                f"component minima {format_finset(minima)} of {format_finset(A)} "
                f"have no maximal initial segment in S_{alpha0}"
            )
        fam.coeffs[A] = tuple(_zeta(alpha0, head[: i + 1]) if i < k else Fraction(0) for i in range(len(minima)))
    return fam


def check_special_family(fam: ConvexFamily) -> list[str]:
    """Failures of: nonnegative, each row sums to 1, equal chain nodes give
    equal coefficients."""
    beta, gamma, B = fam.beta, fam.gamma, fam.B
    expected = e_family(beta, gamma, B, truncated=fam.truncated)
    failures = []
    if list(fam.coeffs) != expected:
        failures.append("coefficients are not indexed by the E-family")
        return failures
    root = beta_analysis(beta, gamma, B, truncated=fam.truncated)
    chains = {A: maximal_chain(beta, gamma, B, A, root=root) for A in expected}
    for A, r in fam.coeffs.items():
        if len(r) != len(chains[A]):
            failures.append(f"row {format_finset(A)} has {len(r)} entries, expected {len(chains[A])}")
        if any(q < 0 for q in r):
            failures.append(f"row {format_finset(A)} has a negative entry")
        if sum(r, Fraction(0)) != 1:
            failures.append(f"row {format_finset(A)} sums to {frac_str(sum(r, Fraction(0)))}")
    for x in expected:
        for y in expected:
            for k in range(min(len(chains[x]), len(chains[y]), len(fam.coeffs[x]), len(fam.coeffs[y]))):
                if chains[x][k].path == chains[y][k].path and fam.coeffs[x][k] != fam.coeffs[y][k]:
                    failures.append(f"rows {format_finset(x)}, {format_finset(y)} differ at shared node {k + 1}")
    return failures


def demote_family(fam: ConvexFamily, j: int) -> ConvexFamily:
    """Restrict a family for a successor ``gamma = delta + 1`` to the block
    ``B_(j+1)`` (``1 <= j < number of blocks``), dropping the first
    coefficient and renormalising by ``1 - r(., 1)``."""
    beta, gamma, B = fam.beta, fam.gamma, fam.B
    gamma = _settle(beta, gamma, B)
    if not gamma.is_successor or gamma == ONE:
        raise ValueError("demotion needs a successor gamma >= 2")
    delta = gamma.predecessor()
    blocks = _greedy(mul(beta, delta), B)
    if not 1 <= j < len(blocks):
        raise ValueError(f"block index {j} out of range 1..{len(blocks) - 1}")
    firsts = {r[0] for r in fam.coeffs.values()}
    if len(firsts) > 1:
        raise ValueError("first coefficients are not constant")
    first = firsts.pop() if firsts else Fraction(0)
    if first >= 1:
        raise ValueError("demotion needs r(., 1) < 1")
    head = tuple(x for b in blocks[:j] for x in b)
    target = blocks[j]
    out = ConvexFamily(beta, delta, target, truncated=fam.truncated or not _maximal(mul(beta, delta), target))
    for C in e_family(beta, delta, target, truncated=True):
        row = fam.coeffs[head + C]
        out.coeffs[C] = tuple(q / (1 - first) for q in row[1:])
    return out
