"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)``
terms with strictly decreasing exponents.  Exponents are themselves
ordinals, so the representation is recursive.  The module also carries the
fixed fundamental sequences used to define the Schreier families at limit
ordinals (:func:`lambda_approx`) and the companion sequences for products
``beta * gamma`` (:func:`eta_approx`).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Ordinal",
    "OrdinalSyntaxError",
    "ZERO",
    "ONE",
    "OMEGA",
    "as_ordinal",
    "omega_power",
    "cmp",
    "add",
    "mul",
    "split",
    "lambda_approx",
    "theta_approx",
    "eta_approx",
    "beta_log",
    "is_beta_form",
    "parse_ordinal",
    "format_ordinal",
]


@functools.total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for exp, coef in self.terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponents must be Ordinal instances")
            if not isinstance(coef, int) or coef < 1:
                raise ValueError(f"coefficient must be a positive integer, got {coef!r}")
            if prev is not None and not exp < prev:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp

    # -- structure -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(exp.is_zero for exp, _ in self.terms)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("zero has no leading exponent")
        return self.terms[0][0]

    @property
    def last_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("zero has no terms")
        return self.terms[-1][0]

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor ordinal")
        exp, coef = self.terms[-1]
        if coef == 1:
            return Ordinal(self.terms[:-1])
        return Ordinal(self.terms[:-1] + ((exp, coef - 1),))

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    # -- comparison and arithmetic ------------------------------------------
    def __lt__(self, other: object) -> bool:
        if isinstance(other, int):
            other = as_ordinal(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return cmp(self, other) < 0

    def __add__(self, other: "Ordinal | int") -> "Ordinal":
        return add(self, as_ordinal(other))

    def __radd__(self, other: int) -> "Ordinal":
        return add(as_ordinal(other), self)

    def __mul__(self, other: "Ordinal | int") -> "Ordinal":
        return mul(self, as_ordinal(other))

    def __rmul__(self, other: int) -> "Ordinal":
        return mul(as_ordinal(other), self)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))

OrdinalLike = Union[Ordinal, int, str]


def as_ordinal(value: OrdinalLike) -> Ordinal:
    """Coerce an int, literal string or Ordinal to an Ordinal."""
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(value, int):
        if value < 0:
            raise ValueError("ordinals are nonnegative")
        return Ordinal(((ZERO, value),)) if value else ZERO
    if isinstance(value, str):
        return parse_ordinal(value)
    raise TypeError(f"cannot interpret {value!r} as an ordinal")


def omega_power(exponent: OrdinalLike, coefficient: int = 1) -> Ordinal:
    """``omega ** exponent * coefficient``."""
    if coefficient == 0:
        return ZERO
    return Ordinal(((as_ordinal(exponent), coefficient),))


def cmp(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead = b.terms[0][0]
    kept = []
    for exp, coef in a.terms:
        c = cmp(exp, lead)
        if c > 0:
            kept.append((exp, coef))
        elif c == 0:
            kept.append((exp, coef + b.terms[0][1]))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if a.is_zero or b.is_zero:
        return ZERO
    lead_exp, lead_coef = a.terms[0]
    result = ZERO
    for exp, coef in b.terms:
        if exp.is_zero:
            piece = Ordinal(((lead_exp, lead_coef * coef),) + a.terms[1:])
        else:
            piece = Ordinal(((add(lead_exp, exp), coef),))
        result = add(result, piece)
    return result


def split(gamma: Ordinal, j: int, m1: int) -> tuple[Ordinal, Ordinal]:
    """Cut ``gamma`` inside its ``j``-th CNF term (0 = leading term).

    The first ``j`` terms plus ``m1`` copies of term ``j`` go to the left
    part; the remaining copies and all later terms go to the right part.
    """
    if not 0 <= j < len(gamma.terms):
        raise IndexError(f"term index {j} out of range for {gamma}")
    exp, coef = gamma.terms[j]
    if not 0 <= m1 <= coef:
        raise ValueError(f"coefficient split {m1} out of range 0..{coef}")
    left = gamma.terms[:j] + (((exp, m1),) if m1 else ())
    right = (((exp, coef - m1),) if coef - m1 else ()) + gamma.terms[j + 1 :]
    return Ordinal(left), Ordinal(right)


def is_valid_split(gamma1: Ordinal, gamma2: Ordinal) -> bool:
    """True iff ``gamma1 + gamma2`` concatenates without absorbing terms."""
    if gamma1.is_zero or gamma2.is_zero:
        return True
    return cmp(gamma1.last_exponent, gamma2.leading_exponent) >= 0


def _drop_last_unit(alpha: Ordinal) -> Ordinal:
    exp, coef = alpha.terms[-1]
    if coef == 1:
        return Ordinal(alpha.terms[:-1])
    return Ordinal(alpha.terms[:-1] + ((exp, coef - 1),))


@functools.lru_cache(maxsize=None)
def lambda_approx(alpha: Ordinal, n: int) -> Ordinal:
    """The ``n``-th element of the fixed sequence increasing to limit ``alpha``.

    * more than one unit in the CNF: ``(alpha - w^x1) + lambda(w^x1, n)``
    * ``w^(z+1)``: ``w^z * n``
    * ``w^x`` with ``x`` a limit: ``w^lambda(x, n)``
    """
    if not alpha.is_limit:
        raise ValueError(f"{alpha} is not a limit ordinal")
    if n < 1:
        raise ValueError("n must be a positive integer")
    exp, coef = alpha.terms[-1]
    if len(alpha.terms) > 1 or coef > 1:
        return add(_drop_last_unit(alpha), lambda_approx(omega_power(exp), n))
    if exp.is_successor:
        return omega_power(exp.predecessor(), n)
    return omega_power(lambda_approx(exp, n))


def theta_approx(xi: Ordinal, n: int) -> Ordinal:
    """Sequence increasing to ``w^xi`` used for ``w^(w^k + xi)`` (xi >= 1)."""
    if xi.is_zero:
        raise ValueError("theta is only defined for xi >= 1")
    return lambda_approx(omega_power(xi), n)


def beta_log(beta: Ordinal) -> Ordinal:
    """Return ``xi`` with ``beta = w^(w^xi)``; raise if beta has another form."""
    if len(beta.terms) != 1 or beta.terms[0][1] != 1:
        raise ValueError(f"{beta} is not of the form w^(w^xi)")
    e = beta.terms[0][0]
    if len(e.terms) != 1 or e.terms[0][1] != 1:
        raise ValueError(f"{beta} is not of the form w^(w^xi)")
    return e.terms[0][0]


def is_beta_form(beta: Ordinal) -> bool:
    try:
        beta_log(beta)
    except ValueError:
        return False
    return True


def eta_approx(beta: Ordinal, gamma: Ordinal, n: int) -> Ordinal:
    """Sequence increasing to the limit ``gamma`` with
    ``beta * eta(gamma, n) == lambda(beta * gamma, n)``.

    The fine families only use ``gamma <= beta``; any ``gamma < beta^w`` is
    accepted since the identity holds for all of them.
    """
    xi = beta_log(beta)
    if not gamma.is_limit:
        raise ValueError(f"{gamma} is not a limit ordinal")
    if not gamma.leading_exponent < omega_power(add(xi, ONE)):
        raise ValueError(f"{gamma} is too large for beta = {beta}")
    xi1 = gamma.last_exponent
    if len(gamma.terms) == 1 and gamma.terms[0][1] == 1:
        return theta_approx(xi1, n)
    return add(_drop_last_unit(gamma), theta_approx(xi1, n))


# -- literal syntax ----------------------------------------------------------


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("nat", m.group(1), start))
        else:
            ch = m.group(2)
            if ch in "wω":
                tokens.append(("w", ch, start))
            elif ch in "+*^()":
                tokens.append((ch, ch, start))
            elif ch.isspace():
                pass
            else:
                raise OrdinalSyntaxError(f"unexpected character {ch!r}", text, start)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise OrdinalSyntaxError(f"expected {want}", self.text, tok[2])
        self.i += 1
        return tok

    def ordinal(self) -> Ordinal:
        value = self.term()
        while self.peek()[0] == "+":
            self.take("+")
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        kind, val, pos = self.peek()
        if kind == "nat":
            self.take("nat")
            return as_ordinal(int(val))
        if kind != "w":
            raise OrdinalSyntaxError("expected a term", self.text, pos)
        self.take("w")
        exponent = ONE
        if self.peek()[0] == "^":
            self.take("^")
            if self.peek()[0] == "(":
                self.take("(")
                exponent = self.ordinal()
                self.take(")")
            elif self.peek()[0] == "w":
                self.take("w")
                exponent = OMEGA
            else:
                exponent = as_ordinal(int(self.take("nat")[1]))
        coef = 1
        if self.peek()[0] == "*":
            self.take("*")
            coef = int(self.take("nat")[1])
        return omega_power(exponent, coef)


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^(w)*2 + w*3 + 5``-style literals (``w^3`` and ``w^w`` are also accepted)."""
    parser = _Parser(text)
    value = parser.ordinal()
    parser.take("end")
    return value


def format_ordinal(alpha: Ordinal) -> str:
    if alpha.is_zero:
        return "0"
    parts = []
    for exp, coef in alpha.terms:
        if exp.is_zero:
            parts.append(str(coef))
            continue
        head = "w" if exp == ONE else f"w^({format_ordinal(exp)})"
        parts.append(head if coef == 1 else f"{head}*{coef}")
    return " + ".join(parts)


def ordinal_sum(items: Iterable[Ordinal]) -> Ordinal:
    total = ZERO
    for item in items:
        total = add(total, item)
    return total
