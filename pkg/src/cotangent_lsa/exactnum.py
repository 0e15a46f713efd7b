"""Exact rational scalars and sparse multivariate polynomials.

Every quantity in this package is a rational number; there is no floating
point anywhere.  Scalars are ``fractions.Fraction`` values, which already
guarantee a positive denominator and a fully reduced canonical form, so
arithmetic is exact and equality is decidable.

All values here are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DivisionByZero, NonSquareMatrix, ParseError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# "p" or "p/q" with a nonzero, zero-padding-free denominator; no decimals.
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` or a bare integer literal; decimals are rejected."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ParseError(f"not an exact rational literal: {text!r}")
    return Fraction(s)


def format_scalar(x: Scalar) -> str:
    """Canonical string form: ``"p/q"``, or ``"p"`` alone when q = 1."""
    return str(Fraction(x))


def as_scalar(value) -> Scalar:
    """Coerce an int, string, or Fraction to a canonical scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact field arithmetic on two scalars; ``op`` is add/sub/mul/div."""
    a = as_scalar(a)
    b = as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Terms map an exponent vector (one slot per variable) to a nonzero
    coefficient.  The zero polynomial has an empty term map, which makes
    equality with zero exact and immediate.  Instances are treated as
    immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        if nvars < 0:
            raise ValueError("number of variables must be nonnegative")
        table: dict[tuple[int, ...], Scalar] = {}
        if terms:
            for expo, coeff in terms.items():
                key = tuple(int(e) for e in expo)
                if len(key) != nvars or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent vector {expo!r} for {nvars} variables")
                c = as_scalar(coeff)
                if c:
                    table[key] = c
        self.nvars = nvars
        self.terms = table

    @classmethod
    def const(cls, nvars: int, value) -> "MultiPoly":
        c = as_scalar(value)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {expo: ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        return MultiPoly.const(self.nvars, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # mutable-looking container; never used as a dict key

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            s = out.get(expo, ZERO) + c
            if s:
                out[expo] = s
            else:
                out.pop(expo, None)
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            if not c:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, ZERO) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        """Exact value of the polynomial at a rational point."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = ZERO
        for expo, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, expo):
                if e:
                    v *= as_scalar(x) ** e
            total += v
        return total

    def substitute(self, index: int, value: Scalar) -> "MultiPoly":
        """Partially evaluate one variable, keeping the variable count."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        val = as_scalar(value)
        out: dict[tuple[int, ...], Scalar] = {}
        for expo, coeff in self.terms.items():
            c = coeff * (val ** expo[index] if expo[index] else ONE)
            if not c:
                continue
            key = tuple(0 if i == index else e for i, e in enumerate(expo))
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MultiPoly(self.nvars, out)

    def degree_in(self, index: int) -> int:
        """Largest exponent of one variable (0 for the zero polynomial)."""
        return max((e[index] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self) -> str:
        if self.is_zero:
            return "MultiPoly(0)"
        parts = []
        for expo in sorted(self.terms):
            factors = [format_scalar(self.terms[expo])]
            factors += [f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(expo) if e]
            parts.append("*".join(factors))
        return "MultiPoly(" + " + ".join(parts) + ")"


def _coerce_poly_matrix(M) -> list[list[MultiPoly]]:
    rows = [list(r) for r in M]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise NonSquareMatrix("polynomial matrix must be square and nonempty")
    nvars = None
    for row in rows:
        for x in row:
            if isinstance(x, MultiPoly):
                nvars = x.nvars
                break
        if nvars is not None:
            break
    if nvars is None:
        raise ValueError("matrix carries no MultiPoly entry to fix the variable count")
    return [
        [x if isinstance(x, MultiPoly) else MultiPoly.const(nvars, x) for x in row]
        for row in rows
    ]


def poly_mat_mul(A: list[list[MultiPoly]], B: list[list[MultiPoly]]) -> list[list[MultiPoly]]:
    """Product of two square polynomial matrices, skipping zero entries."""
    n = len(A)
    zero = MultiPoly(A[0][0].nvars)
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for m in range(n):
            a = A[i][m]
            if a.is_zero:
                continue
            row_b = B[m]
            for j in range(n):
                b = row_b[j]
                if not b.is_zero:
                    out[i][j] = out[i][j] + a * b
    return out


def poly_matrix_power_trace(M, k: int) -> MultiPoly:
    """Trace of the k-th power of a square MultiPoly matrix, exactly."""
    if k < 1:
        raise ValueError("power must be at least 1")
    rows = _coerce_poly_matrix(M)
    power = rows
    for _ in range(k - 1):
        power = poly_mat_mul(power, rows)
    total = MultiPoly(rows[0][0].nvars)
    for i in range(len(rows)):
        total = total + power[i][i]
    return total


def power_traces(M, kmax: int) -> list[MultiPoly]:
    """Traces of M^1 .. M^kmax, sharing the intermediate powers."""
    rows = _coerce_poly_matrix(M)
    traces = []
    power = rows
    for k in range(1, kmax + 1):
        if k > 1:
            power = poly_mat_mul(power, rows)
        total = MultiPoly(rows[0][0].nvars)
        for i in range(len(rows)):
            total = total + power[i][i]
        traces.append(total)
    return traces


def nonzero_point(p: MultiPoly) -> tuple[Scalar, ...]:
    """Deterministic rational point where a nonzero polynomial does not vanish.

    Substitutes variables one at a time with the smallest nonnegative integer
    that keeps the remaining polynomial nonzero; at most deg+1 candidates are
    ever needed per variable.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    point: list[Scalar] = []
    cur = p
    for i in range(p.nvars):
        deg = cur.degree_in(i)
        for c in range(deg + 1):
            cand = cur.substitute(i, Fraction(c))
            if not cand.is_zero:
                point.append(Fraction(c))
                cur = cand
                break
        else:  # pragma: no cover - impossible: a degree-d factor has <= d roots
            raise AssertionError("nonzero polynomial vanished on a full candidate grid")
    return tuple(point)
