"""Separable (étale) algebras over Q: products of number fields in a power basis.

A factor Q[a]/(f) of degree n uses the basis 1, a, ..., a^(n-1); an algebra
concatenates the bases of its factors.  Multiplication formulas are polynomials
in 2*dim variables ordered (x1..x_dim, y1..y_dim).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactpoly import ParseError, Poly, as_rational, det


def is_rational_square(q) -> bool:
    q = as_rational(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _check_quadratic_d(d: Fraction) -> None:
    if d == 0:
        raise ValueError("d must be nonzero")
    if is_rational_square(d):
        raise ValueError(f"d = {d} is a square in Q, so Q(sqrt(d)) is not a field")


def quadratic_iso(d1, d2) -> bool:
    """Q(sqrt(d1)) and Q(sqrt(d2)) are isomorphic iff d1/d2 is a rational square."""
    d1, d2 = as_rational(d1), as_rational(d2)
    _check_quadratic_d(d1)
    _check_quadratic_d(d2)
    return is_rational_square(d1 / d2)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def has_rational_root(coeffs: Sequence[Fraction]) -> bool:
    """Rational root test for a polynomial given low-to-high."""
    coeffs = [as_rational(c) for c in coeffs]
    if coeffs[0] == 0:
        return True
    scale = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if _eval(coeffs, r) == 0:
                    return True
    return False


@dataclass(frozen=True)
class FieldExtension:
    """Q[a]/(f) for a monic irreducible f, stored as coefficients low-to-high."""

    coeffs: tuple
    assume_irreducible: bool = False

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        n = len(coeffs) - 1
        if n == 2:
            a, b = coeffs[1], coeffs[0]
            if is_rational_square(a * a - 4 * b):
                raise ValueError(f"quadratic {self.format_minpoly()} is reducible over Q")
        elif n == 3:
            if has_rational_root(coeffs):
                raise ValueError(f"cubic {self.format_minpoly()} has a rational root")
        elif n > 3 and not self.assume_irreducible:
            raise ValueError(
                "irreducibility is only checked up to degree 3; "
                "pass assume_irreducible=True for higher degrees"
            )

    @classmethod
    def rational(cls) -> "FieldExtension":
        return cls((0, 1))

    @classmethod
    def quadratic(cls, d) -> "FieldExtension":
        """Q(sqrt(d)) with minimal polynomial a^2 - d."""
        d = as_rational(d)
        _check_quadratic_d(d)
        return cls((-d, 0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def minpoly(self) -> Poly:
        return Poly(1, {(k,): c for k, c in enumerate(self.coeffs)})

    def format_minpoly(self, var: str = "a") -> str:
        return self.minpoly.format([var])

    def label(self) -> str:
        if self.degree == 1:
            return "Q"
        if self.degree == 2 and self.coeffs[1] == 0:
            return f"Q(sqrt({-self.coeffs[0]}))"
        return f"Q[a]/({self.format_minpoly().replace(' ', '')})"

    @cached_property
    def power_table(self) -> tuple:
        """Row k holds the basis coordinates of a^k, for k < 2*degree - 1."""
        n = self.degree
        rows = []
        for k in range(max(2 * n - 1, 1)):
            if k < n:
                row = [Fraction(0)] * n
                row[k] = Fraction(1)
            else:
                # a^k = a * a^(k-1); reduce a^n = -(c_0 + ... + c_{n-1} a^(n-1))
                prev = rows[k - 1]
                top = prev[n - 1]
                row = [Fraction(0)] + list(prev[: n - 1])
                row = [r - top * c for r, c in zip(row, self.coeffs[:n])]
            rows.append(tuple(row))
        return tuple(rows)

    def multiplication(self) -> tuple[Poly, ...]:
        """Product coordinates in 2*degree variables (x then y)."""
        n = self.degree
        nv = 2 * n
        acc = [dict() for _ in range(n)]
        for i in range(n):
            for j in range(n):
                exps = [0] * nv
                exps[i] += 1
                exps[n + j] += 1
                exps = tuple(exps)
                for l, c in enumerate(self.power_table[i + j]):
                    if c:
                        acc[l][exps] = acc[l].get(exps, 0) + c
        return tuple(Poly(nv, a) for a in acc)

    def left_mult_matrix(self, nvars: int | None = None, offset: int = 0) -> list[list[Poly]]:
        """Matrix of y -> x*y for a generic x whose coordinates sit at ``offset``."""
        n = self.degree
        nvars = n if nvars is None else nvars
        xs = [Poly.var(nvars, offset + i) for i in range(n)]
        zero = Poly.zero(nvars)
        m = [[zero] * n for _ in range(n)]
        for j in range(n):
            for i in range(n):
                for l, c in enumerate(self.power_table[i + j]):
                    if c:
                        m[l][j] = m[l][j] + xs[i].scale(c)
        return m

    def norm(self) -> Poly:
        return det(self.left_mult_matrix())

    def discriminant(self) -> Fraction:
        """Discriminant of the minimal polynomial (Sylvester resultant with f')."""
        f = list(self.coeffs)
        n = len(f) - 1
        if n == 1:
            return Fraction(1)
        df = [k * f[k] for k in range(1, n + 1)]
        size = 2 * n - 1
        rows = []
        for i in range(n - 1):
            rows.append([Fraction(0)] * i + f[::-1] + [Fraction(0)] * (size - n - 1 - i))
        for i in range(n):
            rows.append([Fraction(0)] * i + df[::-1] + [Fraction(0)] * (size - n - i))
        res = det([[Poly.const(1, c) for c in row] for row in rows]).constant_value()
        return (-1) ** (n * (n - 1) // 2) * res

    def to_json(self) -> dict:
        return {"minpoly_coeffs": [str(c) for c in self.coeffs]}


@dataclass(frozen=True)
class NormForm:
    algebra: "EtaleAlgebra"
    poly: Poly


@dataclass(frozen=True)
class EtaleAlgebra:
    """Finite product of field extensions of Q."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("an algebra needs at least one factor")
        if not all(isinstance(f, FieldExtension) for f in factors):
            raise TypeError("factors must be FieldExtension instances")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def split(cls, n: int) -> "EtaleAlgebra":
        """Q^n."""
        return cls((FieldExtension.rational(),) * n)

    @classmethod
    def of(cls, *factors: FieldExtension) -> "EtaleAlgebra":
        return cls(factors)

    @property
    def dim(self) -> int:
        return sum(f.degree for f in self.factors)

    def offsets(self) -> list[int]:
        out, pos = [], 0
        for f in self.factors:
            out.append(pos)
            pos += f.degree
        return out

    def unit(self) -> tuple[Fraction, ...]:
        out = []
        for f in self.factors:
            out += [Fraction(1)] + [Fraction(0)] * (f.degree - 1)
        return tuple(out)

    def multiplication(self) -> tuple[Poly, ...]:
        """Block-diagonal product formulas in 2*dim variables."""
        n = self.dim
        out = []
        for f, off in zip(self.factors, self.offsets()):
            k = f.degree
            positions = [off + i for i in range(k)] + [n + off + i for i in range(k)]
            out += [p.embed(2 * n, positions) for p in f.multiplication()]
        return tuple(out)

    def left_mult_matrix(self, nvars: int | None = None, offset: int = 0) -> list[list[Poly]]:
        n = self.dim
        nvars = n if nvars is None else nvars
        zero = Poly.zero(nvars)
        m = [[zero] * n for _ in range(n)]
        for f, off in zip(self.factors, self.offsets()):
            block = f.left_mult_matrix(nvars, offset + off)
            for i in range(f.degree):
                for j in range(f.degree):
                    m[off + i][off + j] = block[i][j]
        return m

    def norm_form(self) -> NormForm:
        return NormForm(self, det(self.left_mult_matrix()))

    def label(self) -> str:
        return " x ".join(f.label() for f in self.factors)

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data, path: str = "$") -> "EtaleAlgebra":
        if not isinstance(data, dict) or set(data) != {"factors"}:
            raise ParseError(path, "algebra must be an object with key factors")
        raw = data["factors"]
        if not isinstance(raw, list) or not raw:
            raise ParseError(f"{path}.factors", "must be a non-empty array")
        factors = []
        for i, f in enumerate(raw):
            fp = f"{path}.factors[{i}]"
            if not isinstance(f, dict) or set(f) != {"minpoly_coeffs"}:
                raise ParseError(fp, "factor must be an object with key minpoly_coeffs")
            coeffs = f["minpoly_coeffs"]
            if not isinstance(coeffs, list) or not all(isinstance(c, str) for c in coeffs):
                raise ParseError(f"{fp}.minpoly_coeffs", "must be an array of rational strings")
            try:
                factors.append(FieldExtension(tuple(as_rational(c) for c in coeffs)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(fp, str(exc)) from None
        return cls(tuple(factors))
