"""Quadratic Galois descent: twisting a split monoid by a splitting matrix.

For L = Q(sqrt(d)) with Galois group {1, sigma}, a splitting matrix P over L
sends twisted coordinates to split ones, and the twisted multiplication is

    m'(x, y) = P^-1 m(P x, P y).

With phi = P^-1 the attached cocycle is f(sigma) = P sigma(P)^-1, so a valid
pair satisfies f(sigma) sigma(P) = P and f(sigma) sigma(f(sigma)) = 1.
Arithmetic over L uses one extra polynomial variable s reduced by s^2 = d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .etale import is_rational_square
from .exactpoly import ParseError, Poly, as_rational
from .monoidcore import MonoidStructure


class RationalityFailure(ArithmeticError):
    """A twisted coefficient has a nonzero sqrt(d)-part."""


class CocycleViolation(RationalityFailure):
    """The splitting matrix and cocycle are not descent-compatible."""


class SingularSplitting(ValueError):
    pass


@dataclass(frozen=True)
class QuadExt:
    d: Fraction

    def __post_init__(self):
        d = as_rational(self.d)
        if d == 0 or is_rational_square(d):
            raise ValueError(f"d = {d} must be a nonzero non-square")
        object.__setattr__(self, "d", d)

    def __call__(self, a=0, b=0) -> "QuadElement":
        return QuadElement(as_rational(a), as_rational(b), self)

    @property
    def sqrt(self) -> "QuadElement":
        return self(0, 1)


@dataclass(frozen=True)
class QuadElement:
    """a + b*sqrt(d)."""

    a: Fraction
    b: Fraction
    ext: QuadExt

    def _lift(self, other) -> "QuadElement":
        if isinstance(other, QuadElement):
            if other.ext != self.ext:
                raise ValueError("elements of different quadratic fields")
            return other
        return self.ext(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return QuadElement(self.a + o.a, self.b + o.b, self.ext)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.ext)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        d = self.ext.d
        return QuadElement(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.ext)

    __rmul__ = __mul__

    def conj(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.ext)

    def norm(self) -> Fraction:
        return self.a * self.a - self.ext.d * self.b * self.b

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadElement(self.a / n, -self.b / n, self.ext)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0


Matrix = tuple  # tuple of tuple of QuadElement


def identity(ext: QuadExt, n: int) -> Matrix:
    return tuple(tuple(ext(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    ext = a[0][0].ext
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ext(0)
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def conj(a: Matrix) -> Matrix:
    return tuple(tuple(x.conj() for x in row) for row in a)


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q(sqrt(d))."""
    n = len(a)
    ext = a[0][0].ext
    aug = [list(row) + list(r) for row, r in zip(a, identity(ext, n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise SingularSplitting("splitting matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class SplittingMatrix:
    """P over Q(sqrt(d)) together with the cocycle value f(sigma)."""

    ext: QuadExt
    entries: Matrix
    cocycle: Matrix
    pairs: Optional[tuple] = None

    def __post_init__(self):
        n = len(self.entries)
        for m in (self.entries, self.cocycle):
            if n == 0 or len(m) != n or any(len(r) != n for r in m):
                raise ValueError("splitting data must be square matrices of equal size")
            if any(x.ext != self.ext for r in m for x in r):
                raise ValueError("matrix entries must lie in the given quadratic field")
        _ = self.inverse  # raises SingularSplitting

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def inverse(self) -> Matrix:
        return inverse(self.entries)

    def to_json(self) -> dict:
        if self.pairs is None:
            raise ValueError("only coordinate-swap splittings have a JSON form")
        return {"d": str(self.ext.d), "pairs": [list(p) for p in self.pairs], "dim": self.n}

    @classmethod
    def from_json(cls, data, path: str = "$") -> "SplittingMatrix":
        if not isinstance(data, dict) or set(data) != {"d", "pairs", "dim"}:
            raise ParseError(path, "splitting must be an object with keys d, pairs, dim")
        dim, pairs, d = data["dim"], data["pairs"], data["d"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ParseError(f"{path}.dim", "must be a positive integer")
        if not isinstance(d, str):
            raise ParseError(f"{path}.d", "must be a rational string")
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(i, int) for i in p)
            for p in pairs
        ):
            raise ParseError(f"{path}.pairs", "must be an array of [i, j] integer pairs")
        try:
            ext = QuadExt(as_rational(d))
            return standard_splitting(ext, [tuple(p) for p in pairs], dim)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(path, str(exc)) from None


def check_cocycle(p: SplittingMatrix) -> bool:
    """f(sigma) sigma(f(sigma)) = 1 and f(sigma) sigma(P) = P."""
    f = p.cocycle
    one = identity(p.ext, p.n)
    return matmul(f, conj(f)) == one and matmul(f, conj(p.entries)) == p.entries


def standard_splitting(ext: QuadExt, pairs: Sequence[tuple], dim: int) -> SplittingMatrix:
    """Block matrix [[1, sqrt d], [1, -sqrt d]] on each 1-based coordinate pair,
    identity elsewhere; the cocycle swaps each pair."""
    used: set = set()
    for pair in pairs:
        i, j = pair
        if not (1 <= i <= dim and 1 <= j <= dim) or i == j:
            raise ValueError(f"invalid coordinate pair {pair} for dimension {dim}")
        if i in used or j in used:
            raise ValueError(f"pair {pair} overlaps another pair")
        used.update((i, j))
    P = [list(r) for r in identity(ext, dim)]
    F = [list(r) for r in identity(ext, dim)]
    r = ext.sqrt
    for i, j in pairs:
        i, j = i - 1, j - 1
        P[i][i], P[i][j], P[j][i], P[j][j] = ext(1), r, ext(1), -r
        F[i][i], F[i][j], F[j][i], F[j][j] = ext(0), ext(1), ext(1), ext(0)
    return SplittingMatrix(
        ext,
        tuple(map(tuple, P)),
        tuple(map(tuple, F)),
        tuple((int(i), int(j)) for i, j in pairs),
    )


def _reduce(p: Poly, s: int, d: Fraction) -> Poly:
    """Rewrite s^k as d^(k//2) s^(k%2) for the variable at index s."""
    out: dict = {}
    for exps, c in p.items():
        k = exps[s]
        if k > 1:
            c = c * d ** (k // 2)
            exps = exps[:s] + (k % 2,) + exps[s + 1:]
        out[exps] = out.get(exps, 0) + c
    return Poly(p.nvars, out)


def _quad_poly(x: QuadElement, nv: int, s: int) -> Poly:
    return Poly.const(nv, x.a) + Poly.var(nv, s).scale(x.b)


def twist(split: MonoidStructure, p: SplittingMatrix, label: str | None = None) -> MonoidStructure:
    """The Q-rational structure P^-1 m(P x, P y); rank data is inherited."""
    n = split.dim
    if p.n != n:
        raise ValueError(f"splitting matrix has size {p.n}, monoid has dimension {n}")
    if not check_cocycle(p):
        raise CocycleViolation("splitting matrix is not compatible with its cocycle")
    d = p.ext.d
    nv = 2 * n + 1
    s = 2 * n
    P = [[_quad_poly(x, nv, s) for x in row] for row in p.entries]
    Pinv = [[_quad_poly(x, nv, s) for x in row] for row in p.inverse]
    g = Poly.gens(nv)
    images = []
    for offset in (0, n):
        for i in range(n):
            acc = Poly.zero(nv)
            for k in range(n):
                acc = acc + P[i][k] * g[offset + k]
            images.append(acc)
    w = [_reduce(m.subst(images), s, d) for m in split.mult]
    mult = []
    for i in range(n):
        acc = Poly.zero(nv)
        for j in range(n):
            acc = acc + Pinv[i][j] * w[j]
        parts = _reduce(acc, s, d).split_by_var(s)
        if 1 in parts and not parts[1].is_zero():
            raise RationalityFailure(
                f"coordinate {i + 1} has irrational part {parts[1].format(split.var_names())}"
            )
        mult.append(parts.get(0, Poly.zero(2 * n)).to_poly())
    unit = []
    for i in range(n):
        acc = p.ext(0)
        for j in range(n):
            acc = acc + p.inverse[i][j] * split.unit[j]
        if not acc.is_rational():
            raise RationalityFailure(f"unit coordinate {i + 1} is irrational")
        unit.append(acc.a)
    if label is None and split.label is not None:
        label = f"{split.label} twisted by sqrt({d})"
    return MonoidStructure(n, tuple(mult), tuple(unit), split.rank, split.corank, label)
