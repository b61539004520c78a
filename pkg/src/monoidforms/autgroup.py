"""Automorphisms of unit groups and the regularity of the maps they induce.

An automorphism g of the unit group G = G_m^r x G_a^s acts on the torus
coordinates by an integer matrix (monomially) and on the additive coordinates
linearly.  Through the open embedding i: G -> A^n it induces the birational
map i . g . i^-1, which extends to the monoid exactly when it is a polynomial
map, i.e. when no negative exponent appears.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .catalog import QBCParams
from .exactpoly import LaurentPoly, Poly


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("IntMatrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, sigma: Sequence[int]) -> "IntMatrix":
        """Matrix with (P t)_i = t_{sigma^-1(i)}; ``sigma`` is 0-based, sigma[j] = sigma(j)."""
        n = len(sigma)
        if sorted(sigma) != list(range(n)):
            raise ValueError(f"{sigma} is not a permutation of 0..{n - 1}")
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(sigma):
            rows[i][j] = 1
        return cls(tuple(map(tuple, rows)))

    def det(self) -> int:
        """Fraction-free (Bareiss) integer determinant."""
        m = [list(r) for r in self.rows]
        n, sign, prev = self.n, 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if piv is None:
                    return 0
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse(self) -> "IntMatrix":
        """Inverse in GL(n, Z) via the adjugate; requires det = +-1."""
        dt = self.det()
        if dt not in (1, -1):
            raise ValueError("matrix is not in GL(n, Z)")
        n = self.n
        if n == 1:
            return IntMatrix(((dt,),))
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(self.rows) if k != i]
                adj[j][i] = (-1) ** (i + j) * IntMatrix(minor).det()
        return IntMatrix(tuple(tuple(x * dt for x in r) for r in adj))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def is_permutation(self) -> bool:
        return all(sorted(r) == [0] * (self.n - 1) + [1] for r in self.rows) and all(
            sorted(c) == [0] * (self.n - 1) + [1] for c in zip(*self.rows)
        )

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)


def torus_map(a: IntMatrix) -> list[LaurentPoly]:
    """The torus automorphism t -> (prod_j t_j^a_ij)_i as Laurent monomials."""
    return [LaurentPoly.monomial(row) for row in a.rows]


@dataclass(frozen=True)
class UnitGroupAut:
    """(torus matrix, additive matrix); G_m and G_a admit no mixing homomorphisms."""

    torus: IntMatrix
    additive: tuple

    def __post_init__(self):
        add = tuple(tuple(Fraction(x) for x in r) for r in self.additive)
        if add and any(len(r) != len(add) for r in add):
            raise ValueError("additive part must be square")
        object.__setattr__(self, "additive", add)
        if self.torus.det() not in (1, -1):
            raise ValueError("torus part must lie in GL(n, Z)")
        if add and _frac_det(add) == 0:
            raise ValueError("additive part must be invertible")

    @property
    def r(self) -> int:
        return self.torus.n

    @property
    def s(self) -> int:
        return len(self.additive)

    @classmethod
    def identity(cls, r: int, s: int) -> "UnitGroupAut":
        return cls(IntMatrix.identity(r), tuple(tuple(int(i == j) for j in range(s)) for i in range(s)))

    @classmethod
    def linear(cls, alpha, beta, gamma, delta, flip: bool = False) -> "UnitGroupAut":
        """G_m x G_a^2 automorphism; ``flip`` applies t -> 1/t on the torus."""
        return cls(IntMatrix(((-1 if flip else 1,),)), ((alpha, beta), (gamma, delta)))

    def inverse(self) -> "UnitGroupAut":
        return UnitGroupAut(self.torus.inverse(), _frac_inverse(self.additive))


def _frac_det(m) -> Fraction:
    m = [list(r) for r in m]
    n, acc = len(m), Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            acc = -acc
        acc *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return acc


def _frac_inverse(m) -> tuple:
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(r[n:]) for r in aug)


@dataclass(frozen=True)
class EmbeddingData:
    """Open embedding i of the unit group into A^n and its Laurent inverse.

    Group coordinates are (t_1..t_r, v_1..v_s); both maps use n variables.
    """

    family: str
    params: dict
    r: int
    forward: tuple
    inverse: tuple

    @property
    def n(self) -> int:
        return len(self.forward)

    def closed_form(self, g: UnitGroupAut) -> bool:
        """Regularity of the induced map as predicted by the hand computation."""
        if g.r != self.r or g.s != self.n - self.r:
            raise ValueError("automorphism does not match the unit group")
        if self.family == "corank1":
            if not g.torus.is_permutation():
                raise ValueError("closed form covers permutation torus parts only")
            sigma = _sigma_of(g.torus)
            return corank1_regularity(self.params["b"], sigma)
        torus_trivial = g.torus.rows == ((1,),)
        (alpha, beta), (gamma, delta) = g.additive
        if self.family == "plain":
            b, c = self.params["b"], self.params["c"]
            return torus_trivial and (b == c or beta == 0)
        if self.family == "deformed":
            d = self.params["d"]
            return torus_trivial and beta == 0 and delta == alpha ** (d + 1)
        raise ValueError(f"unknown family {self.family!r}")


def _sigma_of(p: IntMatrix) -> tuple:
    # inverse of IntMatrix.permutation: column j has its 1 in row sigma(j)
    return tuple(next(i for i in range(p.n) if p.rows[i][j]) for j in range(p.n))


def plain_embedding(b: int, c: int) -> EmbeddingData:
    """i(t, v1, v2) = (t, t^b v1, t^c v2)."""
    if not 0 <= b <= c:
        raise ValueError("need 0 <= b <= c")
    t, v1, v2 = Poly.gens(3)
    x1, x2, x3 = LaurentPoly.gens(3)
    return EmbeddingData(
        "plain", {"b": b, "c": c}, 1,
        (t, t ** b * v1, t ** c * v2),
        (x1, x1 ** -b * x2, x1 ** -c * x3),
    )


def deformed_embedding(p: QBCParams) -> EmbeddingData:
    """i(t, v1, v2) = (t, t^b v1, t^c (v2 + v1^(d+1)))."""
    t, v1, v2 = Poly.gens(3)
    x1, x2, x3 = LaurentPoly.gens(3)
    k = p.d + 1
    return EmbeddingData(
        "deformed", {"b": p.b, "c": p.c, "d": p.d, "e": p.e}, 1,
        (t, t ** p.b * v1, t ** p.c * (v2 + v1 ** k)),
        (x1, x1 ** -p.b * x2, x1 ** -p.c * x3 - (x1 ** -p.b * x2) ** k),
    )


def corank1_embedding(b: Sequence[int]) -> EmbeddingData:
    """i(t, v) = (t_1, ..., t_{n-1}, t_1^b_1 ... t_{n-1}^b_{n-1} v)."""
    b = tuple(int(x) for x in b)
    if not b or any(x < 0 for x in b):
        raise ValueError("b must be a non-empty vector of nonnegative integers")
    n = len(b) + 1
    g = Poly.gens(n)
    x = LaurentPoly.gens(n)
    weight = Poly.monomial(b + (0,))
    inv_weight = LaurentPoly.monomial(tuple(-k for k in b) + (0,))
    return EmbeddingData(
        "corank1", {"b": list(b)}, n - 1,
        tuple(g[:-1]) + (weight * g[-1],),
        tuple(x[:-1]) + (inv_weight * x[-1],),
    )


def induced_map(e: EmbeddingData, g: UnitGroupAut) -> list[LaurentPoly]:
    """The composite i . g . i^-1 in the ambient coordinates."""
    if g.r != e.r or g.s != e.n - e.r:
        raise ValueError(
            f"automorphism of G_m^{g.r} x G_a^{g.s} does not match embedding with r={e.r}, n={e.n}"
        )
    group = list(e.inverse)
    torus, additive = group[: e.r], group[e.r:]
    new_torus = []
    for row in g.torus.rows:
        acc = LaurentPoly.one(e.n)
        for t, k in zip(torus, row):
            if k:
                acc = acc * t ** k
        new_torus.append(acc)
    new_add = []
    for row in g.additive:
        acc = LaurentPoly.zero(e.n)
        for v, a in zip(additive, row):
            if a:
                acc = acc + v.scale(a)
        new_add.append(acc)
    return [f.subst(new_torus + new_add) for f in e.forward]


def is_regular(images: Sequence[LaurentPoly]) -> bool:
    return all(p.is_polynomial() for p in images)


def corank1_regularity(b: Sequence[int], sigma: Sequence[int]) -> bool:
    """b_sigma(i) = b_i for all i (``sigma`` 0-based)."""
    if sorted(sigma) != list(range(len(b))):
        raise ValueError("sigma must permute the indices of b")
    return all(b[sigma[i]] == b[i] for i in range(len(b)))


def doubly_nonneg_glnz(n: int, bound: int = 2) -> list[IntMatrix]:
    """All g in GL(n, Z) with entries in [0, bound] whose inverse is also nonnegative."""
    if n < 1 or bound < 0:
        raise ValueError("need n >= 1 and bound >= 0")
    out = []
    for flat in itertools.product(range(bound + 1), repeat=n * n):
        m = IntMatrix(tuple(flat[i * n:(i + 1) * n] for i in range(n)))
        if m.det() in (1, -1) and m.inverse().is_nonnegative():
            out.append(m)
    return out
