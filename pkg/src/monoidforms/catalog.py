"""Constructors for the classified monoid families on A^1, A^2, A^3 and the
three generic families (rank 0, corank 0, corank 1) in any dimension."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .etale import EtaleAlgebra, FieldExtension
from .exactpoly import DivisionFailure, Poly, as_rational, divexact
from .monoidcore import MonoidStructure, monoid_to_dict, verify_axioms


class ConstructionError(RuntimeError):
    """A catalog constructor produced a structure failing the monoid axioms."""


def _verified(m: MonoidStructure) -> MonoidStructure:
    report = verify_axioms(m)
    if not report.ok:
        raise ConstructionError(f"{m.label} fails the axioms; witness {report.witness}")
    return m


@dataclass(frozen=True)
class CorankOneSpec:
    algebras: tuple
    weights: tuple

    def __post_init__(self):
        algebras, weights = tuple(self.algebras), tuple(self.weights)
        if not algebras or len(algebras) != len(weights):
            raise ValueError("need one weight per algebra, at least one algebra")
        if any(not isinstance(w, int) or w < 0 for w in weights):
            raise ValueError("weights must be nonnegative integers")
        if any(a >= b for a, b in zip(weights, weights[1:])):
            raise ValueError("weights must be strictly increasing")
        object.__setattr__(self, "algebras", algebras)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return sum(a.dim for a in self.algebras) + 1


@dataclass(frozen=True)
class QBCParams:
    b: int
    c: int
    d: int = field(init=False)
    e: int = field(init=False)

    def __post_init__(self):
        if not (isinstance(self.b, int) and isinstance(self.c, int)):
            raise TypeError("b and c must be integers")
        if not 0 < self.b <= self.c:
            raise ValueError(f"need 0 < b <= c, got b={self.b}, c={self.c}")
        d, e = divmod(self.c, self.b)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "e", e)


def build_rank0(n: int) -> MonoidStructure:
    """G_a^n: coordinatewise addition."""
    if n < 1:
        raise ValueError("n must be positive")
    g = Poly.gens(2 * n)
    mult = tuple(g[i] + g[n + i] for i in range(n))
    label = "A" if n == 1 else f"{n}A"
    return _verified(MonoidStructure(n, mult, (0,) * n, rank=0, corank=n, label=label))


def _corank0_label(a: EtaleAlgebra) -> str:
    degrees = [f.degree for f in a.factors]
    parts = []
    for f in a.factors:
        if f.degree == 1:
            parts.append("M")
        elif len(degrees) == 1 and f.degree == 2:
            parts.append(f"M({f.label()})")
        else:
            parts.append(f"M^{f.degree}({f.label()})")
    return "+".join(parts)


def build_corank0(a: EtaleAlgebra, label: str | None = None) -> MonoidStructure:
    """Multiplicative monoid of a separable algebra."""
    return _verified(MonoidStructure(
        a.dim, a.multiplication(), a.unit(), rank=a.dim, corank=0,
        label=label or _corank0_label(a),
    ))


def build_corank1(spec: CorankOneSpec, label: str | None = None) -> MonoidStructure:
    """Blocks multiply in their algebras; the last coordinate is
    N(x_1)^c_1...N(x_k)^c_k * y + N(y_1)^c_1...N(y_k)^c_k * x."""
    n = spec.dim
    nv = 2 * n
    mult: list[Poly] = []
    norm_x = Poly.one(nv)
    norm_y = Poly.one(nv)
    off = 0
    for alg, w in zip(spec.algebras, spec.weights):
        k = alg.dim
        xs = [off + i for i in range(k)]
        ys = [n + off + i for i in range(k)]
        mult += [p.embed(nv, xs + ys) for p in alg.multiplication()]
        if w:
            norm = alg.norm_form().poly
            norm_x = norm_x * norm.embed(nv, xs) ** w
            norm_y = norm_y * norm.embed(nv, ys) ** w
        off += k
    x_last, y_last = Poly.var(nv, n - 1), Poly.var(nv, nv - 1)
    mult.append(norm_x * y_last + norm_y * x_last)
    unit = []
    for alg in spec.algebras:
        unit += list(alg.unit())
    unit.append(Fraction(0))
    if label is None:
        blocks = "+".join(_corank0_label(a) for a in spec.algebras)
        label = f"{blocks}+A(c={','.join(map(str, spec.weights))})"
    return _verified(MonoidStructure(n, tuple(mult), tuple(unit), rank=n - 1, corank=1, label=label))


def split_corank1(b: Sequence[int]) -> MonoidStructure:
    """(x1y1, ..., x_{n-1}y_{n-1}, x^b y_n + y^b x_n) for a nondecreasing b vector,
    assembled from constant blocks of b."""
    b = list(b)
    if any(x > y for x, y in zip(b, b[1:])) or any(x < 0 for x in b) or not b:
        raise ValueError("b must be a non-empty nondecreasing vector of nonnegative integers")
    algebras, weights = [], []
    for v in b:
        if weights and weights[-1] == v:
            algebras[-1] += 1
        else:
            weights.append(v)
            algebras.append(1)
    spec = CorankOneSpec(tuple(EtaleAlgebra.split(k) for k in algebras), tuple(weights))
    return build_corank1(spec, label=f"split corank 1 (b={','.join(map(str, b))})")


def q_poly(p: QBCParams) -> Poly:
    """The quotient ((x1^b y2 + y1^b x2)^(d+1) - (x1^b y2)^(d+1) - (y1^b x2)^(d+1))
    / (x1 y1)^(b-e), in variables ordered (x1, x2, y1, y2)."""
    x1, x2, y1, y2 = Poly.gens(4)
    u, v = x1 ** p.b * y2, y1 ** p.b * x2
    k = p.d + 1
    numerator = (u + v) ** k - u ** k - v ** k
    q = divexact(numerator, (x1 * y1) ** (p.b - p.e))
    if q is None:
        raise DivisionFailure(f"Q_{{b,c}} numerator not divisible for b={p.b}, c={p.c}")
    return q


def _rank1_dim3(b: int, c: int, extra: Poly | None, label: str) -> MonoidStructure:
    x1, x2, x3, y1, y2, y3 = Poly.gens(6)
    third = x1 ** c * y3 + y1 ** c * x3
    if extra is not None:
        third = third + extra
    mult = (x1 * y1, x1 ** b * y2 + y1 ** b * x2, third)
    return _verified(MonoidStructure(3, mult, (1, 0, 0), rank=1, corank=2, label=label))


def build_rank1_dim3_plain(b: int, c: int) -> MonoidStructure:
    """(x1y1, x1^b y2 + y1^b x2, x1^c y3 + y1^c x3) for 0 <= b <= c."""
    if not 0 <= b <= c:
        raise ValueError(f"need 0 <= b <= c, got b={b}, c={c}")
    return _rank1_dim3(b, c, None, f"M+A+A(b={b},c={c})")


def build_rank1_dim3_deformed(p: QBCParams) -> MonoidStructure:
    """The plain family with Q_{b,c}(x1, y1, x2, y2) added to the third coordinate."""
    q = q_poly(p).embed(6, [0, 1, 3, 4])
    return _rank1_dim3(p.b, p.c, q, f"M+A+A(b={p.b},c={p.c},Q)")


def build_mma(b: int, c: int) -> MonoidStructure:
    """(x1y1, x2y2, x1^b x2^c y3 + y1^b y2^c x3) for 0 <= b <= c."""
    if not 0 <= b <= c:
        raise ValueError(f"need 0 <= b <= c, got b={b}, c={c}")
    q = EtaleAlgebra.split(1)
    if b == c:
        spec = CorankOneSpec((EtaleAlgebra.split(2),), (b,))
    else:
        spec = CorankOneSpec((q, q), (b, c))
    return build_corank1(spec, label=f"M+M+A(b={b},c={c})")


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: dict
    monoid: MonoidStructure

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.params, "monoid": monoid_to_dict(self.monoid)}


def _dedupe(items):
    seen, out = set(), []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return out


def enumerate_entries(
    n: int,
    bound: int = 0,
    quadratic_ds: Sequence = (),
    cubic_minpolys: Sequence = (),
) -> list[CatalogEntry]:
    """One entry per table row and admissible parameter tuple, in table order.

    ``cubic_minpolys`` holds FieldExtensions or coefficient lists (low-to-high).
    """
    if n not in (1, 2, 3):
        raise ValueError("dimension must be 1, 2 or 3")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    ds = _dedupe(as_rational(d) for d in quadratic_ds)
    quads = [FieldExtension.quadratic(d) for d in ds]
    cubics = _dedupe(
        c if isinstance(c, FieldExtension) else FieldExtension(tuple(c)) for c in cubic_minpolys
    )
    if any(c.degree != 3 for c in cubics):
        raise ValueError("cubic_minpolys must have degree 3")
    Q = FieldExtension.rational()
    out: list[CatalogEntry] = []

    def add(family, params, m):
        out.append(CatalogEntry(family, params, m))

    pairs = [(b, c) for b in range(bound + 1) for c in range(b, bound + 1)]
    if n == 1:
        add("A", {}, build_rank0(1))
        add("M", {}, build_corank0(EtaleAlgebra.split(1)))
    elif n == 2:
        add("2A", {}, build_rank0(2))
        for b in range(bound + 1):
            spec = CorankOneSpec((EtaleAlgebra.split(1),), (b,))
            add("M+A", {"b": b}, build_corank1(spec, label=f"M+A(b={b})"))
        add("M+M", {}, build_corank0(EtaleAlgebra.split(2)))
        for d, L in zip(ds, quads):
            add("M(L)", {"d": str(d)}, build_corank0(EtaleAlgebra.of(L)))
    else:
        add("3A", {}, build_rank0(3))
        for b, c in pairs:
            add("M+A+A", {"b": b, "c": c}, build_rank1_dim3_plain(b, c))
        for b, c in pairs:
            if b > 0:
                add("M+A+A(Q)", {"b": b, "c": c}, build_rank1_dim3_deformed(QBCParams(b, c)))
        for b, c in pairs:
            add("M+M+A", {"b": b, "c": c}, build_mma(b, c))
        for d, L in zip(ds, quads):
            for c in range(bound + 1):
                spec = CorankOneSpec((EtaleAlgebra.of(L),), (c,))
                add("M^2(L)+A", {"d": str(d), "c": c},
                    build_corank1(spec, label=f"M^2({L.label()})+A(c={c})"))
        add("M+M+M", {}, build_corank0(EtaleAlgebra.split(3)))
        for d, L in zip(ds, quads):
            add("M^2(L)+M", {"d": str(d)}, build_corank0(EtaleAlgebra.of(L, Q)))
        for L in cubics:
            add("M^3(L)", {"minpoly_coeffs": [str(c) for c in L.coeffs]},
                build_corank0(EtaleAlgebra.of(L)))
    return out


def enumerate_dim(n: int, bound: int = 0, quadratic_ds: Sequence = (),
                  cubic_minpolys: Sequence = ()) -> list[MonoidStructure]:
    return [e.monoid for e in enumerate_entries(n, bound, quadratic_ds, cubic_minpolys)]
