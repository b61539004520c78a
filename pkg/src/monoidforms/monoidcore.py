"""Monoid structures on affine n-space and their symbolic axiom checks.

A structure of dimension n is n polynomials in 2n variables (x1..xn, y1..yn)
giving the coordinates of x*y, together with a rational unit point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactpoly import ParseError, Poly, as_rational


@dataclass(frozen=True)
class MonoidStructure:
    dim: int
    mult: tuple
    unit: tuple
    rank: Optional[int] = None
    corank: Optional[int] = None
    label: Optional[str] = None

    def __post_init__(self):
        n = self.dim
        if not isinstance(n, int) or n < 1:
            raise ValueError("dim must be a positive integer")
        mult = tuple(self.mult)
        unit = tuple(as_rational(u) for u in self.unit)
        if len(mult) != n or len(unit) != n:
            raise ValueError(f"need {n} multiplication polynomials and {n} unit coordinates")
        for p in mult:
            if not isinstance(p, Poly) or p.nvars != 2 * n:
                raise ValueError(f"multiplication coordinates must be Polys in {2 * n} variables")
        if self.rank is not None and self.corank is not None and self.rank + self.corank != n:
            raise ValueError("rank + corank must equal dim")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", unit)

    def var_names(self) -> list[str]:
        n = self.dim
        return [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]

    def format(self) -> str:
        names = self.var_names()
        body = ", ".join(p.format(names) for p in self.mult)
        head = f"{self.label}: " if self.label else ""
        return f"{head}x*y = ({body}), e = ({', '.join(str(u) for u in self.unit)})"

    def compose(self, left: list, right: list) -> list:
        """Coordinates of left*right for coordinate lists of polynomials."""
        images = list(left) + list(right)
        return [p.subst(images) for p in self.mult]


@dataclass(frozen=True)
class AxiomReport:
    associative: bool
    commutative: bool
    unital: bool
    witness: Optional[Poly] = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.associative and self.commutative and self.unital

    def to_json(self) -> dict:
        return {
            "associative": self.associative,
            "commutative": self.commutative,
            "unital": self.unital,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _first_difference(lhs: list, rhs: list) -> Optional[Poly]:
    for a, b in zip(lhs, rhs):
        diff = a - b
        if not diff.is_zero():
            return diff
    return None


def verify_axioms(m: MonoidStructure) -> AxiomReport:
    """Check associativity, commutativity and the unit as exact identities.

    The witness is the first nonzero coordinate difference of the first failing
    axiom, in the order associativity, commutativity, unit.
    """
    n = m.dim
    for p in m.mult:
        if p.nvars != 2 * n:
            raise ValueError("multiplication arity does not match dim")
    g3 = Poly.gens(3 * n)
    xs, ys, zs = g3[:n], g3[n:2 * n], g3[2 * n:]
    xy = m.compose(xs, ys)
    yz = m.compose(ys, zs)
    witness = _first_difference(m.compose(xy, zs), m.compose(xs, yz))
    associative = witness is None

    g2 = Poly.gens(2 * n)
    xs2, ys2 = g2[:n], g2[n:]
    comm_w = _first_difference(m.mult, m.compose(ys2, xs2))
    commutative = comm_w is None

    e = [Poly.const(2 * n, u) for u in m.unit]
    unit_w = _first_difference(m.compose(e, ys2), ys2)
    if unit_w is None:
        unit_w = _first_difference(m.compose(xs2, e), xs2)
    unital = unit_w is None

    if witness is None:
        witness = comm_w if comm_w is not None else unit_w
    return AxiomReport(associative, commutative, unital, witness)


def monoid_equal(a: MonoidStructure, b: MonoidStructure) -> bool:
    """Coordinate-level identity (not isomorphism)."""
    return a.dim == b.dim and a.unit == b.unit and a.mult == b.mult


def monoid_to_dict(m: MonoidStructure) -> dict:
    return {
        "dim": m.dim,
        "mult": [p.to_json() for p in m.mult],
        "unit": [str(u) for u in m.unit],
        "rank": m.rank,
        "corank": m.corank,
        "label": m.label,
    }


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, ensure_ascii=False)
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def monoid_to_json(m: MonoidStructure) -> str:
    """Canonical, byte-stable serialization."""
    return dumps(monoid_to_dict(m))


def _parse_rational(s, path: str) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(path, "rational must be a string")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(path, f"not a rational: {s!r}") from None
    if str(q) != s:
        raise ParseError(path, f"rational {s!r} is not in canonical form {str(q)!r}")
    return q


def _optional_nat(data: dict, key: str, path: str) -> Optional[int]:
    v = data[key]
    if v is None:
        return None
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"{path}.{key}", "must be a nonnegative integer or null")
    return v


def monoid_from_dict(data, path: str = "$") -> MonoidStructure:
    keys = {"dim", "mult", "unit", "rank", "corank", "label"}
    if not isinstance(data, dict) or set(data) != keys:
        raise ParseError(path, f"monoid must be an object with keys {sorted(keys)}")
    n = data["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{path}.dim", "must be a positive integer")
    mult, unit = data["mult"], data["unit"]
    if not isinstance(mult, list) or len(mult) != n:
        raise ParseError(f"{path}.mult", f"must be an array of {n} polynomials")
    if not isinstance(unit, list) or len(unit) != n:
        raise ParseError(f"{path}.unit", f"must be an array of {n} rationals")
    polys = []
    for i, p in enumerate(mult):
        poly = Poly.from_json(p, f"{path}.mult[{i}]")
        if poly.nvars != 2 * n:
            raise ParseError(f"{path}.mult[{i}].nvars", f"must be {2 * n}")
        polys.append(poly)
    units = [_parse_rational(u, f"{path}.unit[{i}]") for i, u in enumerate(unit)]
    rank = _optional_nat(data, "rank", path)
    corank = _optional_nat(data, "corank", path)
    label = data["label"]
    if label is not None and not isinstance(label, str):
        raise ParseError(f"{path}.label", "must be a string or null")
    try:
        return MonoidStructure(n, tuple(polys), tuple(units), rank, corank, label)
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def monoid_from_json(text: str) -> MonoidStructure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return monoid_from_dict(data)
