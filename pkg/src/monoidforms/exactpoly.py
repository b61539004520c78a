"""Exact sparse multivariate (Laurent) polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero rational coefficients.
Integral coefficients are kept as ``int`` and the rest as ``Fraction``; both
compare and hash consistently, and ``int`` arithmetic is much cheaper.

Canonical term order is descending lexicographic on exponent tuples, so the
first term is the leading term used by exact division.

    >>> x, y = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    >>> (x - y) * (x + y) == x**2 - y**2
    True
"""

from __future__ import annotations

import re
from fractions import Fraction
from operator import add
from typing import Mapping, Sequence, Union

Rational = Fraction
Exps = tuple  # tuple[int, ...]
Scalar = Union[int, Fraction]

_INT_RE = re.compile(r"-?(0|[1-9][0-9]*)")
_POS_RE = re.compile(r"[1-9][0-9]*")


class ParseError(ValueError):
    """Malformed serialized data; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DivisionFailure(ArithmeticError):
    """Raised where exact divisibility is guaranteed but did not hold."""


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or decimal/fraction string to ``Fraction``."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _scalar(c) -> Scalar:
    return _norm(as_rational(c))


class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` variables (integer exponents)."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if not isinstance(nvars, int) or nvars < 0:
            raise ValueError(f"nvars must be a nonnegative integer, got {nvars!r}")
        clean: dict = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            c = _scalar(c)
            c = clean.get(exps, 0) + c
            clean[exps] = c
        self.nvars = nvars
        self._terms = {e: _norm(c) for e, c in clean.items() if c != 0}
        self._hash = None
        self._check_exponents()

    def _check_exponents(self) -> None:
        pass

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        # trusted constructor: terms already normalized, no zeros
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c=1):
        c = _scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def one(cls, nvars: int):
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, index: int):
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1):
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def gens(cls, nvars: int) -> list:
        return [cls.var(nvars, i) for i in range(nvars)]

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> list[tuple[Exps, Fraction]]:
        """Terms in canonical (descending lex) order with Fraction coefficients."""
        return [(e, Fraction(self._terms[e])) for e in sorted(self._terms, reverse=True)]

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return Fraction(self._terms.get(tuple(exps), 0))

    def leading_term(self) -> tuple[Exps, Scalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def min_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(map(min, zip(*self._terms)))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exps in self._terms for e in exps)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def has_integer_coefficients(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self._terms.get((0,) * self.nvars, 0))

    def to_poly(self) -> "Poly":
        """Convert to ``Poly``; raises ValueError if some exponent is negative."""
        if isinstance(self, Poly):
            return self
        if not self.is_polynomial():
            raise ValueError("Laurent polynomial has negative exponents")
        return Poly._raw(self.nvars, self._terms)

    def to_laurent(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return type(self).const(self.nvars, other)
        return None

    def _cls(self, other: "LaurentPoly"):
        return Poly if isinstance(self, Poly) and isinstance(other, Poly) else LaurentPoly

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = _norm(s)
        return self._cls(other)._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        out = {e: _norm(c) for e, c in out.items() if c != 0}
        return self._cls(other)._raw(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = _scalar(c)
        if c == 0:
            return type(self).zero(self.nvars)
        return type(self)._raw(self.nvars, {e: _norm(v * c) for e, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            inv = LaurentPoly._raw(self.nvars, {tuple(-x for x in e): _norm(1 / Fraction(c))})
            return inv ** (-k)
        result = type(self).one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == LaurentPoly.const(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- structural maps ----------------------------------------------------

    def subst(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Substitute ``images[i]`` for variable ``i`` simultaneously.

        Negative exponents require the corresponding image to be a monomial.
        The result is a ``Poly`` whenever no negative exponent survives.
        """
        if len(images) != self.nvars:
            raise ValueError(f"expected {self.nvars} images, got {len(images)}")
        if not images:
            raise ValueError("cannot substitute into a polynomial in zero variables")
        m = images[0].nvars
        for im in images:
            if not isinstance(im, LaurentPoly) or im.nvars != m:
                raise ValueError("all images must be polynomials in a common variable count")
        powers: list[dict] = [{} for _ in images]

        def power(i: int, k: int):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        acc: dict = {}
        one = LaurentPoly.one(m)
        for exps, c in self._terms.items():
            term = one
            for i, k in enumerate(exps):
                if k:
                    term = term * power(i, k)
            for e, v in term._terms.items():
                acc[e] = acc.get(e, 0) + v * c
        out = {e: _norm(c) for e, c in acc.items() if c != 0}
        if all(k >= 0 for e in out for k in e):
            return Poly._raw(m, out)
        return LaurentPoly._raw(m, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "LaurentPoly":
        """Rename variable ``i`` to ``positions[i]`` in an ambient space of ``nvars``."""
        if len(positions) != self.nvars:
            raise ValueError("positions must list one target per variable")
        out = {}
        for exps, c in self._terms.items():
            new = [0] * nvars
            for p, k in zip(positions, exps):
                new[p] += k
            out[tuple(new)] = c
        return type(self)._raw(nvars, out)

    def split_by_var(self, index: int) -> dict[int, "LaurentPoly"]:
        """Group terms by the exponent of one variable, which is dropped."""
        groups: dict[int, dict] = {}
        for exps, c in self._terms.items():
            key = exps[index]
            rest = exps[:index] + exps[index + 1:]
            groups.setdefault(key, {})[rest] = c
        return {k: type(self)._raw(self.nvars - 1, v) for k, v in groups.items()}

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"num": str(c.numerator), "den": str(c.denominator), "exps": list(e)}
                for e, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data, path: str = "$"):
        """Parse the canonical JSON encoding; non-canonical input is rejected."""
        if not isinstance(data, dict):
            raise ParseError(path, "polynomial must be an object")
        if set(data) != {"nvars", "terms"}:
            raise ParseError(path, f"expected keys nvars, terms; got {sorted(data)}")
        nvars = data["nvars"]
        if not isinstance(nvars, int) or isinstance(nvars, bool) or nvars < 1:
            raise ParseError(f"{path}.nvars", "must be a positive integer")
        raw_terms = data["terms"]
        if not isinstance(raw_terms, list):
            raise ParseError(f"{path}.terms", "must be an array")
        terms: dict = {}
        prev = None
        for i, t in enumerate(raw_terms):
            tp = f"{path}.terms[{i}]"
            if not isinstance(t, dict) or set(t) != {"num", "den", "exps"}:
                raise ParseError(tp, "term must be an object with keys num, den, exps")
            num, den, exps = t["num"], t["den"], t["exps"]
            if not isinstance(num, str) or not _INT_RE.fullmatch(num):
                raise ParseError(f"{tp}.num", "must be a decimal integer string")
            if not isinstance(den, str) or not _POS_RE.fullmatch(den):
                raise ParseError(f"{tp}.den", "must be a positive decimal integer string")
            c = Fraction(int(num), int(den))
            if c == 0:
                raise ParseError(f"{tp}.num", "zero coefficients are not stored")
            if c.denominator != int(den):
                raise ParseError(tp, "coefficient not in lowest terms")
            if not isinstance(exps, list) or any(
                not isinstance(e, int) or isinstance(e, bool) for e in exps
            ):
                raise ParseError(f"{tp}.exps", "must be an array of integers")
            if len(exps) != nvars:
                raise ParseError(f"{tp}.exps", f"length {len(exps)} != nvars {nvars}")
            if cls is Poly and any(e < 0 for e in exps):
                raise ParseError(f"{tp}.exps", "negative exponent in a polynomial")
            key = tuple(exps)
            if prev is not None and not key < prev:
                raise ParseError(tp, "terms not in canonical descending lex order")
            prev = key
            terms[key] = _norm(c)
        return cls._raw(nvars, terms)

    # -- display ------------------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"v{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.nvars}, {self.format()!r})"


class Poly(LaurentPoly):
    """Sparse polynomial: a Laurent polynomial with nonnegative exponents."""

    __slots__ = ()

    def _check_exponents(self) -> None:
        for exps in self._terms:
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent {exps} in a Poly")


def divexact(p: Poly, d: Poly) -> Poly | None:
    """Return ``q`` with ``q * d == p``, or None when ``d`` does not divide ``p``.

    Leading-term long division in descending lex order; if ``d`` divides ``p``
    every leading term of the running remainder is divisible by lt(d).
    """
    if p.nvars != d.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {d.nvars}")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    d_exps, d_c = d.leading_term()
    d_c = Fraction(d_c)
    rem = dict(p._terms)
    quot: dict = {}
    d_rest = [(e, c) for e, c in d._terms.items() if e != d_exps]
    while rem:
        r_exps = max(rem)
        q_exps = tuple(a - b for a, b in zip(r_exps, d_exps))
        if any(k < 0 for k in q_exps):
            return None
        q_c = _norm(rem.pop(r_exps) / d_c)
        quot[q_exps] = q_c
        for e, c in d_rest:
            key = tuple(map(add, q_exps, e))
            v = rem.get(key, 0) - q_c * c
            if v == 0:
                rem.pop(key, None)
            else:
                rem[key] = _norm(v)
    return Poly._raw(p.nvars, quot)


def det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by fraction-free Bareiss elimination."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a non-empty square matrix")
    nvars = matrix[0][0].nvars
    if any(x.nvars != nvars for row in matrix for x in row):
        raise ValueError("matrix entries must share a variable count")
    m = [list(row) for row in matrix]
    sign = 1
    prev = Poly.one(nvars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return Poly.zero(nvars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = divexact(num, prev)
                if q is None:
                    raise DivisionFailure("Bareiss step was not exact")
                m[i][j] = q
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def variables(nvars: int) -> list[Poly]:
    return Poly.gens(nvars)
