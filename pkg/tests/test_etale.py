from fractions import Fraction

import pytest

from monoidforms.etale import EtaleAlgebra, FieldExtension, has_rational_root, is_rational_square, quadratic_iso
from monoidforms.exactpoly import ParseError, Poly

from _forms import form, poly

QUAD_DS = [2, 3, 5, -1, -7, Fraction(1, 2)]
CUBICS = [(-2, 0, 0, 1), (1, 1, 0, 1)]


def algebras():
    Q = FieldExtension.rational()
    out = [EtaleAlgebra.split(n) for n in (1, 2, 3)]
    for d in QUAD_DS:
        L = FieldExtension.quadratic(d)
        out += [EtaleAlgebra.of(L), EtaleAlgebra.of(Q, L), EtaleAlgebra.of(L, Q)]
    out += [EtaleAlgebra.of(FieldExtension(c)) for c in CUBICS]
    return out


ALGEBRAS = algebras()
IDS = [a.label() for a in ALGEBRAS]


def apply(mult, xs, ys):
    return [p.subst(list(xs) + list(ys)) for p in mult]


def blocks(n, count):
    g = Poly.gens(count * n)
    return [g[i * n:(i + 1) * n] for i in range(count)]


# -- field multiplication ---------------------------------------------------------

def test_rational_field_multiplication():
    assert FieldExtension.rational().multiplication() == form(1, "x1*y1")


def test_quadratic_multiplication():
    for d in (2, 5, -1):
        got = FieldExtension.quadratic(d).multiplication()
        assert got == form(2, f"x1*y1 + {d}*x2*y2", "x1*y2 + x2*y1")


def test_cube_root_two_multiplication():
    got = FieldExtension((-2, 0, 0, 1)).multiplication()
    assert got == form(3, "x1*y1 + 2*x2*y3 + 2*x3*y2", "x1*y2 + x2*y1 + 2*x3*y3", "x1*y3 + x2*y2 + x3*y1")


def test_cubic_a3_a_1_multiplication():
    got = FieldExtension((1, 1, 0, 1)).multiplication()
    assert got == form(
        3,
        "x1*y1 - x2*y3 - x3*y2",
        "x1*y2 + x2*y1 - x2*y3 - x3*y2 - x3*y3",
        "x1*y3 + x2*y2 + x3*y1 - x3*y3",
    )


def test_power_table_reduces_modulo_minpoly():
    # a^3 = 2, a^4 = 2a in Q(cbrt 2)
    table = FieldExtension((-2, 0, 0, 1)).power_table
    assert tuple(table[3]) == (2, 0, 0)
    assert tuple(table[4]) == (0, 2, 0)


# -- algebra multiplication ---------------------------------------------------------

def test_split_two():
    assert EtaleAlgebra.split(2).multiplication() == form(2, "x1*y1", "x2*y2")


def test_single_quadratic_factor():
    a = EtaleAlgebra.of(FieldExtension.quadratic(3))
    assert a.multiplication() == form(2, "x1*y1 + 3*x2*y2", "x1*y2 + x2*y1")


def test_block_assembly():
    d = 7
    a = EtaleAlgebra.of(FieldExtension.rational(), FieldExtension.quadratic(d))
    assert a.multiplication() == form(3, "x1*y1", f"x2*y2 + {d}*x3*y3", "x2*y3 + x3*y2")
    assert a.unit() == (1, 1, 0)


# -- norm -----------------------------------------------------------------------------

def test_norm_examples():
    assert EtaleAlgebra.split(2).norm_form().poly == poly(2, "x1*x2", blocks="x")
    assert EtaleAlgebra.of(FieldExtension.quadratic(5)).norm_form().poly == poly(2, "x1**2 - 5*x2**2", blocks="x")
    cbrt2 = EtaleAlgebra.of(FieldExtension((-2, 0, 0, 1)))
    assert cbrt2.norm_form().poly == poly(3, "x1**3 + 2*x2**3 + 4*x3**3 - 6*x1*x2*x3", blocks="x")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_split_norm_is_product_of_variables(n):
    g = Poly.gens(n)
    prod = Poly.one(n)
    for v in g:
        prod = prod * v
    assert EtaleAlgebra.split(n).norm_form().poly == prod


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_norm_multiplicative(alg):
    n = alg.dim
    N = alg.norm_form().poly
    xs, ys = blocks(n, 2)
    prod = apply(alg.multiplication(), xs, ys)
    assert N.subst(prod) == N.subst(list(xs)) * N.subst(list(ys))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_norm_of_unit(alg):
    N = alg.norm_form().poly
    unit = [Poly.const(alg.dim, u) for u in alg.unit()]
    assert N.subst(unit) == Poly.one(alg.dim)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_norm_is_product_of_factor_norms(alg):
    N = Poly.one(alg.dim)
    for f, off in zip(alg.factors, alg.offsets()):
        N = N * f.norm().embed(alg.dim, list(range(off, off + f.degree)))
    assert alg.norm_form().poly == N


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_algebra_is_commutative_unital_associative(alg):
    n = alg.dim
    m = alg.multiplication()
    xs, ys, zs = blocks(n, 3)
    assert apply(m, xs, ys) == apply(m, ys, xs)
    unit = [Poly.const(3 * n, u) for u in alg.unit()]
    assert apply(m, unit, ys) == list(ys)
    assert apply(m, apply(m, xs, ys), zs) == apply(m, xs, apply(m, ys, zs))


# -- field checks ----------------------------------------------------------------------

def test_quadratic_iso():
    assert quadratic_iso(8, 2) is True
    assert quadratic_iso(2, 3) is False
    assert quadratic_iso(Fraction(1, 2), 2) is True
    assert quadratic_iso(-1, -4) is True
    assert quadratic_iso(-1, -3) is False
    with pytest.raises(ValueError):
        quadratic_iso(4, 2)
    with pytest.raises(ValueError):
        quadratic_iso(0, 2)


def test_rational_square():
    assert is_rational_square(Fraction(9, 4))
    assert is_rational_square(0)
    assert not is_rational_square(-4)
    assert not is_rational_square(Fraction(2, 9))


@pytest.mark.parametrize("coeffs", [(-1, 0, 1), (-4, 0, 1), (-1, 0, 0, 1), (-6, 11, -6, 1)])
def test_reducible_minpolys_rejected(coeffs):
    with pytest.raises(ValueError):
        FieldExtension(coeffs)


def test_minpoly_must_be_monic():
    with pytest.raises(ValueError):
        FieldExtension((1, 0, 2))


def test_degree_four_needs_assertion():
    with pytest.raises(ValueError):
        FieldExtension((-2, 0, 0, 0, 1))
    assert FieldExtension((-2, 0, 0, 0, 1), assume_irreducible=True).degree == 4


def test_rational_root_test():
    assert has_rational_root([Fraction(-1, 8), 0, 0, 1])
    assert not has_rational_root([-2, 0, 0, 1])


def test_discriminants():
    assert FieldExtension((-2, 0, 0, 1)).discriminant() == -108
    assert FieldExtension((1, 1, 0, 1)).discriminant() == -31
    assert FieldExtension.quadratic(5).discriminant() == 20


def test_degree_one_with_nonzero_root():
    L = FieldExtension((-3, 1))
    assert L.degree == 1
    assert L.multiplication() == form(1, "x1*y1")


def test_algebra_json_round_trip():
    a = EtaleAlgebra.of(FieldExtension.quadratic(Fraction(-7, 3)), FieldExtension.rational())
    assert EtaleAlgebra.from_json(a.to_json()) == a
    assert a.to_json() == {"factors": [{"minpoly_coeffs": ["7/3", "0", "1"]}, {"minpoly_coeffs": ["0", "1"]}]}


@pytest.mark.parametrize(
    "data",
    [{}, {"factors": []}, {"factors": [{"minpoly_coeffs": ["-4", "0", "1"]}]},
     {"factors": [{"minpoly_coeffs": ["x"]}]}, {"factors": [{"coeffs": ["0", "1"]}]}],
)
def test_algebra_json_rejects(data):
    with pytest.raises(ParseError):
        EtaleAlgebra.from_json(data)
