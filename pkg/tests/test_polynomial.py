import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpinv import (
    AmbientMismatchError,
    FpScalar,
    Monomial,
    Polynomial,
    ZeroPolynomialError,
    lead_term,
    parse_module_spec,
    poly_arith,
)

V2 = parse_module_spec("V2", 3)
V2P2 = parse_module_spec("V2", 2)


def zy(spec):
    return spec.var_poly(1, 0), spec.var_poly(1, 1)


def test_additive_inverse():
    z, y = zy(V2)
    assert (y + z) + (-y) == z
    assert y - y == Polynomial.zero(V2)
    assert not (y - y)


def test_square_char2():
    z, y = zy(V2P2)
    assert z * z == Polynomial.from_monomial(Monomial.from_pairs(V2P2, {V2P2.variable(1, 0): 2}))


def test_degree_p_generator_product():
    # (z + y)(z + 2y) z = z^3 + 2 y^2 z over F_3: the cube term of the
    # orbit product; the 3 z^2 y term vanishes in characteristic 3
    z, y = zy(V2)
    f = (z + y) * (z + 2 * y) * z
    expected = Polynomial(
        V2,
        {
            Monomial.from_pairs(V2, {V2.variable(1, 0): 3}): 1,
            Monomial.from_pairs(V2, {V2.variable(1, 0): 1, V2.variable(1, 1): 2}): 2,
        },
    )
    assert f == expected
    mon, coeff = f.lead_term()
    assert mon == Monomial.from_pairs(V2, {V2.variable(1, 0): 3})
    assert coeff == FpScalar(1, 3)


def test_lead_term_order_example():
    V3 = parse_module_spec("V3", 3)
    y = V3.var_poly(1, 1)
    x = V3.var_poly(1, 2)
    f = y * y + x * y + x * x
    mon, coeff = lead_term(f)
    assert mon == Monomial.from_pairs(V3, {V3.variable(1, 1): 2})
    assert coeff == 1


def test_lead_term_of_zero():
    with pytest.raises(ZeroPolynomialError):
        Polynomial.zero(V2).lead_term()


def test_zero_coefficients_never_stored():
    z, y = zy(V2)
    f = z + y + 2 * y + z * 0
    assert len(f) == 1  # 3y vanished
    g = 3 * z
    assert g == Polynomial.zero(V2)
    assert Polynomial(V2, {Monomial.one(V2): 3}) == 0


def test_scalar_and_functional_faces():
    z, y = zy(V2)
    assert poly_arith(z, y, "add") == z + y
    assert poly_arith(z, y, "mul") == z * y
    assert poly_arith(z, y, "scalar_mul", c=2) == 2 * z
    with pytest.raises(ValueError):
        poly_arith(z, y, "div")
    with pytest.raises(ValueError):
        poly_arith(z, y, "scalar_mul")
    assert z.scale(2) == z + z
    assert (2 * z) * 2 == z


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        V2.var_poly(1, 0) + V2P2.var_poly(1, 0)
    with pytest.raises(AmbientMismatchError):
        V2.var_poly(1, 0) * V2P2.var_poly(1, 0)


def test_coefficient_access():
    z, y = zy(V2)
    f = 2 * z * z + y
    assert f.coefficient(Monomial.from_pairs(V2, {V2.variable(1, 0): 2})) == FpScalar(2, 3)
    assert f.coefficient(Monomial.one(V2)) == FpScalar(0, 3)


def test_terms_descending():
    z, y = zy(V2)
    f = y + z * z + z * y
    mons = [m for m, _ in f.terms()]
    assert mons == sorted(mons, reverse=True)


def test_homogeneity_helpers():
    z, y = zy(V2)
    assert (z * y).is_homogeneous()
    assert not (z + z * y).is_homogeneous()
    assert (z * y).multidegree() == (2,)
    spec = parse_module_spec("V2+V2", 3)
    f = spec.var_poly(1, 0) * spec.var_poly(2, 0) + spec.var_poly(1, 0) ** 2
    comps = f.components_by_multidegree()
    assert set(comps) == {(1, 1), (2, 0)}
    assert sum(comps.values(), Polynomial.zero(spec)) == f


def test_power():
    z, y = zy(V2)
    f = z + y
    assert f ** 0 == Polynomial.one(V2)
    assert f ** 1 == f
    assert f ** 3 == f * f * f
    with pytest.raises(ValueError):
        f ** -1


# -- ring axioms, randomized ----------------------------------------------------

SPEC = parse_module_spec("V2+V3", 3)


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        exps = draw(st.lists(st.integers(0, 2), min_size=SPEC.dim, max_size=SPEC.dim))
        c = draw(st.integers(1, SPEC.p - 1))
        terms[Monomial(SPEC, exps)] = c
    return Polynomial(SPEC, terms)


@settings(max_examples=150, derandomize=True)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=150, derandomize=True)
@given(polys(), polys())
def test_lead_term_multiplicative(f, g):
    if not f or not g:
        return
    mf, cf = f.lead_term()
    mg, cg = g.lead_term()
    mon, coeff = (f * g).lead_term()
    assert mon == mf * mg
    assert coeff == cf * cg
