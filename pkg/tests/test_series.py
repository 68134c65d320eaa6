from math import comb, factorial
from types import SimpleNamespace

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import as_dict, naive_compose, naive_mul, naive_truncate, random_diffeo1, random_series2, seeded
from threewebs.errors import InexactDivision, NonzeroConstantTerm, NotInvertible
from threewebs.expr import parse_series1, parse_series2
from threewebs.series import (
    PlaneMap,
    Series1,
    Series2,
    compose2,
    div_exact,
    dx,
    dy,
    invert1,
    invert_map,
    log1p,
    rat,
    restrict_line,
)


def S(text, order=10):
    return parse_series2(text, order)


def T(text, order=10):
    return parse_series1(text, order)


rationals = st.builds(lambda n, d: mpq(n, d), st.integers(-9, 9), st.integers(1, 5))


@st.composite
def series2(draw, order=5, min_deg=0):
    keys = [(r, d - r) for d in range(min_deg, order + 1) for r in range(d + 1)]
    coeffs = draw(st.dictionaries(st.sampled_from(keys), rationals, max_size=12))
    return Series2(coeffs, order)


# -- construction and invariants ----------------------------------------------


def test_canonical_storage_drops_zeros_and_high_degrees():
    s = Series2({(1, 0): 0, (0, 1): 2, (3, 3): 1}, 4)
    assert s.items() == [((0, 1), 2)]
    assert s.order == 4
    assert Series1({0: 0, 5: 1}, 3).is_zero()


def test_rat_is_exact_and_rejects_floats():
    assert rat("3/6") == mpq(1, 2)
    with pytest.raises(TypeError):
        rat(0.5)


def test_coeff_beyond_order_is_an_error():
    with pytest.raises(IndexError):
        Series2.x(3).coeff(2, 2)


# -- ring operations ---------------------------------------------------------


def test_product_of_linear_factors():
    assert (1 + Series2.x(10)) * (1 + Series2.y(10)) == S("1 + x + y + x*y")


def test_additive_identity():
    f = S("x + y + 1/3*x^2*y")
    assert f + 0 == f
    assert f + Series2({}, 10) == f


def test_order_is_minimum_of_inputs():
    a, b = S("x + y", 7), S("x*y", 4)
    assert (a + b).order == 4
    assert (a * b).order == 4


def test_dense_product_matches_schoolbook_convolution():
    rng = seeded(11)
    for _ in range(5):
        a = random_series2(rng, 10, density=1.0)
        b = random_series2(rng, 10, density=1.0)
        expected = naive_truncate(naive_mul(as_dict(a), as_dict(b)), 10)
        assert as_dict(a * b) == expected


@settings(max_examples=40, deadline=None)
@given(series2(), series2(), series2())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Series2({}, a.order)


# -- composition ---------------------------------------------------------------


def test_compose_linear_substitution():
    assert compose2(S("x + y"), PlaneMap(S("-x - y"), S("x"))) == S("-y")


def test_compose_direct_expansion():
    assert compose2(S("x*y"), PlaneMap(S("x + y^2"), S("y"))) == S("x*y + y^3")


def test_p0_invariant_under_order3_rotation():
    p0 = S("x y (x-y)(x+y)(2x+y)(x+2y)")
    assert compose2(p0, PlaneMap(S("-x-y"), S("x"))) == p0


def test_compose_rejects_nonzero_constant():
    with pytest.raises(NonzeroConstantTerm):
        compose2(S("x"), SimpleNamespace(first=S("1 + x"), second=S("y")))
    with pytest.raises(NonzeroConstantTerm):
        PlaneMap(S("1 + x"), S("y"))


def test_compose_matches_naive_expansion():
    rng = seeded(5)
    for _ in range(5):
        f = random_series2(rng, 7, density=0.5)
        p = random_series2(rng, 7, min_deg=1, density=0.5)
        q = random_series2(rng, 7, min_deg=1, density=0.5)
        got = compose2(f, PlaneMap(p, q))
        assert as_dict(got) == naive_compose(as_dict(f), as_dict(p), as_dict(q), 7)


@settings(max_examples=25, deadline=None)
@given(series2(order=5), series2(order=5, min_deg=1), series2(order=5, min_deg=1),
       series2(order=5, min_deg=1), series2(order=5, min_deg=1))
def test_composition_is_associative(f, p1, q1, p2, q2):
    m1, m2 = PlaneMap(p1, q1), PlaneMap(p2, q2)
    assert compose2(compose2(f, m1), m2) == compose2(f, m1.after(m2))


# -- restriction to lines -------------------------------------------------------


def test_restrict_line_examples():
    f = S("x + y + x*y")
    assert restrict_line(f, 1, 0) == Series1.t(10)
    assert restrict_line(f, 1, 1) == T("2t + t^2")


def test_restrict_line_agrees_with_composition():
    rng = seeded(2)
    f = random_series2(rng, 8)
    a, b = mpq(-2, 3), mpq(5, 2)
    via_map = compose2(f, PlaneMap(Series2.x(8) * a, Series2.x(8) * b))
    line = restrict_line(f, a, b)
    assert all(line.coeff(d) == via_map.coeff(d, 0) for d in range(9))


# -- univariate reversion -----------------------------------------------------


def test_invert1_identity_and_linear():
    assert invert1(Series1.t(6)) == Series1.t(6)
    assert invert1(T("2t", 6)) == T("1/2 t", 6)


def test_invert1_signed_catalan():
    inv = invert1(T("t + t^2", 12))
    catalan = [comb(2 * m, m) // (m + 1) for m in range(12)]
    assert inv.to_list() == [0] + [(-1) ** (n - 1) * catalan[n - 1] for n in range(1, 13)]
    assert T("t + t^2", 12).compose(inv) == Series1.t(12)


def test_invert1_preconditions():
    with pytest.raises(NotInvertible):
        invert1(T("1 + t"))
    with pytest.raises(NotInvertible):
        invert1(T("t^2"))


def test_reversion_property_on_random_diffeomorphisms():
    rng = seeded(100)
    for _ in range(100):
        h = random_diffeo1(rng, 8)
        hi = invert1(h)
        assert h.compose(hi) == Series1.t(8)
        assert hi.compose(h) == Series1.t(8)


# -- map inversion ---------------------------------------------------------------


def test_invert_map_identity():
    assert invert_map(PlaneMap.identity(6)).is_identity()


def test_invert_map_shear():
    assert invert_map(PlaneMap(S("x + y^2"), S("y"))) == PlaneMap(S("x - y^2"), S("y"))


def test_invert_map_singular():
    with pytest.raises(NotInvertible):
        invert_map(PlaneMap(S("x + y"), S("2x + 2y + x^2")))


def test_invert_map_random_round_trip():
    rng = seeded(7)
    for _ in range(10):
        m = PlaneMap(random_series2(rng, 6, min_deg=1), random_series2(rng, 6, min_deg=1))
        if not m.det():
            continue
        mi = invert_map(m)
        assert m.after(mi).is_identity()
        assert mi.after(m).is_identity()


# -- exact division -----------------------------------------------------------------


def test_div_by_x_minus_y():
    q = div_exact(S("x^2 y - x y^2", 6), "x-y")
    assert q == S("x y", 5)


def test_div_p0_by_x():
    p0 = S("x y (x-y)(x+y)(2x+y)(x+2y)")
    assert div_exact(p0, "x") == S("y (x-y)(x+y)(2x+y)(x+2y)", 9)


def test_div_inexact_reports_degree():
    with pytest.raises(InexactDivision) as err:
        div_exact(S("x + y"), "x-y")
    assert err.value.degree == 1
    with pytest.raises(InexactDivision) as err:
        div_exact(S("x^2 + x*y + y^3"), "x")
    assert err.value.degree == 3


@settings(max_examples=40, deadline=None)
@given(series2(order=6))
def test_division_undoes_multiplication(q):
    for d, text in (("x", "x"), ("y", "y"), ("x-y", "x - y")):
        f = Series2(q.items(), 7) * S(text, 7)
        assert div_exact(f, d) == q


# -- analytic helpers ----------------------------------------------------------------


def test_log1p_mercator():
    got = log1p(S("x"))
    assert got == Series2({(k, 0): mpq((-1) ** (k + 1), k) for k in range(1, 11)}, 10)


def test_log1p_derivative_identity():
    rng = seeded(3)
    u = random_series2(rng, 8, min_deg=1)
    lhs = (1 + u.truncate(7)) * dx(log1p(u))
    assert lhs == dx(u)


def test_log1p_needs_zero_constant():
    with pytest.raises(NonzeroConstantTerm):
        log1p(S("1 + x"))


def test_partial_derivatives():
    assert dx(S("x y (x - y)")) == S("2 x y - y^2", 9)
    assert dy(dx(S("2 x y"))) == S("2", 8)


def test_univariate_exponential_sanity():
    # sum t^n / n! composed with its reversion log(1 + t)
    e = Series1({n: mpq(1, factorial(n)) for n in range(1, 9)}, 8)
    assert invert1(e) == Series1({n: mpq((-1) ** (n + 1), n) for n in range(1, 9)}, 8)
