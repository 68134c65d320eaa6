import pytest

from helpers import random_diffeo1, seeded
from threewebs.circular import theorem3_example
from threewebs.curvature import blaschke_curvature
from threewebs.errors import DegenerateLinearPart
from threewebs.expr import parse_series2
from threewebs.normalform import Web, normalize
from threewebs.series import Series2


def S(text, order=8):
    return parse_series2(text, order)


def test_linear_web_is_flat():
    assert blaschke_curvature(Web(S("x + y"))).is_zero()


def test_product_web_is_flat():
    K = blaschke_curvature(Web(S("(1 + x)(1 + y) - 1")))
    assert K.is_zero() and K.order == 5


def test_cubic_perturbation():
    # d/dx d/dy (2xy - x^2 + O(4)) = 2
    K = blaschke_curvature(Web(S("x + y + x^2 y")))
    assert K.coeff(0, 0) == 2


def test_degenerate_linear_part():
    with pytest.raises(DegenerateLinearPart):
        Web(S("x + x^2 + y^2"))


def test_agreement_on_flat_by_construction():
    rng = seeded(53)
    for _ in range(20):
        h, a, b = (random_diffeo1(rng, 9, max_deg=4) for _ in range(3))
        w = Web(h.compose(a.lift("x") + b.lift("y")))
        assert blaschke_curvature(w).is_zero()
        assert normalize(w).g.is_zero()


def test_agreement_on_nonflat_circular_web():
    w = theorem3_example(10).web
    assert not blaschke_curvature(w).is_zero()
    assert not normalize(w).g.is_zero()


def test_leaf_relabeling_invariance():
    rng = seeded(59)
    f = S("2x - y + x^2 y - 1/3 x y^3 + 5 x^4", 9)
    for _ in range(5):
        Z = random_diffeo1(rng, 9, max_deg=4)
        assert blaschke_curvature(Web(Z.compose(f))) == blaschke_curvature(Web(f))


def test_normal_form_curvature_nonzero_iff_g_nonzero():
    for g in ("1", "x", "x^2 - y^2"):
        w = Web.from_g(S(g, 6))
        assert not blaschke_curvature(w).is_zero()
    assert blaschke_curvature(Web.from_g(Series2({}, 6))).is_zero()
