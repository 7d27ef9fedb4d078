"""Reference values for every public operation, one assertion group per value."""
from fractions import Fraction

import pytest

from ratvec.characterization import (Region, classify_region, eval_d, eval_k, eval_R,
                                     is_ratio_vector, l1_bounds, peyser_bounds)
from ratvec.errors import InvalidDenominator, NegativeRadicand
from ratvec.fields import Surd, approximate, collapse, surd_compare, surd_normalize
from ratvec.quartic import (critical_points, forward_ratio_vector, normalize_roots,
                            symmetric_check)
from ratvec.reconstruction import line_family, reconstruct, round_trip, solve_w

F = Fraction
SURD_W = Surd(156303, -9, 10054801, 211888)
SURD_POINT = (F(15, 32), F(5, 9), SURD_W)
FOUR_ROOTS = (1, F(3, 2), F(13, 8), F(7, 4))
SQ10 = Surd.sqrt(10)


# numeric fields

def test_surd_normalize_values():
    assert collapse(surd_normalize(0, 0, 5, 1)) == 0
    assert collapse(surd_normalize(1, 2, 9, 1)) == 7
    assert float(surd_normalize(156303, -9, 10054801, 211888)) == pytest.approx(0.6030, abs=5e-5)
    with pytest.raises(InvalidDenominator):
        surd_normalize(1, 1, 2, 0)
    with pytest.raises(NegativeRadicand):
        surd_normalize(1, 1, -2, 1)


def test_surd_compare_values():
    assert surd_compare(Surd(-1, 1, 2, 1), 0) == 1
    assert surd_compare(SURD_W, F(3, 4)) == -1
    assert surd_compare(Surd(1, 0, 0, 1), Surd(2, 0, 0, 2)) == 0


def test_approximate_values():
    f, bound = approximate(F(7, 4), F(1, 10**12))
    assert f == 1.75 and bound == 0
    f, bound = approximate(SURD_W, F(1, 10**4))
    assert abs(f - 0.6030) < 1e-4 and bound <= F(1, 10**4)
    f, bound = approximate(SQ10 / 2 - 1, F(1, 10**6))
    assert abs(f - (10 ** 0.5 / 2 - 1)) <= 1e-6


# quartic core

@pytest.mark.parametrize("roots,rs,scale,shift", [
    ((-1, 0, F(1, 4), F(1, 2)), (F(1, 4), F(1, 2)), 1, 0),
    (FOUR_ROOTS, (F(1, 4), F(1, 2)), 2, -3),
    ((0, 1, 2, 3), (1, 2), 1, -1),
])
def test_normalize_roots_values(roots, rs, scale, shift):
    canon, tmap = normalize_roots(roots)
    assert (canon.r, canon.s) == rs
    assert (tmap.scale, tmap.shift) == (scale, shift)


def test_critical_points_values():
    crits = critical_points(tuple(float(x) for x in FOUR_ROOTS))
    assert crits.as_tuple() == pytest.approx((1.1506, 1.5560, 1.6996), abs=5e-5)
    assert critical_points((-1, F(-1, 2), F(1, 2), 1)).as_tuple() == (-SQ10 / 4, 0, SQ10 / 4)
    assert critical_points((-1, 0, F(1, 20), F(21, 20))).as_tuple() == (F(-7, 10), F(1, 40), F(3, 4))


def test_forward_values():
    rv = forward_ratio_vector(tuple(float(x) for x in FOUR_ROOTS))
    assert rv.as_tuple() == pytest.approx((0.3013, 0.4481, 0.5968), abs=5e-5)
    assert forward_ratio_vector((-1, 0, F(1, 20), F(21, 20))).as_tuple() == (F(3, 10), F(1, 2), F(7, 10))
    rv = forward_ratio_vector((-1, F(-1, 2), F(1, 2), 1))
    assert rv.as_tuple() == (2 - SQ10 / 2, F(1, 2), SQ10 / 2 - 1)
    assert [float(x) for x in rv] == pytest.approx((0.41886, 0.5, 0.58114), abs=1e-5)


def test_symmetric_check_values():
    roots = tuple(float(x) for x in FOUR_ROOTS)
    crits = critical_points(roots, 1e-12)
    assert max(symmetric_check(roots, crits)) <= 1e-9
    exact = (-1, 0, F(1, 20), F(21, 20))
    assert symmetric_check(exact, (F(-7, 10), F(1, 40), F(3, 4))) == (0, 0, 0)
    x1, x2, x3 = crits.as_tuple()
    assert not max(symmetric_check(roots, (x1, x2 + 0.1, x3))) <= 1e-3


# characterization

def test_polynomial_values():
    assert eval_R(0, 0, 0) == -1
    assert eval_R(F(1, 3), F(1, 2), F(2, 3)) == 0
    assert eval_R(F(9, 32), F(4, 9), F(7, 10)) != 0
    assert eval_k(F(9, 32), F(4, 9), F(7, 10)) == F(-127, 12960)
    assert eval_k(F(1, 2), F(1, 2), F(1, 2)) == F(1, 4)
    C = F(1, 2)
    assert eval_k(C, F(1, 2), 1 - C) == C * (-1 + 4 * C - 2 * C * C)
    assert eval_d(0, 0, 0) == -1 and eval_d(0, 0, 1) == 3


def test_product_identity_at_surd_point():
    u, v, w = SURD_POINT
    lhs = eval_d(u, v, w) * eval_k(u, v, w)
    rhs = 2 * v * (4 * u - 1) * (1 - w) * (1 - 2 * u) * (-4 * v * w + 4 * v * w * u + 1)
    assert lhs == rhs


def test_peyser_values():
    assert peyser_bounds(4, 1) == (F(1, 4), F(1, 2))
    assert peyser_bounds(4, 3) == (F(1, 2), F(3, 4))
    assert peyser_bounds(5, 2) == (F(1, 4), F(2, 3))


def test_l1_values():
    rv = [float(x) for x in forward_ratio_vector(tuple(float(x) for x in FOUR_ROOTS))]
    b = {x.name: x for x in l1_bounds(*rv)}
    assert float(b["v_lower"].value) == pytest.approx(0.3578, abs=5e-5) and b["v_lower"].satisfied
    assert float(b["w_upper"].value) == pytest.approx(0.6483, abs=5e-5) and b["w_upper"].satisfied
    b = {x.name: x for x in l1_bounds(*SURD_POINT)}
    assert float(b["v_lower"].value) == pytest.approx(0.4706, abs=5e-5)
    assert float(b["v_upper"].value) == pytest.approx(0.7804, abs=5e-5)
    assert b["v_lower"].satisfied and b["v_upper"].satisfied


def test_region_values():
    rv = forward_ratio_vector(tuple(float(x) for x in FOUR_ROOTS))
    assert classify_region(*rv) is Region.Z1
    assert classify_region(*SURD_POINT) is Region.Z3
    assert classify_region(F(9, 32), F(4, 9), F(7, 10)) is Region.OUTSIDE


def test_membership_values():
    vd = is_ratio_vector(*SURD_POINT)
    assert vd.is_ratio_vector and vd.region is Region.Z3 and vd.k_value > 0
    assert is_ratio_vector(F(3, 10), F(1, 2), F(7, 10)).is_ratio_vector
    assert not is_ratio_vector(0.28, 0.5, 0.72).is_ratio_vector


# reconstruction

def test_reconstruct_values():
    rec = reconstruct(*SURD_POINT)
    assert float(rec.r) == pytest.approx(5.9821, abs=5e-4)
    assert float(rec.s) == pytest.approx(9.7305, abs=5e-4)
    rv = forward_ratio_vector(tuple(float(x) for x in FOUR_ROOTS))
    rec = reconstruct(*(float(x) for x in rv))
    assert (float(rec.r), float(rec.s)) == pytest.approx((0.25, 0.5), rel=1e-8)
    rec = reconstruct(F(3, 10), F(1, 2), F(7, 10))
    assert (rec.r, rec.s) == (F(1, 20), F(21, 20))


def test_solve_w_values():
    assert any(w == SURD_W and vd.is_ratio_vector for w, vd in solve_w(F(15, 32), F(5, 9)))
    got = {w: vd.is_ratio_vector for w, vd in solve_w(F(3, 10), F(1, 2))}
    assert got == {F(7, 10): True, F(5, 7): False}
    assert not any(vd.is_ratio_vector for _, vd in solve_w(F(1, 4), F(1, 3)))


def test_line_family_values():
    res = line_family(F(3, 10))
    assert res.verdict.is_ratio_vector
    assert (res.reconstruction.r, res.reconstruction.s) == (F(1, 20), F(21, 20))
    assert not line_family(F(1, 4)).verdict.is_ratio_vector
    assert not line_family(F(1, 2)).verdict.is_ratio_vector


def test_round_trip_values():
    rep = round_trip(*SURD_POINT)
    assert rep.derivative_residuals == (0, 0, 0)
    assert round_trip(F(3, 10), F(1, 2), F(7, 10)).deviation == (0, 0, 0)
    rv = forward_ratio_vector(tuple(float(x) for x in FOUR_ROOTS), 1e-12)
    assert round_trip(*(float(x) for x in rv), tol=1e-12).max_deviation <= 1e-8
