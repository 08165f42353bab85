from fractions import Fraction

import pytest

from openvsc.bmodel import (
    TAG_LOG,
    TAG_ONE,
    InhomogeneityError,
    PFOperator,
    appendix_periods,
    disk_amplitudes,
    disk_invariants,
    extract_C,
    f_open,
    mirror_map,
    parity_constant,
    tag_tau,
    tau_series,
    tension,
    tension_series,
)
from openvsc.closed import fundamental_period, pf_solutions
from openvsc.geometry import GeometryData
from openvsc.open_vsc import open_vsc
from openvsc.series import LogSeries

H = GeometryData.hypersurface


def test_tau_leading_terms():
    assert tau_series(H(7, 7), 1)[1] == 210
    assert tau_series(GeometryData(8, (3, 5)), 1)[1] == 90
    assert tau_series(GeometryData(9, (3, 3, 3)), 1)[1] == 54


def test_tau_only_odd_half_powers():
    t = tau_series(H(5, 5), 5)
    assert t.half and all(e % 2 == 1 for e, _ in t.items())


def test_tau_needs_cy():
    with pytest.raises(ValueError):
        tau_series(H(6, 5), 2)


@pytest.mark.parametrize("geom", [H(5, 5), H(7, 7), GeometryData(8, (3, 5)), GeometryData(10, (5, 5))])
def test_operator_annihilates_periods(geom):
    op = PFOperator(geom)
    for j in range(geom.pf_order):
        image = op(pf_solutions(geom, j, 5))
        assert all(p.is_zero() for p in image.parts)


def test_formal_top_period_is_not_a_solution():
    g = H(5, 5)
    image = PFOperator(g)(pf_solutions(g, 4, 4))
    assert not all(p.is_zero() for p in image.parts)


@pytest.mark.parametrize("k,C", [(5, Fraction(15, 8)), (7, Fraction(105, 32))])
def test_extracted_constant(k, C):
    assert extract_C(H(k, k), 6) == C


def test_tension_image_is_single_term():
    g = H(5, 5)
    image = PFOperator(g)(tau_series(g, 6)).pure()
    assert image.as_dict() == {1: Fraction(15, 8)}


def test_open_operator_kills_tau():
    for k in (5, 7):
        g = H(k, k)
        image = PFOperator(g, open=True)(tau_series(g, 5))
        assert all(p.is_zero() for p in image.parts)
        assert PFOperator(g, open=True).order == k


def test_inhomogeneity_error_on_non_tension(monkeypatch):
    from openvsc import bmodel

    orig = bmodel.tau_series
    # perturbing tau by q^(3/2) leaves a second surviving exponent
    monkeypatch.setattr(bmodel, "tau_series", lambda geom, dmax: orig(geom, dmax) + orig(geom, dmax).shift(2))
    with pytest.raises(InhomogeneityError):
        extract_C(H(5, 5), 4)


@pytest.mark.parametrize("k,top", [(5, 3), (7, 2)])
def test_open_function_matches_open_vsc(k, top):
    g = H(k, k)
    fo = f_open(g, top)
    a = (k - 3) // 2
    for d in range(1, top + 1):
        assert fo[2 * d - 1] == open_vsc(g, a, 2 * d - 1)


def test_f_open_leading_coefficient():
    assert f_open(H(7, 7), 3)[1] == 210


def test_mirror_map_does_not_touch_degree_one():
    g = H(9, 9)
    assert disk_amplitudes(g, 3)[1] == tau_series(g, 1)[1]


def test_mirror_map_integer_graded():
    h = mirror_map(H(7, 7), 4)
    assert not h.half and h[0] == 0


def test_quintic_disk_invariants():
    # 3-fold covering formula; these are the standard real-quintic disk counts
    _, res = disk_invariants(H(5, 5), 5)
    assert res.invariants == [30, 1530, 1088250, 975996780, 1073087762700]


def test_k7_table_head():
    _, res = disk_invariants(H(7, 7), 3)
    assert res.invariants == [210, 20238540, 7164717071610]


def test_parity_constant():
    assert parity_constant(5) == 1
    assert parity_constant(7) == 3
    assert parity_constant(9) == 1


def test_period_triple():
    g = H(5, 5)
    w0, w1, tp = appendix_periods(g, 3)
    assert w0.coeff_q(2) == 113400
    assert w1 == pf_solutions(g, 1, 3)
    assert tp.get(TAG_LOG) == w1


def test_tension_difference():
    g = H(7, 7)
    diff = tension(g, 3, 1) - tension(g, 3, -1)
    A = parity_constant(7)
    assert all(p.is_zero() for p in diff.get(TAG_LOG).parts)
    assert diff.get(TAG_ONE) == LogSeries([fundamental_period(g, 3) * Fraction(A, 2)])
    assert diff.get(tag_tau(7)) == LogSeries([tau_series(g, 4) * Fraction(1, 4)])


def test_tension_series_bundle():
    ts = tension_series(H(5, 5), 4)
    assert ts.C == Fraction(15, 8) and ts.A == 1 and ts.tau[1] == 30
