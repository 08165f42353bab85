from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from openvsc.series import (
    GradedSeries,
    LogSeries,
    NotAMirrorMap,
    ZeroConstantTerm,
    diff_x,
    invert_map,
    series_exp,
    series_invert,
    substitute_map,
)

q = sp.Symbol("q")
s = sp.Symbol("s")  # s = q^(1/2)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series(draw, trunc=8, unit=False, half=True, zero_const=False):
    coeffs = draw(st.lists(small, min_size=trunc + 1, max_size=trunc + 1))
    if not half:
        coeffs = [c if e % 2 == 0 else 0 for e, c in enumerate(coeffs)]
    if unit:
        coeffs[0] = draw(small.filter(bool))
    if zero_const:
        coeffs[0] = 0
    return GradedSeries(coeffs, trunc, half)


def to_sympy(a):
    return sum(sp.Rational(c.numerator, c.denominator) * s ** e for e, c in a.items())


def sympy_coeffs(expr, trunc, expand=True):
    poly = sp.series(expr, s, 0, trunc + 1).removeO() if expand else expr
    poly = sp.Poly(sp.expand(poly), s)
    return [Fraction(int(sp.numer(poly.coeff_monomial(s ** e))), int(sp.denom(poly.coeff_monomial(s ** e))))
            for e in range(trunc + 1)]


def test_getitem_beyond_truncation_raises():
    a = GradedSeries.from_q_powers({0: 1, 1: 2}, 2)
    assert a.coeff_q(1) == 2
    with pytest.raises(IndexError):
        a[5]


def test_integer_series_rejects_half_powers():
    with pytest.raises(ValueError):
        GradedSeries({1: 1}, 3)


def test_mixing_promotes_to_half_grading():
    a = GradedSeries.from_q_powers({0: 1}, 2)
    b = GradedSeries({1: 3}, 4, True)
    c = a * b
    assert c.half and c[1] == 3 and c.trunc == 4


def test_product_truncation_uses_valuation():
    # (q^(1/2) + O(q^2)) * (1 + q + O(q^2)): second factor only known to q^1,
    # but the first has valuation 1/2, so the product is known through q^(3/2)
    a = GradedSeries({1: 1}, 3, True)
    b = GradedSeries.from_q_powers({0: 1, 1: 1}, 1)
    c = a * b
    assert c.trunc == 3
    assert c.as_dict() == {1: 1, 3: 1}


@settings(max_examples=40, deadline=None)
@given(series(trunc=6), series(trunc=6))
def test_mul_matches_sympy(a, b):
    # [DERIVED] oracle: sympy polynomial product truncated at the same order
    want = sympy_coeffs(sp.expand(to_sympy(a) * to_sympy(b) + s ** 13), 12, expand=False)[:7]
    assert list((a * b).truncate(6).coeffs) == want


@settings(max_examples=15, deadline=None)
@given(series(trunc=5, unit=True))
def test_invert_matches_sympy(a):
    want = sympy_coeffs(1 / to_sympy(a), 5)
    assert list(series_invert(a).coeffs) == want


@settings(max_examples=15, deadline=None)
@given(series(trunc=5, zero_const=True))
def test_exp_matches_sympy(a):
    want = sympy_coeffs(sp.exp(to_sympy(a)), 5)
    assert list(series_exp(a).coeffs) == want


@settings(max_examples=50, deadline=None)
@given(series(unit=True))
def test_invert_is_two_sided(a):
    one = GradedSeries.one(a.trunc, True)
    assert a * series_invert(a) == one
    assert series_invert(series_invert(a)) == a


def test_invert_needs_unit():
    with pytest.raises(ZeroConstantTerm):
        series_invert(GradedSeries({1: 1}, 4, True))


@settings(max_examples=40, deadline=None)
@given(series(zero_const=True), series(zero_const=True))
def test_exp_is_a_homomorphism(a, b):
    assert series_exp(a + b) == series_exp(a) * series_exp(b)


@settings(max_examples=40, deadline=None)
@given(series(), series())
def test_theta_is_a_derivation(a, b):
    assert (a * b).theta() == a.theta() * b + a * b.theta()


@settings(max_examples=30, deadline=None)
@given(series())
def test_sign_flip_is_an_involution(a):
    assert a.sign_flip().sign_flip() == a
    assert (a * a).sign_flip() == a.sign_flip() * a.sign_flip()


def test_diff_x_product_rule_on_log_parts():
    # d/dx (x * q) = q + x q
    qs = GradedSeries.from_q_powers({1: 1}, 3)
    f = LogSeries([GradedSeries.zero(6), qs])
    g = diff_x(f)
    assert g.parts[0] == qs
    assert g.parts[1] == qs


@st.composite
def mirror_maps(draw, trunc_q=4):
    coeffs = {d: draw(st.integers(-4, 4)) for d in range(1, trunc_q + 1)}
    return GradedSeries.from_q_powers(coeffs, trunc_q)


@settings(max_examples=30, deadline=None)
@given(mirror_maps(), series(trunc=9))
def test_invert_then_substitute_is_identity(h, target):
    back = substitute_map(h, invert_map(h, target))
    assert back == target


def test_invert_map_first_order():
    # t = x + c q: q = Q (1 - c Q + ...), u = -4Q + 16Q^2, q^(1/2) = Q^(1/2) exp(u/2)
    h = GradedSeries.from_q_powers({1: 4}, 2)
    target = GradedSeries({1: 1}, 5, True)
    out = invert_map(h, target)
    assert out[1] == 1 and out[3] == -2 and out[5] == 10


def test_invert_map_matches_sympy_lagrange():
    # [DERIVED] oracle: sympy series reversion of t = x + 3q + 5q^2 applied to q^(1/2) + 7q^(3/2)
    h = GradedSeries.from_q_powers({1: 3, 2: 5}, 3)
    target = GradedSeries({1: 1, 3: 7}, 7, True)
    out = invert_map(h, target)
    Q = sp.Symbol("Q")
    x = sp.log(Q)
    for _ in range(4):
        x = sp.log(Q) - 3 * sp.exp(x) - 5 * sp.exp(2 * x)
    x = sp.log(Q) + sp.series(x - sp.log(Q), Q, 0, 4).removeO()
    expr = sp.exp(x / 2) + 7 * sp.exp(3 * x / 2)
    expr = sp.expand(sp.series(sp.expand(expr / sp.sqrt(Q)), Q, 0, 4).removeO())
    for j in range(4):
        c = expr.coeff(Q, j)
        assert out[2 * j + 1] == Fraction(int(sp.numer(c)), int(sp.denom(c)))


def test_mirror_map_must_be_integer_graded():
    with pytest.raises(NotAMirrorMap):
        invert_map(GradedSeries({1: 1}, 4, True), GradedSeries({1: 1}, 4, True))
    with pytest.raises(NotAMirrorMap):
        invert_map(GradedSeries.from_q_powers({0: 1}, 2), GradedSeries({1: 1}, 4, True))
