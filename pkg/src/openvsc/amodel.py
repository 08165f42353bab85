"""A-model side: localization graph sums for disk amplitudes up to degree 5,
the generalized mirror transformation, and the multiple covering formulas."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .closed import closed_w
from .open_vsc import f_factor, open_vsc
from .residue import ContourSpec, MPoly, RatFun, e_k, h_poly, iterated_contour
from .series import ZERO, GradedSeries

SUPPORTED_DEGREES = (1, 3, 5)


class UnsupportedDegree(ValueError):
    """No localization formula is available at this disk degree."""


def partitions(f, smallest=1):
    """Weakly increasing positive partitions of ``f``."""
    if f == 0:
        yield ()
        return
    for first in range(smallest, f + 1):
        for rest in partitions(f - first, first):
            yield (first,) + rest


def symmetry_factor(parts):
    out = Fraction(1)
    for p in set(parts):
        out /= factorial(parts.count(p))
    return out


# ---------------------------------------------------------------------------
# localization


def _insertion(nv, a, c, edges):
    """``c z_0^(a-1)/2 + sum_{(i,j) in edges} h_a(z_i, z_j)`` as a RatFun."""
    exps = [0] * nv
    exps[0] = a - 1
    f = RatFun.from_poly(MPoly.monomial(nv, exps, Fraction(c, 2)))
    for i, j in edges:
        f = f + RatFun.from_poly(h_poly(a, i, j, nv))
    return f


def _graph(geom, insertions, nv, base, c, edges, tags):
    f = base
    for a in insertions:
        f = f * _insertion(nv, a, c, edges)
    return iterated_contour(f, ContourSpec.chain(nv, tags))


def _measure(geom, nv, coef=1):
    return RatFun.from_poly(MPoly.monomial(nv, [-geom.N] * nv, coef))


def _linear(nv, coeffs):
    c = [0] * nv
    for i, x in coeffs.items():
        c[i] = x
    return c


@lru_cache(maxsize=None)
def _open_gw_local(geom, insertions, d_odd):
    k = geom.k
    total = ZERO

    # single disk edge of degree d_odd
    nv = 1
    base = _measure(geom, nv) * f_factor(geom, d_odd, nv)
    base = base * MPoly.monomial(nv, [1], Fraction(2, d_odd))
    total += _graph(geom, insertions, nv, base, d_odd, [], {})
    if d_odd == 1:
        return total

    # disk edge of degree d_odd - 2 plus one sphere edge
    nv = 2
    e = d_odd - 2
    base = _measure(geom, nv) * f_factor(geom, e, nv) * e_k(k, 0, 1, nv)
    base = base * MPoly.linear([-1, 1])
    base = base * MPoly.monomial(nv, [-1, 0], Fraction(1, k))
    base = base.divide_linear(_linear(nv, {0: Fraction(d_odd, e), 1: -1}))
    total += _graph(geom, insertions, nv, base, e, [(0, 1)], {})
    if d_odd == 3:
        return total

    # degree-1 disk edge plus a chain of two sphere edges
    nv = 3
    base = _measure(geom, nv) * f_factor(geom, 1, nv)
    base = base * e_k(k, 0, 1, nv) * e_k(k, 1, 2, nv) * MPoly.linear([0, -1, 1])
    base = base * MPoly.monomial(nv, [-1, -1, 0], Fraction(1, k * k))
    base = base.divide_linear(_linear(nv, {0: 3, 1: -1}))
    base = base.divide_linear(_linear(nv, {0: -1, 1: 2, 2: -1}), tag="mid1")
    total += _graph(geom, insertions, nv, base, 1, [(0, 1), (1, 2)], {1: "mid1"})

    # degree-1 disk edge with two sphere edges at the same node
    base = _measure(geom, nv) * f_factor(geom, 1, nv)
    base = base * e_k(k, 0, 1, nv) * e_k(k, 0, 2, nv)
    base = base * MPoly.monomial(nv, [-3, 0, 0], Fraction(1, 4 * k * k))
    total += _graph(geom, insertions, nv, base, 1, [(0, 1), (0, 2)], {})
    return total


def open_gw_local(geom, insertions, d_odd):
    """``<prod O_{h^a_i}>_{disk,d_odd}`` from the localization graph sum."""
    if d_odd not in SUPPORTED_DEGREES:
        raise UnsupportedDegree("localization formulas stop at disk degree 5, got %r" % (d_odd,))
    if not geom.is_hypersurface:
        raise ValueError("localization formulas are implemented for hypersurfaces only")
    insertions = tuple(sorted(insertions))
    if any(a < 0 for a in insertions):
        return ZERO
    return _open_gw_local(geom, insertions, d_odd)


# ---------------------------------------------------------------------------
# generalized mirror transformation


def closed_two_point(geom, f):
    """``w(O_{h^(N-3-(k-N)f)} O_{h^0})_{0,f} / k``."""
    a = geom.N - 3 - (geom.k - geom.N) * f
    if a < 0:
        return ZERO
    return closed_w(geom, a, 0, f) / geom.k


def gmt_terms(geom, a, d_odd):
    """Yield ``(f, sigma, amplitude_insertions, degree, weight)`` for the correction terms."""
    k, N = geom.k, geom.N
    for f in range(1, (d_odd + 1) // 2):
        for sigma in partitions(f):
            extra = tuple(1 + (k - N) * fj for fj in sigma)
            if any(x < 0 for x in extra):
                continue
            weight = symmetry_factor(sigma)
            for fj in sigma:
                weight *= closed_two_point(geom, fj)
            if weight:
                yield f, sigma, (a,) + extra, d_odd - 2 * f, weight


def gmt_correction(geom, a, d_odd, amplitude=None):
    """The partition sum on the right of the transformation, without the leading term."""
    amplitude = amplitude or open_gw_local
    total = ZERO
    for _, _, ins, deg, weight in gmt_terms(geom, a, d_odd):
        total += weight * amplitude(geom, ins, deg)
    return total


def gmt_rhs(geom, a, d_odd):
    """``<O_{h^a}>_{d_odd}`` plus the partition sum; should equal ``open_vsc``."""
    return open_gw_local(geom, (a,), d_odd) + gmt_correction(geom, a, d_odd)


def amodel_amplitude(geom, a, d_odd):
    """One-point disk amplitude; above degree 5 it is read off by inverting the transformation.

    Only the leading term sits at ``d_odd`` itself, so every multi-point
    amplitude the inversion needs has degree at most ``d_odd - 2``.
    """
    if d_odd in SUPPORTED_DEGREES:
        return open_gw_local(geom, (a,), d_odd)
    if d_odd - 2 > SUPPORTED_DEGREES[-1]:
        raise UnsupportedDegree("inversion needs multi-point amplitudes above degree 5")
    return open_vsc(geom, a, d_odd) - gmt_correction(geom, a, d_odd)


def kahler_check(geom, a, m, d_odd):
    """Whether adding ``m`` copies of ``O_h`` multiplies the amplitude by ``(d_odd/2)^m``."""
    lhs = open_gw_local(geom, (a,) + (1,) * m, d_odd)
    rhs = open_gw_local(geom, (a,), d_odd) * Fraction(d_odd, 2) ** m
    return lhs == rhs


# ---------------------------------------------------------------------------
# multiple covering


@dataclass(frozen=True)
class CoveringParams:
    """``D`` with target dimension ``2D + 3``.

    ``signed=False`` drops the alternating sign.  By default the sign is
    ``(-1)^((l-1)D)``, which keeps the single-cover term positive; with
    ``literal=True`` it is ``(-1)^(lD)``, flipping every invariant by
    ``(-1)^D``.
    """

    D: int
    signed: bool = True
    literal: bool = False

    def __post_init__(self):
        if self.D < 0:
            raise ValueError("D must be non-negative")

    def coefficient(self, d_odd, l_odd):
        """Weight of ``n_{d_odd}`` in front of ``q^(d_odd l_odd / 2)``."""
        if self.D == 0:
            return Fraction(d_odd, l_odd)
        l = (l_odd + 1) // 2
        if not self.signed:
            sign = 1
        else:
            sign = (-1) ** ((l if self.literal else l - 1) * self.D)
        return Fraction(sign, l_odd)


@dataclass
class CoveringResult:
    invariants: list
    non_integral: list

    @property
    def integral(self):
        return not self.non_integral


def covering_invert(amplitude, params):
    """Solve the covering formula for ``n_1, n_3, ...`` up to the amplitude's truncation."""
    for e in range(0, amplitude.trunc + 1, 2):
        if amplitude[e]:
            raise ValueError("amplitude has an integer power q^%d" % (e // 2))
    n = []
    bad = []
    for e in range(1, amplitude.trunc + 1, 2):
        rest = amplitude[e]
        for i, ni in enumerate(n):
            d_odd = 2 * i + 1
            if ni and e % d_odd == 0 and e != d_odd:
                rest -= params.coefficient(d_odd, e // d_odd) * ni
        value = rest / params.coefficient(e, 1)
        if value.denominator != 1:
            bad.append((e, value))
        n.append(value)
    return CoveringResult(n, bad)


def covering_forward(n, params, trunc):
    """Amplitude ``sum_{d,l} coefficient * n_d q^(d l / 2)`` known through doubled index ``trunc``."""
    out = [ZERO] * (trunc + 1)
    for i, ni in enumerate(n):
        d_odd = 2 * i + 1
        if not ni:
            continue
        l_odd = 1
        while d_odd * l_odd <= trunc:
            out[d_odd * l_odd] += params.coefficient(d_odd, l_odd) * ni
            l_odd += 2
    return GradedSeries(out, trunc, True)


def fano1_terms(geom, a, d_odd):
    """The ``N - k = 1`` specialization: ``(j, <O_{h^a} (O_{h^0})^j>, (k!)^j / j!)``."""
    if geom.N - geom.k != 1:
        raise ValueError("needs N - k = 1")
    out = []
    for j in range((d_odd + 1) // 2):
        amp = amodel_amplitude(geom, a, d_odd) if j == 0 else open_gw_local(
            geom, (a,) + (0,) * j, d_odd - 2 * j)
        out.append((j, amp, Fraction(factorial(geom.k) ** j, factorial(j))))
    return out

