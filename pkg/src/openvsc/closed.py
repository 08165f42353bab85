"""Closed virtual structure constants.

Two independent routes: the Picard-Fuchs recursion on the hypergeometric
periods (Calabi-Yau targets only) and iterated residues of the localization
integrand.  The residue route also comes in the ordered-partition form, used
as a cross-check.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .geometry import GeometryData
from .residue import ContourSpec, MPoly, RatFun, e_k, iterated_contour
from .series import ONE, ZERO, GradedSeries, LogSeries, diff_x, series_invert


class CancellationFailure(ArithmeticError):
    """A logarithmic part survived where the recursion guarantees a pure series."""


def compositions(d):
    """Ordered partitions of ``d`` into positive parts."""
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in compositions(d - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# periods


def _y_exp(coeffs, order):
    """exp of a power series in y with zero constant term, truncated at ``y^order``."""
    out = [ZERO] * (order + 1)
    out[0] = ONE
    for n in range(1, order + 1):
        s = ZERO
        for j in range(1, n + 1):
            s += j * coeffs[j] * out[n - j]
        out[n] = s / n
    return out


@lru_cache(maxsize=None)
def _hypergeometric_table(geom, dmax, order):
    """``c[d][l]``: coefficient of ``y^l`` in the degree-``d`` Pochhammer ratio."""
    table = []
    for d in range(dmax + 1):
        lead = Fraction(1)
        for k in geom.degrees:
            lead *= factorial(k * d)
        lead /= Fraction(factorial(d)) ** geom.N
        # log of prod(1 + k y / i) / prod(1 + y / i)^N, as power sums
        logc = [ZERO] * (order + 1)
        for n in range(1, order + 1):
            s = ZERO
            for k in geom.degrees:
                for i in range(1, k * d + 1):
                    s += Fraction(k, i) ** n
            for i in range(1, d + 1):
                s -= geom.N * Fraction(1, i) ** n
            logc[n] = s * (-1) ** (n + 1) / n
        table.append([lead * c for c in _y_exp(logc, order)])
    return table


def pf_solutions(geom, j, dmax):
    """``w_j(x) = (1/j!) d^j/dy^j w(x, y)|_{y=0}`` through ``q^dmax``."""
    table = _hypergeometric_table(geom, dmax, j)
    parts = []
    for i in range(j + 1):
        coeffs = {d: table[d][j - i] / factorial(i) for d in range(dmax + 1)}
        parts.append(GradedSeries.from_q_powers(coeffs, dmax))
    return LogSeries(parts)


def fundamental_period(geom, dmax):
    return pf_solutions(geom, 0, dmax).pure()


# ---------------------------------------------------------------------------
# recursion


@dataclass
class VSCTable:
    geometry: GeometryData
    entries: dict = field(default_factory=dict)
    series: list = field(default_factory=list)

    def __getitem__(self, key):
        return self.entries[key]


@lru_cache(maxsize=None)
def vsc_recursion(geom, dmax, nmax=None):
    """``L~_n(q)`` for ``n = 0 .. nmax`` through ``q^dmax`` (default: all ``n`` up to the formal top)."""
    if not geom.is_cy:
        raise ValueError("the period recursion needs a Calabi-Yau target")
    if nmax is None:
        nmax = geom.pf_order
    w0 = fundamental_period(geom, dmax)
    ls = [w0]
    inverses = [series_invert(w0)]
    for j in range(1, nmax + 1):
        s = pf_solutions(geom, j, dmax) * inverses[0]
        s = diff_x(s)
        for i in range(1, j):
            s = diff_x(s * inverses[i])
        if not s.is_pure():
            raise CancellationFailure("x-dependence survives in L~_%d" % j)
        lj = s.pure()
        ls.append(lj)
        inverses.append(series_invert(lj))
    table = VSCTable(geom, series=ls)
    for n, s in enumerate(ls):
        for d in range(dmax + 1):
            table.entries[(n, d)] = s[2 * d]
    return table


def mirror_map_correction(geom, dmax):
    """``t - x = sum_d L~_1^d / d q^d``."""
    l1 = vsc_recursion(geom, dmax, 1).series[1]
    return GradedSeries.from_q_powers(
        {d: l1[2 * d] / d for d in range(1, dmax + 1)}, dmax
    )


# ---------------------------------------------------------------------------
# residue formulas


def _monomial(nvars, exps, coef=1):
    return RatFun.from_poly(MPoly.monomial(nvars, exps, coef))


def _node(f, i, nvars, tag):
    """Divide by ``2 z_i - z_{i-1} - z_{i+1}`` tagged for the midpoint contour."""
    c = [0] * nvars
    c[i] = 2
    c[i - 1] = -1
    c[i + 1] = -1
    return f.divide_linear(c, tag=tag)


def _chain_product(f, degrees, lo, hi, nvars):
    for i in range(lo, hi + 1):
        for k in degrees:
            f = f * e_k(k, i - 1, i, nvars)
    return f


def closed_integrand(geom, a, b, d):
    """Integrand and contours of ``w(O_{h^a} O_{h^b})_{0,d}`` (chain form)."""
    nv = d + 1
    m = geom.m
    exps = [-geom.N] * nv
    exps[0] += a
    exps[d] += b
    for i in range(1, d):
        exps[i] -= m
    f = _monomial(nv, exps, Fraction(1, geom.degree_product ** (d - 1)))
    f = _chain_product(f, geom.degrees, 1, d, nv)
    tags = {}
    for i in range(1, d):
        tags[i] = "mid%d" % i
        f = _node(f, i, nv, tags[i])
    return f, ContourSpec.chain(nv, tags)


@lru_cache(maxsize=None)
def closed_w(geom, a, b, d):
    """``w(O_{h^a} O_{h^b})_{0,d}`` by iterated residues."""
    if a < 0 or b < 0 or d < 1:
        return ZERO
    if a + b != geom.closed_dimension(d):
        return ZERO
    f, spec = closed_integrand(geom, a, b, d)
    return iterated_contour(f, spec)


def l_tilde_residue(k, n, d):
    """``L~_n^{k,k,d}`` from the chain residue formula."""
    if d == 0:
        return ONE
    nv = d + 1
    exps = [-k] * nv
    exps[0] += k - 2 - n
    exps[d] += n - 1
    for i in range(1, d):
        exps[i] -= 1
    f = _monomial(nv, exps, Fraction(d, k) / k ** (d - 1))
    f = _chain_product(f, (k,), 1, d, nv)
    tags = {}
    for i in range(1, d):
        tags[i] = "mid%d" % i
        f = _node(f, i, nv, tags[i])
    return iterated_contour(f, ContourSpec.chain(nv, tags))


def edge_factor(N, k, delta, i, j, nvars):
    """``E^{N,k}_delta(z_i, z_j)`` as a RatFun."""
    num = MPoly.constant(nvars, 1)
    for s in range(k * delta + 1):
        c = [0] * nvars
        c[i] += Fraction(s, delta)
        c[j] += Fraction(k * delta - s, delta)
        num = num * MPoly.linear(c)
    f = RatFun.from_poly(num)
    for s in range(1, delta):
        c = [0] * nvars
        c[j] += Fraction(s, delta)
        c[i] += Fraction(delta - s, delta)
        f = f.divide_linear(c, power=N)
    return f


def l_tilde_partition(k, n, d):
    """``L~_n^{k,k,d}`` from the ordered-partition residue formula (all contours at zero)."""
    if d == 0:
        return ONE
    total = ZERO
    for sigma in compositions(d):
        l = len(sigma)
        nv = l + 1
        exps = [-k] * nv
        exps[0] += k - 2 - n
        exps[l] += n - 1
        for j in range(1, l):
            exps[j] -= 1
        coef = Fraction(d, k) / k ** (l - 1)
        for dj in sigma:
            coef /= dj
        f = _monomial(nv, exps, coef)
        for j in range(1, l + 1):
            f = f * edge_factor(k, k, sigma[j - 1], j - 1, j, nv)
        for j in range(1, l):
            c = [0] * nv
            c[j] += Fraction(1, sigma[j - 1]) + Fraction(1, sigma[j])
            c[j - 1] -= Fraction(1, sigma[j - 1])
            c[j + 1] -= Fraction(1, sigma[j])
            f = f.divide_linear(c)
        total += iterated_contour(f, ContourSpec.chain(nv))
    return total
