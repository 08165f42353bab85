"""Open virtual structure constants ``w_disk(O_{h^a})_{2d-1}``."""

from fractions import Fraction
from functools import lru_cache

from .closed import compositions, edge_factor
from .residue import ContourSpec, MPoly, RatFun, e_k, iterated_contour
from .series import ZERO


def _odd_double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _check_odd(d_odd):
    if d_odd < 1 or d_odd % 2 == 0:
        raise ValueError("disk degree must be a positive odd integer, got %r" % (d_odd,))


def f_coefficient(geom, d_odd):
    """``(c, s)`` with ``f_{d_odd}(z) = c z^s``."""
    _check_odd(d_odd)
    d = (d_odd + 1) // 2
    num_factors = 0
    c = Fraction(2, d_odd)
    for k in geom.degrees:
        n = (k * d_odd + 1) // 2
        num_factors += n
        c *= Fraction(_odd_double_factorial(k * d_odd), d_odd ** n)
    den = Fraction(_odd_double_factorial(d_odd - 2), d_odd ** (d - 1)) ** geom.N
    return c / den, num_factors - geom.N * (d - 1)


def f_factor(geom, d_odd, nvars=1, var=0):
    """``f_{d_odd}(z_var)`` as a monomial MPoly."""
    c, s = f_coefficient(geom, d_odd)
    exps = [0] * nvars
    exps[var] = s
    return MPoly.monomial(nvars, exps, c)


def _disk_node(f, e_odd, nvars, scale=1):
    """Divide by ``(2/e + 1) z_0 - z_1`` (scaled form for the partition variant)."""
    c = [0] * nvars
    c[0] = Fraction(2, e_odd) + scale
    c[1] = -scale
    return f.divide_linear(c)


def open_integrand(geom, a, d_odd, j):
    """The ``j``-th term of the chain formula, with its contour."""
    e_odd = d_odd - 2 * j
    nv = j + 1
    kp = geom.degree_product
    m = geom.m
    exps = [-geom.N] * nv
    exps[j] += a
    if j:
        exps[0] -= m
        for i in range(1, j):
            exps[i] -= m
    coef = Fraction(1, kp ** j)
    f = RatFun.from_poly(MPoly.monomial(nv, exps, coef) * f_factor(geom, e_odd, nv))
    tags = {}
    if j:
        for i in range(1, j + 1):
            for k in geom.degrees:
                f = f * e_k(k, i - 1, i, nv)
        f = _disk_node(f, e_odd, nv)
        for i in range(1, j):
            c = [0] * nv
            c[i] = 2
            c[i - 1] = -1
            c[i + 1] = -1
            tags[i] = "mid%d" % i
            f = f.divide_linear(c, tag=tags[i])
    return f, ContourSpec.chain(nv, tags)


@lru_cache(maxsize=None)
def open_vsc(geom, a, d_odd):
    """``w_disk(O_{h^a})_{d_odd}``; zero off the dimension constraint."""
    _check_odd(d_odd)
    if a < 0 or geom.open_insertion_power(d_odd) != a:
        return ZERO
    total = ZERO
    for j in range((d_odd + 1) // 2):
        f, spec = open_integrand(geom, a, d_odd, j)
        total += iterated_contour(f, spec)
    return total


def open_vsc_partition(geom, a, d_odd):
    """Ordered-partition form of :func:`open_vsc` with every contour at zero (hypersurfaces)."""
    _check_odd(d_odd)
    if not geom.is_hypersurface:
        raise ValueError("the partition form is implemented for hypersurfaces only")
    if a < 0 or geom.open_insertion_power(d_odd) != a:
        return ZERO
    N, k = geom.N, geom.k
    total = ZERO
    for j in range((d_odd + 1) // 2):
        e_odd = d_odd - 2 * j
        for sigma in compositions(j):
            l = len(sigma)
            nv = l + 1
            exps = [-N] * nv
            exps[l] += a
            if l:
                exps[0] -= 1
            for i in range(1, l):
                exps[i] -= 1
            coef = Fraction(1, k ** l)
            for part in sigma:
                coef /= part
            f = RatFun.from_poly(MPoly.monomial(nv, exps, coef) * f_factor(geom, e_odd, nv))
            for i in range(1, l + 1):
                f = f * edge_factor(N, k, sigma[i - 1], i - 1, i, nv)
            if l:
                f = _disk_node(f, e_odd, nv, Fraction(1, sigma[0]))
            for i in range(1, l):
                c = [0] * nv
                c[i] = Fraction(1, sigma[i - 1]) + Fraction(1, sigma[i])
                c[i - 1] = -Fraction(1, sigma[i - 1])
                c[i + 1] = -Fraction(1, sigma[i])
                f = f.divide_linear(c)
            total += iterated_contour(f, ContourSpec.chain(nv))
    return total
