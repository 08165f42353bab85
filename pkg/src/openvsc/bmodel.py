"""B-model side: the tension series, the Picard-Fuchs operator, the open
generating function and its mirror-map transform."""

from dataclasses import dataclass
from fractions import Fraction

from .amodel import CoveringParams, covering_invert
from .closed import CancellationFailure, fundamental_period, mirror_map_correction, pf_solutions, vsc_recursion
from .series import GradedSeries, LogSeries, diff_x, invert_map, series_invert


def _odd_double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _require_cy(geom):
    if not geom.is_cy:
        raise ValueError("%s is not Calabi-Yau" % geom.label())


def tau_series(geom, dmax):
    """``sum_{d<=dmax} 2 prod_a (k_a(2d-1))!! / ((2d-1)!!)^N q^((2d-1)/2)``."""
    _require_cy(geom)
    coeffs = {}
    for d in range(1, dmax + 1):
        e = 2 * d - 1
        c = Fraction(2)
        for k in geom.degrees:
            c *= _odd_double_factorial(k * e)
        coeffs[e] = c / Fraction(_odd_double_factorial(e)) ** geom.N
    return GradedSeries(coeffs, 2 * dmax - 1, True)


# ---------------------------------------------------------------------------
# Picard-Fuchs operator


@dataclass(frozen=True)
class PFOperator:
    """``theta^r - (prod k_a) e^x prod_a prod_{j=1}^{k_a-1} (k_a theta + j)``, optionally
    preceded by ``(theta - 1/2)`` (the open extension)."""

    geometry: object
    open: bool = False

    @property
    def order(self):
        return self.geometry.pf_order + (1 if self.open else 0)

    def _closed(self, s):
        geom = self.geometry
        lhs = s
        for _ in range(geom.pf_order):
            lhs = diff_x(lhs)
        rhs = s
        for k in geom.degrees:
            for j in range(1, k):
                rhs = diff_x(rhs) * k + rhs * j
        rhs = rhs.shift(2) * geom.degree_product
        return lhs - rhs

    def __call__(self, s):
        if isinstance(s, GradedSeries):
            s = LogSeries([s])
        out = self._closed(s)
        if self.open:
            out = diff_x(out) - out * Fraction(1, 2)
        return out


def pf_apply(op, s):
    return op(s)


@dataclass
class TensionSeries:
    tau: GradedSeries
    C: Fraction
    A: int


class InhomogeneityError(ArithmeticError):
    """The operator image of the tension is not a single ``q^(1/2)`` term."""


def extract_C(geom, dmax):
    """Apply the operator to ``tau`` and read off the constant of the surviving ``q^(1/2)`` term."""
    tau = tau_series(geom, dmax)
    image = PFOperator(geom)(tau)
    if not image.is_pure():
        raise InhomogeneityError("logarithmic part in the operator image")
    image = image.pure()
    stray = [e for e, c in image.items() if e != 1]
    if stray:
        raise InhomogeneityError("operator image has terms at doubled exponents %s" % stray)
    return image[1]


def parity_constant(k):
    """``A`` of the tension formula: 1 when ``(k-1)/2`` is even, 3 when odd."""
    return 1 if ((k - 1) // 2) % 2 == 0 else 3


def tension_series(geom, dmax):
    return TensionSeries(tau_series(geom, dmax), extract_C(geom, dmax), parity_constant(geom.k))


# ---------------------------------------------------------------------------
# open generating function and mirror map


def open_half_power(geom):
    """``a = (dim - 1)/2``, the insertion power of the Calabi-Yau disk amplitude."""
    if geom.dim % 2 == 0:
        raise ValueError("disk amplitudes need odd complex dimension")
    return (geom.dim - 1) // 2


def f_open(geom, dmax):
    """``2^a (1/L_a) D ... (1/L_1) D (tau/L_0)`` through ``q^((2dmax-1)/2)``."""
    _require_cy(geom)
    a = open_half_power(geom)
    table = vsc_recursion(geom, dmax - 1, a)
    ls = table.series
    s = LogSeries([tau_series(geom, dmax) * series_invert(ls[0])])
    for j in range(1, a + 1):
        s = diff_x(s) * series_invert(ls[j])
    if not s.is_pure():
        raise CancellationFailure("x-dependence survives in the open generating function")
    return s.pure() * 2 ** a


def mirror_map(geom, dmax):
    """``t - x`` as an integer-graded series through ``q^dmax``."""
    return mirror_map_correction(geom, dmax)


def disk_amplitudes(geom, dmax):
    """``sum_d <O_{h^a}>_{disk,2d-1} Q^((2d-1)/2)`` for ``d <= dmax``."""
    fo = f_open(geom, dmax)
    return invert_map(mirror_map(geom, max(dmax - 1, 0)), fo)


def disk_invariants(geom, dmax, D=None, signed=True):
    """Disk amplitudes resummed through the covering formula."""
    if D is None:
        D = geom.covering_D()
        if D is None:
            raise ValueError("covering formula needs odd dimension at least 3")
    amp = disk_amplitudes(geom, dmax)
    return amp, covering_invert(amp, CoveringParams(D, signed))


# ---------------------------------------------------------------------------
# periods from direct integration


TAG_LOG = "1/(4*pi*i)"
TAG_ONE = "1"


def tag_tau(k):
    return "(2/pi)^%d" % ((k - 1) // 2)


@dataclass
class FormalCombination:
    """``sum_tag tag * series`` with the tags kept as opaque symbols."""

    parts: dict

    def __sub__(self, other):
        out = dict(self.parts)
        for tag, s in other.parts.items():
            out[tag] = out[tag] - s if tag in out else s * -1
        return FormalCombination(out)

    def get(self, tag):
        return self.parts.get(tag)


def tension(geom, dmax, sign=1):
    """``T_+`` (``sign=1``) or ``T_-`` (``sign=-1``) as a formal combination.

    The common factor ``m^(m-2)`` is dropped.
    """
    if not geom.is_hypersurface:
        raise ValueError("tension formula is stated for hypersurfaces")
    _require_cy(geom)
    k = geom.k
    A = parity_constant(k)
    w0 = LogSeries([fundamental_period(geom, dmax)])
    w1 = pf_solutions(geom, 1, dmax)
    tau = LogSeries([tau_series(geom, dmax + 1)])
    return FormalCombination({
        TAG_LOG: w1 * Fraction(1, 1),
        TAG_ONE: w0 * Fraction(sign * A, 4),
        tag_tau(k): tau * Fraction(sign, 8),
    })


def appendix_periods(geom, dmax):
    """``(w0, w1, T_+)``."""
    return (
        fundamental_period(geom, dmax),
        pf_solutions(geom, 1, dmax),
        tension(geom, dmax, 1),
    )
