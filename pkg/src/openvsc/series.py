"""Truncated formal series in q = e^x over the rationals.

Exponents are stored doubled, so index ``e`` always stands for ``q^(e/2)``.
A series with ``half=False`` only ever has even indices populated; promotion
to half-integer grading is implicit when mixing the two.

Every series carries ``trunc``: coefficients with doubled index above it are
unknown, not zero.
"""

from fractions import Fraction

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ZeroConstantTerm(ArithmeticError):
    pass


class NotAMirrorMap(ValueError):
    pass


class GradedSeries:
    """Dense truncated series ``sum_e coeffs[e] q^(e/2)`` for ``0 <= e <= trunc``."""

    __slots__ = ("coeffs", "trunc", "half")

    def __init__(self, coeffs, trunc, half=False):
        if isinstance(coeffs, dict):
            dense = [ZERO] * (trunc + 1)
            for e, c in coeffs.items():
                if e < 0:
                    raise ValueError("negative exponent index %d" % e)
                if e <= trunc:
                    dense[e] = Fraction(c)
            coeffs = dense
        else:
            coeffs = [Fraction(c) for c in coeffs[: trunc + 1]]
            coeffs.extend([ZERO] * (trunc + 1 - len(coeffs)))
        if not half and any(coeffs[e] for e in range(1, trunc + 1, 2)):
            raise ValueError("odd doubled index in an integer-graded series")
        self.coeffs = tuple(coeffs)
        self.trunc = trunc
        self.half = half

    @classmethod
    def one(cls, trunc, half=False):
        return cls({0: 1}, trunc, half)

    @classmethod
    def zero(cls, trunc, half=False):
        return cls({}, trunc, half)

    @classmethod
    def from_q_powers(cls, coeffs, trunc_q):
        """Integer-graded series from ``{d: c}`` meaning ``c q^d``, known through ``q^trunc_q``."""
        return cls({2 * d: c for d, c in coeffs.items()}, 2 * trunc_q)

    @property
    def grading_unit(self):
        return Fraction(1, 2) if self.half else ONE

    def __getitem__(self, e):
        if e < 0:
            return ZERO
        if e > self.trunc:
            raise IndexError("coefficient q^(%d/2) is beyond truncation %d" % (e, self.trunc))
        return self.coeffs[e]

    def coeff_q(self, d):
        """Coefficient of ``q^d`` (``d`` may be a half-integer Fraction)."""
        e = Fraction(d) * 2
        if e.denominator != 1:
            raise ValueError("exponent %s is not a multiple of 1/2" % d)
        return self[int(e)]

    def items(self):
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def as_dict(self):
        return dict(self.items())

    def valuation(self):
        for e, c in enumerate(self.coeffs):
            if c:
                return e
        return self.trunc + 1

    def is_zero(self):
        return not any(self.coeffs)

    def truncate(self, trunc):
        trunc = min(trunc, self.trunc)
        return GradedSeries(self.coeffs[: trunc + 1], trunc, self.half)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedSeries({0: other}, self.trunc, self.half)
        if not isinstance(other, GradedSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        return self.coeffs[: t + 1] == other.coeffs[: t + 1]

    def __hash__(self):
        return hash((self.coeffs, self.trunc))

    def __repr__(self):
        terms = []
        for e, c in self.items():
            if e == 0:
                terms.append(str(c))
            elif e % 2 == 0:
                terms.append("%s*q^%d" % (c, e // 2))
            else:
                terms.append("%s*q^(%d/2)" % (c, e))
        body = " + ".join(terms) if terms else "0"
        return "GradedSeries(%s + O(q^(%d/2)))" % (body, self.trunc + 1)

    def _coerce(self, other):
        if isinstance(other, GradedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return GradedSeries({0: other}, self.trunc, self.half)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = min(self.trunc, other.trunc)
        return GradedSeries(
            [a + b for a, b in zip(self.coeffs[: t + 1], other.coeffs[: t + 1])],
            t,
            self.half or other.half,
        )

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries([-c for c in self.coeffs], self.trunc, self.half)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return GradedSeries([c * other for c in self.coeffs], self.trunc, self.half)
        if isinstance(other, GradedSeries):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (ONE / Fraction(other))
        if isinstance(other, GradedSeries):
            return series_mul(self, series_invert(other))
        return NotImplemented

    def shift(self, e):
        """Multiply by ``q^(e/2)``; the truncation moves with the series."""
        if e < 0:
            raise ValueError("negative shift")
        return GradedSeries(
            (ZERO,) * e + self.coeffs, self.trunc + e, self.half or e % 2 == 1
        )

    def theta(self):
        """``d/dx`` with ``q = e^x``: ``q^(e/2) -> (e/2) q^(e/2)``."""
        return GradedSeries(
            [c * Fraction(e, 2) for e, c in enumerate(self.coeffs)], self.trunc, self.half
        )

    def sign_flip(self):
        """Substitute ``q^(1/2) -> -q^(1/2)``."""
        return GradedSeries(
            [-c if e % 2 else c for e, c in enumerate(self.coeffs)], self.trunc, self.half
        )


def series_mul(a, b):
    va, vb = a.valuation(), b.valuation()
    t = min(a.trunc + vb, b.trunc + va)
    out = [ZERO] * (t + 1)
    ac, bc = a.coeffs, b.coeffs
    for i in range(va, min(a.trunc, t) + 1):
        ai = ac[i]
        if not ai:
            continue
        for j in range(vb, min(b.trunc, t - i) + 1):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return GradedSeries(out, t, a.half or b.half)


def series_invert(a):
    a0 = a.coeffs[0]
    if not a0:
        raise ZeroConstantTerm("series has vanishing constant term")
    inv0 = ONE / a0
    n = a.trunc
    b = [ZERO] * (n + 1)
    b[0] = inv0
    ac = a.coeffs
    nz = [j for j in range(1, n + 1) if ac[j]]
    for i in range(1, n + 1):
        s = ZERO
        for j in nz:
            if j > i:
                break
            s += ac[j] * b[i - j]
        b[i] = -s * inv0
    return GradedSeries(b, n, a.half)


def series_exp(a):
    """``exp(a)`` for a series with zero constant term."""
    if a.coeffs[0]:
        raise ValueError("exp needs a vanishing constant term")
    n = a.trunc
    out = [ZERO] * (n + 1)
    out[0] = ONE
    ac = a.coeffs
    nz = [j for j in range(1, n + 1) if ac[j]]
    # theta(E) = theta(a) E, in doubled indices: i E_i = sum_j j a_j E_{i-j}
    for i in range(1, n + 1):
        s = ZERO
        for j in nz:
            if j > i:
                break
            s += j * ac[j] * out[i - j]
        out[i] = s / i
    return GradedSeries(out, n, a.half)


class LogSeries:
    """``sum_i x^i * parts[i]`` with each part a GradedSeries."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise ValueError("LogSeries needs at least one part")
        t = min(p.trunc for p in parts)
        half = any(p.half for p in parts)
        self.parts = tuple(GradedSeries(p.coeffs, t, half) for p in parts)

    @classmethod
    def constant(cls, series):
        return cls([series])

    @property
    def trunc(self):
        return self.parts[0].trunc

    @property
    def x_degree(self):
        for i in range(len(self.parts) - 1, -1, -1):
            if not self.parts[i].is_zero():
                return i
        return 0

    def is_pure(self):
        return all(p.is_zero() for p in self.parts[1:])

    def pure(self):
        return self.parts[0]

    def __eq__(self, other):
        if isinstance(other, GradedSeries):
            other = LogSeries([other])
        if not isinstance(other, LogSeries):
            return NotImplemented
        n = max(len(self.parts), len(other.parts))
        t = min(self.trunc, other.trunc)
        for i in range(n):
            a = self.parts[i] if i < len(self.parts) else GradedSeries.zero(t)
            b = other.parts[i] if i < len(other.parts) else GradedSeries.zero(t)
            if a != b:
                return False
        return True

    def __repr__(self):
        return "LogSeries(%s)" % ", ".join("x^%d: %r" % (i, p) for i, p in enumerate(self.parts))

    def __add__(self, other):
        if isinstance(other, GradedSeries):
            other = LogSeries([other])
        if not isinstance(other, LogSeries):
            return NotImplemented
        n = max(len(self.parts), len(other.parts))
        t = min(self.trunc, other.trunc)
        out = []
        for i in range(n):
            a = self.parts[i] if i < len(self.parts) else GradedSeries.zero(t)
            b = other.parts[i] if i < len(other.parts) else GradedSeries.zero(t)
            out.append(a + b)
        return LogSeries(out)

    __radd__ = __add__

    def __neg__(self):
        return LogSeries([-p for p in self.parts])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GradedSeries)):
            return LogSeries([p * other for p in self.parts])
        if isinstance(other, LogSeries):
            n = len(self.parts) + len(other.parts) - 1
            acc = [None] * n
            for i, a in enumerate(self.parts):
                for j, b in enumerate(other.parts):
                    term = a * b
                    acc[i + j] = term if acc[i + j] is None else acc[i + j] + term
            return LogSeries(acc)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, e):
        return LogSeries([p.shift(e) for p in self.parts])


def diff_x(a):
    """``d/dx`` on a LogSeries (a bare GradedSeries is promoted)."""
    if isinstance(a, GradedSeries):
        a = LogSeries([a])
    parts = a.parts
    out = []
    for i, p in enumerate(parts):
        term = p.theta()
        if i + 1 < len(parts):
            term = term + parts[i + 1] * (i + 1)
        out.append(term)
    return LogSeries(out)


def compose_q(h, e_series):
    """``sum_d h_d Q^d E^d`` for integer-graded ``h`` with ``h_0 = 0``; ``E`` has constant term 1."""
    t = e_series.trunc
    acc = GradedSeries.zero(t, e_series.half)
    power = GradedSeries.one(t, e_series.half)
    for d in range(1, t // 2 + 1):
        power = power * e_series
        c = h[2 * d] if 2 * d <= h.trunc else None
        if c is None:
            break
        if c:
            acc = acc + (power * c).shift(2 * d).truncate(t)
    return acc


def invert_map(t_minus_x, target):
    """Re-express ``target(q)`` in the variable ``Q = e^t`` where ``t = x + t_minus_x(e^x)``.

    Returns a series in ``Q^(1/2)``.  The inverse ``x = t + u(Q)`` is found by
    the fixed-point iteration ``u <- -t_minus_x(Q e^u)``, which gains one
    order of ``Q`` per pass.
    """
    if t_minus_x.half:
        raise NotAMirrorMap("mirror map must be integer graded")
    if t_minus_x.coeffs[0]:
        raise NotAMirrorMap("mirror map correction has a constant term")
    th = t_minus_x.trunc - t_minus_x.trunc % 2
    n = min(target.trunc, th + 1)
    u = GradedSeries.zero(th)
    for _ in range(th // 2 + 1):
        u_next = -compose_q(t_minus_x.truncate(th), series_exp(u))
        if u_next == u:
            break
        u = u_next
    return _rescale_powers(target.truncate(n), u, n)


def _rescale_powers(series, log_factor, n):
    # q^(e/2) -> Q^(e/2) exp(e * log_factor / 2)
    out = [ZERO] * (n + 1)
    for e, c in series.items():
        factor = series_exp(log_factor * Fraction(e, 2)).shift(e)
        for i, f in factor.items():
            if i > n:
                break
            out[i] += c * f
    return GradedSeries(out, n, True)


def substitute_map(t_minus_x, series_in_t):
    """Forward direction of :func:`invert_map`: rewrite a ``Q``-series in ``q``."""
    th = t_minus_x.trunc - t_minus_x.trunc % 2
    n = min(series_in_t.trunc, th + 1)
    return _rescale_powers(series_in_t.truncate(n), t_minus_x.truncate(th), n)
