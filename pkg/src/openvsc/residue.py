"""Sparse rational functions over Q and iterated residues.

A :class:`RatFun` is a sum of terms ``coef * prod(numerator polys) /
prod(linear forms ** power)``.  Denominators stay factored: every pole that
occurs in the localization formulas is either a monomial ``z_i^m`` or a
linear locus, so residues can be read off exactly without any gcd work.

Linear forms are affine tuples ``(c_0, ..., c_{n-1}, const)`` normalised so
the first nonzero variable coefficient is 1.  Each denominator factor also
carries an optional *tag*; a :class:`ContourSpec` names the tags whose zeros
a given contour encircles, so pole sets are never guessed from the integrand.
"""

from fractions import Fraction
from math import comb

from .series import ONE, ZERO


class ResidueError(ArithmeticError):
    stage = None


class NonIsolatedPole(ResidueError):
    pass


class HigherOrderPole(ResidueError):
    pass


# ---------------------------------------------------------------------------
# raw polynomial helpers: dict {exponent tuple: Fraction}


def _p_add_into(acc, p, scale=ONE):
    for e, c in p.items():
        v = acc.get(e, ZERO) + c * scale
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return acc


def _p_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, ZERO) + ca * cb
    return {e: c for e, c in out.items() if c}


def _p_scale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def _p_const(nvars, c):
    c = Fraction(c)
    return {(0,) * nvars: c} if c else {}


def _p_affine(form):
    n = len(form) - 1
    out = {}
    for i in range(n):
        if form[i]:
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = form[i]
    if form[n]:
        out[(0,) * n] = form[n]
    return out


def _p_powers(p, nvars, top):
    pw = [_p_const(nvars, 1)]
    for _ in range(top):
        pw.append(_p_mul(pw[-1], p))
    return pw


def _p_degree(p):
    degs = {sum(e) for e in p}
    return degs


def _p_expand_at(p, v, point, order):
    """Coefficients of ``eps^r``, ``r < order``, in ``p`` with ``z_v = point + eps``."""
    by_e = {}
    for e, c in p.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        by_e.setdefault(k, {})[rest] = c
    nvars = len(point) - 1
    if not any(point):
        return [by_e.get(r, {}) for r in range(order)]
    top = max(by_e)
    ppow = _p_powers(_p_affine(point), nvars, top)
    out = []
    for r in range(order):
        acc = {}
        for k, part in by_e.items():
            if k < r:
                continue
            acc = _p_add_into(acc, _p_mul(part, ppow[k - r]), comb(k, r))
        out.append(acc)
    return out


def _series_product_coeff(series_list, target):
    """Coefficient ``target`` of the product of truncated polynomial series."""
    if not series_list:
        return None
    acc = series_list[0]
    for ser in series_list[1:-1]:
        nxt = []
        for i in range(target + 1):
            s = {}
            for j in range(i + 1):
                if acc[j] and ser[i - j]:
                    _p_add_into(s, _p_mul(acc[j], ser[i - j]))
            nxt.append(s)
        acc = nxt
    if len(series_list) == 1:
        return acc[target]
    last = series_list[-1]
    s = {}
    for j in range(target + 1):
        if acc[j] and last[target - j]:
            _p_add_into(s, _p_mul(acc[j], last[target - j]))
    return s


# ---------------------------------------------------------------------------
# public polynomial type


class MPoly:
    """Sparse polynomial in ``z_0, ..., z_{nvars-1}`` with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, _p_const(nvars, c))

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def linear(cls, coeffs, const=0):
        return cls(len(coeffs), _p_affine(tuple(Fraction(c) for c in coeffs) + (Fraction(const),)))

    def _wrap(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return MPoly(self.nvars, _p_add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, _p_scale(self.terms, -1))

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return MPoly(self.nvars, _p_add_into(dict(self.terms), other.terms, -ONE))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.nvars, _p_scale(self.terms, Fraction(other)))
        if isinstance(other, MPoly):
            return MPoly(self.nvars, _p_mul(self.terms, other.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "MPoly(%r)" % self.terms

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return _p_degree(self.terms)

    def diff(self, v):
        out = {}
        for e, c in self.terms.items():
            if e[v]:
                f = list(e)
                f[v] -= 1
                out[tuple(f)] = c * e[v]
        return MPoly(self.nvars, out)

    def evaluate(self, values):
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(values, e):
                if k:
                    t *= Fraction(x) ** k
            total += t
        return total


def e_k(k, i, j, nvars):
    """``prod_{l=0}^{k} (l z_i + (k - l) z_j)``."""
    out = MPoly.constant(nvars, 1)
    for l in range(k + 1):
        c = [0] * nvars
        c[i] += l
        c[j] += k - l
        out = out * MPoly.linear(c)
    return out


def h_poly(a, i, j, nvars):
    """``(z_i^a - z_j^a)/(z_i - z_j)`` as a polynomial; zero for ``a = 0``."""
    out = {}
    for s in range(a):
        e = [0] * nvars
        e[i] += s
        e[j] += a - 1 - s
        out[tuple(e)] = out.get(tuple(e), ZERO) + 1
    return MPoly(nvars, out)


# ---------------------------------------------------------------------------
# rational functions


def _normalize_form(form):
    """Return ``(scale, normalized)``; ``normalized`` is None for a constant form."""
    n = len(form) - 1
    for i in range(n):
        if form[i]:
            s = form[i]
            if s == 1:
                return ONE, form
            return s, tuple(x / s for x in form)
    return form[n], None


class _Term:
    __slots__ = ("coef", "nums", "dens")

    def __init__(self, coef, nums, dens):
        self.coef = coef
        self.nums = nums
        self.dens = dens


class RatFun:
    """Sum of factored terms; see the module docstring."""

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        self.terms = list(terms)

    @classmethod
    def constant(cls, nvars, c=1):
        c = Fraction(c)
        return cls(nvars, [_Term(c, (), {})] if c else [])

    @classmethod
    def from_poly(cls, poly):
        """Numerator polynomial; negative exponents (Laurent) go to the denominator."""
        nvars = poly.nvars
        terms = poly.terms
        if not terms:
            return cls(nvars)
        lows = [min(e[i] for e in terms) for i in range(nvars)]
        dens = {}
        if any(x < 0 for x in lows):
            shift = [max(0, -x) for x in lows]
            terms = {tuple(a + b for a, b in zip(e, shift)): c for e, c in terms.items()}
            for i, s in enumerate(shift):
                if s:
                    form = [ZERO] * (nvars + 1)
                    form[i] = ONE
                    dens[(None, tuple(form))] = s
        return cls(nvars, [_Term(ONE, (terms,), dens)])

    def copy(self):
        return RatFun(self.nvars, [_Term(t.coef, t.nums, dict(t.dens)) for t in self.terms])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.constant(self.nvars, other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return RatFun(self.nvars, self.copy().terms + other.copy().terms)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return RatFun(self.nvars)
            return RatFun(self.nvars, [_Term(t.coef * c, t.nums, dict(t.dens)) for t in self.terms])
        if isinstance(other, MPoly):
            other = RatFun.from_poly(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        out = []
        for a in self.terms:
            for b in other.terms:
                dens = dict(a.dens)
                for key, pw in b.dens.items():
                    dens[key] = dens.get(key, 0) + pw
                out.append(_Term(a.coef * b.coef, a.nums + b.nums, dens))
        return RatFun(self.nvars, out)

    __rmul__ = __mul__

    def divide_linear(self, coeffs, const=0, power=1, tag=None):
        """Divide by ``(sum_i coeffs[i] z_i + const) ** power``; ``tag`` names the factor."""
        form = tuple(Fraction(c) for c in coeffs) + (Fraction(const),)
        if len(form) != self.nvars + 1:
            raise ValueError("linear form has wrong length")
        scale, norm = _normalize_form(form)
        if norm is None and not scale:
            raise NonIsolatedPole("division by the zero form")
        out = []
        for t in self.terms:
            coef = t.coef / scale ** power
            dens = dict(t.dens)
            if norm is not None:
                dens[(tag, norm)] = dens.get((tag, norm), 0) + power
            out.append(_Term(coef, t.nums, dens))
        return RatFun(self.nvars, out)

    def evaluate(self, values):
        """Exact value at a rational point (used by tests as an independent check)."""
        values = [Fraction(v) for v in values] + [ONE]
        total = ZERO
        for t in self.terms:
            val = t.coef
            for p in t.nums:
                val *= MPoly(self.nvars, p).evaluate(values[:-1])
            for (_, form), pw in t.dens.items():
                d = sum(c * x for c, x in zip(form, values))
                if not d:
                    raise ZeroDivisionError("pole at evaluation point")
                val /= d ** pw
            total += val
        return total

    def homogeneous_degree(self):
        """Common total degree, or None if some term is not homogeneous."""
        deg = None
        for t in self.terms:
            d = 0
            vanishing = False
            for p in t.nums:
                ds = _p_degree(p)
                if not ds:
                    vanishing = True
                    break
                if len(ds) != 1:
                    return None
                d += ds.pop()
            if vanishing:
                continue
            for (_, form), pw in t.dens.items():
                if form[-1]:
                    return None
                d -= pw
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return deg

    def scalar(self):
        """Value of a RatFun with no variables left."""
        total = ZERO
        for t in self.terms:
            if t.dens:
                raise ValueError("variables remain in the denominator")
            val = t.coef
            for p in t.nums:
                if not p:
                    val = ZERO
                    break
                if any(any(e) for e in p):
                    raise ValueError("variables remain in the numerator")
                val *= next(iter(p.values()))
            total += val
        return total

    def involves(self, v):
        for t in self.terms:
            if any(e[v] for p in t.nums for e in p):
                return True
            if any(form[v] for (_, form) in t.dens):
                return True
        return False

    def set_variable(self, v, value):
        """Substitute ``z_v = value`` (a rational constant)."""
        value = Fraction(value)
        n = self.nvars
        out = []
        for t in self.terms:
            coef = t.coef
            nums = []
            for p in t.nums:
                q = {}
                for e, c in p.items():
                    k = e[v]
                    f = e[:v] + (0,) + e[v + 1:]
                    q[f] = q.get(f, ZERO) + c * value ** k
                nums.append({e: c for e, c in q.items() if c})
            dens = {}
            for (tag, form), pw in t.dens.items():
                f = list(form)
                f[n] += f[v] * value
                f[v] = ZERO
                scale, norm = _normalize_form(tuple(f))
                if norm is None:
                    if not scale:
                        raise ZeroDivisionError("denominator vanishes identically")
                    coef /= scale ** pw
                else:
                    coef /= scale ** pw
                    dens[(tag, norm)] = dens.get((tag, norm), 0) + pw
            out.append(_Term(coef, tuple(nums), dens))
        return RatFun(n, out)


# ---------------------------------------------------------------------------
# residues


def _locus_of(form, v):
    """Point ``p`` with ``form = form[v] * (z_v - p)``."""
    c = form[v]
    return tuple(ZERO if i == v else -x / c for i, x in enumerate(form))


def _term_residue(t, v, point, nvars, max_order=None):
    coef = t.coef
    m = 0
    moving = []
    still = {}
    for (tag, form), pw in t.dens.items():
        c = form[v]
        if not c:
            still[(tag, form)] = still.get((tag, form), 0) + pw
            continue
        at = tuple(ZERO if i == v else x + c * point[i] for i, x in enumerate(form))
        if not any(at):
            m += pw
            coef /= c ** pw
        else:
            moving.append((tag, at, c, pw))
    if m == 0:
        return None
    if max_order is not None and m > max_order:
        raise HigherOrderPole("pole of order %d in z_%d" % (m, v))
    top = m - 1
    series_list = []
    keep = []
    for p in t.nums:
        if any(e[v] for e in p):
            series_list.append(_p_expand_at(p, v, point, m))
        else:
            keep.append(p)
    dens = still
    for tag, at, c, pw in moving:
        scale, norm = _normalize_form(at)
        if norm is None:
            # constant factor: (A + c eps)^-pw, scalar coefficients
            coef /= scale ** pw
            ser = [_p_const(nvars, comb(pw + n - 1, n) * (-c / scale) ** n) for n in range(m)]
        else:
            # common denominator norm^(pw + top), with A = scale * norm
            coef /= scale ** pw
            a_poly = _p_affine(norm)
            a_pow = _p_powers(a_poly, nvars, top)
            ser = [
                _p_scale(a_pow[top - n], comb(pw + n - 1, n) * (-c / scale) ** n)
                for n in range(m)
            ]
            key = (tag, norm)
            dens[key] = dens.get(key, 0) + pw + top
        series_list.append(ser)
    if series_list:
        q = _series_product_coeff(series_list, top)
        if not q:
            return None
        keep.append(q)
    elif top:
        return None
    return _Term(coef, tuple(keep), dens)


def _residue(f, v, points, max_order=None):
    out = []
    for t in f.terms:
        for p in points(t):
            r = _term_residue(t, v, p, f.nvars, max_order)
            if r is not None:
                out.append(r)
    return RatFun(f.nvars, out)


def _zero_point(nvars):
    return (ZERO,) * (nvars + 1)


def residue_at_zero(f, var):
    """Coefficient of ``z_var^-1`` in the Laurent expansion at ``z_var = 0``."""
    zero = _zero_point(f.nvars)
    return _residue(f, var, lambda t: [zero])


def residue_at_linear_pole(f, var, point):
    """Simple-pole residue along ``z_var = point``.

    ``point`` is a coefficient sequence over the variables, optionally followed
    by a constant; its ``var`` entry must be zero.
    """
    point = tuple(Fraction(x) for x in point)
    if len(point) == f.nvars:
        point = point + (ZERO,)
    if point[var]:
        raise ValueError("pole location may not depend on the integration variable")
    return _residue(f, var, lambda t: [point], max_order=1)


class ContourSpec:
    """Ordered contour prescription.

    ``stages`` is a sequence of ``(var, poles)``; ``poles`` holds ``"zero"``,
    tag strings (zeros of the denominator factors carrying that tag) and
    explicit points (coefficient tuples, as for :func:`residue_at_linear_pole`).
    """

    def __init__(self, stages):
        stages = [(v, tuple(p)) for v, p in stages]
        vs = [v for v, _ in stages]
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise ValueError("contour variables must be listed in ascending order")
        self.stages = stages

    @classmethod
    def chain(cls, nvars, tagged=()):
        """All variables at zero; those in ``tagged`` (a dict var -> tag) also at the tagged locus."""
        tagged = dict(tagged)
        return cls([(v, ("zero", tagged[v]) if v in tagged else ("zero",)) for v in range(nvars)])

    def __iter__(self):
        return iter(self.stages)

    def __len__(self):
        return len(self.stages)


def _stage_points(v, poles, nvars):
    zero = _zero_point(nvars)
    explicit = []
    tags = set()
    want_zero = False
    for p in poles:
        if p == "zero":
            want_zero = True
        elif isinstance(p, str):
            tags.add(p)
        else:
            pt = tuple(Fraction(x) for x in p)
            if len(pt) == nvars:
                pt = pt + (ZERO,)
            explicit.append(pt)

    def points(t):
        found = []
        if want_zero:
            found.append(zero)
        found.extend(explicit)
        for (tag, form), _ in t.dens.items():
            if tag in tags and form[v]:
                found.append(_locus_of(form, v))
        seen = []
        for p in found:
            if p not in seen:
                seen.append(p)
        return seen

    return points


def iterated_contour(f, spec, dehomogenize=True):
    """Apply the residues of ``spec`` in order and return the resulting scalar.

    For a homogeneous integrand whose last contour only encircles zero, the
    last variable is set to 1 up front: the remaining function of that
    variable is ``c * z^s`` with ``s`` fixed by the degree, so the answer is
    ``c`` when ``s = -1`` and 0 otherwise.
    """
    stages = list(spec)
    covered = {v for v, _ in stages}
    for v in range(f.nvars):
        if v not in covered and f.involves(v):
            raise ValueError("contour spec does not cover z_%d" % v)
    if dehomogenize and stages and tuple(stages[-1][1]) == ("zero",):
        deg = f.homogeneous_degree()
        if deg is not None and f.terms:
            if deg + len(stages) != 0:
                return ZERO
            last = stages[-1][0]
            f = f.set_variable(last, 1)
            stages = stages[:-1]
    for stage, (v, poles) in enumerate(stages):
        try:
            f = _residue(f, v, _stage_points(v, poles, f.nvars))
        except ResidueError as exc:
            exc.stage = stage
            raise
    return f.scalar()
