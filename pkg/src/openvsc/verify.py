"""Verification suites shared by the command line and the test suite.

Every suite returns a list of :class:`Check`; nothing raises on a mismatch.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import tables
from .amodel import (
    CoveringParams,
    amodel_amplitude,
    covering_forward,
    covering_invert,
    gmt_correction,
    gmt_rhs,
    open_gw_local,
)
from .bmodel import PFOperator, disk_amplitudes, extract_C, f_open, tau_series
from .closed import closed_w, l_tilde_partition, l_tilde_residue, pf_solutions, vsc_recursion
from .geometry import GeometryData
from .open_vsc import open_vsc, open_vsc_partition

TRANSFORMATION_GEOMETRIES = [(5, 3), (6, 5), (7, 5), (8, 7), (9, 7), (8, 9)]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _eq(name, got, want):
    return Check(name, got == want, "got %s, expected %s" % (got, want))


def _odd_double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


# ---------------------------------------------------------------------------


def suite_tables(geom=None, dmax=9):
    checks = []
    for g, table in tables.cy_tables():
        if geom is not None and g != geom:
            continue
        top = min(dmax, max(table) // 2 + 1)
        amp = disk_amplitudes(g, top)
        result = covering_invert(amp, CoveringParams(g.covering_D()))
        for d_odd, n in sorted(table.items()):
            if d_odd > 2 * top - 1:
                continue
            checks.append(_eq("%s disk invariant n_%d" % (g.label(), d_odd),
                              result.invariants[(d_odd - 1) // 2], n))
    for g, loc, vsc in tables.fano_tables():
        if geom is not None and g != geom:
            continue
        for d_odd in sorted(loc):
            if d_odd > 2 * dmax - 1:
                continue
            a = g.open_insertion_power(d_odd)
            checks.append(_eq("%s <O_h^%d>_%d" % (g.label(), a, d_odd),
                              amodel_amplitude(g, a, d_odd), loc[d_odd]))
            checks.append(_eq("%s w_disk(O_h^%d)_%d" % (g.label(), a, d_odd),
                              open_vsc(g, a, d_odd), vsc[d_odd]))
    gt = tables.general_type()
    g = GeometryData(gt["N"], tuple(gt["degrees"]))
    if geom is None or g == geom:
        checks.extend(general_type_checks(g, gt))
    return checks


def general_type_checks(g, gt=None):
    gt = gt or tables.general_type()
    checks = []
    for d_odd, row in sorted(gt["one_point"].items()):
        d_odd = int(d_odd)
        checks.append(_eq("%s <O_h^%d>_%d" % (g.label(), row["a"], d_odd),
                          open_gw_local(g, (row["a"],), d_odd), Fraction(row["amplitude"])))
        checks.append(_eq("%s w_disk(O_h^%d)_%d" % (g.label(), row["a"], d_odd),
                          open_vsc(g, row["a"], d_odd), Fraction(row["open_vsc"])))
    for row in gt["multi_point"]:
        ins = tuple(row["insertions"])
        checks.append(_eq("%s <%s>_%d" % (g.label(), ins, row["degree"]),
                          open_gw_local(g, ins, row["degree"]), Fraction(row["value"])))
    for row in gt["closed"]:
        checks.append(_eq("%s w(O_h^%d O_h^%d)_0,%d / k" % (g.label(), row["a"], row["b"], row["d"]),
                          closed_w(g, row["a"], row["b"], row["d"]) / g.k,
                          Fraction(row["value_over_k"])))
    return checks


def suite_gmt(geom=None, dmax=3):
    """Open VSC against the transformed localization sums at degrees 1, 3, 5."""
    geoms = [geom] if geom is not None else [GeometryData.hypersurface(*p) for p in TRANSFORMATION_GEOMETRIES]
    checks = []
    for g in geoms:
        for d_odd in (1, 3, 5):
            if d_odd > 2 * dmax - 1:
                break
            a = g.open_insertion_power(d_odd)
            if a is None:
                continue
            checks.append(_eq("%s w_disk = gmt at a=%d, degree %d" % (g.label(), a, d_odd),
                              gmt_rhs(g, a, d_odd), open_vsc(g, a, d_odd)))
        if g == GeometryData.hypersurface(8, 9):
            checks.extend(_displayed_general_type(g))
        if g == GeometryData.hypersurface(8, 7) and dmax >= 4:
            checks.append(_displayed_fano1(g))
    return checks


def _displayed_general_type(g):
    w1 = closed_w(g, 0, 4, 1) / 9
    w2 = closed_w(g, 0, 3, 2) / 9
    return [
        _eq("N=8;k=9 degree 1 equality", open_vsc(g, 2, 1), open_gw_local(g, (2,), 1)),
        _eq("N=8;k=9 degree 3 equality", open_vsc(g, 1, 3),
            open_gw_local(g, (1,), 3) + open_gw_local(g, (1, 2), 1) * w1),
        _eq("N=8;k=9 degree 5 equality", open_vsc(g, 0, 5),
            open_gw_local(g, (0,), 5) + open_gw_local(g, (0, 2), 3) * w1
            + open_gw_local(g, (0, 3), 1) * w2 + open_gw_local(g, (0, 2, 2), 1) * w1 ** 2 / 2),
    ]


def _displayed_fano1(g):
    kf = factorial(g.k)
    rhs = amodel_amplitude(g, 6, 7)
    for j in (1, 2, 3):
        rhs += open_gw_local(g, (6,) + (0,) * j, 7 - 2 * j) * Fraction(kf ** j, factorial(j))
    return _eq("N=8;k=7 degree 7 equality", open_vsc(g, 6, 7), rhs)


def _cy_geometries(geom):
    if geom is not None:
        return [geom]
    return [g for g, _ in tables.cy_tables()] + [GeometryData.hypersurface(5, 5)]


def suite_pf(geom=None, dmax=6):
    checks = []
    geoms = [geom] if geom is not None else [GeometryData.hypersurface(k, k) for k in (5, 7)]
    for g in geoms:
        op = PFOperator(g)
        for j in range(g.pf_order):
            image = op(pf_solutions(g, j, dmax))
            checks.append(Check("%s operator kills w_%d" % (g.label(), j),
                                all(p.is_zero() for p in image.parts), ""))
        try:
            c = extract_C(g, dmax)
            checks.append(Check("%s tension image is C q^(1/2)" % g.label(), True, "C = %s" % c))
            if g.is_hypersurface:
                want = Fraction(_odd_double_factorial(g.k), 2 ** (g.k - 2))
                checks.append(_eq("%s C = k!!/2^(k-2)" % g.label(), c, want))
        except ArithmeticError as exc:
            checks.append(Check("%s tension image is C q^(1/2)" % g.label(), False, str(exc)))
        image = PFOperator(g, open=True)(tau_series(g, dmax))
        checks.append(Check("%s open operator kills tau" % g.label(),
                            all(p.is_zero() for p in image.parts), ""))
    return checks


def suite_open_function(geom=None, dmax=None):
    checks = []
    plan = [(geom, dmax or 3)] if geom is not None else [
        (GeometryData.hypersurface(5, 5), 3), (GeometryData.hypersurface(7, 7), 2)]
    for g, top in plan:
        fo = f_open(g, top)
        for d in range(1, top + 1):
            d_odd = 2 * d - 1
            a = g.open_insertion_power(d_odd)
            checks.append(_eq("%s F_o coefficient %d = w_disk" % (g.label(), d_odd),
                              fo[d_odd], open_vsc(g, a, d_odd)))
    return checks


def suite_covering(geom=None, dmax=9):
    checks = []
    for g in _cy_geometries(geom):
        D = g.covering_D()
        if D is None:
            continue
        amp = disk_amplitudes(g, dmax)
        params = CoveringParams(D)
        res = covering_invert(amp, params)
        checks.append(Check("%s invariants integral (D=%d)" % (g.label(), D), res.integral,
                            "non-integral at %s" % [e for e, _ in res.non_integral]))
        back = covering_forward(res.invariants, params, amp.trunc)
        checks.append(Check("%s covering roundtrip" % g.label(), back == amp, ""))
    return checks


def unsigned_failures(geom=None, dmax=9):
    """``[(geometry, degree, value)]`` where dropping the sign breaks integrality."""
    out = []
    for g in _cy_geometries(geom):
        D = g.covering_D()
        if not D:
            continue
        res = covering_invert(disk_amplitudes(g, dmax), CoveringParams(D, signed=False))
        out.extend((g, e, v) for e, v in res.non_integral)
    return out


def suite_pipelines(ks=(5, 7), dmax=3):
    checks = []
    for k in ks:
        g = GeometryData.hypersurface(k, k)
        table = vsc_recursion(g, dmax)
        for n in range(k):
            for d in range(1, dmax + 1):
                want = table[(n, d)]
                checks.append(_eq("L~_%d^{%d,%d,%d} chain residue" % (n, k, k, d),
                                  l_tilde_residue(k, n, d), want))
                if d <= 2:
                    checks.append(_eq("L~_%d^{%d,%d,%d} partition residue" % (n, k, k, d),
                                      l_tilde_partition(k, n, d), want))
        for d_odd in (1, 3, 5):
            a = g.open_insertion_power(d_odd)
            checks.append(_eq("%s open chain vs partition, degree %d" % (g.label(), d_odd),
                              open_vsc(g, a, d_odd), open_vsc_partition(g, a, d_odd)))
    return checks


SUITES = {
    "tables": suite_tables,
    "gmt": suite_gmt,
    "pf": suite_pf,
    "theorem1": suite_open_function,
    "covering": suite_covering,
}


def gmt_split(geom, a, d_odd):
    """``(leading amplitude, correction)`` for reporting."""
    return open_gw_local(geom, (a,), d_odd), gmt_correction(geom, a, d_odd)
