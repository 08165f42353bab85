"""Command line front end.

    openvsc disk --N 7 --k 7 --dmax 9
    openvsc vsc --N 5 --k 5 --dmax 4
    openvsc open-vsc --N 8 --k 9 --dmax 3
    openvsc verify gmt --N 8 --k 9 --dmax 5

Exit status: 0 on success, 1 on a failed verification or a computation
error, 2 on a bad configuration.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__, verify
from .amodel import CoveringParams, UnsupportedDegree, amodel_amplitude, covering_invert
from .bmodel import disk_amplitudes
from .closed import closed_w, vsc_recursion
from .geometry import GeometryData
from .open_vsc import open_vsc


class ConfigError(ValueError):
    pass


class ComputeError(RuntimeError):
    pass


def _rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def _parse_degrees(text):
    try:
        ks = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise ConfigError("--k must be a comma separated list of integers, got %r" % text)
    if not ks:
        raise ConfigError("--k is empty")
    return ks


def make_geometry(args):
    try:
        return GeometryData(args.N, _parse_degrees(args.k))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc))


def _check_dmax(args):
    if args.dmax < 1:
        raise ConfigError("--dmax must be at least 1")


# ---------------------------------------------------------------------------
# commands


def cmd_disk(args):
    geom = make_geometry(args)
    _check_dmax(args)
    pipeline = args.pipeline or ("bmodel" if geom.is_cy else "amodel")
    params = {"dmax": args.dmax, "pipeline": pipeline}
    rows = []
    if pipeline == "bmodel":
        if not geom.is_cy:
            raise ConfigError("the bmodel pipeline needs a Calabi-Yau target (sum of degrees = N)")
        if geom.dim % 2 == 0:
            raise ConfigError("disk amplitudes need odd complex dimension, got %d" % geom.dim)
        amp = disk_amplitudes(geom, args.dmax)
        result = None
        if args.covering:
            D = args.D if args.D is not None else geom.covering_D()
            if D is None:
                raise ConfigError("covering formula needs dimension 2D+3; pass --D")
            cov = CoveringParams(D, signed=not args.no_sign)
            params.update({"D": D, "signed": cov.signed})
            result = covering_invert(amp, cov)
        for d in range(1, args.dmax + 1):
            e = 2 * d - 1
            row = {"degree": e, "amplitude": amp[e]}
            if result is not None:
                n = result.invariants[d - 1]
                row.update({"invariant": n, "integral": n.denominator == 1})
            rows.append(row)
    elif pipeline == "amodel":
        if not geom.is_hypersurface:
            raise ConfigError("the amodel pipeline is implemented for hypersurfaces")
        for d in range(1, args.dmax + 1):
            e = 2 * d - 1
            a = geom.open_insertion_power(e)
            if a is None:
                continue
            try:
                amp = amodel_amplitude(geom, a, e)
            except UnsupportedDegree as exc:
                raise ComputeError(str(exc))
            rows.append({"degree": e, "a": a, "amplitude": amp, "open_vsc": open_vsc(geom, a, e)})
    else:
        raise ConfigError("unknown pipeline %r" % pipeline)
    return geom, params, rows, 0


def cmd_vsc(args):
    geom = make_geometry(args)
    _check_dmax(args)
    rows = []
    if geom.is_cy and args.method == "recursion":
        table = vsc_recursion(geom, args.dmax)
        for n in range(len(table.series)):
            for d in range(1, args.dmax + 1):
                rows.append({"n": n, "d": d, "value": table[(n, d)]})
    else:
        for d in range(1, args.dmax + 1):
            dim = geom.closed_dimension(d)
            for a in range(max(0, dim - geom.N + 1), min(dim, geom.N - 1) + 1):
                rows.append({"a": a, "b": dim - a, "d": d, "value": closed_w(geom, a, dim - a, d)})
    return geom, {"dmax": args.dmax, "method": args.method}, rows, 0


def cmd_open_vsc(args):
    geom = make_geometry(args)
    _check_dmax(args)
    rows = []
    for d in range(1, args.dmax + 1):
        e = 2 * d - 1
        a = geom.open_insertion_power(e)
        if a is not None:
            rows.append({"degree": e, "a": a, "value": open_vsc(geom, a, e)})
    return geom, {"dmax": args.dmax}, rows, 0


def cmd_verify(args):
    geom = make_geometry(args) if args.N is not None else None
    suite = verify.SUITES[args.suite]
    kwargs = {}
    if args.dmax is not None:
        _check_dmax(args)
        kwargs["dmax"] = (args.dmax + 1) // 2 if args.suite == "gmt" else args.dmax
    checks = suite(geom, **kwargs)
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    failed = [c for c in checks if not c.passed]
    params = {"suite": args.suite, "checks": len(checks), "failed": len(failed)}
    if failed:
        params["first_failure"] = failed[0].name
    return geom, params, rows, 1 if failed else 0


# ---------------------------------------------------------------------------
# output


INDEX_FIELDS = ("degree", "a", "b", "d", "n")


def _plain(key, value):
    if isinstance(value, bool) or key in INDEX_FIELDS:
        return value
    if isinstance(value, (int, Fraction)):
        return _rat(value)
    return value


def render(geom, params, rows, fmt):
    rows = [{k: _plain(k, v) for k, v in r.items()} for r in rows]
    if fmt == "json":
        doc = {
            "geometry": None if geom is None else {"N": geom.N, "degrees": list(geom.degrees)},
            "params": params,
            "rows": rows,
            "engine_version": __version__,
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    fields = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: str(v).lower() if isinstance(v, bool) else v for k, v in r.items()})
    return buf.getvalue()


def build_parser():
    parser = argparse.ArgumentParser(prog="openvsc", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, required=True):
        p.add_argument("--N", type=int, required=required, help="ambient projective space CP^(N-1)")
        p.add_argument("--k", required=required, help="comma separated odd degrees")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("disk", help="disk amplitudes and invariants")
    common(p)
    p.add_argument("--dmax", type=int, default=5, help="number of odd degrees 1, 3, ..., 2dmax-1")
    p.add_argument("--pipeline", choices=("bmodel", "amodel"))
    p.add_argument("--covering", dest="covering", action="store_true", default=True,
                   help="resum multiple covers (default)")
    p.add_argument("--no-covering", dest="covering", action="store_false")
    p.add_argument("--D", type=int, help="override D in the covering formula")
    p.add_argument("--no-sign", action="store_true", help="drop the alternating covering sign")
    p.set_defaults(func=cmd_disk)

    p = sub.add_parser("vsc", help="closed virtual structure constants")
    common(p)
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--method", choices=("recursion", "residue"), default="recursion")
    p.set_defaults(func=cmd_vsc)

    p = sub.add_parser("open-vsc", help="open virtual structure constants")
    common(p)
    p.add_argument("--dmax", type=int, default=3)
    p.set_defaults(func=cmd_open_vsc)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    common(p, required=False)
    p.add_argument("--dmax", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and (args.N is None) != (args.k is None):
        print("error: --N and --k go together", file=sys.stderr)
        return 2
    try:
        geom, params, rows, status = args.func(args)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError, ComputeError) as exc:
        print("error: computation failed: %s" % exc, file=sys.stderr)
        return 1
    text = render(geom, params, rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify":
        for r in rows:
            print("%s %s" % ("PASS" if r["passed"] else "FAIL", r["check"]), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
