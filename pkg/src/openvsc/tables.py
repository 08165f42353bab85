"""Reference tables shipped with the package."""

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .geometry import GeometryData


@lru_cache(maxsize=None)
def golden():
    with resources.files("openvsc").joinpath("data/golden_tables.json").open() as fh:
        return json.load(fh)


def _geom(entry):
    return GeometryData(entry["N"], tuple(entry["degrees"]))


def cy_tables():
    """``[(geometry, {d_odd: n})]`` for the Calabi-Yau disk invariant tables."""
    return [
        (_geom(e), {int(d): int(v) for d, v in e["disk_invariants"].items()})
        for e in golden()["calabi_yau"]
    ]


def fano_tables():
    """``[(geometry, {d_odd: amplitude}, {d_odd: open_vsc})]``."""
    out = []
    for e in golden()["fano"]:
        loc = {int(d): Fraction(v) for d, v in e["localization"].items()}
        vsc = {int(d): Fraction(v) for d, v in e["open_vsc"].items()}
        out.append((_geom(e), loc, vsc))
    return out


def general_type():
    return golden()["general_type"]


def fano_example():
    return golden()["fano_example"]
