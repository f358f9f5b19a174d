"""Regeneration of the eight benchmark tables and comparison with fixtures.

Each ``table<n>()`` returns (header, rows) with full-precision floats in the
same layout as the shipped fixture CSV; ``compare_all()`` reports the maximum
absolute deviation of the regenerated values from the fixture values (which
carry only their published display precision, so deviations at the level of
that rounding are expected).
"""
from __future__ import annotations

import csv
import importlib.resources as resources
import json

import numpy as np

from . import nls_vortex, ruina_dieterich, thomas_fermi
from ._base import relative_error_table, residual_values
from .baselines import baseline_formulas

_FIXTURE_PACKAGE = "sspade.problems.fixtures"

TABLE_NAMES = tuple(f"table{i}" for i in range(1, 9))


def _fixture_text(name: str) -> str:
    return resources.files(_FIXTURE_PACKAGE).joinpath(f"{name}.csv").read_text()


def fixture_rows(name: str) -> tuple[list[str], list[list[str]]]:
    reader = csv.reader(_fixture_text(name).strip().splitlines())
    rows = list(reader)
    return rows[0], rows[1:]


def fixture_notes() -> dict:
    text = resources.files(_FIXTURE_PACKAGE).joinpath("notes.json").read_text()
    return json.loads(text)


def _error_columns(approx, ref, points):
    rows = relative_error_table(approx, ref, points)
    return [r.value for r in rows], [r.percent for r in rows]


def table1():
    """Corrected-family values and percent errors for the screened potential."""
    xs = thomas_fermi.TABLE_X
    ref = thomas_fermi.reference(xs)
    fam = thomas_fermi.corrected_family()
    cols = {}
    for label, key in (("f4*", "f4"), ("f6*", "f6"), ("f8*", "f8")):
        vals, errs = _error_columns(fam[label], ref, xs)
        cols[key] = vals
        cols["eps" + key[1:]] = errs
    header = ["x", "f4", "eps4", "f6", "eps6", "f8", "eps8"]
    rows = [[x, cols["f4"][i], cols["eps4"][i], cols["f6"][i], cols["eps6"][i],
             cols["f8"][i], cols["eps8"][i]] for i, x in enumerate(xs)]
    return header, rows


def _baseline_table(names, keys, xs, ref):
    cols = {}
    for name, key in zip(names, keys):
        vals, errs = _error_columns(baseline_formulas(name), ref, xs)
        cols[key] = vals
        cols["eps_" + key] = errs
    header = ["x"] + [h for key in keys for h in (key, "eps_" + key)]
    rows = [[x] + [cols[h][i] for key in keys for h in (key, "eps_" + key)]
            for i, x in enumerate(xs)]
    return header, rows


def table2():
    xs = thomas_fermi.TABLE_X
    ref = thomas_fermi.reference(xs)
    return _baseline_table(
        ("tf_p03", "sommerfeld", "andrianov", "tf_p17"),
        ("p03", "sommerfeld", "andrianov", "p17"), xs, ref)


def table3():
    xs = thomas_fermi.TABLE_X
    ref = thomas_fermi.reference(xs)
    header, rows = _baseline_table(
        ("tf_p03", "tf_p14", "tf_p25"), ("p03", "p14", "p25"), xs, ref)
    header.append("exact")
    for row, x in zip(rows, xs):
        row.append(ref.value(x))
    return header, rows


def table4():
    """Vortex-profile approximant values and signed residuals."""
    rs = nls_vortex.TABLE_R
    problem = nls_vortex.nls_problem()
    entries = (("nls_p22_frac", "frac22"), ("nls_p23_frac", "frac23"),
               ("nls_modified_p33", "mod33"))
    cols = {}
    for name, key in entries:
        f = baseline_formulas(name)
        cols[key] = [f.evaluate(r) for r in rs]
        cols["E_" + key] = residual_values(problem, f, rs)
    f4 = nls_vortex.f4_star()
    cols["f4"] = [f4.evaluate(r) for r in rs]
    cols["E_f4"] = residual_values(problem, f4, rs)
    keys = ["frac22", "frac23", "mod33", "f4"]
    header = ["r"] + [h for key in keys for h in (key, "E_" + key)]
    rows = [[r] + [cols[h][i] for key in keys for h in (key, "E_" + key)]
            for i, r in enumerate(rs)]
    return header, rows


def table5():
    """Vortex-profile errors against the tabulated numerical column."""
    rs = nls_vortex.TABLE_R
    numerical = {r: nls_vortex.PROFILE_DATA_REF[r] for r in rs}
    cols = {}
    for name, key in (("nls_p23_frac", "frac23"), ("nls_modified_p33", "mod33")):
        vals, errs = _error_columns(baseline_formulas(name), numerical, rs)
        cols[key], cols["eps_" + key] = vals, errs
    vals, errs = _error_columns(nls_vortex.f4_star(), numerical, rs)
    cols["f4"], cols["eps_f4"] = vals, errs
    keys = ["frac23", "mod33", "f4"]
    header = ["r"] + [h for key in keys for h in (key, "eps_" + key)] + ["numerical"]
    rows = [[r] + [cols[h][i] for key in keys for h in (key, "eps_" + key)]
            + [numerical[r]] for i, r in enumerate(rs)]
    return header, rows


def table6():
    ts = ruina_dieterich.TABLE_T
    ref = ruina_dieterich.reference(ts)
    fam = ruina_dieterich.corrected_family()
    cols = {}
    for label, key in (("f4*", "f4"), ("f6*", "f6"), ("f8*", "f8"),
                       ("f10*", "f10")):
        vals, errs = _error_columns(fam[label], ref, ts)
        cols[key] = vals
        cols["eps" + key[1:]] = errs
    keys = ["f4", "f6", "f8", "f10"]
    header = ["t"] + [h for key in keys for h in (key, "eps" + key[1:])] + ["exact"]
    rows = [[t] + [cols[h][i] for key in keys for h in (key, "eps" + key[1:])]
            + [ref.value(t)] for i, t in enumerate(ts)]
    return header, rows


def table7():
    ts = ruina_dieterich.TABLE_T
    ref = ruina_dieterich.reference(ts)
    return _baseline_table(
        ("rd_p22", "rd_p33", "rd_p44", "rd_p55"),
        ("p22", "p33", "p44", "p55"), ts, ref)


def table8():
    ts = ruina_dieterich.TABLE_T
    ref = ruina_dieterich.reference(ts)
    return _baseline_table(
        ("rd_p12", "rd_p23", "rd_p34", "rd_p45"),
        ("p12", "p23", "p34", "p45"), ts, ref)


_GENERATORS = {
    "table1": table1, "table2": table2, "table3": table3, "table4": table4,
    "table5": table5, "table6": table6, "table7": table7, "table8": table8,
}


def generate(name: str):
    return _GENERATORS[name]()


def compare_with_fixture(name: str) -> dict:
    """Max |regenerated - fixture| per table (fixture at display precision)."""
    header, rows = generate(name)
    fix_header, fix_rows = fixture_rows(name)
    if [h.strip() for h in fix_header] != header:
        raise ValueError(f"{name}: fixture header {fix_header} != {header}")
    worst = 0.0
    worst_cell = None
    n_cells = 0
    for row, frow in zip(rows, fix_rows):
        for h, got, want_s in zip(header[1:], row[1:], frow[1:]):
            want = float(want_s)
            if got is None:
                continue
            dev = abs(got - want)
            n_cells += 1
            if dev > worst:
                worst, worst_cell = dev, f"{h}@{row[0]:g}"
    return {"table": name, "max_abs_deviation": worst,
            "worst_cell": worst_cell, "cells": n_cells}


def compare_all() -> list[dict]:
    return [compare_with_fixture(name) for name in TABLE_NAMES]
