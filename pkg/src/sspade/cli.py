"""Command-line interface.

Subcommands:
  tables      regenerate benchmark tables 1-8 as CSV plus a summary JSON
  tf|nls|rd   run one case study end to end and emit its error table
  pade        fit a rational approximant to a series JSON file
  root        calibrate a nested root against series + asymptote JSON files
  corrected   build a product approximant from series + root JSON files
  exponent    estimate the large-argument exponent of a series JSON file

Exit codes: 0 success, 1 bad input, 2 numerical failure.
All options can also be given in a TOML file via --config; explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import SspadeError
from .pade import PadeApproximant, from_series
from .rootapprox import NestedRootApproximant, RootMixture, match_parameters
from .series import AsymptoticForm, GeneralizedSeries

_FORMATS = ("csv", "json")


def _fmt(value, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _fmt_human(value, precision: int) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def _write_table(header, rows, fmt: str, out, precision: int) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v, precision) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _print_human(header, rows, precision: int) -> None:
    widths = [max(len(h), 12) for h in header]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in rows:
        print("  ".join(_fmt_human(v, precision).ljust(w)
                        for v, w in zip(row, widths)))


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _parse_grid(spec: str) -> list[float]:
    lo, hi, n = spec.split(":")
    lo, hi, n = float(lo), float(hi), int(n)
    if n < 2 or not hi > lo:
        raise ValueError(f"bad grid spec {spec!r}")
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ----------------------------------------------------------------------------
# subcommand implementations
# ----------------------------------------------------------------------------
def _cmd_tables(args) -> int:
    from .problems import tables as tables_mod
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    summary = []
    for name in tables_mod.TABLE_NAMES:
        header, rows = tables_mod.generate(name)
        _write_table(header, rows, args.format,
                     outdir / f"{name}.{args.format}", args.precision)
        summary.append(tables_mod.compare_with_fixture(name))
        print(f"{name}: max deviation from fixture "
              f"{summary[-1]['max_abs_deviation']:.3g} "
              f"({summary[-1]['worst_cell']})")
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return 0


def _case_study(args, which: str) -> int:
    if which == "tf":
        from .problems import thomas_fermi as mod
        from .problems import tables as tables_mod
        header, rows = tables_mod.table1()
        bundle = mod.corrected_family()["f8*"]
    elif which == "nls":
        from .problems import nls_vortex as mod
        from .problems import tables as tables_mod
        header, rows = tables_mod.table4()
        bundle = mod.f4_star()
    else:
        from .problems import ruina_dieterich as mod
        from .problems import tables as tables_mod
        header, rows = tables_mod.table6()
        order = args.order or 10
        try:
            bundle = mod.corrected_family()[f"f{order}*"]
        except KeyError:
            raise SspadeError(f"no corrected approximant of order {order}")
    if args.grid:
        pts = _parse_grid(args.grid)
        from .problems import (nls_problem, reference_solution,
                               relative_error_table, ruina_dieterich_problem,
                               thomas_fermi_problem)
        problem = {"tf": thomas_fermi_problem, "nls": nls_problem,
                   "rd": ruina_dieterich_problem}[which]()
        ref = reference_solution(problem, pts)
        rows_e = relative_error_table(bundle, ref, pts)
        header = ["x", "value", "reference", "percent_error"]
        rows = [[r.x, r.value, r.reference, r.percent] for r in rows_e]
    _print_human(header, rows, args.precision)
    if args.out:
        _write_table(header, rows, args.format, args.out, args.precision)
    if args.dump:
        _emit(bundle.to_json(), args.dump)
    if which == "rd":
        from .problems import ruina_dieterich as rd_mod
        dev = rd_mod.sup_deviation(bundle)
        print(f"sup deviation from reference on [0, t_c]: {dev:.3g}")
    return 0


def _cmd_pade(args) -> int:
    series = GeneralizedSeries.from_json(_load_json(args.series))
    p = from_series(series, args.m, args.n, args.inf)
    _emit(p.to_json(), args.out)
    return 0


def _cmd_root(args) -> int:
    series = GeneralizedSeries.from_json(_load_json(args.series))
    large = AsymptoticForm.from_json(_load_json(args.large))
    template = [(float(lv["e"]), None if lv.get("n") is None else float(lv["n"]))
                for lv in _load_json(args.template)["levels"]]
    root = match_parameters(template, series, large)
    _emit(root.to_json(), args.out)
    return 0


def _cmd_corrected(args) -> int:
    from .corrected import build
    series = GeneralizedSeries.from_json(_load_json(args.series))
    root_obj = _load_json(args.root)
    irr = (RootMixture.from_json(root_obj) if "components" in root_obj
           else NestedRootApproximant.from_json(root_obj))
    ca = build(series, irr, args.m, args.n, args.inf, label=args.label)
    _emit(ca.to_json(), args.out)
    return 0


def _cmd_exponent(args) -> int:
    from .exponents import large_variable_exponent
    series = GeneralizedSeries.from_json(_load_json(args.series))
    est = large_variable_exponent(series, args.n)
    _emit(est.to_json(), args.out)
    return 0


# ----------------------------------------------------------------------------
# argument plumbing
# ----------------------------------------------------------------------------
def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=_FORMATS, default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--precision", type=int, default=6,
                   help="significant digits in the human-readable view")
    p.add_argument("--config", help="TOML file with defaults for these options")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sspade", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="regenerate benchmark tables 1-8")
    _add_common(p)

    for which, blurb in (("tf", "screened-potential case study"),
                         ("nls", "vortex-profile case study"),
                         ("rd", "frictional-relaxation case study")):
        p = sub.add_parser(which, help=blurb)
        _add_common(p)
        p.add_argument("--grid", help="lo:hi:n error-table grid override")
        p.add_argument("--order", type=int,
                       help="corrected order to dump (rd: 4, 6, 8 or 10)")
        p.add_argument("--dump", help="write the approximant bundle JSON here")

    p = sub.add_parser("pade", help="fit a rational approximant to a series")
    _add_common(p)
    p.add_argument("fit", choices=["fit"], nargs="?", default="fit")
    p.add_argument("--series", required=True)
    p.add_argument("-M", dest="m", type=int, required=True)
    p.add_argument("-N", dest="n", type=int, required=True)
    p.add_argument("--inf", type=float, default=None,
                   help="finite limit at infinity (diagonal only)")

    p = sub.add_parser("root", help="calibrate a nested root approximant")
    _add_common(p)
    p.add_argument("--series", required=True)
    p.add_argument("--large", required=True, help="asymptote JSON file")
    p.add_argument("--template", required=True,
                   help='JSON {"levels": [{"e": ..., "n": optional}, ...]}')

    p = sub.add_parser("corrected", help="build a product approximant")
    _add_common(p)
    p.add_argument("--series", required=True)
    p.add_argument("--root", required=True, help="root or mixture JSON file")
    p.add_argument("-M", dest="m", type=int, required=True)
    p.add_argument("-N", dest="n", type=int, required=True)
    p.add_argument("--inf", type=float, default=None)
    p.add_argument("--label", default="f*")

    p = sub.add_parser("exponent", help="estimate the large-argument exponent")
    _add_common(p)
    p.add_argument("--series", required=True)
    p.add_argument("-N", dest="n", type=int, default=3)
    return ap


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    import tomli
    with open(args.config, "rb") as fh:
        cfg = tomli.load(fh)
    section = cfg.get(args.command, cfg)
    for key, value in section.items():
        key = key.replace("-", "_")
        if hasattr(args, key) and getattr(args, key) in (None, False):
            setattr(args, key, value)


_HANDLERS = {
    "tables": _cmd_tables,
    "tf": lambda a: _case_study(a, "tf"),
    "nls": lambda a: _case_study(a, "nls"),
    "rd": lambda a: _case_study(a, "rd"),
    "pade": _cmd_pade,
    "root": _cmd_root,
    "corrected": _cmd_corrected,
    "exponent": _cmd_exponent,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
    except (OSError, ValueError) as exc:
        print(f"sspade: config error: {exc}", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except SspadeError as exc:
        print(f"sspade: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"sspade: input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
