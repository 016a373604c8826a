"""Command-line front end.

    wsncover plan   --alpha 0.9 --rs 1 --field 20x20
    wsncover table  --grid 0.1:0.9:0.1 --rs 1
    wsncover verify --deployment plan.json --rc 2.0 --alpha 0.9
    wsncover sweep  --range 1.8:4.0:0.2
    wsncover render --deployment plan.json --rc 2.0 --output net.svg

Exit codes: 0 success, 1 verification failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

from .coverage_model import alpha_of_spacing, build_lookup_table, check_alpha
from .deployment import Deployment, generate_triangular_lattice, plan_deployment
from .geometry import DomainError, SensingField, require_positive
from .render import render_svg
from .verification import (
    EstimationMode,
    Window,
    build_comm_graph,
    estimate_coverage_fraction,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SAMPLES = 1_000_000
DEFAULT_SEED = 42
DEFAULT_RESOLUTION = 1000
SWEEP_FIELD_FACTOR = 30.0


class UsageError(Exception):
    pass


# -- flag parsing helpers -----------------------------------------------------

def parse_field(text: str) -> SensingField:
    try:
        w, h = text.lower().split("x")
        return SensingField(float(w), float(h))
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"field must look like WxH with positive numbers, got {text!r}") from exc


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` -> inclusive list of values."""
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range must look like START:STOP:STEP, got {text!r}") from exc
    if not (step > 0 and hi >= lo and all(map(math.isfinite, (lo, hi, step)))):
        raise argparse.ArgumentTypeError(f"range needs STEP > 0 and STOP >= START, got {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def positive(text: str) -> float:
    try:
        return require_positive("value", float(text))
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}") from exc


def count(text: str) -> int:
    try:
        n = int(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def emit(text: str, path: str | None) -> None:
    """Write to ``path`` atomically, or to stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wsncover-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_deployment(path: str) -> Deployment:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "deployment" in data:  # a plan file
        data = data["deployment"]
    return Deployment.from_dict(data)


def deployment_from_args(args) -> Deployment:
    if args.deployment:
        return load_deployment(args.deployment)
    if args.spacing is None or args.field is None or args.rs is None:
        raise UsageError("give --deployment FILE, or --spacing, --field and --rs")
    return generate_triangular_lattice(args.field, args.spacing, args.rs)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.12g}" for v in row])
    return buf.getvalue()


# -- commands ----------------------------------------------------------------

def cmd_plan(args) -> int:
    plan = plan_deployment(args.field, check_alpha(args.alpha), args.rs, args.base_station)
    if args.format == "csv":
        emit(plan.deployment.to_csv(), args.output)
    else:
        emit(plan.to_json() + "\n", args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    table = build_lookup_table(args.grid, args.rs)
    emit(table.to_json() + "\n" if args.format == "json" else table.to_csv(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.alpha is not None:
        check_alpha(args.alpha)
    dep = deployment_from_args(args)
    n = args.resolution if args.mode is EstimationMode.GRID else args.samples
    est = estimate_coverage_fraction(dep, args.mode, args.window, n, args.seed)
    graph = build_comm_graph(dep, args.rc)
    report = {
        "alpha_hat": est.fraction,
        "n": est.sample_count,
        "ci95": est.half_width_95,
        "mode": est.mode.value,
        "window": est.window.value,
        "connected": graph.connected,
        "components": graph.component_count,
        "rc": args.rc,
    }
    ok = graph.connected
    if args.alpha is not None:
        report["requested_alpha"] = args.alpha
        ok = ok and est.fraction + est.half_width_95 >= args.alpha
    report["passed"] = ok
    emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def sweep_rows(spacings, rs, samples, seed, factor=SWEEP_FIELD_FACTOR):
    for d_over_rs in spacings:
        d = d_over_rs * rs
        side = factor * d
        dep = generate_triangular_lattice(SensingField(side, side), d, rs)
        est = estimate_coverage_fraction(dep, EstimationMode.MONTE_CARLO, Window.INTERIOR, samples, seed)
        yield d_over_rs, alpha_of_spacing(d, rs), est.fraction, est.half_width_95


def cmd_sweep(args) -> int:
    rows = list(sweep_rows(args.range, args.rs, args.samples, args.seed, args.field_factor))
    header = ("d_over_Rs", "alpha_analytic", "alpha_hat", "ci95")
    if args.format == "json":
        emit(json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n", args.output)
    else:
        emit(_csv(header, rows), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    dep = deployment_from_args(args)
    emit(render_svg(dep, args.rc), args.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wsncover", description="Partial-coverage planning for triangular-lattice sensor networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp, formats, default):
        sp.add_argument("--output", "-o", help="output file (default: stdout)")
        sp.add_argument("--format", choices=formats, default=default)

    def source(sp):
        sp.add_argument("--deployment", help="deployment or plan JSON file")
        sp.add_argument("--spacing", type=positive, help="lattice spacing when no file is given")
        sp.add_argument("--field", type=parse_field, help="field size WxH")
        sp.add_argument("--rs", type=positive, help="sensing radius")

    sp = sub.add_parser("plan", help="spacing, rc_min and deployment for a coverage fraction")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--rs", type=positive, required=True)
    sp.add_argument("--field", type=parse_field, required=True)
    sp.add_argument("--base-station", action="store_true", help="designate the node nearest the field centre")
    out(sp, ["json", "csv"], "json")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("table", help="alpha -> spacing lookup table")
    sp.add_argument("--grid", type=parse_range, required=True, help="alpha grid MIN:MAX:STEP")
    sp.add_argument("--rs", type=positive, default=1.0)
    out(sp, ["csv", "json"], "csv")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="estimate coverage and check connectivity")
    source(sp)
    sp.add_argument("--rc", type=positive, required=True)
    sp.add_argument("--alpha", type=float, help="required coverage fraction")
    sp.add_argument("--samples", type=count, default=DEFAULT_SAMPLES, help="Monte Carlo sample count")
    sp.add_argument("--resolution", type=count, default=DEFAULT_RESOLUTION, help="grid points per axis in grid mode")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--mode", type=lambda s: EstimationMode(s.upper()), default=EstimationMode.MONTE_CARLO)
    sp.add_argument("--window", type=lambda s: Window(s.upper()), default=Window.INTERIOR)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="analytic vs Monte Carlo coverage over a range of spacings")
    sp.add_argument("--range", type=parse_range, required=True, help="d/Rs range START:STOP:STEP")
    sp.add_argument("--rs", type=positive, default=1.0)
    sp.add_argument("--samples", type=count, default=DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--field-factor", type=positive, default=SWEEP_FIELD_FACTOR, help="field side in spacings")
    out(sp, ["csv", "json"], "csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("render", help="draw a deployment as SVG")
    source(sp)
    sp.add_argument("--rc", type=positive, help="draw links of this communication radius")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc.__class__.__name__
        print(f"wsncover {args.command}: error: {msg}", file=sys.stderr)
    except OSError as exc:
        print(f"wsncover {args.command}: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
