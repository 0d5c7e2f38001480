"""Command-line front end: ``arma-renyi <command> ...``.

Every run writes its artifacts plus a ``manifest.json`` into ``--out-dir``
(default ``arma-runs/<command>``) and echoes the main artifact on stdout.

Exit codes: 0 success, 2 invalid model, 3 numeric or domain failure,
4 I/O or malformed JSON. Failures print a JSON object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .charfn import charfn_values
from .covariance import autocovariance
from .entropy import model_entropy
from .errors import ArmaError, DegenerateModelError, ModelValidationError, NumericError
from .model import Violation, is_stable, load_model, model_to_dict, require_valid
from .realization import impulse_response
from .reproduce import EXAMPLES, format_table
from .simulate import SimConfig, simulate_path
from .verification import SUITES

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"not serializable: {type(o).__name__}")


def parse_alpha_grid(text: str) -> list[float]:
    """Comma list whose items are numbers or inclusive ranges ``start:step:stop``."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = [float(v) for v in item.split(":")]
            if len(parts) != 3 or parts[1] <= 0:
                raise argparse.ArgumentTypeError(f"bad alpha range {item!r}; use start:step:stop with step > 0")
            a, step, b = parts
            n = math.floor((b - a) / step + 1e-9) + 1
            out.extend(round(a + i * step, 12) for i in range(max(n, 0)))
        else:
            out.append(float(item))
    if not out:
        raise argparse.ArgumentTypeError("empty alpha grid")
    return out


def read_points(path) -> np.ndarray:
    """CSV of frequency vectors, one per row; a non-numeric first row is a header."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows:
        try:
            [float(c) for c in rows[0]]
        except ValueError:
            rows = rows[1:]
    try:
        pts = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise ModelValidationError([Violation("points", f"non-numeric entry: {exc}")]) from exc
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ModelValidationError([Violation("points", "expected a non-empty rectangular table")])
    return pts


class Run:
    """Collects artifacts for one command and writes them with a manifest."""

    def __init__(self, args):
        self.args = args
        self.out_dir = Path(args.out_dir or Path("arma-runs") / args.command)
        self.outputs: list[str] = []
        self.parameters: dict = {}

    def write(self, name: str, text: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        path.write_text(text, encoding="utf-8")
        self.outputs.append(str(path))
        return path

    def finish(self, error: dict | None = None) -> None:
        manifest = {
            "command": self.args.command,
            "model_path": getattr(self.args, "model", None),
            "parameters": self.parameters,
            "outputs": self.outputs,
            "tool_version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        if error is not None:
            manifest["error"] = error
        self.out_dir.mkdir(parents=True, exist_ok=True)
        (self.out_dir / "manifest.json").write_text(_json_text(manifest), encoding="utf-8")


def _model(args):
    return require_valid(load_model(args.model))


def cmd_validate(args, run: Run) -> str:
    m = _model(args)
    body = {"valid": True, "d": m.d, "p": m.p, "r": m.r, "q": m.q, "family": m.family.value}
    if args.emit_normalized:
        body["normalized"] = str(run.write("model.normalized.json", _json_text(model_to_dict(m))))
    text = _json_text(body)
    run.write("validate.json", text)
    return text


def cmd_stability(args, run: Run) -> str:
    verdict = is_stable(_model(args))
    text = _json_text({"stable": verdict.stable, "spectral_radius": verdict.spectral_radius})
    run.write("stability.json", text)
    return text


def cmd_impulse(args, run: Run) -> str:
    m = _model(args)
    run.parameters.update(terms=args.terms, tol=args.tol)
    ir = impulse_response(m, tol=args.tol, min_terms=args.terms or 0)
    n = args.terms if args.terms is not None else ir.N
    header = ["kind", "j"] + [f"m{i + 1}{k + 1}" for i in range(m.d) for k in range(m.d)]
    rows = []
    for kind, seq in (("M", ir.M), ("Mstar", ir.Mstar)):
        for j in range(n + 1):
            rows.append([kind, j, *(float(v) for v in seq[j].ravel())])
    text = _csv_text(header, rows)
    run.write("impulse.csv", text)
    return text


def cmd_covariance(args, run: Run) -> str:
    m = _model(args)
    run.parameters.update(tau_max=args.tau_max, format=args.format)
    cov = autocovariance(m, args.tau_max)
    if args.format == "json":
        text = _json_text({
            "phi": [p.tolist() for p in cov.phi],
            "residual": cov.residual,
            "tail_bound": cov.tail_bound,
        })
        run.write("covariance.json", text)
    else:
        rows = [[tau, i, j, float(p[i, j])] for tau, p in enumerate(cov.phi) for i in range(m.d) for j in range(m.d)]
        text = _csv_text(["tau", "row", "col", "value"], rows)
        run.write("covariance.csv", text)
    return text


def cmd_entropy(args, run: Run) -> str:
    m = _model(args)
    run.parameters.update(alpha=args.alpha, format=args.format)
    reports = [model_entropy(m, a) for a in args.alpha]
    if args.format == "json":
        text = _json_text([
            {"alpha": r.alpha, "value": r.value, "kind": r.kind, "formula": r.formula, "components": r.components}
            for r in reports
        ])
        run.write("entropy.json", text)
    else:
        text = _csv_text(["alpha", "value", "kind"], [[float(r.alpha), float(r.value), r.kind] for r in reports])
        run.write("entropy.csv", text)
    return text


def cmd_charfn(args, run: Run) -> str:
    m = _model(args)
    pts = read_points(args.points)
    run.parameters.update(points=args.points, tol=args.tol)
    vals = charfn_values(m, pts, args.tol)
    header = [f"s{i + 1}" for i in range(m.d)] + ["re", "im", "truncation_error"]
    rows = [[*(float(x) for x in v.s), v.value.real, v.value.imag, v.truncation_error] for v in vals]
    text = _csv_text(header, rows)
    run.write("charfn.csv", text)
    return text


def cmd_simulate(args, run: Run) -> str:
    m = _model(args)
    cfg = SimConfig(seed=args.seed, n_samples=args.samples, burn_in=args.burn_in, replicate_count=args.replicates)
    pts = read_points(args.points) if args.points else None
    run.parameters.update(seed=cfg.seed, samples=cfg.n_samples, burn_in=cfg.resolved_burn_in(m),
                          replicates=cfg.replicate_count, points=args.points)
    summary = simulate_path(m, cfg, points=pts, keep_path=args.path_csv)
    body = {
        "seed": cfg.seed,
        "burn_in": cfg.resolved_burn_in(m),
        "n_samples": summary.n_samples,
        "n_effective": summary.n_effective,
        "mean": summary.mean,
        "mean_se": summary.mean_se,
        "covariance": summary.covariance,
        "covariance_se": summary.covariance_se,
        "ecf": [{"s": s, "re": v.real, "im": v.imag, "se": se} for s, v, se in summary.ecf],
    }
    text = _json_text(body)
    run.write("simulate.json", text)
    if args.path_csv:
        header = ["t"] + [f"x_{i + 1}" for i in range(m.d)]
        rows = [[t, *(float(v) for v in x)] for t, x in enumerate(summary.path)]
        run.write("path.csv", _csv_text(header, rows))
    return text


def cmd_reproduce(args, run: Run) -> str:
    which = [1, 2, 3] if args.example == "all" else [int(args.example)]
    run.parameters.update(example=args.example, properties=args.properties)
    t0 = time.perf_counter()
    rows = [r for k in which for r in EXAMPLES[k]()]
    suites = [fn() for fn in SUITES.values()] if args.properties else []
    elapsed = time.perf_counter() - t0

    header = ["example", "quantity", "computed", "reference", "deviation", "tolerance", "status", "note"]
    run.write("reproduce.csv", _csv_text(header, [
        [r.example, r.quantity, r.computed, r.reference, r.deviation, r.tolerance, r.status, r.note] for r in rows
    ]))
    run.write("reproduce.json", _json_text({
        "rows": [r.as_dict() for r in rows],
        "suites": [
            {"name": s.name, "passed": s.passed, "cases": s.cases, "worst": s.worst, "seconds": s.seconds}
            for s in suites
        ],
        "seconds": elapsed,
    }))

    lines = [format_table(rows)]
    if suites:
        lines.append("")
        for s in suites:
            lines.append(f"{s.name:<32} {'PASS' if s.passed else 'FAIL'}  cases={s.cases} "
                         f"worst={s.worst:.3g} ({s.seconds:.1f} s)")
    counts = {k: sum(r.status == k for r in rows) for k in ("PASS", "FLAG", "FAIL")}
    lines.append(f"\nrows: {counts['PASS']} PASS, {counts['FLAG']} FLAG, {counts['FAIL']} FAIL  ({elapsed:.1f} s)")
    text = "\n".join(lines) + "\n"
    run.write("reproduce.txt", text)
    return text


COMMANDS = {
    "validate": cmd_validate,
    "stability": cmd_stability,
    "impulse": cmd_impulse,
    "covariance": cmd_covariance,
    "entropy": cmd_entropy,
    "charfn": cmd_charfn,
    "simulate": cmd_simulate,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arma-renyi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, model=True):
        p = sub.add_parser(name, help=help_text)
        if model:
            p.add_argument("model", help="model JSON file")
        p.add_argument("--out-dir", help="artifact directory (default arma-runs/<command>)")
        return p

    p = add("validate", "check a model file")
    p.add_argument("--emit-normalized", action="store_true", help="also write the normalized model JSON")
    add("stability", "spectral radius of the AR companion")
    p = add("impulse", "impulse-response weights as CSV")
    p.add_argument("--terms", type=int, help="highest lag j to emit (default: certified cut)")
    p.add_argument("--tol", type=float, default=1e-12)
    p = add("covariance", "stationary autocovariances")
    p.add_argument("--tau-max", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p = add("entropy", "Rényi entropy or its covariance bound over an alpha grid")
    p.add_argument("--alpha", type=parse_alpha_grid, default=[1.0], help="e.g. 1 or 0.5,2 or 0.5:0.25:3")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p = add("charfn", "characteristic function at given frequency vectors")
    p.add_argument("--points", required=True, help="CSV of s vectors")
    p.add_argument("--tol", type=float, default=1e-10)
    p = add("simulate", "seeded Monte Carlo summary")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--points", help="CSV of s vectors for the empirical characteristic function")
    p.add_argument("--path-csv", action="store_true", help="also dump the first replicate's path")
    p = add("reproduce", "recompute the worked examples against their printed figures", model=False)
    p.add_argument("example", choices=("1", "2", "3", "all"))
    p.add_argument("--properties", action="store_true", help="also run the property suites")
    return parser


def _fail(run: Run, code: int, exc: BaseException) -> int:
    err = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, ModelValidationError):
        err["violations"] = [{"path": v.path, "message": v.message} for v in exc.violations]
    sys.stderr.write(json.dumps(err) + "\n")
    try:
        run.finish(error=err)
    except OSError:
        pass
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args)
    try:
        text = COMMANDS[args.command](args, run)
        run.finish()
    except ModelValidationError as exc:
        return _fail(run, EXIT_INVALID, exc)
    except (NumericError, DegenerateModelError) as exc:
        return _fail(run, EXIT_NUMERIC, exc)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(run, EXIT_IO, exc)
    except (ArmaError, ValueError) as exc:
        return _fail(run, EXIT_INVALID, exc)
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
