"""Command-line front end.

Subcommands: ``simulate``, ``sweep``, ``theorem1``, ``discriminate``.
Exit codes: 0 success, 1 a sandwich check failed, 2 invalid input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import metrics as M
from .errors import InputError, NumericalError
from .protocol import theorem1_bounds
from .randomness import make_rng, random_theorem1_instance
from .scenario import parse_grid, parse_scenario, run_scenario, with_parameter
from .states import DensityMatrix
from .tensor import TOL_EQ

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


def fmt(x) -> str:
    """17 significant digits, locale independent; booleans and blanks pass through."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, ".17g")  # + 0.0 folds -0 into 0


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_scenario(path: str):
    return _load_json(path), Path(path).resolve().parent


def cmd_simulate(args) -> int:
    obj, base = _load_scenario(args.scenario)
    report = run_scenario(parse_scenario(obj, base))
    if args.format == "json":
        _emit(_json_text(report), args.out)
    else:
        rows = [(k, v) for k, v in report["metrics"].items()]
        rows += [("warning", w) for w in report["warnings"]]
        _emit(_csv_text(["metric", "value"], rows), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    obj, base = _load_scenario(args.scenario)
    name, grid = parse_grid(args.param)
    reports = [run_scenario(parse_scenario(with_parameter(obj, name, v), base)) for v in grid]
    columns: list[str] = []
    for rep in reports:
        for key in rep["metrics"]:
            if key not in columns:
                columns.append(key)
    if args.format == "json":
        _emit(_json_text({"param": name, "grid": grid, "reports": reports}), args.out)
    else:
        rows = [[v] + [rep["metrics"].get(c) for c in columns] for v, rep in zip(grid, reports)]
        _emit(_csv_text([name] + columns, rows), args.out)
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, int, int]:
    try:
        dims = tuple(int(x) for x in text.replace("x", ",").split(","))
    except ValueError:
        raise InputError(f"dims {text!r} must be three integers like 2,2,2") from None
    if len(dims) != 3 or min(dims) < 2:
        raise InputError(f"dims {text!r} must be three integers >= 2")
    return dims


def cmd_theorem1(args) -> int:
    if args.seed is None:
        raise InputError("theorem1 needs an explicit --seed")
    if args.trials < 1:
        raise InputError(f"--trials must be >= 1, got {args.trials}")
    dims = _parse_dims(args.dims)
    tol = args.tolerance if args.tolerance is not None else TOL_EQ
    rng = make_rng(args.seed)
    records, failures = [], []
    for k in range(args.trials):
        inst = random_theorem1_instance(rng, dims, disjoint=args.disjoint)
        res = theorem1_bounds(inst, tolerance=tol)
        records.append({"trial": k, "members": len(inst.members), **res.as_dict()})
        if not res.sandwich_ok:
            failures.append({"trial": k, "instance": inst.to_json(), **res.as_dict()})
    if args.format == "json":
        _emit(_json_text({"seed": args.seed, "dims": list(dims), "trials": records,
                          "all_sandwich_ok": not failures}), args.out)
    else:
        header = list(records[0].keys())
        _emit(_csv_text(header, [[r[h] for h in header] for r in records]), args.out)
    if failures:
        sys.stderr.write(_json_text({"sandwich_violations": failures}))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _load_state(path: str) -> DensityMatrix:
    return DensityMatrix.from_json(_load_json(path))


def cmd_discriminate(args) -> int:
    tau, upsilon = _load_state(args.tau), _load_state(args.upsilon)
    if tau.dim != upsilon.dim:
        raise InputError(f"states have dimensions {tau.dim} and {upsilon.dim}")
    result = {
        "trace_distance": M.trace_distance(tau, upsilon),
        "helstrom_distance": M.povm_classical_distance(tau, upsilon, M.helstrom_povm(tau, upsilon)),
    }
    if args.povm:
        povm = M.POVM.from_json(_load_json(args.povm))
        result["povm_distance"] = M.povm_classical_distance(tau, upsilon, povm)
        result["gap"] = result["trace_distance"] - result["povm_distance"]
    if args.format == "json":
        _emit(_json_text(result), args.out)
    else:
        _emit(_csv_text(["metric", "value"], list(result.items())), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, help="random seed (required for theorem1)")
    common.add_argument("--tolerance", type=float, help="override the 1e-9 check tolerance")

    parser = argparse.ArgumentParser(prog="wignerfriend", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="evaluate one scenario file")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="evaluate a scenario over a parameter grid")
    p.add_argument("scenario")
    p.add_argument("--param", required=True, help="name=start:stop:step with name in p, epsilon, channel.strength")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("theorem1", parents=[common], help="check entanglement sandwiches on random ensembles")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", default="2,2,2", help="X,Y,Z dimensions")
    p.add_argument("--disjoint", action="store_true", help="draw shields with disjoint supports")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("discriminate", parents=[common], help="trace distance versus measurement distances")
    p.add_argument("tau")
    p.add_argument("upsilon")
    p.add_argument("--povm")
    p.set_defaults(func=cmd_discriminate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
