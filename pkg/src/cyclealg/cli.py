"""Command-line interface: JSON in, JSON (or CSV) out, deterministic runs.

Commands
  eval            evaluate an element at a representation point
  inner-check     classify point-derivation data as inner / not_inner /
                  indeterminate, with witness or kernel certificate
  reconstruct     run the boundary-field pipeline on global derivation data
  suite           run every library invariant and summarize
  approx-identity boundary approximate identity convergence report
  semisimple      zero/nonzero certificate for an element
  kernel-witness  decompose a kernel element at a scalar point into products

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 internal failure.
Reports embed the resolved configuration and library version and are byte
stable for a fixed seed and configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__, config
from .algebra import element_from_json
from .derivations import (
    GenDerivation,
    boundary_approx_identity,
    canonical_kernel_elements,
    check_leibniz,
    decompose_at_zero,
    decompose_experiment,
    gen_derivation_from_json,
    inner_solve,
    kernel_vanishing_test,
)
from .errors import CycleAlgebraError, NotInAlgebra, NotLocallyInner
from .reconstruction import (
    boundary_field_from_json,
    global_derivation_from_json,
    reconstruct_witness,
    solve_boundary_field,
    verify_global_inner,
)
from .representations import (
    DiagZero,
    Lambda,
    eval_rep,
    kernel_sample,
    kernel_square_witness,
    matc_to_json,
    point_from_json,
    point_to_json,
    semisimplicity_certificate,
)
from .suite import SuiteConfig, run_suite, summarize

_LEIBNIZ_GATE = 1e-6


class _InputError(Exception):
    pass


def _load_doc(path: str | None) -> dict:
    if not path:
        raise _InputError("this command requires --input")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _resolved_config(args) -> dict:
    return {
        "command": args.command,
        "n": args.n,
        "deg_max": args.deg_max if args.deg_max is not None else config.DEG_MAX,
        "grid": args.grid,
        "tol_inner": (
            args.tol_inner if args.tol_inner is not None else config.TOL_INNER
        ),
        "seed": args.seed,
        "format": args.format,
    }


def _check_n(args, n: int):
    if args.n is not None and args.n != n:
        raise _InputError(f"--n {args.n} does not match input n = {n}")


def _cmd_eval(args) -> tuple[int, dict]:
    doc = _load_doc(args.input)
    if "element" not in doc or "point" not in doc:
        raise _InputError('eval input needs {"element": ..., "point": ...}')
    element = element_from_json(doc["element"])
    point = point_from_json(doc["point"])
    _check_n(args, element.n)
    value = eval_rep(point, element)
    return 0, {
        "point": point_to_json(point),
        "n": element.n,
        "matrix": matc_to_json(value),
    }


def _cmd_inner_check(args) -> tuple[int, dict]:
    doc = _load_doc(args.input)
    D = gen_derivation_from_json(doc)
    _check_n(args, D.n)
    tol = args.tol_inner if args.tol_inner is not None else config.TOL_INNER
    leibniz = check_leibniz(
        D.apply, D.point, D.n, trials=40, seed=args.seed, stop_above=1.0
    )
    report: dict = {
        "point": point_to_json(D.point),
        "n": D.n,
        "leibniz_residual": leibniz,
        "tol_inner": tol,
    }
    if leibniz > _LEIBNIZ_GATE:
        report["verdict"] = "indeterminate"
        report["reason"] = "generator data does not satisfy the Leibniz rule"
        return 1, report
    if isinstance(D.point, DiagZero):
        top = max(
            float(np.max(np.abs(v)))
            for v in (*D.values_e, *D.values_Z)
        )
        if top <= tol:
            report["verdict"] = "inner"
            report["X"] = matc_to_json(np.zeros((1, 1), complex))
            report["residual"] = top
            return 0, report
        report["verdict"] = "not_inner"
        report["residual"] = top
        samples = kernel_sample(D.point, D.n, seed=args.seed, count=20)
        kv = kernel_vanishing_test(D.apply, samples)
        report["kernel_witness_norm"] = kv.max_norm
        if kv.witness is not None:
            report["kernel_witness"] = kv.witness.to_json()
        return 1, report
    solve = inner_solve(D, tol=tol)
    report["residual"] = solve.residual
    if solve.consistent:
        report["verdict"] = "inner"
        report["X"] = matc_to_json(solve.X)
        report["normalization"] = solve.normalization
        code = 0
    else:
        samples = kernel_sample(D.point, D.n, seed=args.seed, count=20)
        kv = kernel_vanishing_test(D.apply, samples)
        report["verdict"] = "not_inner"
        report["kernel_witness_norm"] = kv.max_norm
        if kv.witness is not None:
            report["kernel_witness"] = kv.witness.to_json()
        code = 1
    if args.split:
        if abs(D.point.value) <= 1e-15:
            split = decompose_at_zero(D)
            report["split"] = {
                "kind": "center",
                "d0_inner_residual": split.d0_solve.residual,
                "d0_consistent": split.d0_solve.consistent,
                "d1_values_Z": [matc_to_json(v) for v in split.d1.values_Z],
            }
        else:
            report["split"] = {
                "kind": "experiment",
                **decompose_experiment(D, seed=args.seed),
            }
    return code, report


def _cmd_reconstruct(args) -> tuple[int, dict]:
    doc = _load_doc(args.input)
    tol = args.tol_inner if args.tol_inner is not None else config.TOL_INNER
    if "X_at" in doc:
        field = boundary_field_from_json(doc)
        _check_n(args, field.n)
        witness = reconstruct_witness(field, deg_max=args.deg_max)
        return 0, {
            "source": "field",
            "n": field.n,
            "grid": field.m,
            "witness": witness.to_json(),
            "field_residual": field.max_residual,
        }
    D = global_derivation_from_json(doc)
    _check_n(args, D.n)
    try:
        field = solve_boundary_field(
            D, m=args.grid, deg_max=args.deg_max, tol=tol
        )
    except NotLocallyInner as exc:
        return 1, {
            "verdict": "not_locally_inner",
            "n": D.n,
            "lambda": [exc.lam.real, exc.lam.imag],
            "residual": exc.residual,
            "tol_inner": exc.tol,
        }
    witness = reconstruct_witness(field, deg_max=args.deg_max)
    verify = verify_global_inner(D, witness, trials=50, seed=args.seed)
    verdict = "inner" if verify.ok else "verify_failed"
    return 0 if verify.ok else 1, {
        "verdict": verdict,
        "n": D.n,
        "grid": field.m,
        "witness": witness.to_json(),
        "field_residual": field.max_residual,
        "verify_residual": verify.max_residual,
        "verify_trials": verify.trials,
    }


def _cmd_suite(args) -> tuple[int, dict]:
    cfg = SuiteConfig(
        seed=args.seed,
        tol_inner=(
            args.tol_inner if args.tol_inner is not None else config.TOL_INNER
        ),
        deg_max=(
            args.deg_max if args.deg_max is not None else config.DEG_MAX
        ),
        grid=args.grid or config.NORM_GRID,
    )
    rows = run_suite(cfg)
    summary = summarize(rows)
    return (0 if summary["ok"] else 1), {
        "rows": rows,
        "summary": summary,
    }


def _cmd_approx_identity(args) -> tuple[int, dict]:
    doc = _load_doc(args.input)
    try:
        lam = complex(doc["lambda"][0], doc["lambda"][1])
        n = int(doc["n"])
        k_values = [int(k) for k in doc["k_values"]]
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise _InputError(f"malformed approx-identity input: {exc}") from exc
    if not k_values:
        raise _InputError("k_values must be nonempty")
    _check_n(args, n)
    if "kernel_elements" in doc:
        elems = [element_from_json(e) for e in doc["kernel_elements"]]
    else:
        elems = canonical_kernel_elements(n, lam)
    grid = args.grid or 4099
    rows = []
    ok = True
    prev = None
    for k in sorted(k_values):
        _, rep = boundary_approx_identity(
            lam, k, n, kernel_elems=elems, norm_grid=grid
        )
        worst = max(rep["residuals"]) if rep["residuals"] else 0.0
        rows.append(
            {
                "k": k,
                "norm_F": rep["norm_F"],
                "kernel_value_F": rep["kernel_value_F"],
                "residuals": rep["residuals"],
                "worst_residual": worst,
            }
        )
        if rep["norm_F"] > 2 + 1e-9 or rep["kernel_value_F"] > 1e-12:
            ok = False
        if prev is not None and worst > prev + 1e-12:
            ok = False
        prev = worst
    return (0 if ok else 1), {
        "lambda": [lam.real, lam.imag],
        "n": n,
        "grid": grid,
        "monotone_and_bounded": ok,
        "rows": rows,
    }


def _cmd_semisimple(args) -> tuple[int, dict]:
    doc = _load_doc(args.input)
    element = element_from_json(doc.get("element", doc))
    _check_n(args, element.n)
    verdict = semisimplicity_certificate(element, deg_max=args.deg_max)
    report = {
        "n": element.n,
        "verdict": "zero" if verdict.is_zero else "nonzero",
        "max_abs": verdict.max_abs,
        "points": verdict.points,
    }
    if verdict.witness is not None:
        report["witness"] = [verdict.witness.real, verdict.witness.imag]
    return (0 if verdict.is_zero else 1), report


def _cmd_kernel_witness(args) -> tuple[int, dict]:
    doc = _load_doc(args.input)
    if "element" not in doc or "point" not in doc:
        raise _InputError(
            'kernel-witness input needs {"point": ..., "element": ...}'
        )
    point = point_from_json(doc["point"])
    if not isinstance(point, DiagZero):
        raise _InputError("kernel-witness needs a diag0 point")
    element = element_from_json(doc["element"])
    _check_n(args, element.n)
    budget = int(doc.get("budget", 2))
    result = kernel_square_witness(point, element, budget=budget)
    report = {
        "point": point_to_json(point),
        "n": element.n,
        "verdict": "decomposed" if result.success else "failure",
        "budget": result.budget,
        "residual": result.residual,
        "pairs": [
            [left.to_json(), right.to_json()] for left, right in result.pairs
        ],
    }
    return (0 if result.success else 1), report


_COMMANDS = {
    "eval": _cmd_eval,
    "inner-check": _cmd_inner_check,
    "reconstruct": _cmd_reconstruct,
    "suite": _cmd_suite,
    "approx-identity": _cmd_approx_identity,
    "semisimple": _cmd_semisimple,
    "kernel-witness": _cmd_kernel_witness,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclealg",
        description="cycle function algebras: evaluation, derivations, "
        "reconstruction",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--deg-max", dest="deg_max", type=int, default=None)
        p.add_argument("--grid", type=int, default=None)
        p.add_argument(
            "--tol-inner", dest="tol_inner", type=float, default=None
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--input", type=str, default=None)
        p.add_argument("--output", type=str, default=None)
        p.add_argument(
            "--format", choices=("json", "csv"), default="json"
        )
        if name == "inner-check":
            p.add_argument("--split", action="store_true")
    return parser


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields = sorted({key for row in rows for key in row})
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow(
            {
                k: json.dumps(v, sort_keys=True)
                if isinstance(v, (list, dict))
                else v
                for k, v in row.items()
            }
        )
    return buf.getvalue()


def _emit(args, report: dict) -> None:
    if args.format == "csv":
        if "rows" not in report:
            raise _InputError(
                f"csv output is not available for {args.command}"
            )
        text = _rows_to_csv(report["rows"])
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.tol_inner is not None and args.tol_inner <= 0:
        _fail(2, "tol-inner must be positive")
        return 2
    try:
        code, payload = _COMMANDS[args.command](args)
    except _InputError as exc:
        _fail(2, str(exc))
        return 2
    except (NotInAlgebra, ValueError, KeyError) as exc:
        _fail(2, f"{type(exc).__name__}: {exc}")
        return 2
    except NotLocallyInner as exc:
        _fail(1, str(exc))
        return 1
    except CycleAlgebraError as exc:
        _fail(2, f"{type(exc).__name__}: {exc}")
        return 2
    except Exception as exc:  # pragma: no cover - unexpected
        _fail(3, f"internal error: {type(exc).__name__}: {exc}")
        return 3
    report = {
        "version": __version__,
        "config": _resolved_config(args),
        **payload,
    }
    try:
        _emit(args, report)
    except _InputError as exc:
        _fail(2, str(exc))
        return 2
    return code


def _fail(code: int, message: str) -> None:
    sys.stderr.write(
        json.dumps({"error": message, "exit_code": code}, sort_keys=True)
        + "\n"
    )


if __name__ == "__main__":
    sys.exit(main())
