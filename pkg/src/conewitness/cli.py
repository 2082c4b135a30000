"""Command-line front end: build catalog maps, certify, emit JSON reports.

Two file formats, both JSON.  A matrix file is

    {"rows": 2, "cols": 2, "data": [[[re, im], [re, im]], ...], "hermitian": true}

with one ``[re, im]`` pair per entry and an optional hermitian tag that is
validated when present.  A report file echoes the command line, the
effective seed and config, and the verdict fields of the underlying
certifier, under a ``schema_version`` key.

Serialization is canonical: keys sorted, two-space indent, floats printed
with 17 significant digits.  Repeated runs with the same seed produce
byte-identical reports.  Output lands on stdout unless ``--out`` is given,
in which case the file is written atomically (temp file, then rename).

Exit codes: 0 success (verdicts are data, not exit codes), 2 malformed
input or invalid parameters, 3 see-saw convergence failure, 4 exposedness
input that fails block-positivity, 5 verify-suite failure.  The env var
CONEWITNESS_SEED supplies a default seed; an explicit --seed wins.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .catalog import (
    Ad,
    BreuerHall,
    ChoiFamily,
    CoAd,
    FromChoi,
    Reduction,
    Robertson,
    Transposition,
    build_map,
    random_antisymmetric_unitary,
    require_antisymmetric_unitary,
    robertson,
    robertson_unitary,
    breuer_hall,
)
from .config import DEFAULT_TOLERANCES
from .errors import ConeWitnessError, ConvergenceFailure, NotBlockPositive
from .exposedness import (
    ExposednessConfig,
    exposedness_report,
    verify_bh_structure,
    verify_lemma1,
)
from .linalg import is_hermitian, random_unit_vector, random_unitary, require_hermitian
from .maps import choi_of, map_from_choi
from .positivity import (
    SeeSawConfig,
    detect_entanglement,
    is_block_positive,
    is_completely_copositive,
    is_completely_positive,
)

SCHEMA_VERSION = "1"

CATALOG_NAMES = (
    "transpose",
    "reduction",
    "choi-family",
    "breuer-hall",
    "robertson",
    "ad",
    "co-ad",
)


# ---------------------------------------------------------------------------
# canonical JSON


def canonical_json(obj) -> str:
    """Render a report with sorted keys and '%.17g' floats, ending in \\n."""
    return _render(obj, 0) + "\n"


def _render(obj, level: int) -> str:
    pad = "  " * level
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            raise ValueError("reports must not contain non-finite numbers")
        return format(v, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"report keys must be strings, got {key!r}")
            parts.append(f"{pad}  {json.dumps(key)}: {_render(obj[key], level + 1)}")
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{pad}  {_render(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


# ---------------------------------------------------------------------------
# matrix files


def matrix_to_obj(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=complex)
    doc = {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [
            [[float(z.real), float(z.imag)] for z in row] for row in M
        ],
    }
    if M.shape[0] == M.shape[1] and is_hermitian(M):
        doc["hermitian"] = True
    return doc


def vector_to_obj(v: np.ndarray) -> dict:
    return matrix_to_obj(np.asarray(v, dtype=complex).reshape(-1, 1))


def matrix_from_obj(obj, what: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError(f"{what}: expected a JSON object")
    try:
        rows, cols = obj["rows"], obj["cols"]
    except KeyError as exc:
        raise ValueError(f"{what}: missing key {exc}") from None
    for label, value in (("rows", rows), ("cols", cols)):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ValueError(f"{what}: {label} must be a positive integer")
    data = obj.get("data")
    if not isinstance(data, list) or len(data) != rows:
        raise ValueError(f"{what}: data must be a list of {rows} rows")
    M = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError(f"{what}: row {i} must have {cols} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, (list, tuple))
                or len(entry) != 2
                or any(isinstance(u, bool) or not isinstance(u, (int, float)) for u in entry)
                or not all(math.isfinite(float(u)) for u in entry)
            ):
                raise ValueError(
                    f"{what}: entry ({i},{j}) must be a finite [re, im] pair"
                )
            M[i, j] = complex(float(entry[0]), float(entry[1]))
    if obj.get("hermitian"):
        require_hermitian(M)
    return M


def load_matrix(path: str, what: str = "matrix") -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{what} {path!r}: {exc}") from None
    return matrix_from_obj(obj, what=f"{what} {path!r}")


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".conewitness-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# shared plumbing


def resolve_seed(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return int(seed)
    env = os.environ.get("CONEWITNESS_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"CONEWITNESS_SEED={env!r} is not an integer") from None
    return 0


def split_dims(size: int, dim_in: int | None, what: str) -> tuple[int, int]:
    """Factor a Choi side length into (input, output) dimensions."""
    if dim_in is not None:
        if dim_in < 1 or size % dim_in != 0:
            raise ValueError(f"{what}: --dim-in {dim_in} does not divide size {size}")
        return dim_in, size // dim_in
    root = math.isqrt(size)
    if root * root != size:
        raise ValueError(f"{what}: size {size} is not a perfect square; pass --dim-in")
    return root, root


def descriptor_from_args(args):
    """Catalog name plus flags, or a Choi matrix file, to a map descriptor."""
    name = args.target
    if name in CATALOG_NAMES:
        return _catalog_descriptor(name, args)
    if not os.path.exists(name):
        raise ValueError(
            f"{name!r} is neither a catalog name {CATALOG_NAMES} nor a file"
        )
    W = load_matrix(name, what="choi file")
    if W.shape[0] != W.shape[1]:
        raise ValueError(f"choi file {name!r}: matrix must be square")
    require_hermitian(W)
    n, m = split_dims(W.shape[0], getattr(args, "dim_in", None), f"choi file {name!r}")
    return FromChoi(W=W, dim_in=n, dim_out=m)


def _require_flag(value, flag: str, name: str):
    if value is None:
        raise ValueError(f"catalog map {name!r} requires {flag}")
    return value


def _catalog_descriptor(name: str, args):
    if name == "transpose":
        return Transposition(n=_require_flag(args.n, "--n", name))
    if name == "reduction":
        return Reduction(n=_require_flag(args.n, "--n", name))
    if name == "choi-family":
        return ChoiFamily(
            a=_require_flag(args.a, "--a", name),
            b=_require_flag(args.b, "--b", name),
            c=_require_flag(args.c, "--c", name),
        )
    if name == "breuer-hall":
        path = _require_flag(args.u, "--u", name)
        U = load_matrix(path, what="unitary file")
        return BreuerHall(U=require_antisymmetric_unitary(U))
    if name == "robertson":
        return Robertson()
    if name == "ad":
        return Ad(V=load_matrix(_require_flag(args.v, "--v", name), what="matrix file"))
    if name == "co-ad":
        return CoAd(V=load_matrix(_require_flag(args.v, "--v", name), what="matrix file"))
    raise ValueError(f"unknown catalog map {name!r}")


def base_report(args, argv: list[str], seed: int | None, config: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": list(argv),
        "seed": seed,
        "config": config,
    }


def bp_report_obj(rep) -> dict:
    doc = {
        "min_value": rep.min_value,
        "converged": rep.converged,
        "restarts_used": rep.restarts_used,
        "iterations": rep.iterations,
        "tolerance": rep.tolerance,
    }
    if rep.argmin is not None:
        doc["argmin"] = {
            "x": vector_to_obj(rep.argmin.x),
            "y": vector_to_obj(rep.argmin.y),
            "value": rep.argmin.value,
        }
    else:
        doc["argmin"] = None
    return doc


# ---------------------------------------------------------------------------
# subcommands


def cmd_catalog(args, argv: list[str]) -> int:
    desc = _catalog_descriptor(args.name, args)
    phi = build_map(desc)
    write_output(canonical_json(matrix_to_obj(choi_of(phi))), args.out)
    return 0


def cmd_check(args, argv: list[str]) -> int:
    seed = resolve_seed(args)
    W = load_matrix(args.choi_file, what="choi file")
    if W.shape[0] != W.shape[1]:
        raise ValueError(f"choi file {args.choi_file!r}: matrix must be square")
    require_hermitian(W)
    n, m = split_dims(W.shape[0], args.dim_in, f"choi file {args.choi_file!r}")
    phi = map_from_choi(W, n, m)

    restarts = args.restarts if args.restarts is not None else 64
    config = SeeSawConfig(restarts=restarts)
    doc = base_report(
        args,
        argv,
        seed,
        {
            "mode": args.mode,
            "dim_in": n,
            "dim_out": m,
            "restarts": restarts,
            "max_iters": config.max_iters,
            "violation_tol": config.violation_tol,
        },
    )
    exit_code = 0
    if args.mode == "block-positive":
        verdict, rep = is_block_positive(phi, config, np.random.default_rng(seed))
        doc["verdict"] = verdict
        doc["report"] = bp_report_obj(rep)
        if not rep.converged:
            exit_code = 3
    elif args.mode == "cp":
        ok, lam = is_completely_positive(phi)
        doc["verdict"] = bool(ok)
        doc["min_eigenvalue"] = lam
    else:
        ok, lam = is_completely_copositive(phi)
        doc["verdict"] = bool(ok)
        doc["min_eigenvalue"] = lam
    write_output(canonical_json(doc), args.out)
    return exit_code


def cmd_detect(args, argv: list[str]) -> int:
    rho = load_matrix(args.state_file, what="state file")
    W = load_matrix(args.witness_file, what="witness file")
    if W.shape[0] != W.shape[1]:
        raise ValueError(f"witness file {args.witness_file!r}: matrix must be square")
    require_hermitian(W)
    n, m = split_dims(W.shape[0], args.dim_in, f"witness file {args.witness_file!r}")
    value, verdict = detect_entanglement(rho, map_from_choi(W, n, m))
    doc = base_report(args, argv, None, {"zero_tol": DEFAULT_TOLERANCES.zero_tol})
    doc["value"] = value
    doc["verdict"] = verdict
    write_output(canonical_json(doc), args.out)
    return 0


def cmd_exposedness(args, argv: list[str]) -> int:
    seed = resolve_seed(args)
    desc = descriptor_from_args(args)
    config = ExposednessConfig(sample_count=args.samples, budget=args.budget)
    rep = exposedness_report(desc, config, np.random.default_rng(seed))
    doc = base_report(
        args,
        argv,
        seed,
        {
            "samples": args.samples,
            "budget": args.budget,
            "restarts": config.seesaw.restarts,
            "rel_tol": config.rel_tol,
        },
    )
    doc["verdict"] = rep.verdict
    doc["nullspace_dim"] = rep.nullspace_dim
    doc["samples_used"] = rep.samples_used
    doc["counterexample"] = (
        matrix_to_obj(rep.counterexample) if rep.counterexample is not None else None
    )
    doc["counterexample_report"] = (
        bp_report_obj(rep.counterexample_report)
        if rep.counterexample_report is not None
        else None
    )
    doc["diagnostics"] = dict(rep.diagnostics)
    write_output(canonical_json(doc), args.out)
    return 0


def cmd_verify(args, argv: list[str]) -> int:
    seed = resolve_seed(args)
    rng = np.random.default_rng(seed)
    trials = args.trials
    doc = base_report(
        args,
        argv,
        seed,
        {"suite": args.suite, "trials": trials, "dim": args.dim},
    )

    if args.suite == "lemma1":
        if args.dim % 2 != 0 or args.dim < 2:
            raise ValueError("lemma1 needs an even dimension >= 2")
        residuals = []
        for _ in range(trials):
            V = random_unitary(args.dim, rng)
            x = random_unit_vector(args.dim, rng)
            residuals.append(verify_lemma1(V, x))
        doc["max_residual"] = max(residuals)
        doc["tolerance"] = 1e-10
        doc["passed"] = doc["max_residual"] <= doc["tolerance"]
    elif args.suite == "bh-structure":
        if args.dim % 2 != 0 or args.dim < 4:
            raise ValueError("bh-structure needs an even dimension >= 4")
        fixed_U = None
        if args.u is not None:
            fixed_U = require_antisymmetric_unitary(
                load_matrix(args.u, what="unitary file")
            )
        passed = True
        max_apply = 0.0
        max_remark1 = 0.0
        max_orth = 0.0
        for _ in range(trials):
            U = fixed_U if fixed_U is not None else random_antisymmetric_unitary(args.dim, rng)
            x = random_unit_vector(U.shape[0], rng)
            rep = verify_bh_structure(U, x)
            passed = passed and rep.passed
            max_apply = max(max_apply, rep.apply_residual)
            max_remark1 = max(max_remark1, rep.remark1_residual)
            max_orth = max(max_orth, abs(rep.orthogonality_value))
        doc["max_apply_residual"] = max_apply
        doc["max_remark1_residual"] = max_remark1
        doc["max_orthogonality"] = max_orth
        doc["passed"] = passed
    else:
        diff = choi_of(robertson()) - choi_of(breuer_hall(robertson_unitary()))
        doc["max_residual"] = float(np.max(np.abs(diff)))
        doc["tolerance"] = 1e-12
        doc["passed"] = doc["max_residual"] <= doc["tolerance"]

    write_output(canonical_json(doc), args.out)
    return 0 if doc["passed"] else 5


# ---------------------------------------------------------------------------
# parser


def _add_catalog_flags(sub) -> None:
    sub.add_argument("--n", type=int, help="matrix size for transpose/reduction")
    sub.add_argument("--a", type=float, help="choi-family parameter a")
    sub.add_argument("--b", type=float, help="choi-family parameter b")
    sub.add_argument("--c", type=float, help="choi-family parameter c")
    sub.add_argument("--u", help="matrix file with an antisymmetric unitary")
    sub.add_argument("--v", help="matrix file for ad/co-ad")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conewitness",
        description="Positive-map witnesses: construction, certification, exposedness.",
    )
    subs = parser.add_subparsers(dest="cmd", required=True)

    p = subs.add_parser("catalog", help="write the Choi matrix of a catalog map")
    p.add_argument("name", choices=CATALOG_NAMES)
    _add_catalog_flags(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=cmd_catalog)

    p = subs.add_parser("check", help="certify a Choi matrix")
    p.add_argument("choi_file")
    p.add_argument("--mode", choices=("block-positive", "cp", "ccp"), required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--dim-in", type=int, dest="dim_in")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=cmd_check)

    p = subs.add_parser("detect", help="witness expectation against a state")
    p.add_argument("state_file")
    p.add_argument("witness_file")
    p.add_argument("--dim-in", type=int, dest="dim_in")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=cmd_detect)

    p = subs.add_parser("exposedness", help="exposedness certification")
    p.add_argument("target", help="catalog name or a Choi matrix file")
    _add_catalog_flags(p)
    p.add_argument("--dim-in", type=int, dest="dim_in")
    p.add_argument("--samples", type=int)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=cmd_exposedness)

    p = subs.add_parser("verify", help="structural identity suites")
    p.add_argument(
        "--suite",
        choices=("lemma1", "bh-structure", "robertson-equality"),
        required=True,
    )
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--u", help="matrix file with an antisymmetric unitary")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, argv)
    except NotBlockPositive as exc:
        print(f"error: input is not block-positive: {exc}", file=sys.stderr)
        return 4
    except ConvergenceFailure as exc:
        print(f"error: convergence failure: {exc}", file=sys.stderr)
        return 3
    except (ConeWitnessError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
