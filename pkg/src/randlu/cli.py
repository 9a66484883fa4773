"""Command-line harness: synthetic matrices, decomposition runs,
benchmark sweeps, bound tables, image compression, and rank-deficient
least squares.

Exit codes: 0 on success, 2 for usage, parameter, or file-format
problems, 3 for numerical failures (rank collapse, singular blocks,
non-convergence).  Every subcommand taking --seed is reproducible except
for the wall-time fields.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds as bnd
from .core import frobenius_norm, spectral_norm
from .decomp import (
    approx_error,
    randomized_id_baseline,
    randomized_lu,
    randomized_svd_baseline,
    reconstruct,
    reconstruct_real,
)
from .errors import (
    DimensionError,
    FormatError,
    NumericalError,
    ParameterError,
    RandLUError,
)
from .fastlu import fast_randomized_lu
from .formats import (
    read_csv_matrix,
    read_pgm,
    read_rlum,
    write_csv_matrix,
    write_index_csv,
    write_pgm,
    write_rlum,
)
from .kernels import svd_oracle
from .lstsq import solve_rdls
from .synth import SpectrumSpec, synth_matrix

BENCH_SCHEMA = "method,k,l,seed,relative_error,wall_time_ms,error"
SUMMARY_KEYS = "k,l,method,relative_error,seed,wall_time_ms"
METHODS = ("randlu", "fastrandlu", "randsvd", "randid", "svd_oracle")


def psnr_db(a: np.ndarray, a_hat: np.ndarray) -> float:
    """Peak signal-to-noise ratio 20 log10(max_A sqrt(N) / ||A - A_hat||_F)."""
    a = np.asarray(a, dtype=np.float64)
    diff = frobenius_norm(a - np.asarray(a_hat))
    if diff == 0.0:
        return math.inf
    peak = float(np.max(a))
    return 20.0 * math.log10(peak * math.sqrt(a.size) / diff)


def _load_matrix(path: str) -> np.ndarray:
    p = Path(path)
    if not p.exists():
        raise FormatError(f"{path}: no such file")
    if p.suffix.lower() == ".rlum":
        return read_rlum(p)
    return read_csv_matrix(p)


def _load_vector(path: str) -> np.ndarray:
    a = _load_matrix(path)
    if a.shape[0] == 1 or a.shape[1] == 1:
        return np.real(a).reshape(-1)
    raise FormatError(f"{path}: expected a vector, got shape {a.shape}")


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _spec_from_args(args) -> SpectrumSpec:
    sigmas = None
    if args.kind == "custom":
        if not args.sigmas:
            raise ParameterError("custom spectrum requires --sigmas FILE")
        sigmas = tuple(np.asarray(read_csv_matrix(args.sigmas)).reshape(-1))
    return SpectrumSpec(
        kind=args.kind, m=args.m, n=args.n, seed=args.seed,
        rho=args.rho, rank=args.rank, sigmas=sigmas,
    )


# ---------------------------------------------------------------------------
# subcommands

def cmd_synth(args) -> int:
    a = synth_matrix(_spec_from_args(args))
    write_rlum(args.out, a)
    print(_json_dump({"out": str(args.out), "m": a.shape[0], "n": a.shape[1]}))
    return 0


def _run_decomposition(a, method, k, l, seed, pivot):
    if method == "randlu":
        return randomized_lu(a, k, l, seed, pivot_mode=pivot)
    if method == "fastrandlu":
        return fast_randomized_lu(a, k, l, seed)
    raise ParameterError(f"decompose supports randlu or fastrandlu, not {method!r}")


def cmd_decompose(args) -> int:
    a = _load_matrix(args.infile)
    if np.iscomplexobj(a):
        raise ParameterError("decompose expects a real input matrix")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    f = _run_decomposition(a, args.method, args.k, args.l, args.seed, args.pivot)
    wall_ms = (time.perf_counter() - start) * 1e3
    rel = approx_error(f, a, norm="frobenius", relative=True)
    write_rlum(out_dir / "L.rlum", f.L)
    write_rlum(out_dir / "U.rlum", f.U)
    write_index_csv(out_dir / "P.csv", f.P.forward)
    write_index_csv(out_dir / "Q.csv", f.Q.forward)
    summary = {
        "method": args.method,
        "k": args.k,
        "l": args.l,
        "seed": args.seed,
        "relative_error": rel,
        "wall_time_ms": wall_ms,
    }
    (out_dir / "summary.json").write_text(_json_dump(summary) + "\n", encoding="utf-8")
    print(_json_dump(summary))
    return 0


@dataclass
class BenchRecord:
    method: str
    k: int
    l: int
    seed: int
    relative_error: float | None
    wall_time_ms: float | None
    error: str = ""


def _bench_once(a, method, k, l, seed):
    """Relative spectral error of one benchmark cell."""
    if method == "randlu":
        f = randomized_lu(a, k, l, seed)
        return approx_error(f, a, norm="spectral", relative=True)
    if method == "fastrandlu":
        f = fast_randomized_lu(a, k, l, seed)
        return approx_error(f, a, norm="spectral", relative=True)
    if method == "randsvd":
        u, s, v = randomized_svd_baseline(a, k, l, seed)
        a_hat = (u * s) @ v.conj().T
        return spectral_norm(a - a_hat) / spectral_norm(a)
    if method == "randid":
        j, x = randomized_id_baseline(a, k, l, seed)
        return spectral_norm(a - x @ a[j, :]) / spectral_norm(a)
    if method == "svd_oracle":
        res = svd_oracle(a)
        u = res.U[:, :k]
        a_hat = (u * res.singular_values[:k]) @ res.V[:, :k].conj().T
        return spectral_norm(a - a_hat) / spectral_norm(a)
    raise ParameterError(f"unknown method {method!r}")


def _sketch_width(rule: str, k: int, n: int) -> int:
    if rule == "plus3":
        return k + 3
    if rule.startswith("plus:"):
        return k + int(rule.split(":", 1)[1])
    if rule == "logsq":
        return int(round(3.0 * math.log2(n) ** 2))
    raise ParameterError(f"unknown l rule {rule!r}; use plus3, plus:N, or logsq")


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise ParameterError("at least one method is required")
    for m in methods:
        if m not in METHODS:
            raise ParameterError(f"unknown method {m!r}; choose from {METHODS}")
    k_list = [int(t) for t in args.k_list.split(",") if t.strip()]
    if not k_list:
        raise ParameterError("at least one k is required")
    seeds = [int(t) for t in args.seeds.split(",") if t.strip()]
    if not seeds:
        raise ParameterError("at least one seed is required")

    if args.infile:
        a = _load_matrix(args.infile)
    else:
        a = synth_matrix(_spec_from_args(args))
    n = min(a.shape)

    records = []
    for method in methods:
        for k in k_list:
            l = _sketch_width(args.l_rule, k, n)
            for seed in seeds:
                try:
                    _bench_once(a, method, k, l, seed)  # warmup
                    times = []
                    rel = None
                    for _ in range(args.runs):
                        t0 = time.perf_counter()
                        rel = _bench_once(a, method, k, l, seed)
                        times.append((time.perf_counter() - t0) * 1e3)
                    records.append(BenchRecord(method, k, l, seed, rel, float(np.median(times))))
                except RandLUError as exc:
                    records.append(BenchRecord(method, k, l, seed, None, None, str(exc)))
    records.sort(key=lambda r: (r.method, r.k, r.seed))

    lines = [BENCH_SCHEMA]
    for r in records:
        rel = "" if r.relative_error is None else repr(r.relative_error)
        ms = "" if r.wall_time_ms is None else repr(r.wall_time_ms)
        err = r.error.replace("\n", " ").replace(",", ";")
        lines.append(f"{r.method},{r.k},{r.l},{r.seed},{rel},{ms},{err}")
    _write_or_print("\n".join(lines), args.out)
    return 0


def _bounds_rows(args):
    if args.mode == "table1":
        rows = [("l_minus_k", "beta", "gamma", "failure_probability", "xi")]
        for lk, beta, gamma, eps, xi in bnd.table1_rows(n=args.n):
            rows.append((lk, beta, gamma, eps, xi))
        return rows
    if args.mode == "oversample_fig":
        rows = [("p", "rangefinder_factor", "halko_factor")]
        rows += bnd.oversampling_factor_curves(k=args.k, p_min=4, p_max=args.p_max, n=args.n)
        return rows
    if args.mode == "fixedp_fig":
        rows = [("k", "rangefinder_factor", "halko_factor")]
        rows += bnd.fixed_oversampling_curves(p=args.p, k_min=3, k_max=args.k_max, n=args.n)
        return rows
    raise ParameterError(f"unknown bounds mode {args.mode!r}")


def cmd_bounds(args) -> int:
    if args.mode == "example43":
        ref = bnd.reference_case_bounds()
        payload = {
            "a1": ref["a1"],
            "c1": ref["c1"],
            "c2": ref["c2"],
            "k": ref["k"],
            "l": ref["l"],
            "m": ref["m"],
            "n": ref["n"],
            "rangefinder": {
                "coefficient": ref["rangefinder"].coefficient,
                "failure_probability": ref["rangefinder"].failure_probability,
                "log10_failure": ref["rangefinder"].log10_failure,
            },
            "halko": {
                "coefficient": ref["halko"].coefficient,
                "failure_probability": ref["halko"].failure_probability,
            },
        }
        if args.format == "json":
            _write_or_print(_json_dump(payload), args.out)
        else:
            lines = ["bound,coefficient,failure_probability"]
            lines.append(
                f"rangefinder,{payload['rangefinder']['coefficient']!r},"
                f"{payload['rangefinder']['failure_probability']!r}"
            )
            lines.append(
                f"halko,{payload['halko']['coefficient']!r},"
                f"{payload['halko']['failure_probability']!r}"
            )
            _write_or_print("\n".join(lines), args.out)
        return 0
    rows = _bounds_rows(args)
    if args.format == "json":
        header = rows[0]
        payload = [dict(zip(header, r)) for r in rows[1:]]
        _write_or_print(_json_dump(payload), args.out)
    else:
        lines = [",".join(str(c) for c in rows[0])]
        lines += [",".join(repr(c) if isinstance(c, float) else str(c) for c in r) for r in rows[1:]]
        _write_or_print("\n".join(lines), args.out)
    return 0


def cmd_image(args) -> int:
    a = read_pgm(args.infile)
    m, n = a.shape
    if not (1 <= args.k <= args.l <= min(m, n)):
        raise ParameterError(
            f"need 1 <= k <= l <= min(m, n) = {min(m, n)}; got k={args.k}, l={args.l}"
        )
    if args.method == "randlu":
        f = randomized_lu(a, args.k, args.l, args.seed)
        a_hat = reconstruct(f)
    elif args.method == "fastrandlu":
        f = fast_randomized_lu(a, args.k, args.l, args.seed)
        a_hat = reconstruct_real(f)
    elif args.method == "randid":
        j, x = randomized_id_baseline(a, args.k, args.l, args.seed)
        a_hat = x @ a[j, :]
    elif args.method == "svd_oracle":
        res = svd_oracle(a)
        a_hat = (res.U[:, :args.k] * res.singular_values[:args.k]) @ res.V[:, :args.k].T
    else:
        raise ParameterError(f"unknown image method {args.method!r}")
    a_hat = np.real(a_hat)
    write_pgm(args.out, a_hat)
    report = {
        "k": args.k,
        "l": args.l,
        "method": args.method,
        "out": str(args.out),
        "psnr_db": psnr_db(a, a_hat),
        "seed": args.seed,
    }
    print(_json_dump(report))
    return 0


def cmd_rdls(args) -> int:
    a = _load_matrix(args.a)
    if np.iscomplexobj(a):
        raise ParameterError("rdls expects a real matrix")
    b = _load_vector(args.b)
    sol = solve_rdls(a, b, args.k, args.l, args.seed)
    write_csv_matrix(args.out, sol.x.reshape(-1, 1))
    print(_json_dump({
        "nonzero_count": sol.nonzero_count,
        "residual_norm": sol.residual_norm,
        "x_path": str(args.out),
    }))
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randlu",
        description="Randomized low-rank LU decomposition toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_args(p):
        p.add_argument("--kind", choices=("exponential", "step", "custom"), default="exponential")
        p.add_argument("--rho", type=float, default=0.5, help="exponential decay ratio in (0, 1)")
        p.add_argument("--rank", type=int, default=None, help="rank of the step spectrum")
        p.add_argument("--sigmas", default=None, help="CSV file with a custom spectrum")
        p.add_argument("--m", type=int, default=300)
        p.add_argument("--n", type=int, default=300)

    p = sub.add_parser("synth", help="write a synthetic matrix with a prescribed spectrum")
    add_spec_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output RLUM path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser(
        "decompose",
        help="run one decomposition and write its factors",
        epilog=f"summary JSON keys (sorted): {SUMMARY_KEYS}",
    )
    p.add_argument("--in", dest="infile", required=True, help="input matrix (.rlum or .csv)")
    p.add_argument("--method", choices=("randlu", "fastrandlu"), default="randlu")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pivot", choices=("partial", "complete"), default="partial")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser(
        "bench",
        help="error/time sweep over methods, ranks, and seeds",
        epilog=f"CSV schema v1: {BENCH_SCHEMA}",
    )
    p.add_argument("--in", dest="infile", default=None, help="input matrix (.rlum or .csv)")
    add_spec_args(p)
    p.add_argument("--seed", type=int, default=0, help="seed of the synthetic input")
    p.add_argument("--k-list", required=True, help="comma-separated ranks")
    p.add_argument("--l-rule", default="plus3", help="plus3 (default), plus:N, or logsq")
    p.add_argument("--seeds", default="0", help="comma-separated sketch seeds")
    p.add_argument("--methods", required=True, help=f"comma-separated from {METHODS}")
    p.add_argument("--runs", type=int, default=5, help="timed runs per cell (median reported)")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bounds", help="bound tables and figure-ready factor curves")
    p.add_argument("--mode", choices=("table1", "example43", "oversample_fig", "fixedp_fig"),
                   required=True)
    p.add_argument("--n", type=int, default=3000, help="ambient dimension for table1/figures")
    p.add_argument("--k", type=int, default=3, help="rank for oversample_fig")
    p.add_argument("--p", type=int, default=10, help="oversampling for fixedp_fig")
    p.add_argument("--p-max", type=int, default=100)
    p.add_argument("--k-max", type=int, default=100)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("image", help="low-rank compression of a binary PGM image")
    p.add_argument("--in", dest="infile", required=True, help="input P5 PGM")
    p.add_argument("--method", choices=("randlu", "fastrandlu", "randid", "svd_oracle"),
                   default="randlu")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("rdls", help="rank-deficient least squares via randomized LU")
    p.add_argument("--a", required=True, help="system matrix (.rlum or .csv)")
    p.add_argument("--b", required=True, help="right-hand side (.rlum or .csv vector)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="solution CSV path")
    p.set_defaults(func=cmd_rdls)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParameterError, DimensionError, FormatError) as exc:
        print(f"randlu: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"randlu: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
