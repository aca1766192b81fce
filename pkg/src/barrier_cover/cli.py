"""Command-line front end: instance I/O, generators, solvers, benchmarks.

Subcommands: ``decide``, ``solve``, ``oracle``, ``gen``, ``candidates dump``,
``bench``.  JSON is the sole wire format (CSV only for bench output); numbers
round-trip exactly through their shortest decimal representation.

Exit codes: 0 ok, 2 validation error, 3 uncoverable, 4 numerical failure.
The environment variable ``BARRIER_COVER_EPS`` overrides the comparison slack.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time

from .candidates import dump_candidates
from .core import (
    BarrierCoverError,
    DEFAULT_TOL,
    Instance,
    NumericalFailure,
    ToleranceConfig,
    Uncoverable,
    ValidationError,
    load_instance,
    movement_upper_bound,
    placement_to_dict,
    validate_coverable,
    validate_instance,
)
from .feasibility import decide_line, decide_plane
from .oracle import oracle_decide, oracle_lambda_line, oracle_lambda_plane
from .solver_line import solve_line
from .solver_mbc import solve_plane


class SpecInfeasible(ValidationError):
    """The requested generator parameters cannot yield a coverable instance."""


def generate_instance(
    n: int,
    m: int,
    r: float,
    spread: float,
    seed: int,
    mode: str = "line",
    *,
    max_attempts: int = 1000,
) -> Instance:
    """Random coverable instance, deterministic per seed.

    Barriers are disjoint sorted segments in ``[0, spread]`` (consecutive
    pairs of 2m uniform draws); sensors are uniform in x, with y zero for line
    mode and uniform in ``[-spread/4, spread/4]`` for plane mode.  Draws whose
    total barrier length exceeds the sensing capacity ``2 r n`` are redrawn.
    """
    if n < 1 or m < 1:
        raise SpecInfeasible(f"need n, m >= 1, got n={n}, m={m}")
    if r <= 0 or spread <= 0:
        raise SpecInfeasible(f"need positive r and spread, got r={r}, spread={spread}")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        # Pin the barriers inside a window no wider than the total sensing
        # capacity 2 r n: a window that narrow is always coverable.
        span = rng.uniform(0.35, 0.92) * min(spread, 2.0 * r * n)
        start = rng.uniform(0.0, spread - span) if spread > span else 0.0
        inner = sorted(rng.uniform(0.0, span) for _ in range(2 * m - 2))
        points = [0.0, *inner, span]
        if any(points[k] == points[k + 1] for k in range(0, 2 * m - 1, 2)):
            continue
        barriers = [
            (start + points[2 * k], start + points[2 * k + 1]) for k in range(m)
        ]
        if sum(b - a for a, b in barriers) > 2.0 * r * n:
            continue
        sensors = []
        for _ in range(n):
            x = rng.uniform(0.0, spread)
            y = 0.0 if mode == "line" else rng.uniform(-spread / 4.0, spread / 4.0)
            sensors.append((x, y))
        inst = Instance.create(barriers, sensors, r)
        if validate_coverable(inst):
            return inst
    raise SpecInfeasible(
        f"could not draw a coverable instance for n={n}, m={m}, r={r}, spread={spread}"
    )


def bench_rows(
    sizes: list[tuple[int, int]],
    seeds: int,
    mode: str = "line",
    *,
    spread_factor: float = 4.0,
) -> list[dict]:
    """Timing rows for the given instance sizes; one row per (size, seed)."""
    rows = []
    for n, m in sizes:
        for seed in range(seeds):
            spread = spread_factor * max(n, m)
            inst = generate_instance(n, m, 1.0, spread, seed, mode)
            lam_probe = 0.5 * (max(abs(y) for y in inst.ys) + movement_upper_bound(inst))
            t0 = time.perf_counter()
            decide_plane(inst, lam_probe)
            t_decide = time.perf_counter() - t0
            t0 = time.perf_counter()
            if mode == "line":
                sol = solve_line(inst)
                feas_tests = sol.feasibility_tests
            else:
                sol = solve_plane(inst)
                feas_tests = sol.feasibility_tests
            t_solve = time.perf_counter() - t0
            rows.append(
                {
                    "n": n,
                    "m": m,
                    "t_decide_us": int(round(t_decide * 1e6)),
                    "t_solve_us": int(round(t_solve * 1e6)),
                    "feas_tests": feas_tests,
                }
            )
    return rows


BENCH_HEADER = "n,m,t_decide_us,t_solve_us,feas_tests"


def _tolerance_from_env() -> ToleranceConfig:
    raw = os.environ.get("BARRIER_COVER_EPS")
    if not raw:
        return DEFAULT_TOL
    eps = float(raw)
    return ToleranceConfig(
        eps_cmp=eps,
        eps_root=min(DEFAULT_TOL.eps_root, eps),
        eps_accept=max(DEFAULT_TOL.eps_accept, eps),
    )


def _add_instance_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", required=True, help="path to an instance JSON file")
    p.add_argument(
        "--merge-touching",
        action="store_true",
        help="merge barriers whose endpoints coincide before validating",
    )


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="barrier-cover",
        description="Min-max movement solvers for multi-barrier coverage.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="test one movement budget")
    _add_instance_arg(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mode", choices=("line", "plane"), default="plane")

    p = sub.add_parser("solve", help="compute the optimal budget and placement")
    _add_instance_arg(p)
    p.add_argument("--mode", choices=("line", "plane"), default="plane")
    p.add_argument("--trace", help="write a per-step JSON trace (plane mode)")

    p = sub.add_parser("oracle", help="brute-force reference answers")
    _add_instance_arg(p)
    p.add_argument("--what", choices=("decide", "lambda"), required=True)
    p.add_argument("--lambda", dest="lam", type=float)

    p = sub.add_parser("gen", help="generate a random coverable instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--spread", type=float, default=20.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("line", "plane"), default="line")
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("candidates", help="candidate-array utilities")
    csub = p.add_subparsers(dest="subcommand", required=True)
    d = csub.add_parser("dump", help="materialize the candidate arrays")
    _add_instance_arg(d)
    d.add_argument("--max-size", type=int, default=100_000)

    p = sub.add_parser("bench", help="timing harness, CSV on stdout")
    p.add_argument(
        "--sizes",
        required=True,
        help="comma-separated n:m pairs, e.g. 100:10,200:10",
    )
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--mode", choices=("line", "plane"), default="line")

    return top


def _cmd_decide(args, tol: ToleranceConfig) -> int:
    inst = load_instance(args.instance, merge_touching=args.merge_touching)
    validate_instance(inst)
    if args.mode == "line":
        res = decide_line(inst, args.lam, tol)
    else:
        res = decide_plane(inst, args.lam, tol)
    out = {"feasible": res.feasible, "placement": None}
    if res.feasible:
        out["placement"] = placement_to_dict(inst, args.lam, res.placement)
    print(json.dumps(out))
    return 0


def _cmd_solve(args, tol: ToleranceConfig) -> int:
    inst = load_instance(args.instance, merge_touching=args.merge_touching)
    validate_instance(inst)
    if args.mode == "line":
        sol = solve_line(inst, tol)
        lam, placement = sol.lambda_star, sol.placement
    else:
        sol = solve_plane(inst, tol, collect_trace=bool(args.trace))
        lam, placement = sol.lambda_star, sol.placement
        if args.trace:
            trace_doc = {
                "lambda": lam,
                "sequence": [inst.sensors[g].id for g in sol.sequence],
                "feasibility_tests": sol.feasibility_tests,
                "steps": list(sol.trace),
            }
            with open(args.trace, "w", encoding="utf-8") as fh:
                json.dump(trace_doc, fh, indent=2)
    print(json.dumps(placement_to_dict(inst, lam, placement)))
    return 0


def _cmd_oracle(args, tol: ToleranceConfig) -> int:
    inst = load_instance(args.instance, merge_touching=args.merge_touching)
    validate_instance(inst)
    if args.what == "decide":
        if args.lam is None:
            raise ValidationError("oracle --what decide needs --lambda")
        print(json.dumps({"feasible": oracle_decide(inst, args.lam, tol)}))
    else:
        if inst.line_constrained:
            lam = oracle_lambda_line(inst, tol)
        else:
            lam = oracle_lambda_plane(inst, tol)
        print(json.dumps({"lambda": lam}))
    return 0


def _cmd_gen(args, tol: ToleranceConfig) -> int:
    inst = generate_instance(args.n, args.m, args.r, args.spread, args.seed, args.mode)
    from .core import instance_to_dict

    doc = json.dumps(instance_to_dict(inst))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        print(doc)
    return 0


def _cmd_candidates(args, tol: ToleranceConfig) -> int:
    inst = load_instance(args.instance, merge_touching=args.merge_touching)
    validate_instance(inst)
    try:
        dump = dump_candidates(inst, args.max_size, tol)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    print(json.dumps(dump))
    return 0


def _cmd_bench(args, tol: ToleranceConfig) -> int:
    sizes = []
    for part in args.sizes.split(","):
        n_str, m_str = part.split(":")
        sizes.append((int(n_str), int(m_str)))
    print(BENCH_HEADER)
    for row in bench_rows(sizes, args.seeds, args.mode):
        print(
            f"{row['n']},{row['m']},{row['t_decide_us']},"
            f"{row['t_solve_us']},{row['feas_tests']}"
        )
    return 0


_COMMANDS = {
    "decide": _cmd_decide,
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "candidates": _cmd_candidates,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        tol = _tolerance_from_env()
        return _COMMANDS[args.command](args, tol)
    except Uncoverable as exc:
        print(json.dumps({"error": "uncoverable", "detail": str(exc)}), file=sys.stderr)
        return 3
    except NumericalFailure as exc:
        print(json.dumps({"error": "numerical", "detail": str(exc)}), file=sys.stderr)
        return 4
    except (ValidationError, ValueError, OSError) as exc:
        print(json.dumps({"error": "validation", "detail": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
