"""Command-line interface: ``splitsched <command> ...`` or ``python -m splitsched``.

Exit codes: 0 success, 1 bad input, 2 enumeration cap reached.

Defaults for caps, seeds and worker counts can be set in the environment;
an explicit flag always wins over the environment, which wins over the
built-in default.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .approx import ApproxConfig, approx_schedule, lower_bounds, within_factor
from .gantt import render_gantt
from .hardness import SubsetSumInput, ThreePartitionInput, build_3partition_instance, build_subsetsum_instance
from .io import (FileFormatError, emit_instance, emit_schedule, format_rational, generate_random, read_instance,
                 read_schedule, write_text)
from .model import InvalidInstance, InvalidSchedule, as_rational, evaluate
from .oracle import ALL, DEFAULT_CAP, CapExceeded, OracleQuery, oracle_optimum
from .ptas import GuessInfeasible, PtasConfig, ptas_solve
from .two_machine import solve_two_machines

ENV_CAP = "SPLITSCHED_CAP"
ENV_WORKERS = "SPLITSCHED_WORKERS"
ENV_SEED = "SPLITSCHED_SEED"
ENV_PTAS_GUESSES = "SPLITSCHED_PTAS_MAX_GUESSES"
ENV_PTAS_STRUCTURES = "SPLITSCHED_PTAS_MAX_STRUCTURES"


def _env_int(name: str, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidInstance(f"environment variable {name} must be an integer, got {raw!r}") from None


def _fmt(x) -> str:
    return format_rational(x)


def _sets_text(structure) -> str:
    parts = []
    for j, ms in zip(structure.order, structure.sets):
        parts.append(f"{j}:{{{','.join(str(i + 1) for i in sorted(ms))}}}")
    return " ".join(parts)


def _emit(text: str, path: str | None) -> None:
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


def _write_schedule(args, instance, schedule, weighted=False) -> None:
    if getattr(args, "output", None):
        write_text(args.output, emit_schedule(instance, schedule, weighted))


def _parse_fix(entries, m: int) -> dict:
    out = {}
    for entry in entries or ():
        if "=" not in entry:
            raise InvalidInstance(f"--fix expects job=all or job=1,2, got {entry!r}")
        job, what = entry.split("=", 1)
        try:
            jid = int(job)
            if what.strip().lower() == ALL:
                out[jid] = ALL
            else:
                ms = {int(v) - 1 for v in what.split(",") if v.strip()}
                if not ms or min(ms) < 0 or max(ms) >= m:
                    raise ValueError
                out[jid] = ms
        except ValueError:
            raise InvalidInstance(f"--fix: bad entry {entry!r} (machines are 1..{m})") from None
    return out


def _range(text: str):
    lo, sep, hi = text.partition(":")
    if not sep:
        hi = lo
    return as_rational(lo), as_rational(hi)


def _numbers(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise InvalidInstance(f"expected comma-separated integers, got {text!r}") from None


def cmd_solve2(args) -> int:
    inst = read_instance(args.instance)
    if inst.machines != 2:
        raise InvalidInstance("solve2 needs an instance with 2 machines")
    sol = solve_two_machines(inst, audit=args.audit)
    print(f"objective {_fmt(sol.objective)}")
    print(f"unsplit jobs {sol.unsplit_count}")
    print(f"candidates {' '.join(map(str, sol.candidates))}")
    if sol.all_objectives:
        for k, v in sol.all_objectives.items():
            print(f"  k={k} objective {_fmt(v)}")
    _write_schedule(args, inst, sol.schedule)
    return 0


def cmd_approx(args) -> int:
    inst = read_instance(args.instance)
    config = ApproxConfig(alpha=None if args.alpha is None else as_rational(args.alpha))
    res = approx_schedule(config, inst)
    bounds = lower_bounds(inst)
    ok = within_factor(res.objective, bounds.best, config.alpha)
    print(f"objective {_fmt(res.objective)}")
    print(f"split bounds {' '.join(f'{j}:{l}' for j, l in res.split_bounds.items())}")
    print(f"lower bound {_fmt(bounds.best)}")
    print(f"within factor {config.factor_text}: {'yes' if ok else 'no'}")
    _write_schedule(args, inst, res.schedule)
    return 0


def cmd_ptas(args) -> int:
    inst = read_instance(args.instance)
    config = PtasConfig(as_rational(args.epsilon),
                        max_guesses=args.max_guesses if args.max_guesses is not None
                        else _env_int(ENV_PTAS_GUESSES, None),
                        max_structures=args.max_structures if args.max_structures is not None
                        else _env_int(ENV_PTAS_STRUCTURES, None))
    try:
        res = ptas_solve(config, inst)
    except CapExceeded as exc:
        print(f"cap reached: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(f"partial objective {_fmt(exc.partial.objective)}")
            _write_schedule(args, inst, exc.partial.schedule)
        return 2
    print(f"objective {_fmt(res.objective)}")
    print(f"prefix jobs {res.prefix_size}")
    print(f"thresholds {' '.join(_fmt(t) for t in res.guess.thresholds)}")
    print(f"structure {_sets_text(res.structure)}")
    _write_schedule(args, inst, res.schedule)
    return 0


def cmd_oracle(args) -> int:
    inst = read_instance(args.instance)
    cap = args.cap if args.cap is not None else _env_int(ENV_CAP, DEFAULT_CAP)
    workers = args.workers if args.workers is not None else _env_int(ENV_WORKERS, 1)
    query = OracleQuery(inst, _parse_fix(args.fix, inst.machines), permutations=args.permutations,
                        weighted=args.weighted, cap=cap, workers=workers)
    try:
        res = oracle_optimum(query)
    except CapExceeded as exc:
        print(f"cap reached: {exc}", file=sys.stderr)
        return 2
    print(f"optimum {_fmt(res.optimum)}")
    print(f"structures enumerated {res.enumerated}, LPs solved {res.lp_solves}")
    print(f"optimal classes {len(res.structures)}")
    for st in res.structures:
        print(f"  {_sets_text(st)}")
    _write_schedule(args, inst, res.best.schedule(), args.weighted)
    return 0


def cmd_eval(args) -> int:
    inst = read_instance(args.instance)
    sched = read_schedule(args.schedule, inst, check_hash=not args.no_hash)
    rep = evaluate(inst, sched, weighted=args.weighted)
    print(f"objective {_fmt(rep.total)}")
    print("completions " + " ".join(f"{j}:{_fmt(c)}" for j, c in rep.completions.items()))
    print("loads " + " ".join(_fmt(v) for v in rep.machine_loads))
    print(f"setups {rep.setup_count}")
    return 0


def cmd_bounds(args) -> int:
    inst = read_instance(args.instance)
    b = lower_bounds(inst)
    print(f"LB1 = {_fmt(b.lb_load)}")
    print(f"LB2 = {_fmt(b.lb_setup)}")
    print(f"best = {_fmt(b.best)}")
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _env_int(ENV_SEED, 0)
    inst = generate_random(seed, args.n, args.m, _range(args.s_range), _range(args.p_range), args.max_den,
                           weighted=args.weighted)
    _emit(emit_instance(inst), args.output)
    return 0


def cmd_reduce3p(args) -> int:
    inst = build_3partition_instance(ThreePartitionInput(_numbers(args.numbers)), as_rational(args.setup))
    _emit(emit_instance(inst), args.output)
    return 0


def cmd_reducess(args) -> int:
    inst = build_subsetsum_instance(SubsetSumInput(_numbers(args.numbers)), as_rational(args.setup))
    _emit(emit_instance(inst), args.output)
    return 0


def cmd_gantt(args) -> int:
    inst = read_instance(args.instance)
    sched = read_schedule(args.schedule, inst, check_hash=not args.no_hash)
    _emit(render_gantt(inst, sched, args.format), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitsched", description="Scheduling with job splitting and setup times.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_output(sp, what="schedule"):
        sp.add_argument("-o", "--output", help=f"write the {what} to this file")
        return sp

    sp = with_output(sub.add_parser("solve2", help="exact solver for two machines"))
    sp.add_argument("instance")
    sp.add_argument("--audit", action="store_true", help="also evaluate every k")
    sp.set_defaults(func=cmd_solve2)

    sp = with_output(sub.add_parser("approx", help="constant-factor approximation"))
    sp.add_argument("instance")
    sp.add_argument("--alpha", help="split parameter, at least (sqrt(17)-1)/4 (default: exactly that)")
    sp.set_defaults(func=cmd_approx)

    sp = with_output(sub.add_parser("ptas", help="approximation scheme for few machines"))
    sp.add_argument("instance")
    sp.add_argument("--epsilon", required=True)
    sp.add_argument("--max-guesses", type=int, help=f"cap on threshold guesses (env {ENV_PTAS_GUESSES})")
    sp.add_argument("--max-structures", type=int, help=f"cap on suffix structures (env {ENV_PTAS_STRUCTURES})")
    sp.set_defaults(func=cmd_ptas)

    sp = with_output(sub.add_parser("oracle", help="brute-force optimum over split structures"))
    sp.add_argument("instance")
    sp.add_argument("--fix", action="append", metavar="JOB=SET",
                    help="fix a job's machines: 6=all or 3=1,2 (machines 1-based); repeatable")
    sp.add_argument("--permutations", choices=("spt", "spt-ties", "all"), default="spt")
    sp.add_argument("--weighted", action="store_true")
    sp.add_argument("--cap", type=int, help=f"maximum structures (env {ENV_CAP}, default {DEFAULT_CAP})")
    sp.add_argument("--workers", type=int, help=f"worker processes (env {ENV_WORKERS}, default 1)")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("eval", help="evaluate a schedule file")
    sp.add_argument("instance")
    sp.add_argument("schedule")
    sp.add_argument("--weighted", action="store_true")
    sp.add_argument("--no-hash", action="store_true", help="skip the instance hash check")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("bounds", help="lower bounds on the total completion time")
    sp.add_argument("instance")
    sp.set_defaults(func=cmd_bounds)

    sp = with_output(sub.add_parser("gen", help="random instance"), "instance")
    sp.add_argument("--seed", type=int, help=f"random seed (env {ENV_SEED}, default 0)")
    sp.add_argument("-n", type=int, default=6)
    sp.add_argument("-m", type=int, default=2)
    sp.add_argument("--s-range", default="1", help="lo:hi or a single value")
    sp.add_argument("--p-range", default="1:10", help="lo:hi or a single value")
    sp.add_argument("--max-den", type=int, default=1)
    sp.add_argument("--weighted", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = with_output(sub.add_parser("reduce3p", help="weighted instance from a 3-Partition input"), "instance")
    sp.add_argument("--numbers", required=True, help="comma-separated, 3n values")
    sp.add_argument("--setup", required=True)
    sp.set_defaults(func=cmd_reduce3p)

    sp = with_output(sub.add_parser("reducess", help="weighted instance from a Subset Sum input"), "instance")
    sp.add_argument("--numbers", required=True, help="comma-separated, 2n values")
    sp.add_argument("--setup", required=True)
    sp.set_defaults(func=cmd_reducess)

    sp = with_output(sub.add_parser("gantt", help="draw a schedule"), "chart")
    sp.add_argument("instance")
    sp.add_argument("schedule")
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.add_argument("--no-hash", action="store_true")
    sp.set_defaults(func=cmd_gantt)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileFormatError, InvalidInstance, InvalidSchedule, GuessInfeasible, ValueError,
            ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
