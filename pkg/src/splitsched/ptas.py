"""Approximation scheme for a fixed number of machines.

The ``K = n - ⌈m/ε⌉`` shortest jobs are list scheduled unsplit in SPT order,
with machine ``i`` closed once its load reaches a guessed threshold ``t_i``.
Every guess on the grid of multiples of ``s + p_K`` is tried, and for the
remaining jobs every choice of machine sets is timed by the LP with setups
charged on all chosen machines. The best combination is within ``1 + 5ε``
of the optimum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .lp import FixedStructureProgram, solve_fixed_structure
from .model import Instance, ObjectiveReport, Schedule, Segment, SplitStructure, as_rational, evaluate, spt_order
from .oracle import CapExceeded, mask_to_set


class GuessInfeasible(ValueError):
    """All machines closed before the prefix was placed."""


@dataclass(frozen=True)
class PtasConfig:
    epsilon: Fraction
    max_guesses: int | None = None
    max_structures: int | None = None

    def __post_init__(self):
        eps = as_rational(self.epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be > 0")
        object.__setattr__(self, "epsilon", eps)

    def prefix_size(self, instance: Instance) -> int:
        return max(0, instance.n - ceil(instance.machines / self.epsilon))


@dataclass(frozen=True)
class Guess:
    thresholds: tuple[Fraction, ...]
    loads: tuple[Fraction, ...]


@dataclass(frozen=True)
class PtasResult:
    schedule: Schedule
    report: ObjectiveReport
    lp_total: Fraction
    guess: Guess
    structure: SplitStructure
    prefix_size: int
    guesses_tried: int
    lp_solves: int

    @property
    def objective(self) -> Fraction:
        return self.report.total


def prefix_list_schedule(instance: Instance, K: int, thresholds) -> tuple[Schedule, tuple[Fraction, ...]]:
    """Place the ``K`` shortest jobs unsplit, least loaded open machine first.

    A machine is closed as soon as its load is at least its threshold
    (possibly from the start). Raises :class:`GuessInfeasible` when no machine
    is open for some job.
    """
    m = instance.machines
    if not 0 <= K <= instance.n:
        raise ValueError(f"K must lie in 0..{instance.n}")
    t = [as_rational(v) for v in thresholds]
    if len(t) != m:
        raise ValueError("one threshold per machine required")
    s = instance.setup
    loads = [Fraction(0)] * m
    rows: list[list[Segment]] = [[] for _ in range(m)]
    for j in spt_order(instance)[:K]:
        open_ = [i for i in range(m) if loads[i] < t[i]]
        if not open_:
            raise GuessInfeasible(f"no open machine for job {j}")
        i = min(open_, key=lambda i: (loads[i], i))
        rows[i].append(Segment(j, instance.p(j)))
        loads[i] += s + instance.p(j)
    return Schedule(tuple(tuple(r) for r in rows)), tuple(loads)


def guess_grid(instance: Instance, K: int) -> list[Fraction]:
    if K == 0:
        return [Fraction(0)]
    step = instance.setup + instance.p(spt_order(instance)[K - 1])
    return [g * step for g in range(K + 1)]


def ptas_solve(config: PtasConfig, instance: Instance) -> PtasResult:
    m = instance.machines
    order = spt_order(instance)
    K = config.prefix_size(instance)
    suffix = order[K:]
    grid = guess_grid(instance, K)
    full = (1 << m) - 1

    guesses = list(itertools.product(grid, repeat=m))
    structures = list(itertools.product(range(1, full + 1), repeat=len(suffix)))
    truncated = False
    if config.max_guesses is not None and len(guesses) > config.max_guesses:
        guesses, truncated = guesses[:config.max_guesses], True
    if config.max_structures is not None and len(structures) > config.max_structures:
        structures, truncated = structures[:config.max_structures], True

    sub = Instance(m, instance.setup, tuple(instance.job(j) for j in suffix)) if suffix else None
    solved: dict = {}
    best = None
    tried = 0
    for t in guesses:
        try:
            prefix, loads = prefix_list_schedule(instance, K, t)
        except GuessInfeasible:
            continue
        tried += 1
        prefix_report = _prefix_completions(instance, prefix)
        prefix_total = sum(prefix_report.values(), Fraction(0))
        for masks in structures if suffix else [()]:
            key = (prefix.machines, masks)
            if key not in solved:
                if suffix:
                    st = SplitStructure(tuple(suffix), tuple(mask_to_set(v) for v in masks))
                    sol = solve_fixed_structure(FixedStructureProgram(sub, st, loads, mandatory_setups=True))
                    solved[key] = (sol.objective, sol)
                else:
                    solved[key] = (Fraction(0), None)
            value, sol = solved[key]
            total = prefix_total + value
            rank = (total, t, masks)
            if best is None or rank < best[0]:
                best = (rank, prefix, loads, sol, t, masks)
    if best is None:
        if truncated:
            raise CapExceeded("enumeration cap reached before any feasible guess")
        raise GuessInfeasible("no feasible guess")
    (total, _, _), prefix, loads, sol, t, masks = best
    schedule = _combine(prefix, sol, m)
    structure = SplitStructure(tuple(order), tuple(
        [frozenset(i for i in range(m) if any(seg.job == j for seg in prefix.machines[i])) for j in order[:K]]
        + [mask_to_set(v) for v in masks]))
    result = PtasResult(schedule, evaluate(instance, schedule), total, Guess(tuple(t), loads),
                        structure, K, tried, len(solved))
    if truncated:
        raise CapExceeded("enumeration cap reached", partial=result)
    return result


def _prefix_completions(instance: Instance, prefix: Schedule) -> dict[int, Fraction]:
    out = {}
    s = instance.setup
    for row in prefix.machines:
        t = Fraction(0)
        for seg in row:
            t += s + seg.amount
            out[seg.job] = t
    return out


def _combine(prefix: Schedule, sol, m: int) -> Schedule:
    rows = [list(r) for r in prefix.machines]
    if sol is not None:
        tail = sol.schedule()
        for i in range(m):
            rows[i].extend(tail.machines[i])
    return Schedule(tuple(tuple(r) for r in rows))
