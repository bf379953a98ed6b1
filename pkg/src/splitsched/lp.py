"""Exact timing of a fixed split structure.

Given the job order and the machine set of every job, the amounts ``x[j, i]``
and completion times are the solution of a small linear program: each job's
parts add up to its processing time, and on every machine of its set a job
cannot complete before the machine's release time plus all setups and parts
of jobs up to it in the order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .model import Instance, Schedule, Segment, SplitStructure, as_rational, evaluate, schedule_from_parts
from .simplex import dual_simplex


@dataclass(frozen=True)
class FixedStructureProgram:
    """LP data for one split structure.

    ``mandatory_setups`` charges a setup on every machine of a job's set even
    when the job gets nothing there; the reported objective is then the LP
    value. Otherwise zero parts are dropped from the realized schedule and
    the reported completions are re-derived from it (never worse).
    ``objective_jobs`` restricts the summed completion times; ``weighted``
    uses ``w_j C_j``. ``perturbation`` maps job ids to a direction ``d_j``: the
    LP is solved for ``p_j + δ·d_j`` with ``δ`` infinitesimal, which only breaks
    ties between optimal vertices, and ``lp_slope`` reports the value's
    coefficient of ``δ``.
    """

    instance: Instance
    structure: SplitStructure
    releases: tuple[Fraction, ...] | None = None
    mandatory_setups: bool = False
    objective_jobs: frozenset[int] | None = None
    weighted: bool = False
    perturbation: Mapping[int, Fraction] | None = None

    def __post_init__(self):
        self.structure.check(self.instance)
        if self.releases is not None:
            rel = tuple(as_rational(t) for t in self.releases)
            if len(rel) != self.instance.machines or any(t < 0 for t in rel):
                raise ValueError("need one non-negative release per machine")
            object.__setattr__(self, "releases", rel)
        if self.objective_jobs is not None:
            object.__setattr__(self, "objective_jobs", frozenset(self.objective_jobs))
        if self.weighted and not self.instance.weighted:
            raise ValueError("weighted objective needs job weights")

    def release(self, i: int) -> Fraction:
        return Fraction(0) if self.releases is None else self.releases[i]

    def cost(self, job_id: int) -> Fraction:
        if self.objective_jobs is not None and job_id not in self.objective_jobs:
            return Fraction(0)
        return self.instance.weight(job_id) if self.weighted else Fraction(1)


@dataclass(frozen=True)
class LpSolution:
    amounts: dict[tuple[int, int], Fraction]
    completions: dict[int, Fraction]
    objective: Fraction
    lp_objective: Fraction
    lp_slope: Fraction
    status: str
    program: FixedStructureProgram

    def schedule(self) -> Schedule:
        """The realized schedule (zero parts dropped)."""
        prog = self.program
        return schedule_from_parts(prog.instance.machines, prog.structure.order, self.amounts, prog.releases)

    def support(self) -> SplitStructure:
        """The structure actually used: machines with a positive part."""
        order = self.program.structure.order
        sets = []
        for j, ms in zip(order, self.program.structure.sets):
            sets.append(frozenset(i for i in ms if self.amounts[(j, i)] > 0))
        return SplitStructure(order, tuple(sets))


def _loads_and_completions(prog: FixedStructureProgram, amounts) -> dict[int, Fraction]:
    s = prog.instance.setup
    load = [prog.release(i) for i in range(prog.instance.machines)]
    completions = {}
    for j, ms in zip(prog.structure.order, prog.structure.sets):
        for i in ms:
            load[i] += s + amounts[(j, i)]
        completions[j] = max(load[i] for i in ms)
    return completions


def solve_fixed_structure(program: FixedStructureProgram) -> LpSolution:
    """Optimal amounts and completion times for a fixed structure, exactly."""
    inst = program.instance
    order, sets = program.structure.order, program.structure.sets
    n = len(order)
    m = inst.machines
    s = inst.setup
    p = [inst.p(j) for j in order]
    releases = [program.release(i) for i in range(m)]

    scale = lcm(s.denominator, *(v.denominator for v in p), *(t.denominator for t in releases))
    S = int(s * scale)
    P = [int(v * scale) for v in p]
    T = [int(t * scale) for t in releases]
    costs = [program.cost(j) for j in order]
    cscale = lcm(*(c.denominator for c in costs))
    cost_int = [int(c * cscale) for c in costs]

    # structural variables: C_0..C_{n-1}, then x for jobs with |M_j| >= 2
    xvar: dict[tuple[int, int], int] = {}
    nvar = n
    for k, ms in enumerate(sets):
        if len(ms) > 1:
            for i in sorted(ms):
                xvar[(k, i)] = nvar
                nvar += 1

    a: list[list[int]] = []
    b: list[int] = []
    const = list(T)
    active: list[list[int]] = [[] for _ in range(m)]
    for k, ms in enumerate(sets):
        split = len(ms) > 1
        for i in sorted(ms):
            const[i] += S
            if split:
                active[i].append(xvar[(k, i)])
            else:
                const[i] += P[k]
            row = [0] * nvar
            for v in active[i]:
                row[v] = 1
            row[k] = -1
            a.append(row)
            b.append(-const[i])
        if split:
            row = [0] * nvar
            for i in ms:
                row[xvar[(k, i)]] = 1
            a.append(row)
            b.append(P[k])
            a.append([-v for v in row])
            b.append(-P[k])

    cvec = cost_int + [0] * (nvar - n)
    if program.perturbation is None:
        (lp_value,), values = dual_simplex(a, b, cvec)
        slope = Fraction(0)
    else:
        direction = _direction_rhs(program, sets)
        dscale = lcm(*(v.denominator for v in direction))
        (lp_value, slope), values = dual_simplex(a, b, cvec, [[int(v * dscale) for v in direction]])
        slope = slope / dscale / cscale

    amounts: dict[tuple[int, int], Fraction] = {}
    for k, (j, ms) in enumerate(zip(order, sets)):
        if len(ms) == 1:
            (i,) = ms
            amounts[(j, i)] = p[k]
        else:
            for i in ms:
                amounts[(j, i)] = values[xvar[(k, i)]] / scale
    lp_objective = lp_value / scale / cscale

    if program.mandatory_setups:
        completions = _loads_and_completions(program, amounts)
    else:
        sched = schedule_from_parts(m, order, amounts, program.releases)
        completions = _realized_completions(inst, sched)
    objective = sum((program.cost(j) * completions[j] for j in order), Fraction(0))
    return LpSolution(amounts, completions, objective, lp_objective, slope, "optimal", program)


def _direction_rhs(program: FixedStructureProgram, sets) -> list[Fraction]:
    # must mirror the row layout of solve_fixed_structure
    d = [Fraction(program.perturbation.get(j, 0)) for j in program.structure.order]
    m = program.instance.machines
    acc = [Fraction(0)] * m
    out = []
    for k, ms in enumerate(sets):
        split = len(ms) > 1
        for i in sorted(ms):
            if not split:
                acc[i] += d[k]
            out.append(-acc[i])
        if split:
            out.append(d[k])
            out.append(-d[k])
    return out


def _realized_completions(inst: Instance, sched: Schedule) -> dict[int, Fraction]:
    completions: dict[int, Fraction] = {}
    s = inst.setup
    for i, row in enumerate(sched.machines):
        t = sched.release(i)
        for seg in row:
            t += s + seg.amount
            if completions.get(seg.job, -1) < t:
                completions[seg.job] = t
    return completions


def solve(instance: Instance, structure: SplitStructure, releases: Sequence | None = None, **kwargs) -> LpSolution:
    """Shorthand for ``solve_fixed_structure(FixedStructureProgram(...))``."""
    rel = None if releases is None else tuple(releases)
    return solve_fixed_structure(FixedStructureProgram(instance, structure, rel, **kwargs))


def water_fill(avail: Sequence[Fraction], machines: Iterable[int], amount: Fraction, setup: Fraction):
    """Balance ``amount`` over ``machines`` so all used ones finish together.

    A machine is used only if it is free before the common finish level minus
    the setup. Returns ``(level, {machine: part})`` with positive parts only.
    """
    cand = sorted(machines, key=lambda i: (avail[i], i))
    if not cand:
        raise ValueError("no machines to fill")
    used = []
    level = None
    total = Fraction(0)
    for idx, i in enumerate(cand):
        used.append(i)
        total += avail[i] + setup
        level = (amount + total) / len(used)
        nxt = cand[idx + 1] if idx + 1 < len(cand) else None
        if nxt is None or avail[nxt] + setup >= level:
            break
    return level, {i: level - avail[i] - setup for i in used}


def balanced_forward_timing(instance: Instance, structure: SplitStructure,
                            releases: Sequence | None = None) -> Schedule:
    """Greedy timing: each job in order finishes as early as possible on its set.

    Feasible for the fixed-structure LP, so never better than its optimum.
    """
    structure.check(instance)
    m = instance.machines
    avail = [Fraction(0) if releases is None else as_rational(releases[i]) for i in range(m)]
    rows: list[list[Segment]] = [[] for _ in range(m)]
    for j, ms in zip(structure.order, structure.sets):
        level, parts = water_fill(avail, ms, instance.p(j), instance.setup)
        for i, x in sorted(parts.items()):
            rows[i].append(Segment(j, x))
            avail[i] = level
    rel = None if releases is None else tuple(as_rational(t) for t in releases)
    return Schedule(tuple(tuple(r) for r in rows), rel)


def objective_of(instance: Instance, structure: SplitStructure, **kwargs) -> Fraction:
    return solve(instance, structure, **kwargs).objective


__all__ = [
    "FixedStructureProgram",
    "LpSolution",
    "solve_fixed_structure",
    "solve",
    "balanced_forward_timing",
    "water_fill",
    "objective_of",
    "evaluate",
]
