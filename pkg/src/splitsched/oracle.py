"""Brute-force optimum over split structures, each timed exactly by the LP.

Jobs follow SPT order (ties by id unless asked otherwise) and every job may
use any non-empty machine set. Structures that only differ by a machine
relabeling have the same value, so only one representative per orbit is
solved; the count of enumerated structures still covers the whole space.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lp import LpSolution, solve
from .model import Instance, SplitStructure, spt_order

ALL = "all"
DEFAULT_CAP = 2_000_000


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def set_to_mask(machines: Iterable[int]) -> int:
    return sum(1 << i for i in machines)


@dataclass(frozen=True)
class OracleQuery:
    """``constraints`` maps job id to a fixed machine set or ``"all"``.

    ``permutations`` is ``"spt"`` (ties by id), ``"spt-ties"`` (every order
    consistent with SPT) or ``"all"``. ``perturb`` (default: only if some
    processing times tie) filters tied optima by infinitesimal perturbation.
    """

    instance: Instance
    constraints: Mapping[int, object] = field(default_factory=dict)
    permutations: str = "spt"
    weighted: bool = False
    cap: int = DEFAULT_CAP
    workers: int = 1
    perturb: bool | None = None

    def fixed_masks(self) -> dict[int, int]:
        m = self.instance.machines
        out = {}
        for j, c in self.constraints.items():
            self.instance.job(j)
            if c == ALL:
                out[j] = (1 << m) - 1
            else:
                ms = frozenset(c)
                if not ms or not ms <= set(range(m)):
                    raise ValueError(f"job {j}: bad machine set {sorted(ms)}")
                out[j] = set_to_mask(ms)
        return out

    def orders(self) -> list[tuple[int, ...]]:
        inst = self.instance
        if self.permutations == "spt":
            return [tuple(spt_order(inst))]
        if self.permutations == "all":
            return [tuple(o) for o in itertools.permutations(spt_order(inst))]
        if self.permutations == "spt-ties":
            groups = [list(g) for _, g in itertools.groupby(spt_order(inst), key=inst.p)]
            return [tuple(itertools.chain.from_iterable(c))
                    for c in itertools.product(*(itertools.permutations(g) for g in groups))]
        raise ValueError(f"unknown permutation mode {self.permutations!r}")


@dataclass(frozen=True)
class OracleResult:
    optimum: Fraction
    structures: tuple[SplitStructure, ...]
    enumerated: int
    lp_solves: int
    best: LpSolution

    def masks(self) -> list[tuple[int, ...]]:
        return [tuple(set_to_mask(s) for s in st.sets) for st in self.structures]


def _perm_tables(m: int, perms) -> list[list[int]]:
    tables = []
    for perm in perms:
        tables.append([sum(1 << perm[i] for i in range(m) if mask >> i & 1) for mask in range(1 << m)])
    return tables


def canonical_masks(masks: Sequence[int], tables) -> tuple[int, ...]:
    return min(tuple(t[v] for v in masks) for t in tables)


def _sweep(task):
    inst, order, choices, first_options, tables_all, tables_stab, weighted, perturb = task
    direction = {j: Fraction(k + 1) for k, j in enumerate(order)} if perturb else None
    best = None          # (value, slope)
    best_sol = None
    best_key = None
    optimal: set = set()
    enumerated = solves = 0
    rest = choices[1:]
    for first in first_options:
        for tail in itertools.product(*rest):
            masks = (first,) + tail
            enumerated += 1
            if canonical_masks(masks, tables_stab) != masks:
                continue
            solves += 1
            st = SplitStructure(order, tuple(mask_to_set(v) for v in masks))
            sol = solve(inst, st, weighted=weighted, perturbation=direction)
            val = (sol.lp_objective, sol.lp_slope)
            if best is None or val < best:
                best, best_sol, best_key = val, sol, masks
                optimal = set()
            if val == best:
                sup = tuple(set_to_mask(v) for v in sol.support().sets)
                optimal.add(canonical_masks(sup, tables_all))
    return best, best_key, best_sol, optimal, enumerated, solves


def oracle_optimum(query: OracleQuery) -> OracleResult:
    """Exact optimum over all structures consistent with the query.

    When processing times tie, optimal structures are further filtered as if
    the times were perturbed by an infinitesimal amount increasing with SPT
    rank; the optimum itself is always the unperturbed value.
    """
    inst = query.instance
    m = inst.machines
    full = (1 << m) - 1
    fixed = query.fixed_masks()
    orders = query.orders()
    free = sum(1 for j in inst.ids if j not in fixed)
    total = len(orders) * full ** free
    if total > query.cap:
        raise CapExceeded(f"{total} structures exceed the cap of {query.cap}")
    perturb = query.perturb
    if perturb is None:
        perturb = len({j.p for j in inst.jobs}) < inst.n

    perms = list(itertools.permutations(range(m)))
    tables_all = _perm_tables(m, perms)
    # relabelings that keep every fixed set in place
    stab = [p for p, t in zip(perms, tables_all) if all(t[v] == v for v in fixed.values())]
    tables_stab = _perm_tables(m, stab)

    tasks = []
    for order in orders:
        choices = [(fixed[j],) if j in fixed else tuple(range(1, full + 1)) for j in order]
        splits = [(c,) for c in choices[0]] if query.workers > 1 else [choices[0]]
        for first in splits:
            tasks.append((inst, order, choices, first, tables_all, tables_stab, query.weighted, perturb))

    if query.workers > 1:
        with ProcessPoolExecutor(max_workers=query.workers) as pool:
            parts = list(pool.map(_sweep, tasks))
    else:
        parts = [_sweep(t) for t in tasks]

    best = None
    best_sol = None
    best_rank = None
    enumerated = solves = 0
    for val, key, sol, _, cnt, nsolve in parts:
        enumerated += cnt
        solves += nsolve
        if val is None:
            continue
        rank = (orders.index(sol.program.structure.order), key)
        if best is None or val < best or (val == best and rank < best_rank):
            best, best_sol, best_rank = val, sol, rank
    classes = set()
    for val, _, sol, opt, *_ in parts:
        if val == best:
            order = sol.program.structure.order
            classes |= {(order, masks) for masks in opt}
    structures = tuple(SplitStructure(order, tuple(mask_to_set(v) for v in masks))
                       for order, masks in sorted(classes))
    return OracleResult(best[0], structures, enumerated, solves, best_sol)


def suffix_swaps(instance: Instance, structure: SplitStructure) -> set[SplitStructure]:
    """Structures reached by swapping two machines' suffixes at a common finish time.

    The structure is timed by the LP; whenever two machines both finish a part
    at the same instant, exchanging everything after it keeps every
    completion time.
    """
    sched = solve(instance, structure).schedule()
    timed = sched.timed(instance.setup)
    out = set()
    m = instance.machines
    for a, b in itertools.combinations(range(m), 2):
        common = {seg.finish for seg in timed[a]} & {seg.finish for seg in timed[b]}
        for t in common:
            sets = {j: set(ms) for j, ms in zip(structure.order, structure.sets)}
            for src in (a, b):
                for seg in timed[src]:
                    if seg.start >= t:
                        sets[seg.job].discard(src)
            for src, dst in ((a, b), (b, a)):
                for seg in timed[src]:
                    if seg.start >= t:
                        sets[seg.job].add(dst)
            out.add(SplitStructure(structure.order, tuple(frozenset(sets[j]) for j in structure.order)))
    return out


def fold_equivalent(instance: Instance, structures: Sequence[SplitStructure]) -> list[list[SplitStructure]]:
    """Group structures equal up to relabeling and repeated suffix swaps.

    Returns groups (each sorted, list sorted by first member); only members of
    ``structures`` appear in the output.
    """
    m = instance.machines
    tables = _perm_tables(m, list(itertools.permutations(range(m))))

    def key(st):
        return st.order, canonical_masks([set_to_mask(v) for v in st.sets], tables)

    members = {key(st): st for st in structures}
    parent = {k: k for k in members}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, st in members.items():
        for other in suffix_swaps(instance, st):
            ok = key(other)
            if ok in members:
                parent[find(ok)] = find(k)
    groups: dict = {}
    for k in sorted(members):
        groups.setdefault(find(k), []).append(members[k])
    return sorted(groups.values(), key=lambda g: key(g[0]))


def list_optimal_structures(query: OracleQuery) -> tuple[SplitStructure, ...]:
    """Optimal structures, one representative per machine-relabeling class."""
    return oracle_optimum(query).structures


def brute_force_value(instance: Instance, weighted: bool = False, permutations: str = "spt") -> Fraction:
    return oracle_optimum(OracleQuery(instance, permutations=permutations, weighted=weighted)).optimum
