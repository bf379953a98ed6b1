"""Constant-factor approximation for any number of machines, plus lower bounds.

Jobs are taken in SPT order; job ``j`` may use at most
``ℓ_j = min(⌈α p_j / s⌉, m)`` machines and is water-filled onto the ``ℓ_j``
least loaded ones. With ``α ≥ (√17 - 1)/4`` the result is within a factor
``2 + α`` of the optimum.

The default ``α* = (√17 - 1)/4`` is irrational and never materialised: every
comparison against it is squared into an integer inequality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .lp import water_fill
from .model import Instance, ObjectiveReport, Schedule, Segment, as_rational, evaluate, spt_order


def at_least_alpha_star(alpha: Fraction) -> bool:
    """``alpha ≥ (√17 - 1)/4``, decided exactly."""
    return alpha > 0 and (4 * alpha + 1) ** 2 >= 17


def within_factor(value: Fraction, bound: Fraction, alpha: Fraction | None = None) -> bool:
    """``value ≤ (2 + α)·bound`` exactly; ``alpha=None`` means ``α*``."""
    if bound <= 0:
        return value <= 0
    if alpha is not None:
        return value <= (2 + alpha) * bound
    # value/bound - 2 ≤ (√17 - 1)/4  <=>  4·value/bound - 7 ≤ √17
    q = 4 * Fraction(value) / bound - 7
    return q <= 0 or q * q <= 17


@dataclass(frozen=True)
class ApproxConfig:
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.alpha is not None:
            a = as_rational(self.alpha)
            if not at_least_alpha_star(a):
                raise ValueError("alpha must be at least (sqrt(17) - 1)/4")
            object.__setattr__(self, "alpha", a)

    @property
    def factor_text(self) -> str:
        return "2 + (sqrt(17)-1)/4" if self.alpha is None else str(2 + self.alpha)


def split_bound(config: ApproxConfig, instance: Instance, job_id: int) -> int:
    """Largest number of machines job ``job_id`` may use."""
    m = instance.machines
    s = instance.setup
    p = instance.p(job_id)
    if s == 0:
        return m
    if config.alpha is not None:
        return min(ceil(config.alpha * p / s), m)
    # smallest l with l·s ≥ α*·p  <=>  (4ls + p)^2 ≥ 17 p^2
    ell = 1
    while ell < m and (4 * ell * s + p) ** 2 < 17 * p * p:
        ell += 1
    return ell


@dataclass(frozen=True)
class ApproxResult:
    schedule: Schedule
    report: ObjectiveReport
    split_bounds: dict[int, int]

    @property
    def objective(self) -> Fraction:
        return self.report.total


def approx_schedule(config: ApproxConfig, instance: Instance) -> ApproxResult:
    m = instance.machines
    s = instance.setup
    avail = [Fraction(0)] * m
    rows: list[list[Segment]] = [[] for _ in range(m)]
    bounds = {}
    for j in spt_order(instance):
        ell = split_bound(config, instance, j)
        bounds[j] = ell
        chosen = sorted(range(m), key=lambda i: (avail[i], i))[:ell]
        level, parts = water_fill(avail, chosen, instance.p(j), s)
        for i, x in sorted(parts.items()):
            rows[i].append(Segment(j, x))
            avail[i] = level
    schedule = Schedule(tuple(tuple(r) for r in rows))
    return ApproxResult(schedule, evaluate(instance, schedule), bounds)


@dataclass(frozen=True)
class BoundsReport:
    lb_load: Fraction
    lb_setup: Fraction

    @property
    def best(self) -> Fraction:
        return max(self.lb_load, self.lb_setup)

    def ratio_of(self, objective: Fraction) -> Fraction:
        return Fraction(objective) / self.best


def lower_bounds(instance: Instance) -> BoundsReport:
    """Load bound ``Σ_j (s + Σ_{k≤j} p_k / m)`` and setup bound ``Σ_j ⌈j/m⌉ s``."""
    m = instance.machines
    s = instance.setup
    prefix = Fraction(0)
    load = Fraction(0)
    for j in spt_order(instance):
        prefix += instance.p(j)
        load += s + prefix / m
    setup = sum((-(-j // m) for j in range(1, instance.n + 1)), 0) * s
    return BoundsReport(load, Fraction(setup))
