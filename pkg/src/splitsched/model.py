"""Core data types: instances, split structures, schedules and their evaluation.

All time quantities are :class:`fractions.Fraction` values. Machines are
indexed from 0 internally; job ids are whatever integers the instance uses.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

Rational = Fraction


class InvalidInstance(ValueError):
    """Raised when an instance violates one of its invariants."""


class InvalidSchedule(ValueError):
    """Raised when a schedule is not feasible for its instance."""


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings may be integers, decimals (``"0.7"``) or ``"num/den"``. Floats are
    converted through their shortest repr so that ``0.7`` becomes ``7/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not time values")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class Job:
    id: int
    p: Fraction
    w: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        if self.w is not None:
            object.__setattr__(self, "w", as_rational(self.w))


@dataclass(frozen=True)
class Instance:
    """``machines`` identical machines, uniform setup time ``setup`` and jobs.

    Construction validates the instance and raises :class:`InvalidInstance`
    on the first violated invariant.
    """

    machines: int
    setup: Fraction
    jobs: tuple[Job, ...]

    def __post_init__(self):
        object.__setattr__(self, "setup", as_rational(self.setup))
        jobs = tuple(j if isinstance(j, Job) else Job(*j) for j in self.jobs)
        object.__setattr__(self, "jobs", jobs)
        validate(self)
        object.__setattr__(self, "_by_id", {j.id: j for j in jobs})

    @classmethod
    def from_times(cls, machines: int, setup, times: Iterable, weights: Iterable | None = None) -> "Instance":
        """Build an instance with job ids 1..n from a list of processing times."""
        times = list(times)
        if weights is None:
            jobs = tuple(Job(k + 1, p) for k, p in enumerate(times))
        else:
            weights = list(weights)
            if len(weights) != len(times):
                raise InvalidInstance("one weight per job required")
            jobs = tuple(Job(k + 1, p, w) for k, (p, w) in enumerate(zip(times, weights)))
        return cls(machines, setup, jobs)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def weighted(self) -> bool:
        return self.jobs[0].w is not None

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(j.id for j in self.jobs)

    def job(self, job_id: int) -> Job:
        try:
            return self._by_id[job_id]
        except KeyError:
            raise KeyError(f"unknown job id {job_id}") from None

    def p(self, job_id: int) -> Fraction:
        return self.job(job_id).p

    def weight(self, job_id: int) -> Fraction:
        w = self.job(job_id).w
        return Fraction(1) if w is None else w

    def total_processing(self) -> Fraction:
        return sum((j.p for j in self.jobs), Fraction(0))

    def with_machines(self, machines: int) -> "Instance":
        return Instance(machines, self.setup, self.jobs)


def validate(instance: Instance) -> None:
    """Check the instance invariants, raising :class:`InvalidInstance`."""
    if not isinstance(instance.machines, int) or isinstance(instance.machines, bool) or instance.machines < 1:
        raise InvalidInstance("machines ≥ 1")
    if instance.setup < 0:
        raise InvalidInstance("setup ≥ 0")
    if len(instance.jobs) < 1:
        raise InvalidInstance("at least one job required")
    seen = set()
    for job in instance.jobs:
        if job.p <= 0:
            raise InvalidInstance(f"job {job.id}: processing time must be > 0")
        if job.id in seen:
            raise InvalidInstance(f"duplicate job id {job.id}")
        seen.add(job.id)
    has_w = [j.w is not None for j in instance.jobs]
    if any(has_w) and not all(has_w):
        raise InvalidInstance("either all jobs carry weights or none do")
    for job in instance.jobs:
        if job.w is not None and job.w <= 0:
            raise InvalidInstance(f"job {job.id}: weight must be > 0")


def spt_order(instance: Instance) -> list[int]:
    """Job ids by non-decreasing processing time, ties by ascending id."""
    return [j.id for j in sorted(instance.jobs, key=lambda j: (j.p, j.id))]


@dataclass(frozen=True)
class SplitStructure:
    """A job permutation plus, per position, the set of machines used.

    ``sets[k]`` is the machine set of job ``order[k]``.
    """

    order: tuple[int, ...]
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if len(self.order) != len(self.sets):
            raise ValueError("one machine set per job required")
        if len(set(self.order)) != len(self.order):
            raise ValueError("order must not repeat jobs")
        if any(not s for s in self.sets):
            raise ValueError("machine sets must be non-empty")

    @classmethod
    def from_mapping(cls, order: Sequence[int], machine_sets: Mapping[int, Iterable[int]]) -> "SplitStructure":
        return cls(tuple(order), tuple(frozenset(machine_sets[j]) for j in order))

    def machine_set(self, job_id: int) -> frozenset[int]:
        return self.sets[self.order.index(job_id)]

    def as_dict(self) -> dict[int, frozenset[int]]:
        return dict(zip(self.order, self.sets))

    def check(self, instance: Instance) -> None:
        if sorted(self.order) != sorted(instance.ids):
            raise ValueError("structure order is not a permutation of the instance's jobs")
        for s in self.sets:
            if not s <= set(range(instance.machines)):
                raise ValueError(f"machine set {sorted(s)} outside 0..{instance.machines - 1}")

    def degree(self, job_id: int) -> int:
        """``d`` for a d-job."""
        return len(self.machine_set(job_id))

    def relabel(self, perm: Sequence[int]) -> "SplitStructure":
        """Apply the machine relabeling ``i -> perm[i]``."""
        return SplitStructure(self.order, tuple(frozenset(perm[i] for i in s) for s in self.sets))


@dataclass(frozen=True)
class Segment:
    job: int
    amount: Fraction

    def __post_init__(self):
        object.__setattr__(self, "amount", as_rational(self.amount))


@dataclass(frozen=True)
class TimedSegment:
    job: int
    amount: Fraction
    setup_start: Fraction
    start: Fraction
    finish: Fraction


@dataclass(frozen=True)
class Schedule:
    """Per-machine ordered job parts; each part is preceded by one setup.

    Times are derived left to right with no idle time, starting at the
    machine's release time.
    """

    machines: tuple[tuple[Segment, ...], ...]
    releases: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        rows = tuple(tuple(seg if isinstance(seg, Segment) else Segment(*seg) for seg in row) for row in self.machines)
        object.__setattr__(self, "machines", rows)
        if self.releases is not None:
            rel = tuple(as_rational(t) for t in self.releases)
            if len(rel) != len(rows):
                raise InvalidSchedule("one release time per machine required")
            if any(t < 0 for t in rel):
                raise InvalidSchedule("release times must be ≥ 0")
            object.__setattr__(self, "releases", rel)
        for row in rows:
            for seg in row:
                if seg.amount <= 0:
                    raise InvalidSchedule(f"job {seg.job}: zero or negative part")
            ids = [seg.job for seg in row]
            if len(ids) != len(set(ids)):
                raise InvalidSchedule("a machine holds at most one part per job")

    @property
    def m(self) -> int:
        return len(self.machines)

    def release(self, i: int) -> Fraction:
        return Fraction(0) if self.releases is None else self.releases[i]

    def timed(self, setup: Fraction) -> list[list[TimedSegment]]:
        out = []
        for i, row in enumerate(self.machines):
            t = self.release(i)
            timed_row = []
            for seg in row:
                start = t + setup
                finish = start + seg.amount
                timed_row.append(TimedSegment(seg.job, seg.amount, t, start, finish))
                t = finish
            out.append(timed_row)
        return out

    def machine_sets(self) -> dict[int, frozenset[int]]:
        sets: dict[int, set[int]] = {}
        for i, row in enumerate(self.machines):
            for seg in row:
                sets.setdefault(seg.job, set()).add(i)
        return {j: frozenset(s) for j, s in sets.items()}

    def setup_count(self) -> int:
        return sum(len(row) for row in self.machines)


@dataclass(frozen=True)
class ObjectiveReport:
    completions: dict[int, Fraction]
    total: Fraction
    machine_loads: tuple[Fraction, ...]
    setup_count: int
    weighted: bool = False

    def completion_list(self, order: Sequence[int]) -> list[Fraction]:
        return [self.completions[j] for j in order]


def check_feasible(instance: Instance, schedule: Schedule) -> None:
    if schedule.m != instance.machines:
        raise InvalidSchedule(f"schedule has {schedule.m} machines, instance has {instance.machines}")
    done: dict[int, Fraction] = {}
    for row in schedule.machines:
        for seg in row:
            if seg.job not in instance._by_id:
                raise InvalidSchedule(f"unknown job id {seg.job}")
            done[seg.job] = done.get(seg.job, Fraction(0)) + seg.amount
    for job in instance.jobs:
        got = done.get(job.id, Fraction(0))
        if got != job.p:
            raise InvalidSchedule(f"job {job.id}: parts sum to {got}, expected {job.p}")


def evaluate(instance: Instance, schedule: Schedule, weighted: bool = False) -> ObjectiveReport:
    """Exact completion times, objective, machine loads and setup count."""
    check_feasible(instance, schedule)
    if weighted and not instance.weighted:
        raise InvalidInstance("weighted evaluation needs job weights")
    s = instance.setup
    completions: dict[int, Fraction] = {}
    loads = []
    for i, row in enumerate(schedule.machines):
        t = schedule.release(i)
        for seg in row:
            t += s + seg.amount
            if completions.get(seg.job, -1) < t:
                completions[seg.job] = t
        loads.append(t)
    if weighted:
        total = sum((instance.weight(j) * c for j, c in completions.items()), Fraction(0))
    else:
        total = sum(completions.values(), Fraction(0))
    ordered = {j: completions[j] for j in instance.ids}
    return ObjectiveReport(ordered, total, tuple(loads), schedule.setup_count(), weighted)


def canonicalize(instance: Instance, schedule: Schedule) -> Schedule:
    """Reorder the parts on every machine by original completion time.

    Ties are broken by job id. No job finishes later afterwards.
    """
    report = evaluate(instance, schedule)
    rank = {j: (c, j) for j, c in report.completions.items()}
    rows = tuple(tuple(sorted(row, key=lambda seg: rank[seg.job])) for row in schedule.machines)
    return Schedule(rows, schedule.releases)


def completion_order(report: ObjectiveReport) -> list[int]:
    return sorted(report.completions, key=lambda j: (report.completions[j], j))


def schedule_from_parts(m: int, order: Sequence[int], parts: Mapping[tuple[int, int], Fraction],
                        releases: Sequence[Fraction] | None = None) -> Schedule:
    """Lay out ``parts[(job, machine)]`` on each machine following ``order``.

    Parts with zero amount are dropped (no setup is spent on them).
    """
    rows = [[] for _ in range(m)]
    for j in order:
        for i in range(m):
            x = parts.get((j, i), 0)
            if x:
                rows[i].append(Segment(j, x))
    return Schedule(tuple(tuple(r) for r in rows), None if releases is None else tuple(releases))


def structure_of(instance: Instance, schedule: Schedule) -> SplitStructure:
    """Split structure of a schedule: completion order and machine sets."""
    report = evaluate(instance, schedule)
    order = completion_order(report)
    sets = schedule.machine_sets()
    return SplitStructure(tuple(order), tuple(sets[j] for j in order))


def is_balanced(instance: Instance, schedule: Schedule, job_id: int) -> bool:
    """True when every part of ``job_id`` finishes at the same instant."""
    finishes = {seg.finish for row in schedule.timed(instance.setup) for seg in row if seg.job == job_id}
    return len(finishes) <= 1
