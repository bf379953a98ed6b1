"""Weighted instances from 3-Partition and Subset Sum.

With ``w_j = p_j + s`` the weighted objective of an unsplit schedule depends
only on the machine loads: ``½ Σ_i l_i² + ½ Σ_j (s + p_j)²``, whatever the
order on each machine. Balanced loads are therefore optimal among unsplit
schedules, and for large ``s`` splitting never pays.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .model import Instance, InvalidInstance, Job, as_rational


@dataclass(frozen=True)
class ThreePartitionInput:
    numbers: tuple[int, ...]

    def __post_init__(self):
        nums = tuple(int(a) for a in self.numbers)
        object.__setattr__(self, "numbers", nums)
        if not nums or len(nums) % 3:
            raise InvalidInstance("3-Partition needs 3n numbers")
        if any(a <= 0 for a in nums):
            raise InvalidInstance("numbers must be positive")
        if sum(nums) % self.n:
            raise InvalidInstance("sum must be divisible by n")

    @property
    def n(self) -> int:
        return len(self.numbers) // 3

    @property
    def target(self) -> int:
        return sum(self.numbers) // self.n


@dataclass(frozen=True)
class SubsetSumInput:
    numbers: tuple[int, ...]

    def __post_init__(self):
        nums = tuple(int(a) for a in self.numbers)
        object.__setattr__(self, "numbers", nums)
        if not nums or len(nums) % 2:
            raise InvalidInstance("Subset Sum needs 2n numbers")
        if any(a <= 0 for a in nums):
            raise InvalidInstance("numbers must be positive")
        if sum(nums) % 2:
            raise InvalidInstance("total must be even")

    @property
    def n(self) -> int:
        return len(self.numbers) // 2

    @property
    def target(self) -> int:
        return sum(self.numbers) // 2


def _weighted_jobs(numbers, s: Fraction) -> tuple[Job, ...]:
    return tuple(Job(k + 1, Fraction(a), Fraction(a) + s) for k, a in enumerate(numbers))


def build_3partition_instance(data: ThreePartitionInput, setup) -> Instance:
    s = as_rational(setup)
    if s <= 0:
        raise InvalidInstance("setup must be > 0")
    return Instance(data.n, s, _weighted_jobs(data.numbers, s))


def build_subsetsum_instance(data: SubsetSumInput, setup) -> Instance:
    s = as_rational(setup)
    if s <= 0:
        raise InvalidInstance("setup must be > 0")
    return Instance(2, s, _weighted_jobs(data.numbers, s))


def unsplit_weighted_value(instance: Instance, assignment: Mapping[int, int]) -> Fraction:
    """Closed-form weighted objective of an unsplit assignment ``job -> machine``.

    Requires ``w_j = p_j + s`` for every job.
    """
    s = instance.setup
    for job in instance.jobs:
        if job.w is None or job.w != job.p + s:
            raise InvalidInstance(f"job {job.id}: weight must equal p + s")
    if set(assignment) != set(instance.ids):
        raise ValueError("assignment must cover every job exactly once")
    loads = [Fraction(0)] * instance.machines
    for j, i in assignment.items():
        if not 0 <= i < instance.machines:
            raise ValueError(f"job {j}: machine {i} out of range")
        loads[i] += s + instance.p(j)
    squares = sum((l * l for l in loads), Fraction(0))
    own = sum(((s + job.p) ** 2 for job in instance.jobs), Fraction(0))
    return (squares + own) / 2


def balanced_value(data: ThreePartitionInput, setup) -> Fraction:
    """Value of a perfect 3-partition: ``½ n (3s + A)² + ½ Σ (s + a_j)²``."""
    s = as_rational(setup)
    own = sum(((s + a) ** 2 for a in data.numbers), Fraction(0))
    return (data.n * (3 * s + data.target) ** 2 + own) / 2
