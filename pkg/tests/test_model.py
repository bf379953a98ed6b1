import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import instances, random_schedule
from splitsched.fixtures import FIG1_OBJECTIVES, fig1_schedules, intro_instance
from splitsched.model import (Instance, InvalidInstance, InvalidSchedule, Job, Schedule, Segment, SplitStructure,
                              as_rational, canonicalize, completion_order, evaluate, spt_order, validate)


def test_validate_accepts_well_formed():
    validate(Instance.from_times(2, 1, [2, 4]))


@pytest.mark.parametrize("m, s, times, message", [
    (0, 1, [2], "machines ≥ 1"),
    (2, -1, [2], "setup ≥ 0"),
    (2, 1, [], "at least one job"),
    (2, 1, [0], "p"),
])
def test_validate_rejects(m, s, times, message):
    with pytest.raises(InvalidInstance, match=message):
        Instance.from_times(m, s, times)


def test_validate_duplicate_ids_and_mixed_weights():
    with pytest.raises(InvalidInstance, match="duplicate"):
        Instance(1, 1, (Job(1, 1), Job(1, 2)))
    with pytest.raises(InvalidInstance, match="weight"):
        Instance(1, 1, (Job(1, 1, 2), Job(2, 2)))


def test_decimal_literals_are_exact():
    assert as_rational("0.7") == Fraction(7, 10)
    assert as_rational(0.7) == Fraction(7, 10)
    assert as_rational("95/3") == Fraction(95, 3)


@pytest.mark.parametrize("key", "abcd")
def test_worked_example_objectives(key):
    inst = intro_instance()
    assert evaluate(inst, fig1_schedules()[key]).total == FIG1_OBJECTIVES[key]


def test_single_machine_single_job():
    inst = Instance.from_times(1, 1, [4])
    assert evaluate(inst, Schedule(((Segment(1, 4),),))).total == 5


def test_fig1b_completion_of_split_job():
    rep = evaluate(intro_instance(), fig1_schedules()["b"])
    assert rep.completions[6] == 13
    assert rep.setup_count == 7


def test_evaluate_errors():
    inst = Instance.from_times(2, 1, [2, 4])
    with pytest.raises(InvalidSchedule, match="parts sum"):
        evaluate(inst, Schedule(((Segment(1, 2), Segment(2, 3)), ())))
    with pytest.raises(InvalidSchedule, match="unknown job"):
        evaluate(inst, Schedule(((Segment(1, 2), Segment(2, 4), Segment(9, 1)), ())))
    with pytest.raises(InvalidSchedule):
        Schedule(((Segment(1, 0),),))
    with pytest.raises(InvalidSchedule, match="at most one part"):
        Schedule(((Segment(1, 1), Segment(1, 1)),))


def test_weighted_evaluation():
    inst = Instance.from_times(1, 1, [1, 2], weights=[3, 1])
    sched = Schedule(((Segment(1, 1), Segment(2, 2)),))
    assert evaluate(inst, sched, weighted=True).total == 3 * 2 + 1 * 5


@pytest.mark.parametrize("times, expected", [
    ([5, 2, 4], [2, 3, 1]),
    ([3, 3], [1, 2]),
    ([1, 2, 3, 5, 11, 12], [1, 2, 3, 4, 5, 6]),
])
def test_spt_order(times, expected):
    assert spt_order(Instance.from_times(1, 1, times)) == expected


def test_canonicalize_fixed_point():
    inst = intro_instance()
    for sched in fig1_schedules().values():
        assert canonicalize(inst, sched) == sched


def test_canonicalize_two_job_example():
    one = Instance.from_times(1, 1, [1, 2])
    longest_first = Schedule(((Segment(2, 2), Segment(1, 1)),))
    spt = Schedule(((Segment(1, 1), Segment(2, 2)),))
    rep = evaluate(one, longest_first)
    assert (rep.completions[1], rep.completions[2]) == (5, 3)
    ref = evaluate(one, spt)
    assert (ref.completions[1], ref.completions[2]) == (2, 5)
    # matched by rank of completion, SPT is no later
    assert all(a <= b for a, b in zip(sorted(ref.completions.values()), sorted(rep.completions.values())))
    # a single machine with one part per job is already in completion order
    assert canonicalize(one, longest_first) == longest_first


def test_canonicalize_reorders_by_completion():
    inst = Instance.from_times(2, 1, [1, 4, 2])
    # job 2 starts first on machine 1 but only completes at 6 on machine 2; job 3 ends at 5
    sched = Schedule(((Segment(2, 1), Segment(3, 2)), (Segment(1, 1), Segment(2, 3))))
    before = evaluate(inst, sched)
    assert (before.completions[2], before.completions[3]) == (6, 5)
    after_sched = canonicalize(inst, sched)
    assert [seg.job for seg in after_sched.machines[0]] == [3, 2]
    after = evaluate(inst, after_sched)
    assert (after.completions[2], after.completions[3]) == (6, 3)
    assert _matched_never_later(inst, sched)


def _matched_never_later(inst, sched):
    before = evaluate(inst, sched)
    after = evaluate(inst, canonicalize(inst, sched))
    for j in completion_order(before):
        if after.completions[j] > before.completions[j]:
            return False
    return True


@given(instances(), st.integers(0, 10**6))
def test_canonicalize_never_delays_property(inst, seed):
    sched = random_schedule(random.Random(seed), inst)
    assert _matched_never_later(inst, sched)


@given(instances(), st.integers(0, 10**6))
def test_conservation_of_work(inst, seed):
    sched = random_schedule(random.Random(seed), inst)
    rep = evaluate(inst, sched)
    total = sum(l - sched.release(i) for i, l in enumerate(rep.machine_loads))
    assert total == inst.total_processing() + inst.setup * rep.setup_count


@given(instances(), st.integers(0, 10**6))
def test_evaluation_is_pure_and_idempotent(inst, seed):
    sched = random_schedule(random.Random(seed), inst)
    a, b = evaluate(inst, sched), evaluate(inst, sched)
    assert a == b
    # rebuild the schedule from its own derived times
    rows = []
    for row in sched.timed(inst.setup):
        rows.append(tuple(Segment(t.job, t.finish - t.start) for t in row))
    assert evaluate(inst, Schedule(tuple(rows))) == a


def test_structure_relabel_and_check():
    inst = Instance.from_times(3, 1, [1, 2])
    st_ = SplitStructure((1, 2), (frozenset({0}), frozenset({1, 2})))
    st_.check(inst)
    assert st_.relabel([2, 1, 0]).sets == (frozenset({2}), frozenset({0, 1}))
    with pytest.raises(Exception):
        SplitStructure((1, 2), (frozenset(), frozenset({1}))).check(inst)
    with pytest.raises(Exception):
        SplitStructure((1, 1), (frozenset({0}), frozenset({1}))).check(inst)
