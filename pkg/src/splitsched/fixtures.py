"""Worked instances with known answers, and the JSON files shipped for them.

* ``intro``: 3 machines, ``s = 1``, ``p = (1, 2, 3, 5, 11, 12)``. Four
  schedules with totals 49, 45, 46 and 40 (the last one optimal).
* ``fig2``: 3 machines, ``s = 0.7``, one short, four middle and five long jobs.
  With the long jobs on all machines there are four optimal structures.
* ``fig3``: the same without one long job; the optimum is then unique.

Machines are 0-based here; job ids are 1-based.
"""
from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path

from .io import emit_instance, emit_schedule, parse_instance, parse_schedule
from .lp import solve
from .model import Instance, Schedule, Segment, SplitStructure, spt_order
from .oracle import ALL


def intro_instance() -> Instance:
    return Instance.from_times(3, 1, [1, 2, 3, 5, 11, 12])


def _rows(*rows) -> Schedule:
    return Schedule(tuple(tuple(Segment(j, Fraction(x)) for j, x in row) for row in rows))


def fig1_schedules() -> dict[str, Schedule]:
    return {
        # round robin, nothing split
        "a": _rows([(1, 1), (4, 5)], [(2, 2), (5, 11)], [(3, 3), (6, 12)]),
        # job 6 shared by machines 1 and 3, both parts ending at 13
        "b": _rows([(1, 1), (4, 5), (6, 4)], [(2, 2), (5, 11)], [(3, 3), (6, 8)]),
        # job 2 split over machines 2 and 3, job 6 over machines 1 and 3
        "c": _rows([(1, 1), (4, 5), (6, 5)], [(2, 1), (5, 11)], [(2, 1), (3, 3), (6, 7)]),
        # optimal
        "d": _rows([(1, 1), (4, 3), (5, 3), (6, 4)], [(2, 2), (4, 2), (5, 3), (6, 4)],
                   [(3, 3), (5, 5), (6, 4)]),
    }


FIG1_OBJECTIVES = {"a": 49, "b": 45, "c": 46, "d": 40}


def fig2_instance() -> Instance:
    return Instance.from_times(3, "0.7", [3, 10, 10, 10, 10, 50, 50, 50, 50, 50])


def fig3_instance() -> Instance:
    return Instance.from_times(3, "0.7", [3, 10, 10, 10, 10, 50, 50, 50, 50])


def long_jobs_everywhere(instance: Instance) -> dict[int, str]:
    """Constraint putting every job with ``p = 50`` on all machines."""
    return {j.id: ALL for j in instance.jobs if j.p == 50}


def _structure(instance: Instance, head) -> SplitStructure:
    m = instance.machines
    order = spt_order(instance)
    sets = [frozenset(ms) for ms in head] + [frozenset(range(m))] * (len(order) - len(head))
    return SplitStructure(tuple(order), tuple(sets))


def fig2_structures() -> dict[str, SplitStructure]:
    inst = fig2_instance()
    return {
        "a": _structure(inst, [{0}, {1, 2}, {0}, {1, 2}, {1, 2}]),
        "b": _structure(inst, [{0}, {1, 2}, {1, 2}, {0}, {1, 2}]),
        "c": _structure(inst, [{0}, {1, 2}, {1}, {0, 2}, {0, 2}]),
        "d": _structure(inst, [{0}, {1, 2}, {0, 2}, {1}, {0, 2}]),
    }


FIG2_OBJECTIVE = Fraction(1969, 5)


def fig3_structure() -> SplitStructure:
    return _structure(fig3_instance(), [{0}, {1, 2}, {0, 1}, {0, 2}, {0, 1, 2}])


FIG3_OBJECTIVE = Fraction(5811, 20)


def fixture_files() -> dict[str, str]:
    """File name -> exact text of every shipped fixture."""
    out = {}
    intro = intro_instance()
    out["intro.json"] = emit_instance(intro)
    for key, sched in fig1_schedules().items():
        out[f"fig1{key}.sched.json"] = emit_schedule(intro, sched)
    f2 = fig2_instance()
    out["fig2.json"] = emit_instance(f2)
    for key, st in fig2_structures().items():
        out[f"fig2{key}.sched.json"] = emit_schedule(f2, solve(f2, st).schedule())
    f3 = fig3_instance()
    out["fig3.json"] = emit_instance(f3)
    out["fig3.sched.json"] = emit_schedule(f3, solve(f3, fig3_structure()).schedule())
    return out


def write_fixture_files(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in fixture_files().items():
        path = directory / name
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths


def shipped_text(name: str) -> str:
    return resources.files("splitsched").joinpath("data", name).read_text(encoding="utf-8")


def load_shipped(instance_name: str, schedule_name: str | None = None):
    inst = parse_instance(shipped_text(instance_name))
    if schedule_name is None:
        return inst
    return inst, parse_schedule(shipped_text(schedule_name), inst)
