from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from splitsched.model import Instance, Job, Schedule, Segment

settings.register_profile("repo", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def rationals(lo=0, hi=10, max_den=4, positive=False):
    """Strategy for Fractions in [lo, hi] with bounded denominators."""
    def build(den):
        a = lo * den + (1 if positive and lo == 0 else 0)
        return st.integers(a, hi * den).map(lambda k: Fraction(k, den))
    return st.integers(1, max_den).flatmap(build)


@st.composite
def instances(draw, m_max=3, n_max=5, s_zero=True, weighted=False, m=None):
    mm = m if m is not None else draw(st.integers(1, m_max))
    n = draw(st.integers(1, n_max))
    s = draw(rationals(0 if s_zero else 1, 4))
    jobs = []
    for j in range(1, n + 1):
        p = draw(rationals(0, 12, positive=True))
        w = draw(rationals(1, 5)) if weighted else None
        jobs.append(Job(j, p, w))
    return Instance(mm, s, tuple(jobs))


def random_schedule(rnd: random.Random, instance: Instance) -> Schedule:
    """Random feasible schedule: random machine sets, positive parts, random order per machine."""
    m = instance.machines
    rows = [[] for _ in range(m)]
    for job in instance.jobs:
        k = rnd.randint(1, m)
        ms = rnd.sample(range(m), k)
        cuts = sorted(rnd.sample(range(1, 1000), k - 1))
        bounds = [0] + cuts + [1000]
        for i, a, b in zip(ms, bounds, bounds[1:]):
            rows[i].append(Segment(job.id, job.p * Fraction(b - a, 1000)))
    for r in rows:
        rnd.shuffle(r)
    return Schedule(tuple(tuple(r) for r in rows))



def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
