"""JSON instance and schedule files, and random instance generation.

Rationals are written as decimal strings when the decimal expansion
terminates (``"0.7"``) and as ``"num/den"`` otherwise. Decimal literals are
parsed exactly, including bare JSON numbers. Schedule files carry the
SHA-256 of the canonical instance text; the derived times they contain are
for reading only and are recomputed on load.
"""
from __future__ import annotations

import hashlib
import json
import random
from fractions import Fraction
from pathlib import Path

from .model import (Instance, InvalidInstance, InvalidSchedule, Job, Schedule, Segment, as_rational,
                    evaluate)

VERSION = 1
INSTANCE_KIND = "splitsched-instance"
SCHEDULE_KIND = "splitsched-schedule"


class FileFormatError(ValueError):
    """Malformed file; the message names the offending field."""


def format_rational(x) -> str:
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(x.numerator)
    scaled = abs(x) * 10 ** digits
    whole, frac = divmod(int(scaled), 10 ** digits)
    sign = "-" if x < 0 else ""
    return f"{sign}{whole}.{frac:0{digits}d}"


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FileFormatError(f"{where}: expected a number or string, got {value!r}")
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"{where}: {exc}") from None


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FileFormatError(f"{where}: expected an object")
    if key not in obj:
        raise FileFormatError(f"{where}: missing field '{key}'")
    return obj[key]


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FileFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _loads(text: str) -> dict:
    try:
        # keep decimals exact: bare JSON floats arrive as their literal text
        return json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _check_header(doc, kind: str):
    got = _field(doc, "format", "file")
    if got != kind:
        raise FileFormatError(f"format: expected '{kind}', got {got!r}")
    version = _field(doc, "version", "file")
    if version != VERSION:
        raise FileFormatError(f"version: unsupported version {version!r}")


def instance_to_dict(instance: Instance) -> dict:
    jobs = []
    for job in instance.jobs:
        entry = {"id": job.id, "p": format_rational(job.p)}
        if job.w is not None:
            entry["w"] = format_rational(job.w)
        jobs.append(entry)
    return {"format": INSTANCE_KIND, "version": VERSION, "machines": instance.machines,
            "setup": format_rational(instance.setup), "jobs": jobs}


def emit_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2, ensure_ascii=False) + "\n"


def instance_from_dict(doc) -> Instance:
    _check_header(doc, INSTANCE_KIND)
    m = _int(_field(doc, "machines", "file"), "machines")
    s = _rational(_field(doc, "setup", "file"), "setup")
    raw = _field(doc, "jobs", "file")
    if not isinstance(raw, list):
        raise FileFormatError("jobs: expected a list")
    jobs = []
    for k, entry in enumerate(raw):
        where = f"jobs[{k}]"
        jid = _int(_field(entry, "id", where), f"{where}.id")
        p = _rational(_field(entry, "p", where), f"{where}.p")
        w = _rational(entry["w"], f"{where}.w") if entry.get("w") is not None else None
        jobs.append(Job(jid, p, w))
    try:
        return Instance(m, s, tuple(jobs))
    except InvalidInstance as exc:
        raise FileFormatError(f"invalid instance: {exc}") from None


def parse_instance(text: str) -> Instance:
    return instance_from_dict(_loads(text))


def instance_hash(instance: Instance) -> str:
    return hashlib.sha256(emit_instance(instance).encode("utf-8")).hexdigest()


def schedule_to_dict(instance: Instance, schedule: Schedule, weighted: bool = False) -> dict:
    report = evaluate(instance, schedule, weighted=weighted)
    machines = [[{"job": seg.job, "x": format_rational(seg.amount)} for seg in row] for row in schedule.machines]
    doc = {"format": SCHEDULE_KIND, "version": VERSION, "instance_sha256": instance_hash(instance),
           "machines": machines}
    if schedule.releases is not None:
        doc["releases"] = [format_rational(t) for t in schedule.releases]
    timed = [[{"job": t.job, "setup_start": format_rational(t.setup_start), "start": format_rational(t.start),
               "finish": format_rational(t.finish)} for t in row] for row in schedule.timed(instance.setup)]
    doc["derived"] = {
        "note": "recomputed on load, never trusted",
        "weighted": weighted,
        "objective": format_rational(report.total),
        "completions": {str(j): format_rational(c) for j, c in report.completions.items()},
        "segments": timed,
    }
    return doc


def emit_schedule(instance: Instance, schedule: Schedule, weighted: bool = False) -> str:
    return json.dumps(schedule_to_dict(instance, schedule, weighted), indent=2, ensure_ascii=False) + "\n"


def schedule_from_dict(doc, instance: Instance, check_hash: bool = True) -> Schedule:
    _check_header(doc, SCHEDULE_KIND)
    if check_hash:
        got = _field(doc, "instance_sha256", "file")
        if got != instance_hash(instance):
            raise FileFormatError("instance_sha256: schedule was written for a different instance")
    raw = _field(doc, "machines", "file")
    if not isinstance(raw, list):
        raise FileFormatError("machines: expected a list of machine rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise FileFormatError(f"machines[{i}]: expected a list")
        segs = []
        for k, entry in enumerate(row):
            where = f"machines[{i}][{k}]"
            segs.append(Segment(_int(_field(entry, "job", where), f"{where}.job"),
                                _rational(_field(entry, "x", where), f"{where}.x")))
        rows.append(tuple(segs))
    releases = None
    if doc.get("releases") is not None:
        releases = tuple(_rational(v, f"releases[{i}]") for i, v in enumerate(doc["releases"]))
    try:
        schedule = Schedule(tuple(rows), releases)
        evaluate(instance, schedule)
    except (InvalidSchedule, InvalidInstance) as exc:
        raise FileFormatError(f"invalid schedule: {exc}") from None
    return schedule


def parse_schedule(text: str, instance: Instance, check_hash: bool = True) -> Schedule:
    return schedule_from_dict(_loads(text), instance, check_hash)


def recorded_objective(text: str) -> Fraction | None:
    """Objective stored in a schedule file's derived section, if any."""
    doc = _loads(text)
    derived = doc.get("derived") or {}
    if "objective" not in derived:
        return None
    return _rational(derived["objective"], "derived.objective")


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def read_schedule(path, instance: Instance, check_hash: bool = True) -> Schedule:
    return parse_schedule(Path(path).read_text(encoding="utf-8"), instance, check_hash)


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _parse_range(rng, name: str) -> tuple[Fraction, Fraction]:
    lo, hi = (as_rational(v) for v in rng)
    if lo > hi:
        raise ValueError(f"{name}: empty range {lo}..{hi}")
    return lo, hi


def _draw(rnd: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    if lo == hi:
        return lo
    den = rnd.randint(1, max_den)
    a = -((-lo * den) // 1)          # ceil(lo·den)
    b = (hi * den) // 1               # floor(hi·den)
    if a > b:
        return lo
    return Fraction(rnd.randint(int(a), int(b)), den)


def generate_random(seed: int, n: int, m: int, s_range=(1, 1), p_range=(1, 10), max_den: int = 1,
                    weighted: bool = False) -> Instance:
    """Seeded random instance with values on grids of denominator ≤ ``max_den``.

    ``p`` values below the range minimum are never produced; a zero lower
    bound for ``p`` is lifted to ``1/max_den``.
    """
    if n < 1 or m < 1 or max_den < 1:
        raise ValueError("n, m and max_den must be positive")
    s_lo, s_hi = _parse_range(s_range, "s_range")
    p_lo, p_hi = _parse_range(p_range, "p_range")
    if s_lo < 0:
        raise ValueError("s_range must be non-negative")
    if p_hi <= 0:
        raise ValueError("p_range must contain positive values")
    p_lo = max(p_lo, Fraction(1, max_den)) if p_lo <= 0 else p_lo
    rnd = random.Random(seed)
    s = _draw(rnd, s_lo, s_hi, max_den)
    jobs = []
    for j in range(1, n + 1):
        p = _draw(rnd, p_lo, p_hi, max_den)
        w = _draw(rnd, Fraction(1), Fraction(10), max_den) if weighted else None
        jobs.append(Job(j, p, w))
    return Instance(m, s, tuple(jobs))
