"""Small exact dual simplex over the integers.

Each tableau row is a list of Python ints with its own positive denominator,
so rows untouched by a pivot stay untouched and no rational object is ever
allocated. The leading ``k`` entries of a row are its right-hand sides: the
actual one followed by optional perturbation directions, compared
lexicographically (an infinitesimal ``b + δ·d₁ + δ²·d₂ ...``).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


class InfeasibleProgram(ValueError):
    pass


def _normalize(row: list[int], den: int) -> tuple[list[int], int]:
    if den < 0:
        row = [-v for v in row]
        den = -den
    g = gcd(den, *row)
    if g > 1:
        row = [v // g for v in row]
        den //= g
    return row, den


def _lex_negative(row: list[int], k: int) -> bool:
    for v in row[:k]:
        if v:
            return v < 0
    return False


def dual_simplex(a: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int],
                 perturbations: Sequence[Sequence[int]] = (), max_pivots: int = 100_000):
    """Minimise ``c·y`` subject to ``a·y ≤ b``, ``y ≥ 0``.

    Requires ``c ≥ 0`` (the all-slack basis is then dual feasible). Leaving rows
    and entering columns are chosen by smallest variable label (Bland's rule),
    which makes the pivot sequence, and so the returned vertex, deterministic.

    Returns ``(objective, values)``: ``objective`` is a tuple of Fractions, the
    optimal value followed by its coefficient for each perturbation direction;
    ``values`` are the structural variables at zero perturbation.
    """
    n = len(c)
    k = 1 + len(perturbations)
    if any(v < 0 for v in c):
        raise ValueError("costs must be non-negative")
    rows = [[b[r]] + [d[r] for d in perturbations] + list(a[r]) for r in range(len(a))]
    dens = [1] * len(rows)
    obj = [0] * k + [-v for v in c]
    obj_den = 1
    # labels: structural 0..n-1, slack of row r is n + r
    nonbasic = list(range(n))
    basic = [n + r for r in range(len(rows))]

    for _ in range(max_pivots):
        r = -1
        best = None
        for idx, row in enumerate(rows):
            if (best is None or basic[idx] < best) and _lex_negative(row, k):
                r, best = idx, basic[idx]
        if r < 0:
            break
        prow = rows[r]
        col = -1
        num = den = 0
        for j in range(k, n + k):
            arj = prow[j]
            if arj < 0:
                a0 = obj[j]
                # ratio a0 / arj; both rows' denominators are positive constants
                if col < 0:
                    col, num, den = j, a0, arj
                    continue
                lhs, rhs = a0 * den, num * arj
                if lhs < rhs or (lhs == rhs and nonbasic[j - k] < nonbasic[col - k]):
                    col, num, den = j, a0, arj
        if col < 0:
            raise InfeasibleProgram("primal infeasible")
        piv = prow[col]
        dr = dens[r]
        for idx, row in enumerate(rows):
            if idx == r:
                continue
            f = row[col]
            if f == 0:
                continue
            new = [v * piv - f * pv for v, pv in zip(row, prow)]
            new[col] = -f * dr
            rows[idx], dens[idx] = _normalize(new, dens[idx] * piv)
        f = obj[col]
        if f:
            new = [v * piv - f * pv for v, pv in zip(obj, prow)]
            new[col] = -f * dr
            obj, obj_den = _normalize(new, obj_den * piv)
        new = list(prow)
        new[col] = dr
        rows[r], dens[r] = _normalize(new, piv)
        basic[r], nonbasic[col - k] = nonbasic[col - k], basic[r]
    else:
        raise RuntimeError("pivot limit reached")

    values = [Fraction(0)] * n
    for idx, label in enumerate(basic):
        if label < n:
            values[label] = Fraction(rows[idx][0], dens[idx])
    return tuple(Fraction(v, obj_den) for v in obj[:k]), values
