"""Exact symmetric elimination over the rationals.

Matrices are passed as sparse symmetric rows: ``rows[i]`` maps a column
index to a (nonzero) entry, diagonal included.  Pivots are chosen by
minimum remaining degree, so trees (chains, stars, forks) eliminate with
no fill-in and in linear work.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Rows = Sequence[dict]

DEFINITE = "Definite"
SEMIDEFINITE = "SemidefiniteDegenerate"
INDEFINITE = "Indefinite"


class NotPositiveDefinite(ArithmeticError):
    pass


def _copy(rows: Rows) -> list[dict[int, Fraction]]:
    return [{j: Fraction(v) for j, v in r.items() if v} for r in rows]


def _pick(rows, active, positive_only):
    best = None
    best_deg = None
    for p in sorted(active):
        d = rows[p].get(p, 0)
        if positive_only and d <= 0:
            continue
        deg = len(rows[p])
        if best is None or deg < best_deg:
            best, best_deg = p, deg
    return best


def _pivot_step(rows, active, p, rhs=None):
    piv = rows[p][p]
    prow = {j: v for j, v in rows[p].items() if j != p}
    for i, a_ip in prow.items():
        f = a_ip / piv
        ri = rows[i]
        del ri[p]
        for j, a_pj in prow.items():
            v = ri.get(j, 0) - f * a_pj
            if v:
                ri[j] = v
            else:
                ri.pop(j, None)
        if rhs is not None:
            rhs[i] -= f * rhs[p]
    active.remove(p)
    return piv, prow


def classify_form(rows: Rows) -> str:
    """Inertia class of the symmetric form: Definite, SemidefiniteDegenerate or Indefinite.

    Positive pivots are split off one at a time (each step preserves inertia
    of the Schur complement).  When no positive diagonal entry remains the
    residual block is either zero (semidefinite, singular) or witnesses a
    negative direction.
    """
    work = _copy(rows)
    active = set(range(len(work)))
    while active:
        p = _pick(work, active, positive_only=True)
        if p is None:
            break
        _pivot_step(work, active, p)
    if not active:
        return DEFINITE
    for i in active:
        if any(j in active for j in work[i]):
            return INDEFINITE
    return SEMIDEFINITE


def solve_positive_definite(rows: Rows, rhs: Sequence) -> list[Fraction]:
    """Solve ``A x = rhs`` exactly for a positive definite symmetric ``A``.

    Raises NotPositiveDefinite as soon as a non-positive pivot shows up; for a
    positive definite matrix every symmetric elimination order has positive
    pivots, so this doubles as the definiteness check.
    """
    work = _copy(rows)
    b = [Fraction(v) for v in rhs]
    active = set(range(len(work)))
    steps = []
    while active:
        p = _pick(work, active, positive_only=False)
        if work[p].get(p, 0) <= 0:
            raise NotPositiveDefinite(f"non-positive pivot at index {p}")
        piv, prow = _pivot_step(work, active, p, b)
        steps.append((p, piv, prow, b[p]))
    x: list[Optional[Fraction]] = [None] * len(work)
    for p, piv, prow, bp in reversed(steps):
        x[p] = (bp - sum(v * x[j] for j, v in prow.items())) / piv
    return x  # type: ignore[return-value]


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Dense exact determinant by fraction-valued Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        r = next((r for r in range(c, n) if a[r][c] != 0), None)
        if r is None:
            return Fraction(0)
        if r != c:
            a[c], a[r] = a[r], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det
