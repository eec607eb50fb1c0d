"""Exact linear feasibility over the rationals (phase-1 simplex).

The tableau is kept as an integer matrix together with one positive integer
denominator: after pivoting on (r, c) every other row updates as
``T'[i][j] = (T[i][j] * T[r][c] - T[i][c] * T[r][j]) // d`` where ``d`` is
the previous denominator. The division is exact (tableau entries are
determinant-scaled basis solutions), and every divisibility is re-checked at
runtime, so verdicts carry no rounding at all.

Entering columns follow Dantzig's rule for speed and fall back to Bland's
rule permanently once the objective stalls, which rules out cycling. Arrays
start as int64 and are promoted to Python-int (object dtype) arrays before
any entry could overflow.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_INT64_LIMIT = 1 << 30  # entries above this promote the tableau to exact Python ints
_STALL_LIMIT = 64  # degenerate pivots tolerated before switching to Bland's rule
_MAX_PIVOTS = 1_000_000


class PivotInvariantError(RuntimeError):
    """Raised if an integer pivot fails an exactness invariant (solver bug)."""


def solve_feasibility(
    a_eq: np.ndarray,
    b_eq: np.ndarray,
    a_ub: np.ndarray,
    b_ub: np.ndarray,
) -> list[Fraction] | None:
    """Find nonnegative rational x with ``a_eq @ x == b_eq`` and ``a_ub @ x <= b_ub``.

    All inputs must be integer arrays. Returns exact variable values, or
    None when the system is infeasible.
    """
    a_eq = np.asarray(a_eq)
    a_ub = np.asarray(a_ub)
    b_eq = np.asarray(b_eq)
    b_ub = np.asarray(b_ub)
    m_eq, n = a_eq.shape
    m_ub = a_ub.shape[0]
    m = m_eq + m_ub

    rows = []
    rhs = []
    needs_artificial = []
    extra_sign = []  # +1 slack / -1 surplus for inequality rows, 0 for equalities
    for i in range(m_ub):
        if b_ub[i] >= 0:
            rows.append(a_ub[i])
            rhs.append(int(b_ub[i]))
            extra_sign.append(1)
            needs_artificial.append(False)
        else:
            rows.append(-a_ub[i])
            rhs.append(-int(b_ub[i]))
            extra_sign.append(-1)
            needs_artificial.append(True)
    for i in range(m_eq):
        flip = -1 if b_eq[i] < 0 else 1
        rows.append(flip * a_eq[i])
        rhs.append(flip * int(b_eq[i]))
        extra_sign.append(0)
        needs_artificial.append(True)

    n_art = sum(needs_artificial)
    ncols = n + m_ub + n_art + 1
    rhs_col = ncols - 1

    biggest = max(
        (int(abs(x)) for arr in (a_eq, a_ub, b_eq, b_ub) for x in np.ravel(arr)),
        default=0,
    )
    dtype = np.int64 if biggest < _INT64_LIMIT else object
    tableau = np.zeros((m, ncols), dtype=dtype)
    basis = [0] * m
    art = n + m_ub
    for i in range(m):
        tableau[i, :n] = rows[i]
        tableau[i, rhs_col] = rhs[i]
        if extra_sign[i] != 0:
            tableau[i, n + i] = extra_sign[i]
        if needs_artificial[i]:
            tableau[i, art] = 1
            basis[i] = art
            art += 1
        else:
            basis[i] = n + i

    # reduced costs for minimizing the artificial sum from the initial basis
    cost = np.zeros(ncols, dtype=dtype)
    for i in range(m):
        if needs_artificial[i]:
            cost -= tableau[i]
    cost[n + m_ub:rhs_col] = 0  # artificial columns start with reduced cost 0

    denom = 1
    allowed = np.ones(ncols - 1, dtype=bool)
    allowed[n + m_ub:] = False  # artificials may leave the basis but never enter
    bland = False
    stall = 0
    last_objective = Fraction(-int(cost[rhs_col]))

    for _pivot_count in range(_MAX_PIVOTS):
        negative = (cost[:rhs_col] < 0) & allowed
        if not negative.any():
            if cost[rhs_col] != 0:
                return None
            return _extract(tableau, basis, denom, n, rhs_col)
        candidates = np.flatnonzero(negative)
        if bland:
            col = int(candidates[0])
        else:
            col = int(candidates[np.argmin(cost[:rhs_col][candidates])])

        row = _ratio_test(tableau, basis, col, rhs_col)
        if row is None:  # pragma: no cover - phase-1 objective is bounded below
            raise PivotInvariantError("phase-1 became unbounded")

        basis[row] = col
        tableau, cost, denom = _pivot(tableau, cost, denom, row, col, rhs_col)

        objective = Fraction(-int(cost[rhs_col]), denom)
        if objective == last_objective:
            stall += 1
            if stall > _STALL_LIMIT:
                bland = True
        else:
            stall = 0
            last_objective = objective

        if tableau.dtype != object:
            peak = max(int(np.abs(tableau).max()), int(np.abs(cost).max()))
            if peak >= _INT64_LIMIT:
                tableau = tableau.astype(object)
                cost = cost.astype(object)
    raise PivotInvariantError("pivot limit exceeded")  # pragma: no cover


def _ratio_test(tableau, basis, col, rhs_col):
    """Leaving row: smallest rhs/column ratio, ties to the smallest basic var."""
    best_row = None
    best_num = best_den = 0
    for i in range(tableau.shape[0]):
        t = int(tableau[i, col])
        if t <= 0:
            continue
        b = int(tableau[i, rhs_col])
        if best_row is None or b * best_den < best_num * t or (
            b * best_den == best_num * t and basis[i] < basis[best_row]
        ):
            best_row, best_num, best_den = i, b, t
    return best_row


def _pivot(tableau, cost, denom, row, col, rhs_col):
    """Fraction-free pivot; verifies the exact-division invariant."""
    piv = int(tableau[row, col])
    pivot_row = tableau[row].copy()
    pivot_col = tableau[:, col].copy()

    numerator = tableau * tableau[row, col] - np.outer(pivot_col, pivot_row)
    new_tab = numerator // denom
    if denom != 1 and not (new_tab * denom == numerator).all():
        raise PivotInvariantError("inexact tableau division")
    new_tab[row] = pivot_row

    cost_num = cost * tableau[row, col] - cost[col] * pivot_row
    new_cost = cost_num // denom
    if denom != 1 and not (new_cost * denom == cost_num).all():
        raise PivotInvariantError("inexact cost-row division")

    return new_tab, new_cost, piv


def _extract(tableau, basis, denom, n, rhs_col):
    values = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            values[var] = Fraction(int(tableau[i, rhs_col]), denom)
    return values
