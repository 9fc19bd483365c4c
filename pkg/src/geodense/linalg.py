"""Fraction-free Gaussian elimination over the integers."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import InconsistentSystemError, RankDeficientError


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_echelon(matrix: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form by Bareiss elimination; returns (matrix, pivot columns).

    Pivot choice is the first nonzero entry in column order.  Every division
    is exact; a nonzero remainder would mean the algorithm is broken.
    """
    a = [list(r) for r in matrix]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    prev = 1
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, n_rows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, n_cols):
                num = p * row[j] - f * a[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "inexact Bareiss division"
                row[j] = q
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of an overdetermined exact system ``rows @ x = rhs``.

    Raises :class:`RankDeficientError` (with a kernel basis) if the solution
    is not unique and :class:`InconsistentSystemError` if none exists.
    """
    n = len(rows[0]) if rows else 0
    aug = integer_rows([list(r) + [b] for r, b in zip(rows, rhs)])
    ech, pivots = bareiss_echelon(aug)
    if n in pivots:
        raise InconsistentSystemError("right-hand side is not in the column span")
    if len(pivots) < n:
        kernel = _kernel(ech, pivots, n)
        raise RankDeficientError(
            f"rank {len(pivots)} < {n} unknowns", kernel=kernel
        )
    x = [Fraction(0)] * n
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = Fraction(ech[r][n])
        for j in range(c + 1, n):
            s -= ech[r][j] * x[j]
        x[c] = s / ech[r][c]
    return x


def _kernel(ech: list[list[int]], pivots: list[int], n: int) -> list[list[Fraction]]:
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = Fraction(0)
            for j in range(c + 1, n):
                s -= ech[r][j] * x[j]
            x[c] = s / ech[r][c]
        basis.append(x)
    return basis
