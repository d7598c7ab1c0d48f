"""Exact rational linear algebra.

Everything here works on plain Python lists of ``Fraction`` (or ``int``)
entries. Elimination is fraction-free: rows are scaled to integers and kept
primitive (gcd 1) while pivoting, so intermediate entries stay small and the
result is independent of platform float behaviour. Pivots are chosen as the
first nonzero entry in column order, which makes kernels reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction


def as_fraction(value: Number | str) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"float {value!r} is not accepted in exact mode")
    return Fraction(value)


def _integer_row(row: Sequence[Number]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    out = [int(Fraction(x) * den) for x in row]
    return _primitive(out)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def reduced_echelon(rows: Iterable[Sequence[Number]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination.

    Returns the nonzero rows of an integer reduced echelon form (each pivot is
    the only nonzero entry of its column) and the list of pivot columns.
    """
    work = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)}, expected {ncols}")
        ir = _integer_row(r)
        if any(ir):
            work.append(ir)

    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pivot_row is None:
            continue
        work[top], work[pivot_row] = work[pivot_row], work[top]
        prow = work[top]
        p = prow[col]
        for i, row in enumerate(work):
            if i == top or not row[col]:
                continue
            f = row[col]
            work[i] = _primitive([p * x - f * y for x, y in zip(row, prow)])
        if p < 0:
            work[top] = [-x for x in prow]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows: Sequence[Sequence[Number]]) -> int:
    if not rows:
        return 0
    return len(reduced_echelon(rows, len(rows[0]))[1])


def kernel_basis(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x == 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns, so the basis is unique given the column order.
    """
    echelon, pivots = reduced_echelon(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for row, pc in zip(echelon, pivots):
            if row[free]:
                x[pc] = Fraction(-row[free], row[pc])
        basis.append(x)
    return basis


def inverse(matrix: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("matrix is not square")
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(matrix)]
    echelon, pivots = reduced_echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [[Fraction(x, row[i]) for x in row[n:]] for i, row in enumerate(echelon)]


def matmul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    if a and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def trace(a: Sequence[Sequence[Number]]) -> Fraction:
    return sum((Fraction(a[i][i]) for i in range(len(a))), Fraction(0))
