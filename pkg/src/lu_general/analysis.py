"""Rank, nullity, and the existence conditions for permutation-free LU.

A square matrix admits an LU factorization (no row or column permutations)
exactly when, for every leading index ``k``,

    null(A[1:k,1:k]) <= null(A[:,1:k]) + null(A[1:k,:]^T)

i.e. any rank deficiency of the leading principal block is fully explained
by globally dependent leading columns or rows.  Requiring the lower factor
to be *unit* lower triangular tightens this to the equality
``null(A[1:k,1:k]) = null(A[:,1:k])``; a unit upper factor dually requires
``null(A[1:k,1:k]) = null(A[1:k,:]^T)``.  :func:`existence_report`
evaluates all three families per ``k`` by direct elimination; the
factorization engine never consults it (agreement of the two routes is a
test, not a dependency).

Nullity here is always the dimension of the right null space,
``cols - rank``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError
from .matrix import Matrix, require_square


def rank(a: Matrix) -> int:
    """Rank by forward elimination under the field's zero test.

    Exact over the rational backend.  Under float64 the result depends on
    the matrix's zero tolerance and is advisory.
    """
    field = a.field
    rows = a.to_rows()
    m, n = a.rows, a.cols
    r = 0
    for col in range(n):
        pivot_row = None
        if field.exact:
            for i in range(r, m):
                if rows[i][col] != 0:
                    pivot_row = i
                    break
        else:
            best = field.zero_tolerance
            for i in range(r, m):
                if abs(rows[i][col]) > best:
                    best = abs(rows[i][col])
                    pivot_row = i
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][col]
        for i in range(r + 1, m):
            if rows[i][col] != 0:
                factor = rows[i][col] / pivot
                for jj in range(col, n):
                    rows[i][jj] -= factor * rows[r][jj]
        r += 1
        if r == m:
            break
    return r


def nullity(a: Matrix) -> int:
    """Dimension of the right null space: ``cols - rank``."""
    return a.cols - rank(a)


@dataclass(frozen=True)
class ConditionRow:
    """Per-``k`` nullity triple and the three condition verdicts."""

    k: int
    null_principal: int
    null_col_block: int
    null_row_block: int
    general_ok: bool
    unit_lower_ok: bool
    unit_upper_ok: bool


@dataclass(frozen=True)
class ExistenceReport:
    """Existence verdicts for all three factorization families.

    ``per_k[i]`` covers ``k = i + 1``; each ``*_exists`` flag is the
    conjunction of the matching per-``k`` flags.  ``tolerance`` records the
    absolute zero tolerance for float64 inputs (``None`` for exact inputs),
    under which all verdicts are advisory.
    """

    n: int
    per_k: tuple
    general_exists: bool
    unit_lower_exists: bool
    unit_upper_exists: bool
    tolerance: float | None = None


def existence_report(a: Matrix) -> ExistenceReport:
    """Evaluate the three existence conditions at every ``k = 1..n``.

    Each nullity is computed by an independent elimination on the
    designated block (naive but faithful to the definitions).
    """
    require_square(a)
    if a.rows == 0:
        raise ShapeError("existence report requires n >= 1")
    n = a.rows
    out = []
    for k in range(1, n + 1):
        np_ = nullity(a.sub(1, k, 1, k))
        nc = nullity(a.sub(1, n, 1, k))
        nr = nullity(a.sub(1, k, 1, n).transpose())
        out.append(
            ConditionRow(
                k=k,
                null_principal=np_,
                null_col_block=nc,
                null_row_block=nr,
                general_ok=np_ <= nc + nr,
                unit_lower_ok=np_ == nc,
                unit_upper_ok=np_ == nr,
            )
        )
    return ExistenceReport(
        n=n,
        per_k=tuple(out),
        general_exists=all(r.general_ok for r in out),
        unit_lower_exists=all(r.unit_lower_ok for r in out),
        unit_upper_exists=all(r.unit_upper_ok for r in out),
        tolerance=None if a.field.exact else a.field.zero_tolerance,
    )


def condition_witness(a: Matrix, family: str) -> int | None:
    """Smallest ``k`` violating the given condition family, or ``None``.

    ``family`` is one of ``"general"``, ``"unit-lower"``, ``"unit-upper"``.
    """
    flag = {"general": "general_ok", "unit-lower": "unit_lower_ok", "unit-upper": "unit_upper_ok"}[family]
    for row in existence_report(a).per_k:
        if not getattr(row, flag):
            return row.k
    return None


def sylvester_nullity_check(b: Matrix, c: Matrix) -> bool:
    """Whether ``null(B C) <= null(B) + null(C)`` for square B, C.

    This inequality always holds (it is the nullity form of the rank
    bound for products); the function exists as a test utility.
    """
    require_square(b, "B")
    require_square(c, "C")
    if b.rows != c.rows:
        raise ShapeError("B and C must have equal size")
    return nullity(b.matmul(c)) <= nullity(b) + nullity(c)
