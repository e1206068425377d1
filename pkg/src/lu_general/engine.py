"""Four LU factorization routines for dense matrices.

* :func:`lu_general` -- permutation-free ``A = L U`` with rectangular
  rank-revealing factors (``L`` is ``n x r`` lower triangular, ``U`` is
  ``r x n`` upper triangular, ``r = rank(A)``), or a
  :class:`NotFactorizable` verdict with the smallest failing leading index.
* :func:`lu_unit_lower` / :func:`lu_unit_upper` -- square factors with the
  designated factor unit triangular, or a verdict.
* :func:`lu_partial_pivot` / :func:`lu_full_pivot` -- the classical
  always-succeeding baselines ``P A = L U`` and ``P A Q = L U``.

The permutation-free routine uses restricted pivoting: elimination walks
the diagonal, and when a pivot vanishes it may only defer a column or row
of the active Schur block that is entirely zero (a zero Schur column/row
marks a column/row of the input that is linearly dependent on its
predecessors).  Deferrals are tracked as index maps with no data
movement, so the factors recovered at the end are still triangular --
arbitrary pivoting would destroy that.  A dead end (zero pivot, but both
the active column and the active row contain nonzeros) is exactly the
situation where no permutation-free factorization exists.

Tie-breaking is deterministic throughout: the smallest eligible index
wins.  Factorizations of a given matrix are not unique; callers should
verify products and structural invariants, never entry-level equality
with another implementation.

Under the float64 backend, zero classification uses the field tolerance
rescaled by the current Schur block's largest entry, and any pivot
decision within a factor of :data:`AMBIGUITY_BAND` of the threshold is
recorded in ``warnings`` on the result.  Float results are advisory; the
rational backend is normative.  No pivot-size control is attempted, so
the float path is not backward stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import condition_witness, rank as _rank
from .matrix import Matrix, require_square

#: Pivot classifications within this factor of the zero threshold are
#: flagged as ambiguous in float mode.
AMBIGUITY_BAND = 16.0

UNIT_LOWER = "lower"
UNIT_UPPER = "upper"


@dataclass(frozen=True)
class NotFactorizable:
    """Verdict that no factorization of the requested kind exists.

    ``witness_k`` is the smallest leading index at which the relevant
    existence condition fails.  ``family`` names the condition family.
    """

    witness_k: int
    family: str

    def __bool__(self) -> bool:  # allows `if isinstance(...)`-free truthiness guards
        return False


@dataclass(frozen=True)
class Factorization:
    """Rank-revealing factors of ``A`` with their index maps.

    ``row_map[i-1]`` is the physical row of A living at logical row ``i``
    of the eliminated matrix (1-based; likewise ``col_map``).  Logical
    positions ``1..rank`` hold the pivot rows/columns (each linearly
    independent of its physical predecessors in A); positions beyond
    ``rank`` hold the dependent ones.
    """

    L: Matrix
    U: Matrix
    rank: int
    row_map: tuple
    col_map: tuple
    warnings: tuple = ()


@dataclass(frozen=True)
class UnitFactorization:
    """Square factors with one factor unit triangular.

    For ``unit_side == "lower"``: ``L`` is unit lower triangular and
    ``col_map`` records the internal column deferrals (``row_map`` is the
    identity -- rows never move).  For ``"upper"`` the statements dualize.
    """

    L: Matrix
    U: Matrix
    unit_side: str
    col_map: tuple
    row_map: tuple
    warnings: tuple = ()


@dataclass(frozen=True)
class PivotedFactorization:
    """Classical pivoted factorization ``P A Q = L U``.

    ``P`` and ``Q`` are index maps: logical row ``k`` of the permuted
    matrix is physical row ``P[k-1]`` of A (1-based), and likewise for
    columns.  Partial pivoting keeps ``Q`` the identity and square unit
    lower ``L``; full pivoting yields rank-revealing rectangular factors.
    """

    P: tuple
    Q: tuple
    L: Matrix
    U: Matrix
    rank: int
    warnings: tuple = ()


class _Zero:
    """Zero classification helper, shared by all elimination loops.

    Exact mode compares with literal zero.  Float mode uses a relative
    tolerance derived from the field, rescaled by the largest entry of the
    current active block, and records near-threshold decisions.
    """

    def __init__(self, matrix: Matrix):
        self.exact = matrix.field.exact
        self.warnings: list[str] = []
        if not self.exact:
            amax = float(matrix.max_abs())
            tol = matrix.field.zero_tolerance
            self.rel = tol / amax if amax > 0 else tol
        self.threshold = 0.0

    def rescale(self, scale) -> None:
        if not self.exact:
            self.threshold = self.rel * float(scale)

    def __call__(self, value, where: str = "") -> bool:
        if self.exact:
            return value == 0
        mag = abs(value)
        thr = self.threshold
        is_zero = mag <= thr
        if mag > 0 and thr > 0:
            if (is_zero and mag > thr / AMBIGUITY_BAND) or (not is_zero and mag <= thr * AMBIGUITY_BAND):
                self.warnings.append(
                    "ambiguous zero classification at %s: |%.3e| vs threshold %.3e" % (where or "?", mag, thr)
                )
        return is_zero


def _active_scale(w, rowp, colp, k, n_rows, n_cols):
    best = 0.0
    for i in range(k, n_rows):
        wr = w[rowp[i]]
        for j in range(k, n_cols):
            mag = abs(wr[colp[j]])
            if mag > best:
                best = mag
    return best


def lu_general(a: Matrix) -> Factorization | NotFactorizable:
    """Permutation-free rank-revealing LU factorization of a square matrix.

    Returns a :class:`Factorization` with ``L @ U == A`` (exact over
    rationals), or :class:`NotFactorizable` carrying the smallest leading
    index at which the nullity condition fails.
    """
    require_square(a)
    n = a.rows
    w = a.to_rows()
    rowp = list(range(n))
    colp = list(range(n))
    zero = _Zero(a)
    r = n
    for k in range(n):
        if not zero.exact:
            zero.rescale(_active_scale(w, rowp, colp, k, n, n))
        pr, pc = rowp[k], colp[k]
        if zero(w[pr][pc], "pivot (%d,%d)" % (pr + 1, pc + 1)):
            col_zero = all(zero(w[rowp[i]][pc], "column scan") for i in range(k, n))
            row_zero = all(zero(w[pr][colp[j]], "row scan") for j in range(k, n))
            if not col_zero and not row_zero:
                # Dead end: the pivot vanishes but both the active column and
                # the active row carry information that cannot be deferred.
                witness = condition_witness(a, "general")
                return NotFactorizable(witness_k=witness if witness is not None else k + 1, family="general")
            if col_zero and row_zero:
                target = _first_nonzero_column(w, rowp, colp, k, n, n, zero)
                if target is None:
                    r = k  # active block is zero: rank exhausted
                    break
                j, i = target
                _defer_column(w, rowp, colp, k, j, n)
                _defer_row(w, rowp, colp, k, i, n)
            elif col_zero:
                j = _first_nonzero_in_row(w, pr, colp, k, n, zero)
                _defer_column(w, rowp, colp, k, j, n)
            else:
                i = _first_nonzero_in_col(w, rowp, pc, k, n, zero)
                _defer_row(w, rowp, colp, k, i, n)
        _eliminate(w, rowp, colp, k, n, n)
    warnings = tuple(zero.warnings)
    l_fac, u_fac = _gather_factors(a, w, rowp, colp, r, n, n)
    return Factorization(
        L=l_fac,
        U=u_fac,
        rank=r,
        row_map=tuple(p + 1 for p in rowp),
        col_map=tuple(p + 1 for p in colp),
        warnings=warnings,
    )


def lu_unit_lower(a: Matrix) -> UnitFactorization | NotFactorizable:
    """Factor ``A = L U`` with ``L`` square unit lower triangular.

    Exists iff every leading principal block's nullity equals the nullity
    of the full column block at the same width.  Only columns may be
    deferred; rows never move.  Dependent positions contribute an identity
    column to ``L`` and a zero row to ``U``.
    """
    require_square(a)
    n = a.rows
    w = a.to_rows()
    colp = list(range(n))
    rowp = list(range(n))  # fixed; kept for the shared helpers
    zero = _Zero(a)
    dependent = []
    for k in range(n):
        if not zero.exact:
            zero.rescale(_active_scale(w, rowp, colp, k, n, n))
        pc = colp[k]
        if not zero(w[k][pc], "pivot (%d,%d)" % (k + 1, pc + 1)):
            _eliminate(w, rowp, colp, k, n, n)
            continue
        col_zero = all(zero(w[i][pc], "column scan") for i in range(k, n))
        if not col_zero:
            witness = condition_witness(a, "unit-lower")
            return NotFactorizable(witness_k=witness if witness is not None else k + 1, family="unit-lower")
        row_zero = all(zero(w[k][colp[j]], "row scan") for j in range(k, n))
        if row_zero:
            # Dependent row and column: L takes the identity column, U the
            # zero row, and the trailing block continues untouched.
            for i in range(k, n):
                w[i][pc] = _zero_of(a)
            for j in range(k + 1, n):
                w[k][colp[j]] = _zero_of(a)
            dependent.append(k)
            continue
        j = _first_nonzero_in_row(w, k, colp, k, n, zero)
        _defer_column(w, rowp, colp, k, j, n)
        _eliminate(w, rowp, colp, k, n, n)
    zero_e = _zero_of(a)
    one_e = _one_of(a)
    dep = set(dependent)
    l_rows = [
        [one_e if i == j else (w[i][colp[j]] if j < i and j not in dep else zero_e) for j in range(n)]
        for i in range(n)
    ]
    u_rows = [[w[i][colp[j]] if j >= i else zero_e for j in range(n)] for i in range(n)]
    for k in dep:
        u_rows[k] = [zero_e] * n
    lmat = Matrix(l_rows, a.field)
    umat = _scatter_columns(a, u_rows, colp, n, n)
    return UnitFactorization(
        L=lmat,
        U=umat,
        unit_side=UNIT_LOWER,
        col_map=tuple(p + 1 for p in colp),
        row_map=tuple(range(1, n + 1)),
        warnings=tuple(zero.warnings),
    )


def lu_unit_upper(a: Matrix) -> UnitFactorization | NotFactorizable:
    """Factor ``A = L U`` with ``U`` square unit upper triangular.

    Computed on the transpose: ``A^T = L' U'`` with unit lower ``L'``
    gives ``A = U'^T L'^T``.  The internal row deferrals of A are the
    column deferrals of the transposed run.
    """
    require_square(a)
    res = lu_unit_lower(a.transpose())
    if isinstance(res, NotFactorizable):
        return NotFactorizable(witness_k=res.witness_k, family="unit-upper")
    return UnitFactorization(
        L=res.U.transpose(),
        U=res.L.transpose(),
        unit_side=UNIT_UPPER,
        col_map=tuple(range(1, a.rows + 1)),
        row_map=res.col_map,
        warnings=res.warnings,
    )


def lu_partial_pivot(a: Matrix) -> PivotedFactorization:
    """Classical ``P A = L U`` via row pivoting; always succeeds.

    Over rationals the pivot is the first nonzero entry of the active
    column (smallest row index); over floats the largest-magnitude entry.
    A fully zero active column contributes an identity column to ``L`` and
    moves on.
    """
    require_square(a)
    n = a.rows
    w = a.to_rows()
    rowp = list(range(n))
    zero = _Zero(a)
    colp = list(range(n))
    for k in range(n):
        if not zero.exact:
            zero.rescale(_active_scale(w, rowp, colp, k, n, n))
        pivot_row = None
        if zero.exact:
            for i in range(k, n):
                if w[rowp[i]][k] != 0:
                    pivot_row = i
                    break
        else:
            best = zero.threshold
            for i in range(k, n):
                mag = abs(w[rowp[i]][k])
                if mag > best:
                    best = mag
                    pivot_row = i
        if pivot_row is None:
            for i in range(k, n):
                if not zero.exact:
                    w[rowp[i]][k] = 0.0  # drop sub-threshold residue
            continue
        if pivot_row != k:
            rowp[k], rowp[pivot_row] = rowp[pivot_row], rowp[k]
        _eliminate(w, rowp, colp, k, n, n)
    zero_e = _zero_of(a)
    one_e = _one_of(a)
    l_rows = [[one_e if i == j else (w[rowp[i]][j] if j < i else zero_e) for j in range(n)] for i in range(n)]
    u_rows = [[w[rowp[i]][j] if j >= i else zero_e for j in range(n)] for i in range(n)]
    umat = Matrix(u_rows, a.field, cols=n)
    return PivotedFactorization(
        P=tuple(p + 1 for p in rowp),
        Q=tuple(range(1, n + 1)),
        L=Matrix(l_rows, a.field),
        U=umat,
        rank=_rank(umat),
        warnings=tuple(zero.warnings),
    )


def lu_full_pivot(a: Matrix) -> PivotedFactorization:
    """Classical rank-revealing ``P A Q = L U``; accepts rectangular input.

    Over rationals the pivot is the first nonzero of the active block in
    row-major order; over floats its largest-magnitude entry.  Elimination
    stops once the active block is zero, after exactly ``rank(A)`` steps.
    """
    m, n = a.rows, a.cols
    w = a.to_rows()
    rowp = list(range(m))
    colp = list(range(n))
    zero = _Zero(a)
    r = min(m, n)
    for k in range(min(m, n)):
        if not zero.exact:
            zero.rescale(_active_scale(w, rowp, colp, k, m, n))
        choice = None
        if zero.exact:
            for i in range(k, m):
                wr = w[rowp[i]]
                for j in range(k, n):
                    if wr[colp[j]] != 0:
                        choice = (i, j)
                        break
                if choice:
                    break
        else:
            best = zero.threshold
            for i in range(k, m):
                wr = w[rowp[i]]
                for j in range(k, n):
                    mag = abs(wr[colp[j]])
                    if mag > best:
                        best = mag
                        choice = (i, j)
        if choice is None:
            r = k
            break
        i, j = choice
        if i != k:
            rowp[k], rowp[i] = rowp[i], rowp[k]
        if j != k:
            colp[k], colp[j] = colp[j], colp[k]
        _eliminate(w, rowp, colp, k, m, n)
    l_fac, u_fac = _gather_factors(a, w, rowp, colp, r, m, n, scatter=False)
    return PivotedFactorization(
        P=tuple(p + 1 for p in rowp),
        Q=tuple(p + 1 for p in colp),
        L=l_fac,
        U=u_fac,
        rank=r,
        warnings=tuple(zero.warnings),
    )


# -- shared elimination machinery ---------------------------------------------


def _zero_of(a: Matrix):
    return a.field.zero()


def _one_of(a: Matrix):
    return a.field.one()


def _eliminate(w, rowp, colp, k, n_rows, n_cols) -> None:
    """One Doolittle step at logical position ``k``.

    Multipliers overwrite the eliminated position (compact storage keyed
    by physical indices, so later logical swaps carry them along).
    """
    pr, pc = rowp[k], colp[k]
    pivot = w[pr][pc]
    prow = w[pr]
    for i in range(k + 1, n_rows):
        q = rowp[i]
        entry = w[q][pc]
        if entry == 0:
            continue
        mult = entry / pivot
        w[q][pc] = mult
        wq = w[q]
        for j in range(k + 1, n_cols):
            c = colp[j]
            wq[c] -= mult * prow[c]


def _defer_column(w, rowp, colp, k, j, n_rows) -> None:
    """Swap logical columns ``k`` and ``j`` and zero the deferred column.

    The deferred column's active entries are zero by classification; the
    explicit store makes that bit-exact under float tolerance so the
    structural certificates hold exactly.
    """
    colp[k], colp[j] = colp[j], colp[k]
    freed = colp[j]
    for i in range(k, n_rows):
        if w[rowp[i]][freed] != 0:
            w[rowp[i]][freed] = 0 * w[rowp[i]][freed]


def _defer_row(w, rowp, colp, k, i, n_cols) -> None:
    """Swap logical rows ``k`` and ``i`` and zero the deferred row."""
    rowp[k], rowp[i] = rowp[i], rowp[k]
    freed = rowp[i]
    for j in range(k, n_cols):
        if w[freed][colp[j]] != 0:
            w[freed][colp[j]] = 0 * w[freed][colp[j]]


def _first_nonzero_in_row(w, pr, colp, k, n_cols, zero):
    for j in range(k + 1, n_cols):
        if not zero(w[pr][colp[j]], "row search"):
            return j
    raise AssertionError("nonzero row classified zero")  # pragma: no cover


def _first_nonzero_in_col(w, rowp, pc, k, n_rows, zero):
    for i in range(k + 1, n_rows):
        if not zero(w[rowp[i]][pc], "column search"):
            return i
    raise AssertionError("nonzero column classified zero")  # pragma: no cover


def _first_nonzero_column(w, rowp, colp, k, n_rows, n_cols, zero):
    """Smallest logical column with a nonzero active entry, with the
    smallest such row; ``None`` when the active block is entirely zero."""
    for j in range(k, n_cols):
        c = colp[j]
        for i in range(k, n_rows):
            if not zero(w[rowp[i]][c], "block search"):
                return j, i
    return None


def _gather_factors(a, w, rowp, colp, r, n_rows, n_cols, scatter=True):
    """Assemble rank-revealing L (rows x r) and U (r x cols) from compact
    storage.  With ``scatter`` the factors are mapped back to physical
    row/column positions (permutation-free form); without it they stay in
    logical order (pivoted form)."""
    zero_e = a.field.zero()
    one_e = a.field.one()
    l_rows = [[zero_e] * r for _ in range(n_rows)]
    for i in range(n_rows):
        dest = rowp[i] if scatter else i
        for j in range(min(i, r)):
            l_rows[dest][j] = w[rowp[i]][colp[j]]
        if i < r:
            l_rows[dest][i] = one_e
    u_rows = [[zero_e] * n_cols for _ in range(r)]
    for i in range(r):
        for j in range(i, n_cols):
            dest = colp[j] if scatter else j
            u_rows[i][dest] = w[rowp[i]][colp[j]]
    lmat = Matrix(l_rows, a.field, cols=r)
    umat = Matrix(u_rows, a.field, cols=n_cols)
    return lmat, umat


def _scatter_columns(a, rows_logical, colp, n_rows, n_cols) -> Matrix:
    """Map a logical-column matrix back to physical column positions."""
    zero_e = a.field.zero()
    out = [[zero_e] * n_cols for _ in range(n_rows)]
    for i in range(n_rows):
        for j in range(n_cols):
            out[i][colp[j]] = rows_logical[i][j]
    return Matrix(out, a.field, cols=n_cols)
