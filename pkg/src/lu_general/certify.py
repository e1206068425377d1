"""Independent verification of claimed factorizations.

The certifiers re-derive every structural claim from the original matrix
and the candidate factors: reconstruction, rectangular triangularity,
rank-revealing inner dimension, the sparsity pattern implied by the index
maps, and the dependence/independence semantics of the maps themselves
(checked through prefix-rank comparisons on the input).  Nothing here
shares rank logic with the factorization engine: ranks are recomputed by
exhaustive minor enumeration for small matrices and by an elimination
that scans in the opposite order for larger ones.

Failures are reported inside the :class:`Certificate`, never raised.

The module also hosts the projection machinery that explains *why*
deferred columns vanish during elimination: the oblique projector
``P = X (Y^T X)^{-1} Y^T`` and the projected Schur state whose columns go
to zero exactly for columns dependent on the leading block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .engine import Factorization, PivotedFactorization, UnitFactorization, UNIT_LOWER, UNIT_UPPER
from .errors import PreconditionError, SingularityError
from .matrix import Matrix, require_square

#: Minor enumeration is used up to this size; beyond it an independent
#: reverse-order elimination computes ranks.
MINOR_ORACLE_LIMIT = 4

#: Float-mode reconstruction passes when the max residual is at most
#: ``RESIDUAL_FACTOR * zero_tolerance`` (heuristic; exact mode is bit-exact).
RESIDUAL_FACTOR = 64.0


@dataclass(frozen=True)
class Violation:
    check: str
    position: tuple | int | None
    detail: str


@dataclass(frozen=True)
class Certificate:
    """Aggregated verdict of all structural checks on a factorization."""

    reconstruct_ok: bool
    lower_tri_ok: bool
    upper_tri_ok: bool
    rank_revealing_ok: bool
    sparsity_ok: bool
    unit_diag_ok: bool | None = None
    violations: tuple = ()
    max_residual: float | Fraction | None = None

    @property
    def passed(self) -> bool:
        flags = [self.reconstruct_ok, self.lower_tri_ok, self.upper_tri_ok,
                 self.rank_revealing_ok, self.sparsity_ok]
        if self.unit_diag_ok is not None:
            flags.append(self.unit_diag_ok)
        return all(flags) and not self.violations


class _Checks:
    """Mutable accumulator the certifiers write into."""

    def __init__(self):
        self.violations: list[Violation] = []

    def fail(self, check: str, position, detail: str) -> None:
        self.violations.append(Violation(check, position, detail))

    def ok(self, check: str) -> bool:
        return not any(v.check == check for v in self.violations)


# -- independent rank oracles --------------------------------------------------


def rank_by_minors(a: Matrix) -> int:
    """Largest size of a nonzero minor, by brute-force enumeration.

    Exponential; intended for matrices up to ``MINOR_ORACLE_LIMIT``.
    """
    m, n = a.rows, a.cols
    rows = a.to_rows()
    for size in range(min(m, n), 0, -1):
        for ri in itertools.combinations(range(m), size):
            for ci in itertools.combinations(range(n), size):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if not a.field.is_zero(_det(sub)):
                    return size
    return 0


def _det(cells):
    n = len(cells)
    if n == 1:
        return cells[0][0]
    total = None
    sign = 1
    for j in range(n):
        term = cells[0][j]
        if term != 0:
            minor = [[row[c] for c in range(n) if c != j] for row in cells[1:]]
            term = sign * term * _det(minor)
            total = term if total is None else total + term
        sign = -sign
    return total if total is not None else 0 * cells[0][0]


def rank_reverse_elimination(a: Matrix) -> int:
    """Rank via elimination scanning columns right-to-left and picking the
    bottom-most usable pivot -- deliberately the opposite pivot order from
    the forward elimination used elsewhere."""
    field = a.field
    rows = a.to_rows()
    m, n = a.rows, a.cols
    r = 0
    bottom = m - 1
    for col in range(n - 1, -1, -1):
        pivot_row = None
        if field.exact:
            for i in range(bottom, -1, -1):
                if rows[i][col] != 0:
                    pivot_row = i
                    break
        else:
            best = field.zero_tolerance
            for i in range(bottom, -1, -1):
                if abs(rows[i][col]) > best:
                    best = abs(rows[i][col])
                    pivot_row = i
        if pivot_row is None:
            continue
        rows[bottom], rows[pivot_row] = rows[pivot_row], rows[bottom]
        pivot = rows[bottom][col]
        for i in range(bottom):
            if rows[i][col] != 0:
                factor = rows[i][col] / pivot
                for jj in range(col + 1):
                    rows[i][jj] -= factor * rows[bottom][jj]
        r += 1
        bottom -= 1
        if bottom < 0:
            break
    return r


def independent_rank(a: Matrix) -> int:
    """Certifier-side rank, sharing no code path with the engine or the
    existence analysis."""
    if max(a.rows, a.cols, 1) <= MINOR_ORACLE_LIMIT:
        return rank_by_minors(a)
    return rank_reverse_elimination(a)


# -- shared checks -------------------------------------------------------------


def _check_reconstruction(a: Matrix, product: Matrix, checks: _Checks):
    max_residual = None
    if (product.rows, product.cols) != (a.rows, a.cols):
        checks.fail("reconstruct", None, "product shape %dx%d vs %dx%d"
                    % (product.rows, product.cols, a.rows, a.cols))
        return max_residual
    if a.field.exact:
        for i in range(1, a.rows + 1):
            for j in range(1, a.cols + 1):
                if product.entry(i, j) != a.entry(i, j):
                    checks.fail("reconstruct", (i, j), "product %s != input %s"
                                % (product.entry(i, j), a.entry(i, j)))
    else:
        diff = product - a
        max_residual = float(diff.max_abs())
        bound = RESIDUAL_FACTOR * a.field.zero_tolerance
        if max_residual > bound:
            checks.fail("reconstruct", None, "max residual %.3e exceeds %.3e" % (max_residual, bound))
    return max_residual


def _check_triangular(mat: Matrix, lower: bool, check: str, checks: _Checks):
    for i in range(1, mat.rows + 1):
        for j in range(1, mat.cols + 1):
            off = j > i if lower else i > j
            if off and mat.entry(i, j) != 0:
                checks.fail(check, (i, j), "nonzero off-triangle entry %s" % (mat.entry(i, j),))


def _is_permutation(p, n) -> bool:
    return sorted(p) == list(range(1, n + 1))


def _prefix_rank_step(a: Matrix, upto: int, by_columns: bool) -> bool:
    """Whether column/row ``upto`` of A is independent of its predecessors."""
    if by_columns:
        before = independent_rank(a.sub(1, a.rows, 1, upto - 1)) if upto > 1 else 0
        after = independent_rank(a.sub(1, a.rows, 1, upto))
    else:
        before = independent_rank(a.sub(1, upto - 1, 1, a.cols)) if upto > 1 else 0
        after = independent_rank(a.sub(1, upto, 1, a.cols))
    return after == before + 1


# -- general (rank-revealing) certification ------------------------------------


def certify_general(a: Matrix, f: Factorization) -> Certificate:
    """Check a permutation-free rank-revealing factorization end to end."""
    checks = _Checks()
    n = a.rows
    r = f.rank
    if a.rows != a.cols:
        checks.fail("shape", None, "input not square")
    if (f.L.rows, f.L.cols) != (n, r) or (f.U.rows, f.U.cols) != (r, n):
        checks.fail("shape", None, "factor shapes %dx%d / %dx%d, expected %dx%d / %dx%d"
                    % (f.L.rows, f.L.cols, f.U.rows, f.U.cols, n, r, r, n))
    if not (_is_permutation(f.row_map, n) and _is_permutation(f.col_map, n)):
        checks.fail("maps", None, "row_map/col_map are not permutations of 1..n")
    max_residual = None
    if checks.ok("shape"):
        max_residual = _check_reconstruction(a, f.L.matmul(f.U), checks)
        _check_triangular(f.L, lower=True, check="lower_tri", checks=checks)
        _check_triangular(f.U, lower=False, check="upper_tri", checks=checks)
        true_rank = independent_rank(a)
        if r != true_rank:
            checks.fail("rank", None, "claimed rank %d, recomputed %d" % (r, true_rank))
        if checks.ok("maps"):
            _check_general_sparsity(a, f, checks)
            _check_map_semantics(a, f, checks)
    return Certificate(
        reconstruct_ok=checks.ok("reconstruct") and checks.ok("shape"),
        lower_tri_ok=checks.ok("lower_tri"),
        upper_tri_ok=checks.ok("upper_tri"),
        rank_revealing_ok=checks.ok("rank") and checks.ok("shape"),
        sparsity_ok=checks.ok("sparsity") and checks.ok("maps") and checks.ok("dependence"),
        violations=tuple(checks.violations),
        max_residual=max_residual,
    )


def _check_general_sparsity(a: Matrix, f: Factorization, checks: _Checks):
    """The four structural bullets tying factor zeros to the index maps.

    With ``i0 = row_map[i]`` (physical row at logical position i):
    pivot rows (i <= r) satisfy ``i0 >= i`` and vanish right of column i;
    deferred rows (i > r) satisfy ``i0 <= i`` and, when ``i0 <= r``, vanish
    from column i0 on.  Columns of U dualize.
    """
    n, r = a.rows, f.rank
    for i in range(1, n + 1):
        i0 = f.row_map[i - 1]
        if i <= r:
            if i0 < i:
                checks.fail("sparsity", i, "pivot row map %d < logical %d" % (i0, i))
            for j in range(i + 1, r + 1):
                if f.L.entry(i0, j) != 0:
                    checks.fail("sparsity", (i0, j), "pivot row %d has nonzero L entry right of %d" % (i0, i))
        else:
            if i0 > i:
                checks.fail("sparsity", i, "deferred row map %d > logical %d" % (i0, i))
            if i0 <= r:
                for j in range(i0, r + 1):
                    if f.L.entry(i0, j) != 0:
                        checks.fail("sparsity", (i0, j), "deferred row %d has nonzero L tail" % i0)
    for j in range(1, n + 1):
        j0 = f.col_map[j - 1]
        if j <= r:
            if j0 < j:
                checks.fail("sparsity", j, "pivot column map %d < logical %d" % (j0, j))
            for i in range(j + 1, r + 1):
                if f.U.entry(i, j0) != 0:
                    checks.fail("sparsity", (i, j0), "pivot column %d has nonzero U entry below %d" % (j0, j))
        else:
            if j0 > j:
                checks.fail("sparsity", j, "deferred column map %d > logical %d" % (j0, j))
            if j0 <= r:
                for i in range(j0, r + 1):
                    if f.U.entry(i, j0) != 0:
                        checks.fail("sparsity", (i, j0), "deferred column %d has nonzero U tail" % j0)


def _check_map_semantics(a: Matrix, f: Factorization, checks: _Checks):
    """Logical positions <= rank must name physically independent
    columns/rows (prefix rank increases at that index); positions beyond
    the rank must name dependent ones."""
    n, r = a.rows, f.rank
    for j in range(1, n + 1):
        j0 = f.col_map[j - 1]
        independent = _prefix_rank_step(a, j0, by_columns=True)
        if j <= r and not independent:
            checks.fail("dependence", j0, "column %d mapped as pivot but is dependent" % j0)
        if j > r and independent:
            checks.fail("dependence", j0, "column %d mapped as deferred but is independent" % j0)
    for i in range(1, n + 1):
        i0 = f.row_map[i - 1]
        independent = _prefix_rank_step(a, i0, by_columns=False)
        if i <= r and not independent:
            checks.fail("dependence", i0, "row %d mapped as pivot but is dependent" % i0)
        if i > r and independent:
            checks.fail("dependence", i0, "row %d mapped as deferred but is independent" % i0)


# -- unit-triangular certification ----------------------------------------------


def certify_unit(a: Matrix, f: UnitFactorization) -> Certificate:
    """Check a unit-triangular factorization, including the unit diagonal,
    the dependent/independent position structure, and its sparsity."""
    if f.unit_side == UNIT_UPPER:
        mirrored = UnitFactorization(
            L=f.U.transpose(), U=f.L.transpose(), unit_side=UNIT_LOWER,
            col_map=f.row_map, row_map=f.col_map, warnings=f.warnings,
        )
        cert = _certify_unit_lower(a.transpose(), mirrored)
        return Certificate(
            reconstruct_ok=cert.reconstruct_ok,
            lower_tri_ok=cert.upper_tri_ok,
            upper_tri_ok=cert.lower_tri_ok,
            rank_revealing_ok=cert.rank_revealing_ok,
            sparsity_ok=cert.sparsity_ok,
            unit_diag_ok=cert.unit_diag_ok,
            violations=tuple(_transpose_violation(v) for v in cert.violations),
            max_residual=cert.max_residual,
        )
    return _certify_unit_lower(a, f)


def _transpose_violation(v: Violation) -> Violation:
    pos = v.position
    if isinstance(pos, tuple) and len(pos) == 2:
        pos = (pos[1], pos[0])
    check = {"lower_tri": "upper_tri", "upper_tri": "lower_tri"}.get(v.check, v.check)
    return Violation(check, pos, v.detail + " (stated on the transposed instance)")


def _certify_unit_lower(a: Matrix, f: UnitFactorization) -> Certificate:
    checks = _Checks()
    n = a.rows
    if a.rows != a.cols or (f.L.rows, f.L.cols) != (n, n) or (f.U.rows, f.U.cols) != (n, n):
        checks.fail("shape", None, "unit factorization requires square n x n factors")
    if not _is_permutation(f.col_map, n):
        checks.fail("maps", None, "col_map is not a permutation of 1..n")
    unit_diag_ok = True
    max_residual = None
    if checks.ok("shape"):
        for i in range(1, n + 1):
            if f.L.entry(i, i) != 1:
                unit_diag_ok = False
                checks.fail("unit_diag", (i, i), "diagonal entry %s != 1" % (f.L.entry(i, i),))
        max_residual = _check_reconstruction(a, f.L.matmul(f.U), checks)
        _check_triangular(f.L, lower=True, check="lower_tri", checks=checks)
        _check_triangular(f.U, lower=False, check="upper_tri", checks=checks)
        true_rank = independent_rank(a)
        if independent_rank(f.U) != true_rank:
            checks.fail("rank", None, "rank of U %d differs from rank of input %d"
                        % (independent_rank(f.U), true_rank))
        if checks.ok("maps"):
            _check_unit_structure(a, f, checks)
    return Certificate(
        reconstruct_ok=checks.ok("reconstruct") and checks.ok("shape"),
        lower_tri_ok=checks.ok("lower_tri"),
        upper_tri_ok=checks.ok("upper_tri"),
        rank_revealing_ok=checks.ok("rank") and checks.ok("shape"),
        sparsity_ok=checks.ok("sparsity") and checks.ok("maps") and checks.ok("dependence"),
        unit_diag_ok=unit_diag_ok,
        violations=tuple(checks.violations),
        max_residual=max_residual,
    )


def _check_unit_structure(a: Matrix, f: UnitFactorization, checks: _Checks):
    """Structure and sparsity of the column-deferred unit-lower form.

    Work on B, the input with columns in logical order.  A logical
    position j is dependent exactly when row j of B depends on the rows
    above it, which must coincide with column j of B depending on the
    columns before it.  Dependent positions contribute ``L[:,j] = e_j``,
    ``U[j,:] = 0`` and a zero U-tail in physical column ``j0 <= j``;
    independent positions satisfy ``j0 >= j`` with zeros under the pivot.
    """
    n = a.rows
    b = _apply_logical_columns(a, f.col_map)
    for j in range(1, n + 1):
        j0 = f.col_map[j - 1]
        row_indep = _prefix_rank_step(b, j, by_columns=False)
        col_indep = _prefix_rank_step(b, j, by_columns=True)
        if row_indep != col_indep:
            checks.fail("dependence", j, "row/column dependence mismatch at logical %d" % j)
        if row_indep:
            if j0 < j:
                checks.fail("sparsity", j, "independent position %d mapped left to %d" % (j, j0))
            for i in range(j + 1, n + 1):
                if f.U.entry(i, j0) != 0:
                    checks.fail("sparsity", (i, j0), "nonzero under pivot in U column %d" % j0)
        else:
            if j0 > j:
                checks.fail("sparsity", j, "dependent position %d mapped right to %d" % (j, j0))
            for i in range(1, n + 1):
                expected = 1 if i == j else 0
                if f.L.entry(i, j) != expected:
                    checks.fail("sparsity", (i, j), "L column %d is not the %d-th identity column" % (j, j))
                if f.U.entry(j, i) != 0:
                    checks.fail("sparsity", (j, i), "U row %d not zero at dependent position" % j)
            for i in range(j0, n + 1):
                if f.U.entry(i, j0) != 0:
                    checks.fail("sparsity", (i, j0), "nonzero U tail in dependent column %d" % j0)


def _apply_logical_columns(a: Matrix, col_map) -> Matrix:
    rows = a.to_rows()
    return Matrix([[rows[i][col_map[j] - 1] for j in range(a.cols)] for i in range(a.rows)], a.field)


# -- pivoted certification ------------------------------------------------------


def certify_pivoted(a: Matrix, f: PivotedFactorization) -> Certificate:
    """Check ``P A Q = L U``: reconstruction against the permuted input,
    triangularity, and the rank-revealing inner dimension."""
    checks = _Checks()
    rows = a.to_rows()
    permuted = Matrix(
        [[rows[f.P[i] - 1][f.Q[j] - 1] for j in range(a.cols)] for i in range(a.rows)],
        a.field, cols=a.cols,
    )
    max_residual = _check_reconstruction(permuted, f.L.matmul(f.U), checks)
    _check_triangular(f.L, lower=True, check="lower_tri", checks=checks)
    _check_triangular(f.U, lower=False, check="upper_tri", checks=checks)
    rank_ok = True
    if f.L.cols != f.U.rows:
        rank_ok = False
        checks.fail("rank", None, "inner dimensions of L and U differ")
    elif f.L.cols == f.rank:
        if independent_rank(a) != f.rank:
            rank_ok = False
            checks.fail("rank", None, "inner dimension %d differs from rank %d"
                        % (f.rank, independent_rank(a)))
    return Certificate(
        reconstruct_ok=checks.ok("reconstruct"),
        lower_tri_ok=checks.ok("lower_tri"),
        upper_tri_ok=checks.ok("upper_tri"),
        rank_revealing_ok=rank_ok,
        sparsity_ok=True,
        violations=tuple(checks.violations),
        max_residual=max_residual,
    )


# -- oblique projections ---------------------------------------------------------


@dataclass(frozen=True)
class ObliqueProjector:
    """The idempotent map onto range(X) along the orthogonal complement of
    range(Y), together with its complement ``Q_o = I - P``."""

    X: Matrix
    Y: Matrix
    P: Matrix

    @property
    def complement(self) -> Matrix:
        n = self.P.rows
        ident = Matrix.identity(n, self.P.field)
        return ident - self.P


def oblique_projector(x: Matrix, y: Matrix) -> ObliqueProjector:
    """Build ``P = X (Y^T X)^{-1} Y^T``.

    Requires X of full column rank (else a precondition error) and a
    nonsingular ``Y^T X`` (else a singularity error).  P is idempotent,
    fixes the columns of X, and annihilates every v with ``Y^T v = 0``.
    """
    if (x.rows, x.cols) != (y.rows, y.cols):
        raise PreconditionError("X and Y must share the same shape")
    if independent_rank(x) != x.cols:
        raise PreconditionError("X must have full column rank")
    ytx = y.transpose().matmul(x)
    inv = invert(ytx)
    p = x.matmul(inv).matmul(y.transpose())
    return ObliqueProjector(X=x, Y=y, P=p)


def invert(a: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; raises :class:`SingularityError` when
    the matrix is singular under its field's zero test."""
    require_square(a)
    n = a.rows
    field = a.field
    work = a.to_rows()
    ident = Matrix.identity(n, field).to_rows()
    for col in range(n):
        pivot_row = None
        best = None
        for i in range(col, n):
            if not field.is_zero(work[i][col]):
                if field.exact:
                    pivot_row = i
                    break
                if best is None or abs(work[i][col]) > best:
                    best = abs(work[i][col])
                    pivot_row = i
        if pivot_row is None:
            raise SingularityError("matrix is singular at column %d" % (col + 1))
        work[col], work[pivot_row] = work[pivot_row], work[col]
        ident[col], ident[pivot_row] = ident[pivot_row], ident[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        ident[col] = [v / pivot for v in ident[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [v - factor * w for v, w in zip(work[i], work[col])]
                ident[i] = [v - factor * w for v, w in zip(ident[i], ident[col])]
    return Matrix(ident, field)


def schur_oblique_state(a: Matrix, k: int) -> Matrix:
    """Projected elimination state before step ``k``: all rows of

        A[:,k:] - A[:,1:k-1] (A[1:k-1,1:k-1])^{-1} A[1:k-1,k:]

    Requires the leading ``(k-1)``-block to be nonsingular.  Column
    ``j - k + 1`` of the result is zero exactly for input columns ``j``
    dependent on columns ``1..k-1``; rows ``k..`` form the classical Schur
    complement.  ``k = 1`` returns the matrix unchanged.
    """
    if not 1 <= k <= a.cols + 1:
        raise PreconditionError("k must lie in 1..cols+1")
    if k == 1:
        return a.sub(1, a.rows, 1, a.cols)
    lead = a.sub(1, k - 1, 1, k - 1)
    if lead.rows != k - 1 or independent_rank(lead) != k - 1:
        raise PreconditionError("leading %d-block must be nonsingular" % (k - 1))
    left = a.sub(1, a.rows, 1, k - 1)
    top = a.sub(1, k - 1, k, a.cols)
    tail = a.sub(1, a.rows, k, a.cols)
    return tail - left.matmul(invert(lead)).matmul(top)
