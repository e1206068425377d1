"""Deterministic, seeded generators of structured test matrices.

Families
--------
``product-lu``
    ``L @ U`` with random triangular factors of inner dimension ``rank``
    (nonzero diagonals are not forced; the draw is verified against the
    rank and redrawn on the rare degenerate sample).  Always admits a
    permutation-free factorization.
``block-embed``
    The 3x3-block embedding ``[[0,0,0],[0,0,C],[0,B,D]]`` around a
    factorizable core B, which stays factorizable for any C, D.
``antidiagonal-trap``
    Plants the 2x2 antidiagonal ``[[0,1],[1,0]]`` behind an identity
    block so the nullity condition fails at a known leading index.
``unit-lower-feasible``
    ``L @ U`` with L unit lower triangular, so a unit-lower factorization
    exists; U has controlled rank.
``random``
    Unconstrained entries; may or may not be factorizable.

Identical specs produce identical matrices byte for byte.  Entries are
exact rationals with numerator and denominator drawn uniformly from
``[-entry_bound, entry_bound]`` (denominator nonzero).  Degenerate draws
are rejected and redrawn with an incremented stream counter, which keeps
the process deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .analysis import rank as _rank
from .errors import SpecError
from .matrix import Matrix

PRODUCT_LU = "product-lu"
BLOCK_EMBED = "block-embed"
ANTIDIAGONAL_TRAP = "antidiagonal-trap"
UNIT_LOWER_FEASIBLE = "unit-lower-feasible"
RANDOM = "random"

FAMILIES = (PRODUCT_LU, BLOCK_EMBED, ANTIDIAGONAL_TRAP, UNIT_LOWER_FEASIBLE, RANDOM)

#: Hard cap on reject-and-redraw attempts; generic draws essentially never
#: get near it, and hitting it indicates a spec that cannot be satisfied.
MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one generated matrix.

    ``cols`` extends the square families to rectangular output (only
    ``product-lu`` and ``random`` support it); ``None`` means square.
    """

    n: int
    rank: int = 0
    seed: int = 0
    entry_bound: int = 3
    family: str = RANDOM
    cols: int | None = None

    def validate(self) -> None:
        ncols = self.n if self.cols is None else self.cols
        if self.n < 0 or ncols < 0:
            raise SpecError("negative dimensions")
        if self.entry_bound < 1:
            raise SpecError("entry_bound must be >= 1")
        if self.family not in FAMILIES:
            raise SpecError("unknown family %r" % (self.family,))
        if self.family in (PRODUCT_LU, UNIT_LOWER_FEASIBLE) and not 0 <= self.rank <= min(self.n, ncols):
            raise SpecError("rank %d not in 0..%d" % (self.rank, min(self.n, ncols)))
        if self.family == BLOCK_EMBED:
            if self.n < 3:
                raise SpecError("block-embed needs n >= 3")
            if not 0 <= self.rank <= self.n // 3:
                raise SpecError("block-embed core rank %d not in 0..%d" % (self.rank, self.n // 3))
        if self.family == ANTIDIAGONAL_TRAP and self.n < 2:
            raise SpecError("antidiagonal-trap needs n >= 2")
        if self.cols is not None and self.family not in (PRODUCT_LU, RANDOM):
            raise SpecError("family %r is square-only" % (self.family,))


@dataclass(frozen=True)
class GeneratedMatrix:
    """A generated matrix plus provenance.

    ``witness_k`` is set for the trap family: the leading index at which
    the general existence condition is known to fail.  ``attempts`` counts
    redraws taken before a non-degenerate sample appeared.
    """

    matrix: Matrix
    spec: GenSpec
    witness_k: int | None
    attempts: int


def gen(spec: GenSpec) -> Matrix:
    """Generate the matrix for ``spec`` (deterministic)."""
    return gen_detailed(spec).matrix


def gen_detailed(spec: GenSpec) -> GeneratedMatrix:
    spec.validate()
    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random("%d:%s:%d" % (spec.seed, spec.family, attempt))
        matrix, witness, wanted_rank = _draw(spec, rng)
        if wanted_rank is None or _rank(matrix) == wanted_rank:
            return GeneratedMatrix(matrix=matrix, spec=spec, witness_k=witness, attempts=attempt)
    raise SpecError("could not draw a matrix matching %r" % (spec,))


def _draw(spec: GenSpec, rng: random.Random):
    n = spec.n
    cols = n if spec.cols is None else spec.cols
    bound = spec.entry_bound
    if spec.family == PRODUCT_LU:
        lmat = _random_lower(rng, n, spec.rank, bound)
        umat = _random_upper(rng, spec.rank, cols, bound)
        return lmat.matmul(umat), None, spec.rank
    if spec.family == BLOCK_EMBED:
        return _block_embed(spec, rng), None, None
    if spec.family == ANTIDIAGONAL_TRAP:
        return _antidiagonal_trap(spec, rng)
    if spec.family == UNIT_LOWER_FEASIBLE:
        return _unit_lower_feasible(spec, rng), None, spec.rank
    entries = [[_rand_fraction(rng, bound) for _ in range(cols)] for _ in range(n)]
    return Matrix(entries), None, None


def _rand_fraction(rng: random.Random, bound: int) -> Fraction:
    num = rng.randint(-bound, bound)
    den = rng.randint(-bound, bound)
    while den == 0:
        den = rng.randint(-bound, bound)
    return Fraction(num, den)


def _random_lower(rng: random.Random, rows: int, inner: int, bound: int) -> Matrix:
    return Matrix(
        [[_rand_fraction(rng, bound) if j <= i else Fraction(0) for j in range(inner)] for i in range(rows)]
    )


def _random_upper(rng: random.Random, inner: int, cols: int, bound: int) -> Matrix:
    return Matrix(
        [[_rand_fraction(rng, bound) if j >= i else Fraction(0) for j in range(cols)] for i in range(inner)]
    )


def _random_unit_lower(rng: random.Random, n: int, bound: int) -> Matrix:
    return Matrix(
        [
            [Fraction(1) if j == i else (_rand_fraction(rng, bound) if j < i else Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
    )


def _block_embed(spec: GenSpec, rng: random.Random) -> Matrix:
    """[[0,0,0],[0,0,C],[0,B,D]] with diagonal blocks (p, n0, n0), p >= n0.

    The embedding multiplies out as
    [[0,0],[C,0],[D,L]] @ [[0,0,I],[0,U,0]] for any C, D once B = L U,
    and those block factors are triangular exactly because p >= n0.
    """
    n, bound = spec.n, spec.entry_bound
    n0 = n // 3
    p = n - 2 * n0
    core_rank = min(spec.rank, n0)
    core_l = _random_lower(rng, n0, core_rank, bound)
    core_u = _random_upper(rng, core_rank, n0, bound)
    core = core_l.matmul(core_u)
    c_block = [[_rand_fraction(rng, bound) for _ in range(n0)] for _ in range(n0)]
    d_block = [[_rand_fraction(rng, bound) for _ in range(n0)] for _ in range(n0)]
    zero = Fraction(0)
    out = [[zero] * n for _ in range(n)]
    for i in range(n0):
        for j in range(n0):
            out[p + i][p + n0 + j] = c_block[i][j]          # C: middle rows, right cols
            out[p + n0 + i][p + j] = core.entry(i + 1, j + 1)  # B: bottom rows, middle cols
            out[p + n0 + i][p + n0 + j] = d_block[i][j]     # D: bottom rows, right cols
    return Matrix(out)


def _antidiagonal_trap(spec: GenSpec, rng: random.Random):
    """Identity block, then the antidiagonal 2x2, then random filler on the
    diagonal.  The nullity condition fails first at k = offset + 1."""
    n, bound = spec.n, spec.entry_bound
    offset = rng.randint(0, n - 2)
    zero = Fraction(0)
    out = [[zero] * n for _ in range(n)]
    for i in range(offset):
        out[i][i] = Fraction(1)
    out[offset][offset + 1] = Fraction(1)
    out[offset + 1][offset] = Fraction(1)
    for i in range(offset + 2, n):
        for j in range(offset + 2, n):
            out[i][j] = _rand_fraction(rng, bound)
    return Matrix(out), offset + 1, None


def _unit_lower_feasible(spec: GenSpec, rng: random.Random) -> Matrix:
    """L @ U1 @ U2 with L unit lower and U1, U2 upper with nonzero
    diagonals, so the product of the upper pair has rank exactly ``rank``."""
    n, r, bound = spec.n, spec.rank, spec.entry_bound
    lmat = _random_unit_lower(rng, n, bound)
    u1_rows = _random_upper(rng, n, r, bound).to_rows()
    u2_rows = _random_upper(rng, r, n, bound).to_rows()
    for i in range(r):
        u1_rows[i][i] = _rand_nonzero(rng, bound)
        u2_rows[i][i] = _rand_nonzero(rng, bound)
    upper = Matrix(u1_rows, cols=r).matmul(Matrix(u2_rows, cols=n))
    return lmat.matmul(upper)


def _rand_nonzero(rng: random.Random, bound: int) -> Fraction:
    value = _rand_fraction(rng, bound)
    while value == 0:
        value = _rand_fraction(rng, bound)
    return value


def fixture_specs(count: int, seed: int) -> list[tuple[GenSpec, str]]:
    """The deterministic mixed-family batch used for differential fixtures.

    Returns ``count`` pairs of (spec, mode) cycling through all families,
    sizes 1..6, with per-item seeds drawn from one master stream.  The
    derivation is intentionally simple so that an independent
    implementation can replay it from this description alone:

    master = random.Random("<seed>:fixture-mix"); for each index i,
    family = FAMILIES[i % 5]; draw n = master.randint(lo, 6) where lo is
    the family's minimum size (block-embed 3, trap 2, else 1); draw
    rank = master.randint(0, cap) with cap = n // 3 for block-embed else
    n; draw item_seed = master.getrandbits(63).  The mode is
    ``unit-lower`` for unit-lower-feasible always and for the random
    family at odd batch indices, else ``general``.  entry_bound is 3.
    """
    master = random.Random("%d:fixture-mix" % seed)
    out = []
    for i in range(count):
        family = FAMILIES[i % len(FAMILIES)]
        lo = {BLOCK_EMBED: 3, ANTIDIAGONAL_TRAP: 2}.get(family, 1)
        n = master.randint(lo, 6)
        cap = n // 3 if family == BLOCK_EMBED else n
        rank_draw = master.randint(0, cap)
        item_seed = master.getrandbits(63)
        spec = GenSpec(n=n, rank=rank_draw, seed=item_seed, entry_bound=3, family=family)
        if family == UNIT_LOWER_FEASIBLE or (family == RANDOM and i % 2 == 1):
            mode = "unit-lower"
        else:
            mode = "general"
        out.append((spec, mode))
    return out
