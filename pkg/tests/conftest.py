"""Shared test helpers: independent oracles and corpus builders.

The oracles here are deliberately written from the definitions (Leibniz
determinants, exhaustive minor enumeration) and share no code with the
library paths they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from lu_general import GenSpec, Matrix, gen
from lu_general.generate import ANTIDIAGONAL_TRAP, BLOCK_EMBED, PRODUCT_LU, RANDOM, UNIT_LOWER_FEASIBLE


def leibniz_det(rows) -> Fraction:
    """Determinant by the permutation-sum definition (sizes <= 5)."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions for the sign
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= rows[i][perm[i]]
            if term == 0:
                break
        total += sign * term
    return total


def minor_rank(a: Matrix) -> int:
    """Largest size of a nonzero minor, straight from the definition."""
    rows = a.to_rows()
    m, n = a.rows, a.cols
    for size in range(min(m, n), 0, -1):
        for ri in itertools.combinations(range(m), size):
            for ci in itertools.combinations(range(n), size):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if leibniz_det(sub) != 0:
                    return size
    return 0


def prefix_col_independent(a: Matrix, j: int) -> bool:
    """Whether column j (1-based) of A is independent of columns 1..j-1."""
    before = minor_rank(a.sub(1, a.rows, 1, j - 1)) if j > 1 else 0
    return minor_rank(a.sub(1, a.rows, 1, j)) == before + 1


def mixed_corpus(count: int, seed: int, families=None, sizes=(1, 6)):
    """Deterministic list of generated matrices cycling through families."""
    import random

    families = families or (PRODUCT_LU, BLOCK_EMBED, ANTIDIAGONAL_TRAP, RANDOM)
    rng = random.Random("corpus:%d" % seed)
    lo_default, hi = sizes
    out = []
    for i in range(count):
        family = families[i % len(families)]
        lo = {BLOCK_EMBED: 3, ANTIDIAGONAL_TRAP: 2}.get(family, lo_default)
        n = rng.randint(max(lo, lo_default), hi)
        cap = n // 3 if family == BLOCK_EMBED else n
        r = rng.randint(0, cap)
        spec = GenSpec(n=n, rank=r, seed=rng.getrandbits(63), entry_bound=3, family=family)
        out.append(gen(spec))
    return out


def tampered(mat: Matrix, i: int, j: int, delta) -> Matrix:
    rows = mat.to_rows()
    rows[i - 1][j - 1] = rows[i - 1][j - 1] + delta
    return Matrix(rows, mat.field, cols=mat.cols)
