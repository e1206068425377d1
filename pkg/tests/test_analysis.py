import random

import pytest
from fractions import Fraction

from conftest import minor_rank, mixed_corpus

from lu_general import (
    GenSpec,
    Matrix,
    ShapeError,
    existence_report,
    gen,
    nullity,
    rank,
    sylvester_nullity_check,
)
from lu_general.generate import PRODUCT_LU

SINGULAR_3X3 = Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])


def test_rank_permutation_matrix():
    assert rank(Matrix([[0, 1], [1, 0]])) == 2


def test_rank_singular_example():
    assert rank(SINGULAR_3X3) == 2


def test_rank_of_inner_dimension_3_product():
    a = gen(GenSpec(n=5, rank=3, seed=11, family=PRODUCT_LU))
    assert rank(a) == 3
    assert minor_rank(a) == 3


def test_nullity_examples():
    assert nullity(Matrix([[0]])) == 1
    assert nullity(Matrix.identity(4)) == 0
    assert nullity(SINGULAR_3X3) == 3 - minor_rank(SINGULAR_3X3)


def test_existence_report_antidiagonal():
    rep = existence_report(Matrix([[0, 1], [1, 0]]))
    first = rep.per_k[0]
    assert (first.null_principal, first.null_col_block, first.null_row_block) == (1, 0, 0)
    assert not first.general_ok
    assert not rep.general_exists


def test_existence_report_singular_example():
    rep = existence_report(SINGULAR_3X3)
    assert rep.general_exists
    assert not rep.unit_lower_exists
    k2 = rep.per_k[1]
    assert (k2.null_principal, k2.null_col_block) == (2, 1)


def test_existence_report_identity():
    rep = existence_report(Matrix.identity(4))
    for row in rep.per_k:
        assert (row.null_principal, row.null_col_block, row.null_row_block) == (0, 0, 0)
    assert rep.general_exists and rep.unit_lower_exists and rep.unit_upper_exists


def test_existence_report_requires_square():
    with pytest.raises(ShapeError):
        existence_report(Matrix([[1, 2]]))


def test_sylvester_trivial_cases():
    i3 = Matrix.identity(3)
    assert sylvester_nullity_check(i3, i3)
    nil = Matrix([[0, 1], [0, 0]])
    assert sylvester_nullity_check(nil, nil)


def test_sylvester_random_pairs():
    rng = random.Random(7)

    def draw():
        return Matrix(
            [[Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3))) for _ in range(4)] for _ in range(4)]
        )

    for _ in range(200):
        assert sylvester_nullity_check(draw(), draw())


def test_transpose_symmetry_of_general_condition():
    for a in mixed_corpus(60, seed=21):
        if not a.is_square or a.rows == 0:
            continue
        rep = existence_report(a)
        rep_t = existence_report(a.transpose())
        assert rep.general_exists == rep_t.general_exists


def test_unit_duality_under_transpose():
    for a in mixed_corpus(60, seed=22):
        rep = existence_report(a)
        rep_t = existence_report(a.transpose())
        assert rep.unit_lower_exists == rep_t.unit_upper_exists
        assert rep.unit_upper_exists == rep_t.unit_lower_exists


def test_nonsingular_general_iff_strongly_nonsingular():
    rng = random.Random(5)
    found_nonsingular = 0
    for _ in range(120):
        n = rng.randint(1, 4)
        a = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        if minor_rank(a) != n:
            continue
        found_nonsingular += 1
        rep = existence_report(a)
        strongly = all(minor_rank(a.sub(1, k, 1, k)) == k for k in range(1, n + 1))
        assert rep.general_exists == strongly
    assert found_nonsingular >= 30


def test_singular_cannot_satisfy_both_unit_conditions():
    # For a singular matrix at least one unit family must fail: both holding
    # for every k forces all three per-k nullities equal, which pins the
    # leading blocks to full rank.
    checked = 0
    for a in mixed_corpus(120, seed=23):
        if rank(a) == a.rows:
            continue
        checked += 1
        rep = existence_report(a)
        assert not (rep.unit_lower_exists and rep.unit_upper_exists)
    assert checked >= 20


def test_elimination_rank_matches_minor_oracle_on_small_random():
    rng = random.Random(99)
    for _ in range(500):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        a = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(m)] for _ in range(n)], cols=m)
        assert rank(a) == minor_rank(a)
