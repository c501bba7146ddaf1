from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from acyclica.linalg import (
    BIG_PRIME,
    GF,
    QQ,
    ColumnReducer,
    Field,
    column_rank,
    hadamard_bound,
    nullspace_mod,
    rank,
    rank_field,
)

matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def _columns(rows):
    return [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(len(rows[0]))]


def test_field_parse_and_validation():
    assert Field.parse("Q") == QQ
    assert Field.parse("GFp:7") == GF(7)
    assert str(GF(5)) == "GFp:5"
    with pytest.raises(ValueError):
        Field.parse("GFp:6")
    with pytest.raises(ValueError):
        Field.parse("R")


def test_big_prime_is_largest_below_2_62():
    assert sympy.isprime(BIG_PRIME)
    assert sympy.nextprime(BIG_PRIME) > 2**62


def test_rank_known():
    assert rank([[1, -1, 0], [-1, 0, 1], [0, 1, -1]]) == 2
    assert rank([[2, 0], [0, 2]], GF(2)) == 0
    assert rank(np.array([[0.5, 1.0], [1.0, 2.0]])) == 1


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_rank_mod_p_matches_sympy(rows, p):
    assert rank(rows, GF(p)) == _sympy_mod_rank(rows, p)


def _sympy_mod_rank(rows, p):
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF as SGF

    return DomainMatrix([[SGF(p)(v) for v in row] for row in rows], (len(rows), len(rows[0])), SGF(p)).rank()


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([QQ, GF(2), GF(3)]))
def test_column_reducer_rank_and_undo(rows, field):
    cols = _columns(rows)
    assert column_rank(cols, field) == rank(rows, field)
    red = ColumnReducer(field)
    snapshots = []
    pushed = []
    for c in cols:
        snapshots.append(dict(red.basis))
        pushed.append(red.push(c))
    for added, snap in zip(reversed(pushed), reversed(snapshots)):
        if added:
            red.pop()
        assert red.basis.keys() == snap.keys()
    assert red.rank == 0


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_nullspace_mod(rows, q):
    n = len(rows[0])
    basis = nullspace_mod(rows, n, q)
    assert len(basis) == n - rank(rows, GF(q))
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) % q == 0 for row in rows)
    if basis:
        assert rank(basis, GF(q)) == len(basis)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_certified_prime_rank_equals_rational(rows):
    cols = _columns(rows)
    f = rank_field(cols, len(rows), QQ)
    if f != QQ:
        assert f.order == BIG_PRIME
        assert hadamard_bound(cols, len(rows)) < BIG_PRIME
    assert column_rank(cols, f) == rank(rows)


def test_rank_falls_back_for_huge_entries():
    big = 2**40
    cols = [{0: big, 1: 1}, {0: 1, 1: big}]
    assert rank_field(cols, 2, QQ) == QQ
    assert column_rank(cols, QQ) == 2


def test_column_reducer_rational_pivots():
    red = ColumnReducer(QQ)
    assert red.push({0: 2, 1: 4})
    assert red.last_pivot == 1
    assert red.basis[1] == {0: Fraction(1, 2), 1: 1}
    assert red.contains({0: -1, 1: -2})
    assert not red.push({0: 1, 1: 2})


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_prime_rank_never_exceeds_rational(rows, p):
    assert rank(rows, GF(p)) <= rank(rows)
