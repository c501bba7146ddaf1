from __future__ import annotations

import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acyclica.complex import (
    CellComplex,
    ComplexError,
    cubical_face_census,
    cubical_lattice,
    cycle_graph,
    dump_complex,
    elementary_symmetric,
    load_complex,
    simplicial_skeleton,
    spanning_acycle_size_cubical,
)
from acyclica.homology import betti


def _brute_cubes(sides, k):
    """Count products of unit or degenerate integer intervals with k unit factors."""
    factors = [[(a, a) for a in range(s + 1)] + [(a, a + 1) for a in range(s)] for s in sides]
    return sum(1 for cube in itertools.product(*factors) if sum(b - a for a, b in cube) == k)


def test_simplicial_counts():
    X = simplicial_skeleton(5, 2)
    assert X.dims == (5, 10, 10)
    for n in range(2, 7):
        for ell in range(0, min(n, 4)):
            assert simplicial_skeleton(n, ell).dims == tuple(math.comb(n, k + 1) for k in range(ell + 1))


def test_simplex_skeleton_signs():
    X = simplicial_skeleton(3, 1)
    # edges [0,1], [0,2], [1,2]; boundary of [a,b] = b - a
    assert X.boundary(1) == ({0: -1, 1: 1}, {0: -1, 2: 1}, {1: -1, 2: 1})


def test_validation_rejects_bad_boundary():
    with pytest.raises(ComplexError, match="1-cell 0"):
        CellComplex((2, 1), (({0: 1, 5: 1},),))
    with pytest.raises(ComplexError, match="2-cell 0"):
        # triangle whose boundary edges are all oriented the same way
        CellComplex((3, 3, 1), (({0: -1, 1: 1}, {0: -1, 2: 1}, {1: -1, 2: 1}), ({0: 1, 1: 1, 2: 1},)))
    with pytest.raises(ComplexError):
        CellComplex((2, 2), (({0: 1},),))


def test_load_rejects_out_of_range():
    with pytest.raises(ComplexError, match="out of range"):
        load_complex({"dims": [2, 1], "boundary": [{"k": 1, "entries": [[3, 0, 1]]}]})
    with pytest.raises(ComplexError, match="dims"):
        load_complex({"boundary": []})
    with pytest.raises(ComplexError, match="invalid JSON"):
        load_complex("{not json")


def test_json_round_trip(tmp_path):
    X = cubical_lattice((2, 1, 1))
    path = tmp_path / "x.json"
    dump_complex(X, path)
    Y = load_complex(str(path))
    assert Y == X and hash(Y) == hash(X)
    assert load_complex(X.to_json()) == X
    assert json.loads(X.to_json())["dims"] == list(X.dims)


def test_labels_ignored_by_equality():
    X = cycle_graph(3)
    doc = X.to_document()
    doc["labels"] = {"name": "triangle"}
    assert load_complex(doc) == X


def test_boundary_matrix_and_skeleton():
    X = simplicial_skeleton(4, 2)
    M = X.boundary_matrix(1).toarray()
    assert M.shape == (4, 6)
    assert ((X.boundary_matrix(1) @ X.boundary_matrix(2)).toarray() == 0).all()
    assert X.skeleton(1).dims == (4, 6)
    assert X.augmented_boundary(0) == ({0: 1},) * 4


def test_cubical_lattice_is_contractible():
    X = cubical_lattice((2, 2, 1), 3)
    assert [betti(X, k) for k in range(4)] == [1, 0, 0, 0]


def test_cubical_boundary_squares_to_zero():
    # construction validates d o d = 0 for every degree
    X = cubical_lattice((2, 2, 2), 3)
    assert X.dims == tuple(cubical_face_census((2, 2, 2), k) for k in range(4))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_census_matches_direct_enumeration(d):
    for sides in itertools.product(range(1, 5), repeat=d):
        for k in range(d + 1):
            assert cubical_face_census(sides, k) == _brute_cubes(sides, k)


def test_census_examples():
    assert cubical_face_census((2, 3), 1) == 17
    assert cubical_face_census((4, 4), 0) == 25
    assert cubical_face_census((4, 4), 1) == 40
    assert spanning_acycle_size_cubical((4, 4)) == 24
    assert spanning_acycle_size_cubical((2, 2, 2)) == 28


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.integers(0, 4))
def test_elementary_symmetric_generating_function(values, p):
    # coefficient of z^p in prod (1 + v z)
    import sympy

    z = sympy.Symbol("z")
    poly = sympy.Poly(sympy.prod([1 + v * z for v in values]), z)
    assert elementary_symmetric(values, p) == poly.coeff_monomial(z**p)


def test_cycle_graph():
    X = cycle_graph(4)
    assert X.dims == (4, 4)
    assert [betti(X, k) for k in range(2)] == [1, 1]
    with pytest.raises(ComplexError):
        cubical_lattice((0, 2))
