from __future__ import annotations

from fractions import Fraction

import pytest

from acyclica.experiments import experiment_cubical_bounds


def test_unit_square_exact():
    rep = experiment_cubical_bounds(1, 1, 0, seed=0)
    assert rep.exact == Fraction(6, 5)
    assert (rep.N, rep.m, rep.upper) == (3, 4, 4)
    assert rep.lower == Fraction(6, 5) and rep.passed
    assert rep.mean is None


def test_grid_report_fields():
    rep = experiment_cubical_bounds(1, 4, 500, seed=1)
    assert (rep.N, rep.m, rep.upper) == (24, 40, 25)
    assert rep.lower == Fraction(300, 41)
    assert rep.exact is None and rep.passed
    d = rep.as_dict()
    assert d["lower"] == "300/41"


def test_cube_bounds():
    rep = experiment_cubical_bounds(2, 2, 200, seed=2)
    assert (rep.N, rep.m, rep.upper) == (28, 36, 54)
    assert rep.passed


def test_invalid():
    with pytest.raises(ValueError):
        experiment_cubical_bounds(0, 2, 10, seed=0)
