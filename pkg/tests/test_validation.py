import math

import numpy as np
import pytest

from elastinv import CircleBoundary, FarField, StarCurve
from elastinv.validation import (check_ball, check_far_field, check_in_range, check_point, check_positive,
                                 check_star_curve)


def test_check_positive():
    assert check_positive(3, "n", integer=True) == 3
    assert check_positive(0.0, "delta", strict=False) == 0.0
    for bad, exc in ((0, ValueError), (-1.0, ValueError), (True, TypeError), (math.inf, ValueError)):
        with pytest.raises(exc):
            check_positive(bad, "x")
    with pytest.raises(TypeError):
        check_positive(2.5, "n", integer=True)


def test_check_in_range():
    assert check_in_range(1.0, "rho", 0.0, 1.0) == 1.0
    with pytest.raises(ValueError, match=r"\(0.0, 1.0\]"):
        check_in_range(0.0, "rho", 0.0, 1.0)


def test_check_point():
    assert np.array_equal(check_point((1, 2)), [1.0, 2.0])
    with pytest.raises(ValueError):
        check_point((1, np.nan))


def _grid(n):
    return 2 * np.pi * np.arange(n) / n


def test_far_field_arrays():
    ang = _grid(8)
    rows = np.column_stack([ang, np.ones(8), np.zeros(8), np.zeros(8), np.ones(8)])
    ff = check_far_field(rows, n_bar=4)
    assert not ff.phaseless and np.allclose(ff.psi, 1j)
    sq = check_far_field(np.column_stack([ang, np.ones(8), np.ones(8)]), phaseless=True)
    assert sq.phaseless
    with pytest.raises(ValueError, match="columns"):
        check_far_field(np.ones((8, 4)))
    with pytest.raises(ValueError, match="uniform"):
        check_far_field(np.column_stack([ang + 0.1, np.ones(8), np.ones(8)]))
    with pytest.raises(ValueError, match="directions"):
        check_far_field(FarField(ang, np.ones(8), np.ones(8)), n_bar=8)
    with pytest.raises(ValueError, match="phased"):
        check_far_field(sq, phaseless=False)


def test_star_curve_and_ball():
    c = StarCurve.circle((0, 0), 1.0)
    assert check_star_curve(c, 6) is c
    with pytest.raises(ValueError):
        check_star_curve(c, 4)
    with pytest.raises(TypeError):
        check_star_curve("circle")
    assert check_ball(None) is None
    assert check_ball(((5, 0), 0.5)).R == 0.5
    assert check_ball({"b1": 9, "b2": 0, "R": 0.5}).center[0] == 9
    ball = CircleBoundary((1, 1), 1)
    assert check_ball(ball) is ball
