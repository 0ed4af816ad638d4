"""Tests for the floating-point Ad/exp check."""

import math
from itertools import product

import numpy as np
import pytest

from src.algebra.errors import BadParameter, DimensionMismatch, NonSquare
from src.algebra.matrix_numeric import (
    ad_exp_residual,
    ad_exp_table,
    matrix_exp,
)
from src.algebra.models import generate_model

ROTATION = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


class TestMatrixExp:
    """Test the truncated exponential series."""

    def test_zero(self):
        assert np.array_equal(matrix_exp(np.zeros((3, 3))), np.identity(3))

    def test_rotation(self):
        t = 0.3
        expected = np.array(
            [
                [math.cos(t), -math.sin(t), 0.0],
                [math.sin(t), math.cos(t), 0.0],
                [0.0, 0.0, 1.0],
            ]
        )
        assert np.max(np.abs(matrix_exp(t * ROTATION) - expected)) < 1e-12

    def test_diagonal(self):
        result = matrix_exp(np.diag([1.5, -2.0]))
        expected = np.diag([math.exp(1.5), math.exp(-2.0)])
        assert np.allclose(result, expected, rtol=1e-13, atol=0)

    def test_large_norm_is_scaled(self):
        a = 7.0 * ROTATION
        product_ = matrix_exp(a) @ matrix_exp(-a)
        assert np.max(np.abs(product_ - np.identity(3))) < 1e-12

    def test_transpose_commutes(self):
        a = np.array([[0.1, 0.4], [-0.2, 0.3]])
        assert np.allclose(matrix_exp(a.T), matrix_exp(a).T, atol=1e-14)

    def test_empty(self):
        assert matrix_exp(np.zeros((0, 0))).shape == (0, 0)

    def test_non_square(self):
        with pytest.raises(NonSquare):
            matrix_exp(np.zeros((2, 3)))

    def test_bad_tolerance(self):
        with pytest.raises(BadParameter):
            matrix_exp(np.zeros((2, 2)), tol=0)

    def test_non_finite(self):
        with pytest.raises(BadParameter):
            matrix_exp(np.array([[np.inf, 0.0], [0.0, 0.0]]))


class TestAdExpResidual:
    """Test Ad(exp(tX)) Y = exp(t ad_X) Y on matrix models."""

    def test_t_zero(self):
        assert ad_exp_residual("so3", (1, 2, 0), (0, 1, 1), 0.0) < 1e-14

    def test_so3_rotation(self):
        assert ad_exp_residual("so3", (0, 0, 1), (1, 0, 0), 0.1) < 1e-9

    def test_heis3_is_polynomial(self):
        assert ad_exp_residual("heis3", (1, 0, 0), (0, 1, 0), 0.7) < 1e-12

    @pytest.mark.parametrize(
        "model", ["so3", "sl2", "su2", "heis3", "e2", "so3xR", "gl:2"]
    )
    @pytest.mark.parametrize("t", [1.0, -1.0, 0.1, -0.1, 0.01, -0.01])
    def test_every_basis_pair(self, model, t):
        g = generate_model(model)
        for i, j in product(range(g.dim), repeat=2):
            assert ad_exp_residual(model, g.unit(i), g.unit(j), t) < 1e-8

    def test_mixed_vectors(self):
        residual = ad_exp_residual("e2", (1, 2, -1), (0, 3, 1), 0.5)
        assert residual < 1e-8

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ad_exp_residual("so3", (1, 0), (0, 1, 0), 0.1)


class TestAdExpTable:
    """Test the residual table over basis pairs."""

    def test_so3(self):
        rows = ad_exp_table("so3", 0.1)
        assert len(rows) == 9
        assert (rows[1].x, rows[1].y) == ("e1", "e2")
        assert all(row.passed for row in rows)

    def test_sl2_labels(self):
        rows = ad_exp_table("sl2", 1.0)
        assert [row.x for row in rows[:3]] == ["h", "h", "h"]
        assert [row.y for row in rows[:3]] == ["h", "e", "f"]

    def test_zero_acceptance_fails(self):
        rows = ad_exp_table("so3", 1.0, acceptance=0.0)
        assert not any(row.passed for row in rows)
