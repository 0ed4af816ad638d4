"""Tests for Lie algebras given by structure constants."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from src.algebra.errors import BadParameter, DimensionMismatch, SingularMatrix
from src.algebra.exact_linalg import RatMatrix, inverse
from src.algebra.lie_core import (
    LieAlgebra,
    ad_matrix,
    bracket,
    change_basis,
    killing_form,
    validate_lie,
)
from src.algebra.models import generate_model


def random_vector(rng, n):
    return tuple(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)
    )


class TestBracket:
    """Test bracket evaluation."""

    def test_so3(self, so3):
        assert bracket(so3, so3.unit(0), so3.unit(1)) == so3.unit(2)

    def test_self_bracket_vanishes(self, sl2, rng):
        x = random_vector(rng, 3)
        assert bracket(sl2, x, x) == (0, 0, 0)

    def test_heis3(self, heis3):
        x, y, z = heis3.unit(0), heis3.unit(1), heis3.unit(2)
        assert bracket(heis3, x, y) == z
        assert bracket(heis3, z, x) == (0, 0, 0)

    def test_dimension_mismatch(self, so3):
        with pytest.raises(DimensionMismatch):
            bracket(so3, (1, 0), (0, 1, 0))


class TestValidateLie:
    """Test antisymmetry and Jacobi validation."""

    def test_so3_valid(self, so3):
        assert validate_lie(so3).ok

    def test_antisymmetry_violation(self):
        c = np.full((2, 2, 2), Fraction(0), dtype=object)
        c[0, 1, 0] = 1
        c[1, 0, 0] = 1
        report = validate_lie(LieAlgebra("bad", ("a", "b"), c))
        violation = report.first("antisymmetry")
        assert violation.indices == [0, 1, 0]

    def test_jacobi_against_direct_sum(self):
        # [e1,e2]=e1, [e2,e3]=e3
        g = LieAlgebra.from_brackets(
            "broken", ("e1", "e2", "e3"), {(0, 1): {0: 1}, (1, 2): {2: 1}}
        )
        c = g.c
        direct = any(
            sum(
                c[i, j, l] * c[l, k, m]
                + c[j, k, l] * c[l, i, m]
                + c[k, i, l] * c[l, j, m]
                for l in range(3)
            )
            != 0
            for i in range(3)
            for j in range(3)
            for k in range(3)
            for m in range(3)
        )
        report = validate_lie(g)
        assert (report.first("jacobi") is not None) == direct

    def test_jacobi_violation_witness(self):
        # [e1,e2]=e3, [e1,e3]=e1 is not a Lie algebra
        g = LieAlgebra.from_brackets(
            "broken", ("e1", "e2", "e3"), {(0, 1): {2: 1}, (0, 2): {0: 1}}
        )
        violation = validate_lie(g).first("jacobi")
        assert violation is not None
        assert violation.indices[:3] == [0, 1, 2]

    def test_jacobi_reports_every_failing_component(self):
        # [e1,e2]=e3, [e1,e3]=e3, [e2,e3]=e2: the cyclic sum is e2 - e3
        g = LieAlgebra.from_brackets(
            "broken",
            ("e1", "e2", "e3"),
            {(0, 1): {2: 1}, (0, 2): {2: 1}, (1, 2): {1: 1}},
        )
        c = g.c
        expected = set()
        for i, j, k in product(range(3), repeat=3):
            if (i, j, k) > min((j, k, i), (k, i, j)):
                continue
            for m in range(3):
                value = sum(
                    c[i, j, l] * c[l, k, m]
                    + c[j, k, l] * c[l, i, m]
                    + c[k, i, l] * c[l, j, m]
                    for l in range(3)
                )
                if value != 0:
                    expected.add((i, j, k, m))
        reported = {
            tuple(v.indices)
            for v in validate_lie(g).violations
            if v.kind == "jacobi"
        }
        assert reported == expected
        assert expected == {(0, 1, 2, 1), (0, 1, 2, 2)}

    def test_from_brackets_needs_canonical_pairs(self):
        with pytest.raises(BadParameter):
            LieAlgebra.from_brackets("x", ("a", "b"), {(1, 0): {0: 1}})

    def test_bad_tensor_shape(self):
        with pytest.raises(DimensionMismatch):
            LieAlgebra("x", ("a", "b"), np.zeros((2, 2, 3), dtype=object))


class TestAdMatrix:
    """Test adjoint matrices."""

    def test_abelian(self):
        g = generate_model("abelian:3")
        assert ad_matrix(g, (1, 2, 3)).is_zero()

    def test_so3_rotation(self, so3):
        ad = ad_matrix(so3, so3.unit(2))
        assert ad.column(0) == so3.unit(1)
        assert ad.column(1) == tuple(-v for v in so3.unit(0))

    @pytest.mark.parametrize("name", ["so3", "sl2"])
    def test_traceless(self, name):
        g = generate_model(name)
        for i in range(g.dim):
            assert ad_matrix(g, g.unit(i)).trace() == 0

    def test_linear(self, sl2, rng):
        x, y = random_vector(rng, 3), random_vector(rng, 3)
        a, b = Fraction(2, 3), Fraction(-5, 2)
        combined = tuple(a * p + b * q for p, q in zip(x, y))
        expected = ad_matrix(sl2, x).scale(a) + ad_matrix(sl2, y).scale(b)
        assert ad_matrix(sl2, combined) == expected

    @pytest.mark.parametrize("name", ["so3", "sl2", "heis3", "e2", "gl:2"])
    def test_ad_is_a_homomorphism(self, name, rng):
        g = generate_model(name)
        x, y = random_vector(rng, g.dim), random_vector(rng, g.dim)
        ad_x, ad_y = ad_matrix(g, x), ad_matrix(g, y)
        assert ad_matrix(g, bracket(g, x, y)) == ad_x @ ad_y - ad_y @ ad_x


class TestChangeBasis:
    """Test basis changes of structure constants."""

    def test_identity(self, so3):
        assert change_basis(so3, RatMatrix.identity(3)) == so3

    def test_scaled_so3(self, so3):
        changed = change_basis(so3, RatMatrix.diagonal([1, 1, 2]))
        assert bracket(changed, changed.unit(0), changed.unit(1)) == (
            0,
            0,
            Fraction(1, 2),
        )
        assert validate_lie(changed).ok

    def test_round_trip(self, sl2):
        p = RatMatrix.from_rows([[1, 1, 0], [0, 1, 2], [1, 0, 1]])
        back = change_basis(change_basis(sl2, p), inverse(p))
        assert back == sl2

    def test_singular(self, so3):
        with pytest.raises(SingularMatrix):
            change_basis(so3, RatMatrix.diagonal([1, 0, 1]))


class TestKillingForm:
    """Test the Killing form."""

    def test_so3(self, so3):
        assert killing_form(so3) == RatMatrix.diagonal([-2, -2, -2])

    def test_sl2(self, sl2):
        assert killing_form(sl2) == RatMatrix.from_rows(
            [[8, 0, 0], [0, 0, 4], [0, 4, 0]]
        )

    def test_nilpotent_is_zero(self, heis3):
        assert killing_form(heis3).is_zero()
