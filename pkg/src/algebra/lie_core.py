"""Lie algebras given by structure constants.

``c[i, j, k]`` is the coefficient of e_k in [e_i, e_j]. Values built with
``LieAlgebra.from_brackets`` store only i < j and complete the tensor
antisymmetrically; ``LieAlgebra(...)`` takes any tensor as-is so that
broken inputs can still be validated.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Optional

import numpy as np

from src.algebra.errors import BadParameter, DimensionMismatch
from src.algebra.exact_linalg import (
    RatMatrix,
    RatVector,
    inverse,
    rational_array,
    rational_vector,
)
from src.algebra.schemas import ValidationReport, Violation
from src.utils.logging_config import get_logger

logger = get_logger(__name__)

Vec = RatVector


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    basis: tuple[str, ...]
    c: np.ndarray

    def __post_init__(self):
        basis = tuple(self.basis)
        n = len(basis)
        c = rational_array(self.c)
        if c.shape != (n, n, n):
            raise DimensionMismatch(
                f"Structure tensor of shape {c.shape} for {n} basis vectors"
            )
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_brackets(
        cls,
        name: str,
        basis: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, Any]],
    ) -> "LieAlgebra":
        """Build from canonical pairs i < j: {(i, j): {k: coefficient}}."""
        n = len(basis)
        c = np.full((n, n, n), Fraction(0), dtype=object)
        for (i, j), coefficients in brackets.items():
            if not 0 <= i < j < n:
                raise BadParameter(
                    f"Bracket pair ({i}, {j}) is not i < j < {n}"
                )
            for k, value in coefficients.items():
                if not 0 <= k < n:
                    raise BadParameter(f"Basis index {k} out of range")
                c[i, j, k] = Fraction(value)
                c[j, i, k] = -Fraction(value)
        return cls(name, tuple(basis), c)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def unit(self, i: int) -> Vec:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def vector(self, coords: Sequence[Any]) -> Vec:
        if len(coords) != self.dim:
            raise DimensionMismatch(
                f"{len(coords)} coordinates for {self.name} of dim {self.dim}"
            )
        return rational_vector(coords)

    def structure_tensor(self) -> np.ndarray:
        return self.c

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.name == other.name
            and self.basis == other.basis
            and np.array_equal(self.c, other.c)
        )

    __hash__ = None


def bracket(g: LieAlgebra, x: Sequence[Any], y: Sequence[Any]) -> Vec:
    x, y = g.vector(x), g.vector(y)
    n = g.dim
    out = [Fraction(0)] * n
    for i, j in product(range(n), repeat=2):
        if x[i] and y[j]:
            weight = x[i] * y[j]
            for k in range(n):
                if g.c[i, j, k]:
                    out[k] += weight * g.c[i, j, k]
    return tuple(out)


def _jacobi(g: LieAlgebra, i: int, j: int, k: int) -> list[Fraction]:
    """Coordinates of [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]."""
    c, n = g.c, g.dim
    return [
        sum(
            (
                c[i, j, l] * c[l, k, m]
                + c[j, k, l] * c[l, i, m]
                + c[k, i, l] * c[l, j, m]
                for l in range(n)
            ),
            Fraction(0),
        )
        for m in range(n)
    ]


def validate_lie(g: LieAlgebra) -> ValidationReport:
    """Every antisymmetry and Jacobi failure of the structure tensor.

    The cyclic sum is the same for all rotations of (i, j, k), so each
    cyclic class is checked once, at its lexicographically smallest
    rotation. Every nonzero output coordinate m of that sum is its own
    violation with indices (i, j, k, m).
    """
    n = g.dim
    violations = []
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if g.c[i, j, k] != -g.c[j, i, k]:
                    violations.append(
                        Violation(
                            kind="antisymmetry",
                            indices=[i, j, k],
                            detail=f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]",
                        )
                    )
    for i, j, k in product(range(n), repeat=3):
        if (i, j, k) > min((j, k, i), (k, i, j)):
            continue
        cyclic_sum = _jacobi(g, i, j, k)
        for m, value in enumerate(cyclic_sum):
            if value != 0:
                violations.append(
                    Violation(
                        kind="jacobi",
                        indices=[i, j, k, m],
                        detail=(
                            f"cyclic sum on ({g.basis[i]}, {g.basis[j]}, "
                            f"{g.basis[k]}) has {g.basis[m]}-component {value}"
                        ),
                    )
                )
    if violations:
        logger.debug(
            "Lie algebra validation failed",
            algebra=g.name,
            violations=len(violations),
        )
    return ValidationReport(subject="lie", violations=violations)


def ad_matrix(g: LieAlgebra, x: Sequence[Any]) -> RatMatrix:
    """Matrix of y -> [x, y]; column j is [x, e_j]."""
    x = g.vector(x)
    n = g.dim
    return RatMatrix.from_rows(
        [
            [
                sum(
                    (x[i] * g.c[i, j, k] for i in range(n) if x[i]),
                    Fraction(0),
                )
                for j in range(n)
            ]
            for k in range(n)
        ],
        cols=n,
    )


def change_basis(
    g: LieAlgebra, p: RatMatrix, basis: Optional[Sequence[str]] = None
) -> LieAlgebra:
    """Rewrite g in the basis f_i = sum_j p[j][i] e_j.

    c'[a][b][l] = sum p[i][a] p[j][b] c[i][j][k] pinv[l][k]. Raises
    SingularMatrix when p is not invertible.
    """
    n = g.dim
    if p.shape != (n, n):
        raise DimensionMismatch(f"Basis change {p.shape} for dim {n}")
    p_inv = inverse(p)
    # brackets of new basis vectors, still in old coordinates
    images = [
        [bracket(g, p.column(a), p.column(b)) for b in range(n)]
        for a in range(n)
    ]
    c = np.empty((n, n, n), dtype=object)
    for a, b in product(range(n), repeat=2):
        new_coords = p_inv.apply(images[a][b])
        for l in range(n):
            c[a, b, l] = new_coords[l]
    return LieAlgebra(g.name, tuple(basis) if basis else g.basis, c)


def killing_form(g: LieAlgebra) -> RatMatrix:
    """B(e_i, e_j) = trace(ad_{e_i} ad_{e_j})."""
    ads = [ad_matrix(g, g.unit(i)) for i in range(g.dim)]
    return RatMatrix.from_rows(
        [
            [(ads[i] @ ads[j]).trace() for j in range(g.dim)]
            for i in range(g.dim)
        ],
        cols=g.dim,
    )
