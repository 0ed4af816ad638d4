"""Bilinear products alpha on m, stored as a[i][j][k] with
alpha(e_i, e_j) = sum_k a[i][j][k] e_k.

Any bilinear map is a valid AlphaTensor; invariance and the algebraic
identities are computed properties (see connections and identities).
"""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from src.algebra.errors import DimensionMismatch
from src.algebra.exact_linalg import (
    RatMatrix,
    RatVector,
    contract,
    first_nonzero,
    rational_array,
    rational_vector,
    zeros_tensor,
)


@dataclass(frozen=True, eq=False)
class AlphaTensor:
    mdim: int
    a: np.ndarray

    def __post_init__(self):
        a = rational_array(self.a)
        if a.shape != (self.mdim,) * 3:
            raise DimensionMismatch(
                f"Alpha tensor of shape {a.shape} for mdim {self.mdim}"
            )
        object.__setattr__(self, "a", a)

    @classmethod
    def zeros(cls, mdim: int) -> "AlphaTensor":
        return cls(mdim, zeros_tensor((mdim,) * 3))

    @classmethod
    def from_vector(cls, mdim: int, values: Sequence[Any]) -> "AlphaTensor":
        """Inverse of ``flat``: entry (i, j, k) sits at (i*n + j)*n + k."""
        if len(values) != mdim**3:
            raise DimensionMismatch(
                f"{len(values)} values for an alpha tensor of mdim {mdim}"
            )
        array = np.empty(len(values), dtype=object)
        array[:] = [Fraction(v) for v in values]
        return cls(mdim, array.reshape((mdim,) * 3))

    def flat(self) -> RatVector:
        return tuple(self.a.reshape(-1))

    def product(self, x: Sequence[Any], y: Sequence[Any]) -> RatVector:
        """alpha(x, y) for coordinate vectors on m."""
        x, y = self._vector(x), self._vector(y)
        return tuple(
            sum(
                (
                    x[i] * y[j] * self.a[i, j, k]
                    for i in range(self.mdim)
                    if x[i]
                    for j in range(self.mdim)
                    if y[j]
                ),
                Fraction(0),
            )
            for k in range(self.mdim)
        )

    def swapped(self) -> np.ndarray:
        """a[j][i][k], the tensor of (x, y) -> alpha(y, x)."""
        return contract("jik->ijk", self.a)

    def _vector(self, coords: Sequence[Any]) -> RatVector:
        if len(coords) != self.mdim:
            raise DimensionMismatch(
                f"{len(coords)} coordinates on m of dimension {self.mdim}"
            )
        return rational_vector(coords)

    def _check_same(self, other: "AlphaTensor") -> None:
        if self.mdim != other.mdim:
            raise DimensionMismatch(
                f"Alpha tensors of mdim {self.mdim} and {other.mdim}"
            )

    def __add__(self, other: "AlphaTensor") -> "AlphaTensor":
        self._check_same(other)
        return AlphaTensor(self.mdim, self.a + other.a)

    def __sub__(self, other: "AlphaTensor") -> "AlphaTensor":
        self._check_same(other)
        return AlphaTensor(self.mdim, self.a - other.a)

    def scale(self, factor: Any) -> "AlphaTensor":
        return AlphaTensor(self.mdim, self.a * Fraction(factor))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlphaTensor):
            return NotImplemented
        return self.mdim == other.mdim and np.array_equal(self.a, other.a)

    __hash__ = None


def derivation_residual(a: np.ndarray, op: RatMatrix) -> np.ndarray:
    """r[x][y][l]: the e_l-coefficient of
    op(alpha(x, y)) - alpha(op x, y) - alpha(x, op y)."""
    n = a.shape[0]
    if op.shape != (n, n):
        raise DimensionMismatch(f"Operator {op.shape} on m of dim {n}")
    o = op.to_array()
    return (
        contract("xyp,lp->xyl", a, o)
        - contract("px,pyl->xyl", o, a)
        - contract("py,xpl->xyl", o, a)
    )


def derivation_witness(
    alpha: AlphaTensor, op: RatMatrix
) -> Optional[list[int]]:
    """First basis pair (x, y) where op fails to be a derivation."""
    return first_nonzero(derivation_residual(alpha.a, op), width=2)
