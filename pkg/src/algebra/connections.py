"""Invariant affine connections on reductive homogeneous spaces.

An invariant connection is determined by a bilinear product alpha on m
that the isotropy acts on by automorphisms. The isotropy action is used
infinitesimally: alpha is invariant when every ad_U (U in h), restricted
to m, is a derivation of alpha. For connected H this is the same as
Ad(H)-invariance.

Torsion and curvature at the base point:

    T(X, Y)    = alpha(X, Y) - alpha(Y, X) - X.Y
    R(X, Y)Z   = alpha(X, alpha(Y, Z)) - alpha(Y, alpha(X, Z))
                 - alpha(X.Y, Z) - [X, Y, Z]
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from itertools import product
from typing import Any, Optional

import numpy as np

from src.algebra.alpha import AlphaTensor, derivation_witness
from src.algebra.errors import DimensionMismatch
from src.algebra.exact_linalg import (
    RatMatrix,
    contract,
    is_zero,
    null_space_basis,
    solve_affine,
)
from src.algebra.lie_core import LieAlgebra, ad_matrix
from src.algebra.reductive import (
    Decomposition,
    binary_product,
    require_reductive,
    ternary_product,
)
from src.algebra.schemas import ConnectionFlags
from src.utils.logging_config import get_logger

__all__ = [
    "AlphaTensor",
    "ConnectionKind",
    "ConnectionSpace",
    "bi_invariant_connection_space",
    "classify_connection",
    "connection_from_coordinates",
    "curvature",
    "distinguished_alpha",
    "equivariance_witness",
    "flatness_residual",
    "invariant_connection_space",
    "isotropy_operators",
    "nomizu_operator",
    "symmetric_anticommutative_solutions",
    "torsion",
]

logger = get_logger(__name__)


class ConnectionKind(StrEnum):
    NATURAL = "natural"
    CANONICAL = "canonical"


@dataclass(frozen=True)
class ConnectionSpace:
    mdim: int
    basis: tuple[AlphaTensor, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def isotropy_operators(g: LieAlgebra, d: Decomposition) -> list[RatMatrix]:
    """ad_U restricted to m for each h basis vector U, in h order."""
    m = d.m_idx
    return [
        RatMatrix.from_rows(
            [
                [g.c[u, m[x], m[l]] for x in range(d.mdim)]
                for l in range(d.mdim)
            ],
            cols=d.mdim,
        )
        for u in d.h_idx
    ]


def _equivariance_system(mdim: int, operators: list[RatMatrix]) -> RatMatrix:
    """Rows: one per (operator, x, y, l); columns: unknowns a[i][j][k]
    flattened as (i*n + j)*n + k."""
    n = mdim

    def unknown(i: int, j: int, k: int) -> int:
        return (i * n + j) * n + k

    rows = []
    for op in operators:
        for x, y, l in product(range(n), repeat=3):
            row = [Fraction(0)] * n**3
            for p in range(n):
                # op(alpha(x, y)) - alpha(op x, y) - alpha(x, op y)
                row[unknown(x, y, p)] += op[l, p]
                row[unknown(p, y, l)] -= op[p, x]
                row[unknown(x, p, l)] -= op[p, y]
            rows.append(row)
    return RatMatrix.from_rows(rows, cols=n**3)


def _solve_space(mdim: int, operators: list[RatMatrix]) -> ConnectionSpace:
    system = _equivariance_system(mdim, operators)
    basis = tuple(
        AlphaTensor.from_vector(mdim, vector)
        for vector in null_space_basis(system)
    )
    logger.debug(
        "Solved equivariance system",
        unknowns=system.cols,
        equations=system.rows,
        dimension=len(basis),
    )
    return ConnectionSpace(mdim, basis)


def invariant_connection_space(
    g: LieAlgebra, d: Decomposition
) -> ConnectionSpace:
    """Basis of the alpha tensors on m invariant under ad_h."""
    require_reductive(g, d)
    return _solve_space(d.mdim, isotropy_operators(g, d))


def bi_invariant_connection_space(g: LieAlgebra) -> ConnectionSpace:
    """Group case alpha on all of g with every ad_X a derivation."""
    operators = [ad_matrix(g, g.unit(i)) for i in range(g.dim)]
    return _solve_space(g.dim, operators)


def connection_from_coordinates(
    space: ConnectionSpace, coeffs: Sequence[Any]
) -> AlphaTensor:
    if len(coeffs) != space.dim:
        raise DimensionMismatch(
            f"{len(coeffs)} coordinates for a space of dimension {space.dim}"
        )
    alpha = AlphaTensor.zeros(space.mdim)
    for coeff, element in zip(coeffs, space.basis):
        if coeff:
            alpha = alpha + element.scale(coeff)
    return alpha


def distinguished_alpha(
    kind: ConnectionKind | str, g: LieAlgebra, d: Decomposition
) -> AlphaTensor:
    """natural: alpha = X.Y / 2; canonical: alpha = 0."""
    kind = ConnectionKind(kind)
    b = binary_product(g, d)
    if kind is ConnectionKind.NATURAL:
        return AlphaTensor(d.mdim, b * Fraction(1, 2))
    return AlphaTensor.zeros(d.mdim)


def _check_alpha(alpha: AlphaTensor, d: Decomposition) -> None:
    if alpha.mdim != d.mdim:
        raise DimensionMismatch(
            f"Alpha tensor on mdim {alpha.mdim}, decomposition has "
            f"mdim {d.mdim}"
        )


def nomizu_operator(alpha: AlphaTensor, x: Sequence[Any]) -> RatMatrix:
    """L_X = alpha(X, .); column j is alpha(X, e_j)."""
    n = alpha.mdim
    columns = [
        alpha.product(x, [Fraction(int(k == j)) for k in range(n)])
        for j in range(n)
    ]
    return RatMatrix.from_columns(columns, rows=n)


def torsion(
    alpha: AlphaTensor, g: LieAlgebra, d: Decomposition
) -> np.ndarray:
    _check_alpha(alpha, d)
    return alpha.a - alpha.swapped() - binary_product(g, d)


def curvature(
    alpha: AlphaTensor, g: LieAlgebra, d: Decomposition
) -> np.ndarray:
    """R[i][j][k][l]: e_l-coefficient of R(e_i, e_j) e_k."""
    _check_alpha(alpha, d)
    a = alpha.a
    b = binary_product(g, d)
    return (
        contract("jkp,ipl->ijkl", a, a)
        - contract("ikp,jpl->ijkl", a, a)
        - contract("ijp,pkl->ijkl", b, a)
        - ternary_product(g, d)
    )


def equivariance_witness(
    alpha: AlphaTensor, g: LieAlgebra, d: Decomposition
) -> Optional[list[int]]:
    """(u, x, y): global h index and m-local pair where ad_u is not a
    derivation of alpha, or None if alpha is invariant."""
    _check_alpha(alpha, d)
    require_reductive(g, d)
    for u, op in zip(d.h_idx, isotropy_operators(g, d)):
        witness = derivation_witness(alpha, op)
        if witness is not None:
            return [u, *witness]
    return None


def classify_connection(
    alpha: AlphaTensor, g: LieAlgebra, d: Decomposition
) -> ConnectionFlags:
    symmetric = is_zero(torsion(alpha, g, d))
    flat = is_zero(curvature(alpha, g, d))
    anticommutative = is_zero(alpha.a + alpha.swapped())
    return ConnectionFlags(
        symmetric=symmetric,
        flat=flat,
        anticommutative=anticommutative,
        equivariant=equivariance_witness(alpha, g, d) is None,
        geodesic_orbits=anticommutative,
        left_symmetric_structure=(
            symmetric and flat if d.is_group_case else None
        ),
    )


def symmetric_anticommutative_solutions(
    space: ConnectionSpace, g: LieAlgebra, d: Decomposition
) -> tuple[Optional[AlphaTensor], list[AlphaTensor]]:
    """Affine set of alpha in ``space`` with zero torsion and
    alpha(X, Y) = -alpha(Y, X), as (particular solution, kernel).

    Zero torsion is a - a^T = b, anticommutativity is a + a^T = 0; the
    unknowns are the coordinates in ``space``.
    """
    if space.mdim != d.mdim:
        raise DimensionMismatch(
            f"Connection space on mdim {space.mdim}, decomposition has "
            f"mdim {d.mdim}"
        )
    b = binary_product(g, d)
    columns = [
        tuple(element.a.reshape(-1) - element.swapped().reshape(-1))
        + tuple(element.a.reshape(-1) + element.swapped().reshape(-1))
        for element in space.basis
    ]
    rhs = tuple(b.reshape(-1)) + (Fraction(0),) * b.size
    system = RatMatrix.from_columns(columns, rows=len(rhs))
    particular, kernel = solve_affine(system, rhs)
    return (
        None
        if particular is None
        else connection_from_coordinates(space, particular),
        [connection_from_coordinates(space, vector) for vector in kernel],
    )


def flatness_residual(alpha: AlphaTensor, g: LieAlgebra) -> np.ndarray:
    """Group case: [L_X, L_Y] - L_{X.Y} on basis pairs, as a rank-4
    tensor r[x][y][k][l]. Zero exactly when alpha is flat."""
    a, c = alpha.a, g.c
    if alpha.mdim != g.dim:
        raise DimensionMismatch("Flatness residual needs alpha on all of g")
    return (
        contract("ykp,xpl->xykl", a, a)
        - contract("xkp,ypl->xykl", a, a)
        - contract("xyp,pkl->xykl", c, a)
    )

