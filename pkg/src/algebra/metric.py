"""Invariant (pseudo-)metrics on m and the Levi-Civita connection.

A metric is a symmetric nondegenerate rational matrix G on m with
G[i][j] = g(e_i, e_j), invariant under ad_h:

    g([U, X], Y) + g(X, [U, Y]) = 0.

Indefinite metrics are fine. The Levi-Civita product alpha is the unique
torsion-free alpha with g(alpha(X, Y), Z) + g(Y, alpha(X, Z)) = 0; it is
found by one Gram solve per basis pair from

    2 g(alpha(X, Y), Z) = g(X.Y, Z) - g(X.Z, Y) - g(X, Y.Z).
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Optional

import numpy as np

from src.algebra.alpha import AlphaTensor
from src.algebra.connections import isotropy_operators, torsion
from src.algebra.errors import DimensionMismatch
from src.algebra.exact_linalg import (
    RatMatrix,
    contract,
    determinant,
    first_nonzero,
    null_space_basis,
    solve_symmetric,
)
from src.algebra.lie_core import LieAlgebra
from src.algebra.reductive import (
    Decomposition,
    binary_product,
    require_reductive,
)
from src.algebra.schemas import MetricReport, ValidationReport, Violation
from src.utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class MetricTensor:
    g: RatMatrix

    @property
    def mdim(self) -> int:
        return self.g.rows


def _check_metric(met: MetricTensor, d: Decomposition) -> None:
    if met.g.shape != (d.mdim, d.mdim):
        raise DimensionMismatch(
            f"Metric of shape {met.g.shape} on m of dimension {d.mdim}"
        )


def _invariance_residual(op: RatMatrix, gram: RatMatrix) -> RatMatrix:
    # [x][y] entry: g(op x, y) + g(x, op y)
    return op.transpose() @ gram + gram @ op


def validate_metric(
    g: LieAlgebra, d: Decomposition, met: MetricTensor
) -> ValidationReport:
    """Symmetry, nondegeneracy and ad_h-invariance, with global-index
    witnesses: (i, j) for symmetry, (u, x, y) for invariance."""
    _check_metric(met, d)
    m, gram = d.m_idx, met.g
    violations = []
    for i, j in combinations_with_replacement(range(d.mdim), 2):
        if gram[i, j] != gram[j, i]:
            violations.append(
                Violation(
                    kind="symmetry",
                    indices=[m[i], m[j]],
                    detail=f"g[{i}][{j}] != g[{j}][{i}]",
                )
            )
    if determinant(gram) == 0:
        violations.append(
            Violation(kind="degenerate", indices=[], detail="det(g) = 0")
        )
    for u, op in zip(d.h_idx, isotropy_operators(g, d)):
        residual = _invariance_residual(op, gram)
        hit = next(
            (
                (x, y)
                for x, y in product(range(d.mdim), repeat=2)
                if residual[x, y] != 0
            ),
            None,
        )
        if hit is not None:
            x, y = hit
            violations.append(
                Violation(
                    kind="invariance",
                    indices=[u, m[x], m[y]],
                    detail=(
                        f"g([{g.basis[u]},{g.basis[m[x]]}],{g.basis[m[y]]})"
                        f" + g({g.basis[m[x]]},[{g.basis[u]},"
                        f"{g.basis[m[y]]}]) = {residual[x, y]}"
                    ),
                )
            )
    return ValidationReport(subject="metric", violations=violations)


def levi_civita_alpha(
    g: LieAlgebra, d: Decomposition, met: MetricTensor
) -> AlphaTensor:
    _check_metric(met, d)
    b = binary_product(g, d)
    gram = met.g.to_array()
    rhs = (
        contract("ijp,pk->ijk", b, gram)
        - contract("ikp,pj->ijk", b, gram)
        - contract("ip,jkp->ijk", gram, b)
    ) * Fraction(1, 2)
    n = d.mdim
    a = np.full((n, n, n), Fraction(0), dtype=object)
    for i, j in product(range(n), repeat=2):
        a[i, j, :] = solve_symmetric(met.g, tuple(rhs[i, j, :]))
    return AlphaTensor(n, a)


def levi_civita_mu(
    g: LieAlgebra, d: Decomposition, met: MetricTensor
) -> AlphaTensor:
    """Commutative part mu = alpha - X.Y/2 of the Levi-Civita product."""
    alpha = levi_civita_alpha(g, d, met)
    half_binary = binary_product(g, d) * Fraction(1, 2)
    return AlphaTensor(d.mdim, alpha.a - half_binary)


def _skew_residual(alpha: AlphaTensor, gram: np.ndarray) -> np.ndarray:
    # [x][y][z]: g(alpha(x, y), z) + g(y, alpha(x, z))
    a = alpha.a
    return contract("xyp,pz->xyz", a, gram) + contract("yp,xzp->xyz", gram, a)


def skew_compatible(alpha: AlphaTensor, met: MetricTensor) -> bool:
    if met.mdim != alpha.mdim:
        raise DimensionMismatch(
            f"Metric on dimension {met.mdim}, alpha on {alpha.mdim}"
        )
    return first_nonzero(_skew_residual(alpha, met.g.to_array())) is None


def metric_report(
    g: LieAlgebra, d: Decomposition, met: MetricTensor
) -> MetricReport:
    """The four Levi-Civita identities on basis tuples (m-local
    witnesses)."""
    alpha = levi_civita_alpha(g, d, met)
    b = binary_product(g, d)
    gram = met.g.to_array()
    mu = alpha.a - b * Fraction(1, 2)
    witnesses = {
        "torsion_free": first_nonzero(torsion(alpha, g, d), width=2),
        "skew_compatible": first_nonzero(_skew_residual(alpha, gram)),
        # g(Y.X, Z) = g(Y, X.Z), indexed [x][y][z]
        "naturally_reductive": first_nonzero(
            contract("yxp,pz->xyz", b, gram)
            - contract("yp,xzp->xyz", gram, b)
        ),
        # 2 g(mu(X, Y), Z) = g(Z.X, Y) + g(X, Z.Y)
        "commutative_part_identity": first_nonzero(
            contract("xyp,pz->xyz", mu, gram) * 2
            - contract("zxp,py->xyz", b, gram)
            - contract("xp,zyp->xyz", gram, b)
        ),
    }
    return MetricReport(
        **{name: witness is None for name, witness in witnesses.items()},
        witnesses={
            name: witness
            for name, witness in witnesses.items()
            if witness is not None
        },
    )


def invariant_metric_space(
    g: LieAlgebra, d: Decomposition
) -> list[RatMatrix]:
    """Basis of ad_h-invariant symmetric bilinear forms on m.

    Unknowns are the upper-triangle entries (i <= j) in lexicographic
    order; degenerate forms are included.
    """
    require_reductive(g, d)
    n = d.mdim
    pairs = list(combinations_with_replacement(range(n), 2))

    def symmetric_unit(i: int, j: int) -> RatMatrix:
        return RatMatrix.from_rows(
            [
                [Fraction(int({r, s} == {i, j})) for s in range(n)]
                for r in range(n)
            ],
            cols=n,
        )

    units = [symmetric_unit(i, j) for i, j in pairs]
    rows = []
    for op in isotropy_operators(g, d):
        residuals = [_invariance_residual(op, unit) for unit in units]
        for x, y in pairs:
            rows.append([residual[x, y] for residual in residuals])
    system = RatMatrix.from_rows(rows, cols=len(pairs))
    basis = []
    for vector in null_space_basis(system):
        gram = RatMatrix.zeros(n, n)
        for coeff, unit in zip(vector, units):
            if coeff:
                gram = gram + unit.scale(coeff)
        basis.append(gram)
    logger.debug(
        "Solved metric invariance", algebra=g.name, dimension=len(basis)
    )
    return basis


def random_invariant_metric(
    g: LieAlgebra,
    d: Decomposition,
    rng: random.Random,
    attempts: int = 20,
) -> Optional[MetricTensor]:
    """A random rational combination of the invariant forms that is
    nondegenerate, or None if none turns up."""
    basis = invariant_metric_space(g, d)
    if not basis and d.mdim:
        return None
    for _ in range(attempts):
        gram = RatMatrix.zeros(d.mdim, d.mdim)
        for form in basis:
            coeff = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            gram = gram + form.scale(coeff)
        if determinant(gram) != 0:
            return MetricTensor(gram)
    return None
