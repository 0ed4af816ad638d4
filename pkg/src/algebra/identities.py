"""Nonassociative identities of a product alpha, via the associator

    (x, y, z) = alpha(alpha(x, y), z) - alpha(x, alpha(y, z)).

All identities are checked on basis tuples in polarized form, which is
equivalent by multilinearity. The su(2) mu-family lives here too; it is
the only place complex scalars appear, as exact Gaussian rationals.
"""

from collections.abc import Sequence
from fractions import Fraction
from itertools import product
from typing import Any, Optional

import numpy as np
import sympy

from src.algebra.alpha import AlphaTensor, derivation_witness
from src.algebra.errors import BadParameter
from src.algebra.exact_linalg import (
    RatMatrix,
    RatVector,
    contract,
    first_nonzero,
)
from src.algebra.lie_core import LieAlgebra, validate_lie
from src.algebra.models import generate_model
from src.algebra.schemas import IdentityReport
from src.utils.logging_config import get_logger

logger = get_logger(__name__)


def associator(
    alpha: AlphaTensor,
    x: Sequence[Any],
    y: Sequence[Any],
    z: Sequence[Any],
) -> RatVector:
    left = alpha.product(alpha.product(x, y), z)
    right = alpha.product(x, alpha.product(y, z))
    return tuple(p - q for p, q in zip(left, right))


def associator_tensor(alpha: AlphaTensor) -> np.ndarray:
    """A[x][y][z][l]: e_l-coefficient of (e_x, e_y, e_z)."""
    a = alpha.a
    return contract("xyp,pzl->xyzl", a, a) - contract("yzp,xpl->xyzl", a, a)


def commutator_tensor(alpha: AlphaTensor) -> np.ndarray:
    """alpha^-(x, y) = alpha(x, y) - alpha(y, x)."""
    return alpha.a - alpha.swapped()


def commutator_operator(alpha: AlphaTensor, x: int) -> RatMatrix:
    """ad^-_x: y -> alpha^-(e_x, y), column y holding alpha^-(e_x, e_y)."""
    cm = commutator_tensor(alpha)
    n = alpha.mdim
    return RatMatrix.from_rows(
        [[cm[x, y, l] for y in range(n)] for l in range(n)], cols=n
    )


def is_derivation(alpha: AlphaTensor, d: RatMatrix) -> bool:
    return derivation_witness(alpha, d) is None


def _lie_admissible_witness(alpha: AlphaTensor) -> Optional[list[int]]:
    n = alpha.mdim
    labels = tuple(f"e{i + 1}" for i in range(n))
    report = validate_lie(
        LieAlgebra("commutator", labels, commutator_tensor(alpha))
    )
    return None if report.ok else report.violations[0].indices


def _ad_derivation_witness(alpha: AlphaTensor) -> Optional[list[int]]:
    for x in range(alpha.mdim):
        witness = derivation_witness(alpha, commutator_operator(alpha, x))
        if witness is not None:
            return [x, *witness]
    return None


def identity_report(alpha: AlphaTensor) -> IdentityReport:
    assoc = associator_tensor(alpha)
    swapped = alpha.swapped()
    witnesses = {
        "lie_admissible": _lie_admissible_witness(alpha),
        # (x, y, x) = 0, polarized in x
        "flexible": first_nonzero(
            assoc + contract("zyxl->xyzl", assoc), width=3
        ),
        # (x, y, z) = (y, x, z)
        "left_symmetric": first_nonzero(
            assoc - contract("yxzl->xyzl", assoc), width=3
        ),
        "associative": first_nonzero(assoc, width=3),
        "ad_derivation": _ad_derivation_witness(alpha),
        "anticommutative": first_nonzero(alpha.a + swapped, width=2),
        "commutative": first_nonzero(alpha.a - swapped, width=2),
    }
    flags = {name: witness is None for name, witness in witnesses.items()}
    return IdentityReport(
        **flags,
        witnesses={
            name: witness
            for name, witness in witnesses.items()
            if witness is not None
        },
    )


def _su2_generators() -> list[sympy.Matrix]:
    i = sympy.I
    return [
        sympy.Matrix([[i, 0], [0, -i]]),
        sympy.Matrix([[0, 1], [-1, 0]]),
        sympy.Matrix([[0, i], [i, 0]]),
    ]


def _to_fraction(value: sympy.Expr) -> Fraction:
    value = sympy.nsimplify(value)
    if not value.is_Rational:
        raise BadParameter(f"Coefficient {value} is not rational")
    return Fraction(int(value.p), int(value.q))


def _su2_coordinates(m: sympy.Matrix) -> list[Fraction]:
    """Coordinates of m in (x1, x2, x3); m must lie in su(2)."""
    top_left, top_right = sympy.expand(m[0, 0]), sympy.expand(m[0, 1])
    coords = [
        _to_fraction(sympy.im(top_left)),
        _to_fraction(sympy.re(top_right)),
        _to_fraction(sympy.im(top_right)),
    ]
    rebuilt = sum(
        (
            sympy.Rational(c.numerator, c.denominator) * x
            for c, x in zip(coords, _su2_generators())
        ),
        sympy.zeros(2, 2),
    )
    if not (rebuilt - m).expand().is_zero_matrix:
        raise BadParameter("Product left su(2)")
    return coords


def su_n_mu_algebra(b: Any, n: int = 2) -> tuple[LieAlgebra, AlphaTensor]:
    """The product alpha(X, Y) = mu XY - conj(mu) YX
    - ((mu - conj(mu))/n) tr(XY) 1 on su(n), with mu = 1/2 + b i.

    The real part of mu is fixed by mu + conj(mu) = 1, so only b is a
    parameter. The trace term carries the identity matrix, which keeps
    the product traceless. Only n = 2 is supported.
    """
    if n != 2:
        raise BadParameter(f"su(n) mu-family supports n = 2 only, got {n}")
    b = Fraction(b)
    mu = sympy.Rational(1, 2) + sympy.I * sympy.Rational(
        b.numerator, b.denominator
    )
    mu_bar = sympy.conjugate(mu)
    identity = sympy.eye(n)
    generators = _su2_generators()
    a = np.empty((3, 3, 3), dtype=object)
    for i, j in product(range(3), repeat=2):
        x, y = generators[i], generators[j]
        xy = x * y
        trace_term = (mu - mu_bar) / n * xy.trace() * identity
        value = mu * xy - mu_bar * (y * x) - trace_term
        a[i, j, :] = _su2_coordinates(value)
    logger.debug("Built su(2) mu-family product", b=str(b))
    return generate_model("su2"), AlphaTensor(3, a)
