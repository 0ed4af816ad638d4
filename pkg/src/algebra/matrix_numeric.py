"""Floating-point check of Ad(exp(tX)) = exp(t ad_X) on matrix models.

This is the only inexact module. ``matrix_exp`` is a truncated Taylor
series with scaling and squaring; its tolerance and the acceptance
threshold of the residual default to ``ToolkitSettings``.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product
from typing import Any, Optional

import numpy as np

from src.algebra.errors import (
    BadParameter,
    DimensionMismatch,
    NonInvertibleRealization,
    NonSquare,
)
from src.algebra.lie_core import ad_matrix
from src.algebra.models import generate_model, matrix_realization
from src.utils.config import ToolkitSettings
from src.utils.logging_config import get_logger

logger = get_logger(__name__)

MAX_SERIES_TERMS = 200


def _check_tol(tol: Optional[float]) -> float:
    tol = ToolkitSettings.series_tol if tol is None else tol
    if not tol > 0:
        raise BadParameter(f"Tolerance must be positive, got {tol}")
    return tol


def matrix_exp(a: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """exp(a) = sum a^n / n!.

    a is scaled by 2^-s so that its infinity norm is at most 1/2, the
    series is summed until a term has norm below tol * 2^-s, and the
    result is squared s times. The error is a small multiple of tol
    times the norm of the result.
    """
    tol = _check_tol(tol)
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"Matrix exponential of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise BadParameter("Matrix has non-finite entries")
    n = a.shape[0]
    norm = np.linalg.norm(a, ord=np.inf) if n else 0.0
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    scaled = a / 2.0**squarings
    cutoff = tol * 2.0**-squarings

    result = np.identity(n)
    term = np.identity(n)
    for k in range(1, MAX_SERIES_TERMS + 1):
        term = term @ scaled / k
        result += term
        if np.linalg.norm(term, ord=np.inf) < cutoff:
            break
    for _ in range(squarings):
        result = result @ result
    return result


def _realization_arrays(model: str) -> list[np.ndarray]:
    return [
        np.array(m.to_array(), dtype=float) for m in matrix_realization(model)
    ]


def _coordinates(images: list[np.ndarray], target: np.ndarray) -> np.ndarray:
    """rho^-1 on the image of rho, by least squares on flattened
    matrices."""
    basis = np.stack([m.reshape(-1) for m in images], axis=1)
    if np.linalg.matrix_rank(basis) < len(images):
        raise NonInvertibleRealization("Realization is not faithful")
    coords, *_ = np.linalg.lstsq(basis, target.reshape(-1), rcond=None)
    misfit = np.max(np.abs(basis @ coords - target.reshape(-1)), initial=0.0)
    scale = max(1.0, float(np.max(np.abs(target), initial=0.0)))
    if misfit > 1e-6 * scale:
        raise NonInvertibleRealization(
            f"Conjugated matrix is off the image by {misfit:.3e}"
        )
    return coords


def ad_exp_residual(
    model: str,
    x: Sequence[Any],
    y: Sequence[Any],
    t: float,
    tol: Optional[float] = None,
) -> float:
    """Max-norm of rho^-1(exp(t rho x) rho y exp(-t rho x))
    - exp(t ad_x) y, in coordinates."""
    g = generate_model(model)
    if len(x) != g.dim or len(y) != g.dim:
        raise DimensionMismatch(f"Vectors for {g.name} need {g.dim} entries")
    images = _realization_arrays(model)
    x_float = np.array([float(v) for v in x])
    y_float = np.array([float(v) for v in y])
    stacked = np.stack(images)
    rho_x = np.tensordot(x_float, stacked, axes=1)
    rho_y = np.tensordot(y_float, stacked, axes=1)

    conjugated = (
        matrix_exp(t * rho_x, tol) @ rho_y @ matrix_exp(-t * rho_x, tol)
    )
    left = _coordinates(images, conjugated)
    ad_x = np.array(ad_matrix(g, x).to_array(), dtype=float)
    right = matrix_exp(t * ad_x, tol) @ y_float
    return float(np.max(np.abs(left - right), initial=0.0))


@dataclass(frozen=True)
class AdExpRow:
    x: str
    y: str
    residual: float
    passed: bool


def ad_exp_table(
    model: str,
    t: float,
    tol: Optional[float] = None,
    acceptance: Optional[float] = None,
) -> list[AdExpRow]:
    """Residuals for every basis pair (e_i, e_j), row-major."""
    acceptance = (
        ToolkitSettings.acceptance_tol if acceptance is None else acceptance
    )
    g = generate_model(model)
    rows = []
    for i, j in product(range(g.dim), repeat=2):
        residual = ad_exp_residual(model, g.unit(i), g.unit(j), t, tol)
        rows.append(
            AdExpRow(
                x=g.basis[i],
                y=g.basis[j],
                residual=residual,
                passed=residual < acceptance,
            )
        )
    failed = sum(not row.passed for row in rows)
    if failed:
        logger.warning(
            "Ad-exp residual above acceptance",
            model=model,
            t=t,
            failed=failed,
        )
    return rows
