"""Report payloads and their two renderings.

Every command builds a plain dict payload; ``--json`` prints it with
``json.dumps(indent=2)``, otherwise it is printed as indented
``key: value`` text; list-shaped reports print as tabulate tables.
Tensors are sparse dicts from "i,j,k" to a rational string, nonzero
entries only, in row-major index order.
"""

import json
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import BaseModel
from tabulate import tabulate

from src.algebra.alpha import AlphaTensor
from src.algebra.connections import ConnectionSpace
from src.algebra.exact_linalg import RatMatrix, format_rational
from src.algebra.matrix_numeric import AdExpRow
from src.algebra.reductive import Decomposition, LieYamaguti
from src.algebra.schemas import (
    AxiomReport,
    ConnectionFlags,
    IdentityReport,
    MetricReport,
    ValidationReport,
)


def tensor_payload(array: np.ndarray) -> dict[str, str]:
    return {
        ",".join(str(i) for i in index): format_rational(array[index])
        for index in np.ndindex(*array.shape)
        if array[index] != 0
    }


def matrix_payload(m: RatMatrix) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in m.to_rows()]


def _dump(model: Optional[BaseModel]) -> Optional[dict[str, Any]]:
    return None if model is None else model.model_dump(mode="json")


def validate_payload(
    lie: ValidationReport,
    reductive: ValidationReport,
    metric: Optional[ValidationReport],
) -> dict[str, Any]:
    reports = [r for r in (lie, reductive, metric) if r is not None]
    return {
        "lie": _dump(lie),
        "reductive": _dump(reductive),
        "metric": _dump(metric),
        "passed": all(r.ok for r in reports),
    }


def products_payload(ly: LieYamaguti) -> dict[str, Any]:
    return {
        "binary": tensor_payload(ly.binary),
        "ternary": tensor_payload(ly.ternary),
    }


def ly_payload(report: AxiomReport) -> dict[str, Any]:
    return {
        "axioms": {
            result.axiom: "PASS" if result.passed else result.witness
            for result in report.axioms
        },
        "passed": report.all_pass,
    }


def conn_space_payload(space: ConnectionSpace) -> dict[str, Any]:
    return {
        "dimension": space.dim,
        "basis": [tensor_payload(element.a) for element in space.basis],
    }


def classify_payload(
    alpha: AlphaTensor,
    torsion: np.ndarray,
    curvature: np.ndarray,
    flags: ConnectionFlags,
    identities: IdentityReport,
) -> dict[str, Any]:
    return {
        "alpha": tensor_payload(alpha.a),
        "torsion": tensor_payload(torsion),
        "curvature": tensor_payload(curvature),
        "flags": _dump(flags),
        "identities": _dump(identities),
    }


def levi_civita_payload(
    alpha: AlphaTensor, report: MetricReport
) -> dict[str, Any]:
    return {"alpha": tensor_payload(alpha.a), "report": _dump(report)}


def metrics_payload(basis: list[RatMatrix]) -> dict[str, Any]:
    return {
        "dimension": len(basis),
        "basis": [matrix_payload(form) for form in basis],
    }


def decompositions_payload(
    decompositions: list[Decomposition],
) -> dict[str, Any]:
    return {
        "count": len(decompositions),
        "decompositions": [
            {"h": list(d.h_idx), "m": list(d.m_idx)} for d in decompositions
        ],
    }


def adexp_payload(
    model: str, t: float, rows: list[AdExpRow]
) -> dict[str, Any]:
    return {
        "model": model,
        "t": t,
        "rows": [
            {
                "x": row.x,
                "y": row.y,
                "residual": row.residual,
                "passed": row.passed,
            }
            for row in rows
        ],
        "passed": all(row.passed for row in rows),
    }


def adexp_table(rows: list[AdExpRow]) -> str:
    return tabulate(
        [
            (
                row.x,
                row.y,
                f"{row.residual:.3e}",
                "ok" if row.passed else "FAIL",
            )
            for row in rows
        ],
        headers=["x", "y", "residual", ""],
        tablefmt="simple",
        disable_numparse=True,
    )


def ly_table(report: AxiomReport) -> str:
    return tabulate(
        [
            (
                result.axiom,
                "PASS" if result.passed else "FAIL",
                ",".join(str(i) for i in result.witness or []),
            )
            for result in report.axioms
        ],
        headers=["axiom", "result", "witness"],
        tablefmt="simple",
        disable_numparse=True,
    )


def decompositions_table(
    decompositions: list[Decomposition], labels: Sequence[str]
) -> str:
    def names(indices: Sequence[int]) -> str:
        return " ".join(labels[i] for i in indices) or "-"

    return tabulate(
        [
            (number, names(d.h_idx), names(d.m_idx))
            for number, d in enumerate(decompositions, start=1)
        ],
        headers=["#", "h", "m"],
        tablefmt="simple",
        disable_numparse=True,
    )


def metrics_text(basis: list[RatMatrix]) -> str:
    """Each invariant form as a plain grid of rationals on m."""
    blocks = [f"dimension: {len(basis)}"]
    for number, form in enumerate(basis, start=1):
        grid = tabulate(
            matrix_payload(form),
            tablefmt="plain",
            stralign="right",
            disable_numparse=True,
        )
        blocks.append(f"form {number}:\n{grid}")
    return "\n".join(blocks)


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        return f"{value:.6e}"
    return str(value)


def _is_flat(value: Any) -> bool:
    return isinstance(value, list) and not any(
        isinstance(item, (dict, list)) for item in value
    )


def _text_lines(payload: dict[str, Any], indent: int) -> list[str]:
    pad = " " * indent
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            if value:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(value, indent + 2))
            else:
                lines.append(f"{pad}{key}: {{}}")
        elif isinstance(value, list) and not _is_flat(value):
            lines.append(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    nested = _text_lines(item, indent + 4)
                    if nested:
                        lines.append(f"{pad}  - {nested[0].lstrip()}")
                        lines.extend(nested[1:])
                    else:
                        lines.append(f"{pad}  - {{}}")
                else:
                    lines.append(f"{pad}  - {json.dumps(item)}")
        elif isinstance(value, list):
            lines.append(
                f"{pad}{key}: [{', '.join(_scalar(v) for v in value)}]"
            )
        else:
            lines.append(f"{pad}{key}: {_scalar(value)}")
    return lines


def render(payload: dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps(payload, indent=2) + "\n"
    return "\n".join(_text_lines(payload, 0)) + "\n"
