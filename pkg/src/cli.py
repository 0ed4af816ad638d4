#!/usr/bin/env python3
"""
invconn: invariant connections on reductive homogeneous spaces

Reads algebra files (see src/formats/algebra_file.py) and prints reports
on stdout; diagnostics and logs go to stderr.

Usage:
    invconn validate data/models/so3-so2.json
    invconn products data/models/sl2-h.json --json
    invconn ly-check data/models/so3-so2.json
    invconn conn-space data/models/so3xR-so2.json
    invconn classify data/models/so3-group.json --alpha natural
    invconn levi-civita data/models/so3-group.json
    invconn envelope data/models/so3-so2.json
    invconn metrics data/models/sl2-h.json
    invconn decompositions data/models/so3.json
    invconn adexp --model so3 --t 0.1
    invconn gen --model sl2 --h 0

Exit codes: 0 success, 1 failed validation or algebra error, 2 usage,
file or parse error.
"""

import functools
import sys
from pathlib import Path
from typing import Callable, Optional

import click

from src.algebra.connections import (
    ConnectionKind,
    classify_connection,
    curvature,
    distinguished_alpha,
    invariant_connection_space,
    torsion,
)
from src.algebra.errors import AlgebraError
from src.algebra.identities import identity_report
from src.algebra.lie_core import validate_lie
from src.algebra.matrix_numeric import ad_exp_table
from src.algebra.metric import (
    invariant_metric_space,
    levi_civita_alpha,
    metric_report,
    validate_metric,
)
from src.algebra.models import AVAILABLE_MODELS, generate_model
from src.algebra.reductive import (
    Decomposition,
    check_reductive,
    enumerate_reductive_decompositions,
    ly_axiom_report,
    standard_envelope,
)
from src.formats.algebra_file import (
    AlgebraFile,
    ParseError,
    from_algebra,
    parse_algebra_file,
    serialize_algebra_file,
    to_algebra,
    to_alpha,
    to_decomposition,
    to_lie_yamaguti,
    to_metric,
)
from src.reports import (
    adexp_payload,
    adexp_table,
    classify_payload,
    conn_space_payload,
    decompositions_payload,
    decompositions_table,
    levi_civita_payload,
    ly_payload,
    ly_table,
    metrics_payload,
    metrics_text,
    products_payload,
    render,
    validate_payload,
)
from src.utils.config import ToolkitSettings
from src.utils.logging_config import bind_command_logging_context, get_logger

logger = get_logger(__name__)

EXIT_FAILED = 1
EXIT_INPUT = 2

input_file = click.argument(
    "path", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
json_flag = click.option(
    "--json", "as_json", is_flag=True, help="Machine-readable JSON output"
)


def load_file(path: Path) -> AlgebraFile:
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(str(exc), str(path)) from exc
    return parse_algebra_file(text)


def emit(payload: dict, as_json: bool) -> None:
    click.echo(render(payload, as_json), nl=False)


def handle_errors(command: Callable) -> Callable:
    """Map input errors to exit 2 and algebra errors to exit 1."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        bind_command_logging_context(command=command.__name__)
        try:
            return command(*args, **kwargs)
        except ParseError as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except AlgebraError as exc:
            logger.debug("Command failed", error=type(exc).__name__)
            click.echo(f"Error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_FAILED)

    return wrapper


# CLI Commands
@click.group()
def cli():
    """Invariant connections on reductive homogeneous spaces"""
    pass


@cli.command("validate")
@input_file
@json_flag
@handle_errors
def validate_command(path: Path, as_json: bool):
    """Check the Lie algebra, the decomposition and the metric"""
    data = load_file(path)
    g, d, met = to_algebra(data), to_decomposition(data), to_metric(data)
    lie = validate_lie(g)
    reductive = check_reductive(g, d)
    metric = None if met is None else validate_metric(g, d, met)
    payload = validate_payload(lie, reductive, metric)
    emit(payload, as_json)
    if not payload["passed"]:
        sys.exit(EXIT_FAILED)


@cli.command("products")
@input_file
@json_flag
@handle_errors
def products_command(path: Path, as_json: bool):
    """Print the binary and ternary products on m"""
    emit(products_payload(to_lie_yamaguti(load_file(path))), as_json)


@cli.command("ly-check")
@input_file
@json_flag
@handle_errors
def ly_check_command(path: Path, as_json: bool):
    """Check the Lie-Yamaguti axioms LY1-LY6"""
    report = ly_axiom_report(to_lie_yamaguti(load_file(path)))
    if as_json:
        emit(ly_payload(report), as_json)
    else:
        click.echo(ly_table(report))
    if not report.all_pass:
        sys.exit(EXIT_FAILED)


@cli.command("conn-space")
@input_file
@json_flag
@handle_errors
def conn_space_command(path: Path, as_json: bool):
    """Solve for all invariant connections"""
    data = load_file(path)
    space = invariant_connection_space(
        to_algebra(data), to_decomposition(data)
    )
    emit(conn_space_payload(space), as_json)


@cli.command("classify")
@input_file
@click.option(
    "--alpha",
    "alpha_source",
    default=None,
    help="natural, canonical, or a file with an alpha section "
    "(default: the input's alpha, else natural)",
)
@json_flag
@handle_errors
def classify_command(path: Path, alpha_source: Optional[str], as_json: bool):
    """Torsion, curvature, flags and identities of a connection"""
    data = load_file(path)
    g, d = to_algebra(data), to_decomposition(data)
    if alpha_source in tuple(ConnectionKind):
        alpha = distinguished_alpha(alpha_source, g, d)
    elif alpha_source is not None:
        alpha_path = Path(alpha_source)
        if not alpha_path.is_file():
            raise click.BadParameter(
                f"{alpha_source} is neither natural, canonical nor a file",
                param_hint="--alpha",
            )
        alpha = to_alpha(load_file(alpha_path))
        if alpha is None:
            raise ParseError("file has no alpha section", alpha_source)
    else:
        alpha = to_alpha(data) or distinguished_alpha(
            ConnectionKind.NATURAL, g, d
        )
    payload = classify_payload(
        alpha,
        torsion(alpha, g, d),
        curvature(alpha, g, d),
        classify_connection(alpha, g, d),
        identity_report(alpha),
    )
    emit(payload, as_json)


@cli.command("levi-civita")
@input_file
@json_flag
@handle_errors
def levi_civita_command(path: Path, as_json: bool):
    """Levi-Civita product of the file's metric and its identities"""
    data = load_file(path)
    g, d, met = to_algebra(data), to_decomposition(data), to_metric(data)
    if met is None:
        raise ParseError("a metric section is required", "metric")
    report = validate_metric(g, d, met)
    if not report.ok:
        payload = validate_payload(
            validate_lie(g), check_reductive(g, d), report
        )
        emit(payload, as_json)
        sys.exit(EXIT_FAILED)
    alpha = levi_civita_alpha(g, d, met)
    emit(levi_civita_payload(alpha, metric_report(g, d, met)), as_json)


@cli.command("envelope")
@input_file
@handle_errors
def envelope_command(path: Path):
    """Standard enveloping Lie algebra of the Lie-Yamaguti data"""
    data = load_file(path)
    ly = to_lie_yamaguti(data)
    labels = [data.labels[i] for i in data.m_idx]
    envelope, d = standard_envelope(
        ly, name=f"{data.name}-envelope", m_labels=labels
    )
    click.echo(serialize_algebra_file(from_algebra(envelope, d)), nl=False)


@cli.command("metrics")
@input_file
@json_flag
@handle_errors
def metrics_command(path: Path, as_json: bool):
    """Basis of the invariant symmetric forms on m"""
    data = load_file(path)
    basis = invariant_metric_space(to_algebra(data), to_decomposition(data))
    if as_json:
        emit(metrics_payload(basis), as_json)
    else:
        click.echo(metrics_text(basis))


@cli.command("decompositions")
@input_file
@json_flag
@handle_errors
def decompositions_command(path: Path, as_json: bool):
    """Every reductive split g = h + m in the file's basis"""
    g = to_algebra(load_file(path))
    found = enumerate_reductive_decompositions(g)
    if as_json:
        emit(decompositions_payload(found), as_json)
    else:
        click.echo(decompositions_table(found, g.basis))


@cli.command("adexp")
@click.option(
    "--model",
    required=True,
    help=f"Model name, one of {', '.join(AVAILABLE_MODELS)}",
)
@click.option("--t", "t", required=True, type=float, help="Time parameter")
@click.option(
    "--tol",
    type=float,
    default=None,
    help=f"Series cutoff (default {ToolkitSettings.series_tol:g})",
)
@json_flag
@handle_errors
def adexp_command(model: str, t: float, tol: Optional[float], as_json: bool):
    """Numerical check of Ad(exp(tX)) = exp(t ad_X) on basis pairs"""
    rows = ad_exp_table(model, t, tol)
    if as_json:
        emit(adexp_payload(model, t, rows), as_json)
    else:
        click.echo(adexp_table(rows))
    if not all(row.passed for row in rows):
        sys.exit(EXIT_FAILED)


@cli.command("gen")
@click.option(
    "--model",
    required=True,
    help=f"Model name, one of {', '.join(AVAILABLE_MODELS)}",
)
@click.option(
    "--h", "h_idx", type=int, multiple=True, help="Index in h (repeatable)"
)
@handle_errors
def gen_command(model: str, h_idx: tuple[int, ...]):
    """Emit a model as an algebra file"""
    g = generate_model(model)
    d = Decomposition.from_h(g.dim, h_idx) if h_idx else None
    click.echo(serialize_algebra_file(from_algebra(g, d)), nl=False)


if __name__ == "__main__":
    cli()
