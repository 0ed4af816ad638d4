"""The JSON algebra file format.

    {
      "name": "so3-so2",
      "dim": 3,
      "basis": ["e1", "e2", "e3"],
      "brackets": [{"i": 0, "j": 1, "c": [[2, "1"]]}, ...],
      "h": [2],
      "m": [0, 1],
      "metric": [["1", "0"], ["0", "1"]],
      "alpha": [{"i": 0, "j": 1, "c": [[0, "1/2"]]}],
      "binary": [{"i": 0, "j": 1, "c": [[0, "1"]]}],
      "ternary": [{"i": 0, "j": 1, "k": 0, "c": [[1, "1"]]}]
    }

Bracket entries use canonical pairs i < j and are completed
antisymmetrically. alpha, binary and ternary are indexed by position in
m. Rationals are always strings. Only name and dim are required; m
defaults to the complement of h.
"""

import json
from collections.abc import Iterable
from fractions import Fraction
from itertools import product
from typing import Annotated, Any, Optional

import numpy as np
from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
)

from src.algebra.alpha import AlphaTensor
from src.algebra.errors import AlgebraError
from src.algebra.exact_linalg import RatMatrix, format_rational, parse_rational
from src.algebra.lie_core import LieAlgebra
from src.algebra.metric import MetricTensor
from src.algebra.reductive import (
    Decomposition,
    LieYamaguti,
    binary_product,
    ternary_product,
)
from src.utils.config import ToolkitSettings
from src.utils.logging_config import get_logger

logger = get_logger(__name__)


class ParseError(ValueError):
    """Malformed algebra file; ``position`` locates the offending part."""

    def __init__(self, message: str, position: str = ""):
        self.message = message
        self.position = position
        super().__init__(f"{position}: {message}" if position else message)


class IndexOutOfRange(ParseError):
    pass


class DuplicateEntry(ParseError):
    pass


class NonCanonicalPair(ParseError):
    pass


def _canonical_rational(text: str) -> str:
    return format_rational(parse_rational(text))


RationalText = Annotated[str, AfterValidator(_canonical_rational)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True, frozen=True)


class PairEntry(_Strict):
    i: int
    j: int
    c: list[tuple[int, RationalText]]


class TripleEntry(_Strict):
    i: int
    j: int
    k: int
    c: list[tuple[int, RationalText]]


class AlgebraFile(_Strict):
    name: str
    dim: int = Field(ge=0)
    basis: Optional[list[str]] = None
    brackets: list[PairEntry] = Field(default_factory=list)
    h: list[int] = Field(default_factory=list)
    m: Optional[list[int]] = None
    metric: Optional[list[list[RationalText]]] = None
    alpha: Optional[list[PairEntry]] = None
    binary: Optional[list[PairEntry]] = None
    ternary: Optional[list[TripleEntry]] = None

    @property
    def labels(self) -> tuple[str, ...]:
        if self.basis is not None:
            return tuple(self.basis)
        return tuple(f"e{i + 1}" for i in range(self.dim))

    @property
    def m_idx(self) -> list[int]:
        if self.m is not None:
            return list(self.m)
        return [i for i in range(self.dim) if i not in self.h]

    @property
    def mdim(self) -> int:
        return len(self.m_idx)


def _position(loc: Iterable[Any]) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out.lstrip(".") or "<root>"


def _check_index(value: int, size: int, position: str) -> None:
    if not 0 <= value < size:
        raise IndexOutOfRange(
            f"index {value} outside 0..{size - 1}", position
        )


def _check_coefficients(
    c: list[tuple[int, str]], size: int, position: str
) -> None:
    seen = set()
    for n, (k, _) in enumerate(c):
        _check_index(k, size, f"{position}.c[{n}]")
        if k in seen:
            raise DuplicateEntry(
                f"output index {k} listed twice", f"{position}.c[{n}]"
            )
        seen.add(k)


def _check_pairs(
    entries: list[PairEntry], size: int, section: str, canonical: bool
) -> None:
    seen = set()
    for n, entry in enumerate(entries):
        position = f"{section}[{n}]"
        _check_index(entry.i, size, f"{position}.i")
        _check_index(entry.j, size, f"{position}.j")
        if canonical and entry.i >= entry.j:
            raise NonCanonicalPair(
                f"pair ({entry.i}, {entry.j}) must have i < j", position
            )
        if (entry.i, entry.j) in seen:
            raise DuplicateEntry(
                f"pair ({entry.i}, {entry.j}) listed twice", position
            )
        seen.add((entry.i, entry.j))
        _check_coefficients(entry.c, size, position)


def _check_triples(entries: list[TripleEntry], size: int) -> None:
    seen = set()
    for n, entry in enumerate(entries):
        position = f"ternary[{n}]"
        for key in ("i", "j", "k"):
            _check_index(getattr(entry, key), size, f"{position}.{key}")
        key = (entry.i, entry.j, entry.k)
        if key in seen:
            raise DuplicateEntry(f"triple {key} listed twice", position)
        seen.add(key)
        _check_coefficients(entry.c, size, position)


def _check_decomposition(data: AlgebraFile) -> None:
    for section, indices in (("h", data.h), ("m", data.m or [])):
        seen = set()
        for n, value in enumerate(indices):
            _check_index(value, data.dim, f"{section}[{n}]")
            if value in seen:
                raise DuplicateEntry(
                    f"index {value} listed twice", f"{section}[{n}]"
                )
            seen.add(value)
    if sorted(data.h + data.m_idx) != list(range(data.dim)):
        raise ParseError("h and m must partition the basis", "m")


def _check_semantics(data: AlgebraFile) -> None:
    if data.dim > ToolkitSettings.max_dim:
        raise ParseError(
            f"dimension {data.dim} exceeds MAX_DIM={ToolkitSettings.max_dim}",
            "dim",
        )
    if data.basis is not None:
        if len(data.basis) != data.dim:
            raise ParseError(
                f"{len(data.basis)} labels for dimension {data.dim}", "basis"
            )
        if len(set(data.basis)) != len(data.basis):
            raise DuplicateEntry("basis labels must be distinct", "basis")
    _check_pairs(data.brackets, data.dim, "brackets", canonical=True)
    _check_decomposition(data)
    n = data.mdim
    if data.metric is not None:
        if len(data.metric) != n or any(len(row) != n for row in data.metric):
            raise ParseError(f"metric must be {n}x{n}", "metric")
    if data.alpha is not None:
        _check_pairs(data.alpha, n, "alpha", canonical=False)
    if data.binary is not None:
        _check_pairs(data.binary, n, "binary", canonical=False)
    if data.ternary is not None:
        _check_triples(data.ternary, n)


def _check_consistency(data: AlgebraFile) -> None:
    """Products in the file must match the brackets, when both exist."""
    if not data.brackets:
        return
    if data.binary is None and data.ternary is None:
        return
    g, d = to_algebra(data), to_decomposition(data)
    try:
        expected = {
            "binary": binary_product(g, d),
            "ternary": ternary_product(g, d),
        }
    except AlgebraError as exc:
        raise ParseError(str(exc), "brackets") from exc
    given = to_lie_yamaguti(data)
    for section, tensor in (
        ("binary", given.binary),
        ("ternary", given.ternary),
    ):
        if getattr(data, section) is None:
            continue
        if not np.array_equal(tensor, expected[section]):
            raise ParseError(
                "does not match the products of the brackets", section
            )


def parse_algebra_file(text: str) -> AlgebraFile:
    try:
        data = AlgebraFile.model_validate_json(text)
    except ValidationError as exc:
        error = exc.errors()[0]
        raise ParseError(error["msg"], _position(error["loc"])) from exc
    _check_semantics(data)
    _check_consistency(data)
    logger.debug("Parsed algebra file", name=data.name, dim=data.dim)
    return data


def serialize_algebra_file(data: AlgebraFile) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    payload = data.model_dump(mode="json", exclude_none=True)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# Conversions


def _pair_tensor(entries: list[PairEntry], n: int) -> np.ndarray:
    a = np.full((n, n, n), Fraction(0), dtype=object)
    for entry in entries:
        for k, value in entry.c:
            a[entry.i, entry.j, k] = parse_rational(value)
    return a


def _triple_tensor(entries: list[TripleEntry], n: int) -> np.ndarray:
    t = np.full((n, n, n, n), Fraction(0), dtype=object)
    for entry in entries:
        for l, value in entry.c:
            t[entry.i, entry.j, entry.k, l] = parse_rational(value)
    return t


def to_algebra(data: AlgebraFile) -> LieAlgebra:
    return LieAlgebra.from_brackets(
        data.name,
        data.labels,
        {
            (entry.i, entry.j): {
                k: parse_rational(value) for k, value in entry.c
            }
            for entry in data.brackets
        },
    )


def to_decomposition(data: AlgebraFile) -> Decomposition:
    return Decomposition.from_h(data.dim, data.h, data.m_idx)


def to_metric(data: AlgebraFile) -> Optional[MetricTensor]:
    if data.metric is None:
        return None
    return MetricTensor(
        RatMatrix.from_rows(
            [[parse_rational(v) for v in row] for row in data.metric],
            cols=data.mdim,
        )
    )


def to_alpha(data: AlgebraFile) -> Optional[AlphaTensor]:
    if data.alpha is None:
        return None
    return AlphaTensor(data.mdim, _pair_tensor(data.alpha, data.mdim))


def to_lie_yamaguti(data: AlgebraFile) -> LieYamaguti:
    """The file's binary/ternary sections. With brackets, a missing
    section is the product of the brackets; without, it is zero."""
    n = data.mdim
    binary = ternary = None
    if data.brackets and (data.binary is None or data.ternary is None):
        g, d = to_algebra(data), to_decomposition(data)
        if data.binary is None:
            binary = binary_product(g, d)
        if data.ternary is None:
            ternary = ternary_product(g, d)
    if binary is None:
        binary = _pair_tensor(data.binary or [], n)
    if ternary is None:
        ternary = _triple_tensor(data.ternary or [], n)
    return LieYamaguti(n, binary, ternary)


def _pair_entries(
    a: np.ndarray, canonical: bool = False
) -> list[PairEntry]:
    n = a.shape[0]
    entries = []
    for i, j in product(range(n), repeat=2):
        if canonical and i >= j:
            continue
        c = [(k, format_rational(a[i, j, k])) for k in range(n) if a[i, j, k]]
        if c:
            entries.append(PairEntry(i=i, j=j, c=c))
    return entries


def _triple_entries(t: np.ndarray) -> list[TripleEntry]:
    n = t.shape[0]
    entries = []
    for i, j, k in product(range(n), repeat=3):
        c = [
            (l, format_rational(t[i, j, k, l]))
            for l in range(n)
            if t[i, j, k, l]
        ]
        if c:
            entries.append(TripleEntry(i=i, j=j, k=k, c=c))
    return entries


def from_algebra(
    g: LieAlgebra,
    d: Optional[Decomposition] = None,
    metric: Optional[MetricTensor] = None,
    alpha: Optional[AlphaTensor] = None,
    ly: Optional[LieYamaguti] = None,
) -> AlgebraFile:
    """File for g; h and m are written only for a nontrivial split."""
    fields: dict[str, Any] = {
        "name": g.name,
        "dim": g.dim,
        "basis": list(g.basis),
        "brackets": _pair_entries(g.c, canonical=True),
    }
    if d is not None and not d.is_group_case:
        fields["h"] = list(d.h_idx)
        fields["m"] = list(d.m_idx)
    if metric is not None:
        fields["metric"] = [
            [format_rational(v) for v in row] for row in metric.g.to_rows()
        ]
    if alpha is not None:
        fields["alpha"] = _pair_entries(alpha.a)
    if ly is not None:
        fields["binary"] = _pair_entries(ly.binary)
        fields["ternary"] = _triple_entries(ly.ternary)
    return AlgebraFile(**fields)


def lie_yamaguti_file(name: str, ly: LieYamaguti) -> AlgebraFile:
    """File holding only Lie-Yamaguti data on m = everything."""
    return AlgebraFile(
        name=name,
        dim=ly.dim,
        binary=_pair_entries(ly.binary),
        ternary=_triple_entries(ly.ternary),
    )
