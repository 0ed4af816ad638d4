"""Reductive decompositions g = h + m and their Lie-Yamaguti products.

Decompositions are given in an adapted basis: h and m are complementary
lists of basis indices. Tensors on m use m-local indices, so b[i][j][k]
is the e_{m[k]}-coefficient of e_{m[i]} . e_{m[j]}.

The infinitesimal condition [h, m] in m is checked, which is the group
condition Ad(H) m = m exactly when H is connected.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

import numpy as np

from src.algebra.errors import (
    AxiomsViolated,
    BadParameter,
    DimensionMismatch,
    NotReductive,
)
from src.algebra.exact_linalg import (
    RatMatrix,
    build_tensor,
    contract,
    first_nonzero,
    is_zero,
    rational_array,
    span_basis,
)
from src.algebra.lie_core import LieAlgebra, validate_lie
from src.algebra.schemas import (
    AxiomReport,
    AxiomResult,
    ValidationReport,
    Violation,
)
from src.utils.logging_config import get_logger

logger = get_logger(__name__)

LY_AXIOMS = ("LY1", "LY2", "LY3", "LY4", "LY5", "LY6")


@dataclass(frozen=True)
class Decomposition:
    dim: int
    h_idx: tuple[int, ...]
    m_idx: tuple[int, ...]

    def __post_init__(self):
        h_idx = tuple(sorted(self.h_idx))
        m_idx = tuple(sorted(self.m_idx))
        if sorted(h_idx + m_idx) != list(range(self.dim)):
            raise BadParameter(
                f"h={list(h_idx)} and m={list(m_idx)} do not partition "
                f"0..{self.dim - 1}"
            )
        object.__setattr__(self, "h_idx", h_idx)
        object.__setattr__(self, "m_idx", m_idx)

    @classmethod
    def from_h(
        cls,
        dim: int,
        h_idx: Iterable[int] = (),
        m_idx: Optional[Iterable[int]] = None,
    ) -> "Decomposition":
        """m defaults to the complement of h in index order."""
        h_idx = tuple(h_idx)
        if m_idx is None:
            m_idx = tuple(i for i in range(dim) if i not in h_idx)
        return cls(dim, h_idx, tuple(m_idx))

    @property
    def hdim(self) -> int:
        return len(self.h_idx)

    @property
    def mdim(self) -> int:
        return len(self.m_idx)

    @property
    def is_group_case(self) -> bool:
        return not self.h_idx


def _check_sizes(g: LieAlgebra, d: Decomposition) -> None:
    if d.dim != g.dim:
        raise DimensionMismatch(
            f"Decomposition of dim {d.dim} for {g.name} of dim {g.dim}"
        )


def check_reductive(g: LieAlgebra, d: Decomposition) -> ValidationReport:
    """Violations of [h, h] in h and [h, m] in m.

    Witnesses are global index triples: (a, b, k) with a < b in h and k in
    m for closure, (u, x, k) with u in h, x in m and k in h for the
    action. k is the first offending output coordinate.
    """
    _check_sizes(g, d)
    violations = []
    for a, b in combinations(d.h_idx, 2):
        k = next((k for k in d.m_idx if g.c[a, b, k] != 0), None)
        if k is not None:
            violations.append(
                Violation(
                    kind="subalgebra",
                    indices=[a, b, k],
                    detail=(
                        f"[{g.basis[a]},{g.basis[b]}] has "
                        f"{g.basis[k]}-component {g.c[a, b, k]}"
                    ),
                )
            )
    for u, x in product(d.h_idx, d.m_idx):
        k = next((k for k in d.h_idx if g.c[u, x, k] != 0), None)
        if k is not None:
            violations.append(
                Violation(
                    kind="h_action",
                    indices=[u, x, k],
                    detail=(
                        f"[{g.basis[u]},{g.basis[x]}] has "
                        f"{g.basis[k]}-component {g.c[u, x, k]}"
                    ),
                )
            )
    return ValidationReport(subject="reductive", violations=violations)


def require_reductive(g: LieAlgebra, d: Decomposition) -> None:
    report = check_reductive(g, d)
    if not report.ok:
        violation = report.violations[0]
        raise NotReductive(
            f"{violation.kind} violated at {violation.indices}: "
            f"{violation.detail}"
        )


def binary_product(g: LieAlgebra, d: Decomposition) -> np.ndarray:
    """X . Y, the m-projection of [X, Y]."""
    require_reductive(g, d)
    m = d.m_idx
    return build_tensor((d.mdim,) * 3, lambda i, j, k: g.c[m[i], m[j], m[k]])


def ternary_product(g: LieAlgebra, d: Decomposition) -> np.ndarray:
    """[X, Y, Z] = [[X, Y]_h, Z]."""
    require_reductive(g, d)
    m = d.m_idx
    return build_tensor(
        (d.mdim,) * 4,
        lambda i, j, k, l: sum(
            (
                g.c[m[i], m[j], u] * g.c[u, m[k], m[l]]
                for u in d.h_idx
            ),
            Fraction(0),
        ),
    )


@dataclass(frozen=True, eq=False)
class LieYamaguti:
    dim: int
    binary: np.ndarray
    ternary: np.ndarray

    def __post_init__(self):
        binary = rational_array(self.binary)
        ternary = rational_array(self.ternary)
        if binary.shape != (self.dim,) * 3 or ternary.shape != (self.dim,) * 4:
            raise DimensionMismatch(
                f"Binary {binary.shape} / ternary {ternary.shape} "
                f"for dimension {self.dim}"
            )
        object.__setattr__(self, "binary", binary)
        object.__setattr__(self, "ternary", ternary)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieYamaguti):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.binary, other.binary)
            and np.array_equal(self.ternary, other.ternary)
        )

    __hash__ = None


def lie_yamaguti(g: LieAlgebra, d: Decomposition) -> LieYamaguti:
    return LieYamaguti(d.mdim, binary_product(g, d), ternary_product(g, d))


def is_symmetric_pair(g: LieAlgebra, d: Decomposition) -> bool:
    """[m, m] in h: the binary product vanishes and g is Z/2-graded."""
    return is_zero(binary_product(g, d))


def enumerate_reductive_decompositions(
    g: LieAlgebra,
) -> list[Decomposition]:
    """Every partition passing check_reductive, by |h| then lexicographic."""
    found = []
    for size in range(g.dim + 1):
        for h_idx in combinations(range(g.dim), size):
            d = Decomposition.from_h(g.dim, h_idx)
            if check_reductive(g, d).ok:
                found.append(d)
    logger.debug(
        "Enumerated reductive decompositions",
        algebra=g.name,
        count=len(found),
    )
    return found


def _cyclic(s: np.ndarray, lead: str, rest: str) -> np.ndarray:
    """Sum of s over the cyclic rotations of its first three slots."""
    x, y, z = lead
    return (
        s
        + contract(f"{y}{z}{x}{rest}->{lead}{rest}", s)
        + contract(f"{z}{x}{y}{rest}->{lead}{rest}", s)
    )


def _ly_residuals(ly: LieYamaguti) -> list[tuple[str, np.ndarray, int]]:
    """(axiom, residual tensor, witness width); each residual is zero
    exactly when the axiom holds, the last axis being the output
    coordinate."""
    b, t = ly.binary, ly.ternary
    # LY1: x.x = 0, polarized
    ly1 = b + contract("yxl->xyl", b)
    # LY2: [x,x,y] = 0, polarized
    ly2 = t + contract("yxzl->xyzl", t)
    # LY3: sum over cyclic (x,y,z) of [x,y,z] + (x.y).z
    ly3 = _cyclic(t + contract("xyp,pzl->xyzl", b, b), "xyz", "l")
    # LY4: sum over cyclic (x,y,z) of [x.y, z, w]
    ly4 = _cyclic(contract("xyp,pzwl->xyzwl", b, t), "xyz", "wl")
    # LY5: [x,y,u.v] = [x,y,u].v + u.[x,y,v]
    ly5 = (
        contract("uvp,xypl->xyuvl", b, t)
        - contract("xyup,pvl->xyuvl", t, b)
        - contract("xyvp,upl->xyuvl", t, b)
    )
    # LY6: [x,y,[u,v,w]] = [[x,y,u],v,w] + [u,[x,y,v],w] + [u,v,[x,y,w]]
    ly6 = (
        contract("uvwp,xypl->xyuvwl", t, t)
        - contract("xyup,pvwl->xyuvwl", t, t)
        - contract("xyvp,upwl->xyuvwl", t, t)
        - contract("xywp,uvpl->xyuvwl", t, t)
    )
    return [
        ("LY1", ly1, 2),
        ("LY2", ly2, 3),
        ("LY3", ly3, 3),
        ("LY4", ly4, 4),
        ("LY5", ly5, 4),
        ("LY6", ly6, 5),
    ]


def ly_axiom_report(ly: LieYamaguti) -> AxiomReport:
    """LY1..LY6 on basis tuples, with the lexicographically first
    violating argument tuple as witness."""
    results = []
    for axiom, residual, width in _ly_residuals(ly):
        witness = first_nonzero(residual, width)
        results.append(
            AxiomResult(axiom=axiom, passed=witness is None, witness=witness)
        )
    report = AxiomReport(axioms=results)
    if not report.all_pass:
        logger.debug(
            "Lie-Yamaguti axioms failed",
            failed=[r.axiom for r in results if not r.passed],
        )
    return report


def inner_derivations(ly: LieYamaguti) -> list[RatMatrix]:
    """The operators D(e_i, e_j) = [e_i, e_j, .] as matrices on m,
    column k holding [e_i, e_j, e_k]."""
    n, t = ly.dim, ly.ternary
    return [
        RatMatrix.from_rows(
            [[t[i, j, k, l] for k in range(n)] for l in range(n)], cols=n
        )
        for i, j in product(range(n), repeat=2)
    ]


def standard_envelope(
    ly: LieYamaguti,
    name: str = "envelope",
    m_labels: Optional[Sequence[str]] = None,
) -> tuple[LieAlgebra, Decomposition]:
    """Lie algebra h + m with h the span of the D(X, Y) in End(m).

    h comes first in the basis. Brackets: [D, D'] = DD' - D'D,
    [D, X] = D(X), [X, Y] = D(X, Y) + X . Y. The result is validated as
    a reductive Lie algebra before it is returned.
    """
    report = ly_axiom_report(ly)
    if not report.all_pass:
        failed = next(r for r in report.axioms if not r.passed)
        raise AxiomsViolated(
            f"{failed.axiom} fails at basis tuple {failed.witness}"
        )
    n = ly.dim
    generators = inner_derivations(ly)
    flat_basis, pivots = span_basis([op.entries for op in generators], n * n)
    h_ops = [RatMatrix(n, n, row) for row in flat_basis]
    r = len(h_ops)
    size = r + n

    def h_coords(op: RatMatrix) -> list[Fraction]:
        return [op.entries[p] for p in pivots]

    c = np.full((size, size, size), Fraction(0), dtype=object)
    for a, b in product(range(r), repeat=2):
        commutator = h_ops[a] @ h_ops[b] - h_ops[b] @ h_ops[a]
        c[a, b, :r] = h_coords(commutator)
    for a, k in product(range(r), range(n)):
        column = h_ops[a].column(k)
        c[a, r + k, r:] = column
        c[r + k, a, r:] = [-v for v in column]
    for i, j in product(range(n), repeat=2):
        c[r + i, r + j, :r] = h_coords(generators[i * n + j])
        c[r + i, r + j, r:] = ly.binary[i, j, :]

    m_labels = tuple(m_labels or (f"m{k + 1}" for k in range(n)))
    labels = tuple(f"d{a + 1}" for a in range(r)) + m_labels
    envelope = LieAlgebra(name, labels, c)
    d = Decomposition.from_h(size, range(r))

    lie_report = validate_lie(envelope)
    if not lie_report.ok:
        raise AxiomsViolated(
            f"Envelope is not a Lie algebra: {lie_report.violations[0].detail}"
        )
    if not check_reductive(envelope, d).ok:
        raise AxiomsViolated("Envelope decomposition is not reductive")
    logger.debug("Built standard envelope", mdim=n, hdim=r)
    return envelope, d
