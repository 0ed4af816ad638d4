"""Built-in model library with fixed basis conventions.

    so3       e1, e2, e3      [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
    sl2       h, e, f         [h,e]=2e, [h,f]=-2f, [e,f]=h
    heis3     x, y, z         [x,y]=z
    e2        j, p1, p2       [j,p1]=p2, [j,p2]=-p1
    su2       x1, x2, x3      [x1,x2]=2x3, [x2,x3]=2x1, [x3,x1]=2x2
                              (x1=diag(i,-i), x2=[[0,1],[-1,0]],
                              x3=[[0,i],[i,0]])
    so3xR     e1..e4          so3 on e1..e3, e4 central
    gl:n      E11, E12, ...   E_ij at index i*n+j, unit-matrix commutators
    abelian:n e1..en          all brackets zero

Each model also has a faithful matrix realization, used by the floating
point ad-exp check and by the commutator tests.
"""

from collections.abc import Callable
from fractions import Fraction
from itertools import product

import numpy as np

from src.algebra.errors import BadParameter, UnknownModel
from src.algebra.exact_linalg import RatMatrix
from src.algebra.lie_core import LieAlgebra
from src.utils.config import ToolkitSettings

PARAMETRIC_MODELS = ("abelian", "gl")


def _so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "so3",
        ("e1", "e2", "e3"),
        {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}},
    )


def _sl2() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "sl2",
        ("h", "e", "f"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
    )


def _heis3() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "heis3", ("x", "y", "z"), {(0, 1): {2: 1}}
    )


def _e2() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "e2", ("j", "p1", "p2"), {(0, 1): {2: 1}, (0, 2): {1: -1}}
    )


def _su2() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "su2",
        ("x1", "x2", "x3"),
        {(0, 1): {2: 2}, (1, 2): {0: 2}, (0, 2): {1: -2}},
    )


def _so3xr() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        "so3xR",
        ("e1", "e2", "e3", "e4"),
        {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}},
    )


def _gl(n: int) -> LieAlgebra:
    # [E_ij, E_kl] = d_jk E_il - d_li E_kj
    labels = tuple(f"E{i + 1}{j + 1}" for i, j in product(range(n), repeat=2))
    dim = n * n
    c = np.full((dim, dim, dim), Fraction(0), dtype=object)
    for i, j, k, l in product(range(n), repeat=4):
        a, b = i * n + j, k * n + l
        if j == k:
            c[a, b, i * n + l] += 1
        if l == i:
            c[a, b, k * n + j] -= 1
    return LieAlgebra(f"gl:{n}", labels, c)


def _abelian(n: int) -> LieAlgebra:
    return LieAlgebra(
        f"abelian:{n}",
        tuple(f"e{i + 1}" for i in range(n)),
        np.full((n, n, n), Fraction(0), dtype=object),
    )


MODEL_REGISTRY: dict[str, Callable[[], LieAlgebra]] = {
    "so3": _so3,
    "sl2": _sl2,
    "heis3": _heis3,
    "e2": _e2,
    "su2": _su2,
    "so3xR": _so3xr,
}

AVAILABLE_MODELS = [*MODEL_REGISTRY, "abelian:n", "gl:n"]


def parse_model_spec(spec: str) -> tuple[str, int | None]:
    """Split "gl:3" into ("gl", 3); plain names have no parameter."""
    name, sep, param = spec.partition(":")
    if name in MODEL_REGISTRY:
        if sep:
            raise BadParameter(f"Model {name} takes no parameter")
        return name, None
    if name not in PARAMETRIC_MODELS:
        raise UnknownModel(
            f"Unknown model: {spec}. Available models: {AVAILABLE_MODELS}"
        )
    if not param.isdigit():
        raise BadParameter(f"Model {name} needs a size, e.g. {name}:2")
    n = int(param)
    dim = n * n if name == "gl" else n
    if n < 1 or dim > ToolkitSettings.max_dim:
        raise BadParameter(
            f"{spec} has dimension {dim}; allowed 1..{ToolkitSettings.max_dim}"
        )
    return name, n


def generate_model(spec: str) -> LieAlgebra:
    name, n = parse_model_spec(spec)
    if name == "gl":
        return _gl(n)
    if name == "abelian":
        return _abelian(n)
    return MODEL_REGISTRY[name]()


def _unit(size: int, i: int, j: int) -> RatMatrix:
    return RatMatrix.from_rows(
        [
            [Fraction(int((r, s) == (i, j))) for s in range(size)]
            for r in range(size)
        ],
        cols=size,
    )


def _so3_generators() -> list[RatMatrix]:
    return [
        RatMatrix.from_rows([[0, 0, 0], [0, 0, -1], [0, 1, 0]]),
        RatMatrix.from_rows([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
        RatMatrix.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 0]]),
    ]


def _realify(re: list[list[int]], im: list[list[int]]) -> RatMatrix:
    """2x2 complex matrix as the 4x4 real block [[Re, -Im], [Im, Re]]."""
    rows = [
        [*re[r], *[-v for v in im[r]]] for r in range(2)
    ] + [[*im[r], *re[r]] for r in range(2)]
    return RatMatrix.from_rows(rows)


def _block_diagonal(m: RatMatrix, extra: int) -> RatMatrix:
    size = m.rows + extra
    return RatMatrix.from_rows(
        [
            [
                m[r, s] if r < m.rows and s < m.cols else Fraction(0)
                for s in range(size)
            ]
            for r in range(size)
        ],
        cols=size,
    )


def matrix_realization(spec: str) -> list[RatMatrix]:
    """Matrices rho(e_i), one per basis vector, with [rho(x), rho(y)] =
    rho([x, y]) under the matrix commutator."""
    name, n = parse_model_spec(spec)
    if name == "so3":
        return _so3_generators()
    if name == "so3xR":
        return [_block_diagonal(m, 1) for m in _so3_generators()] + [
            _unit(4, 3, 3)
        ]
    if name == "sl2":
        return [
            RatMatrix.diagonal([1, -1]),
            _unit(2, 0, 1),
            _unit(2, 1, 0),
        ]
    if name == "heis3":
        return [_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)]
    if name == "e2":
        return [
            RatMatrix.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 0]]),
            _unit(3, 0, 2),
            _unit(3, 1, 2),
        ]
    if name == "su2":
        zero = [[0, 0], [0, 0]]
        return [
            _realify(zero, [[1, 0], [0, -1]]),
            _realify([[0, 1], [-1, 0]], zero),
            _realify(zero, [[0, 1], [1, 0]]),
        ]
    if name == "gl":
        return [_unit(n, i, j) for i, j in product(range(n), repeat=2)]
    return [_unit(n, i, i) for i in range(n)]
