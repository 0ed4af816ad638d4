"""Exceptions raised by the algebra package.

Failed mathematical properties (a Jacobi instance, an LY axiom, metric
invariance) are reported as data in the report models; these exceptions
are for inputs an operation cannot work with at all.
"""


class AlgebraError(ValueError):
    """Base class for every error raised by the algebra package."""


class DimensionMismatch(AlgebraError):
    """Vector, matrix or tensor shapes do not agree."""


class SingularMatrix(AlgebraError):
    """A matrix that must be invertible has zero determinant."""


class UnknownModel(AlgebraError):
    """The model name is not in the built-in library."""


class BadParameter(AlgebraError):
    """A model parameter or argument is outside its allowed range."""


class NotReductive(AlgebraError):
    """The decomposition fails [h,h] in h or [h,m] in m."""


class AxiomsViolated(AlgebraError):
    """Lie-Yamaguti data fails one of the axioms LY1-LY6."""


class NonSquare(AlgebraError):
    """A square matrix was expected."""


class NonInvertibleRealization(AlgebraError):
    """A matrix realization could not be inverted on its image."""
