"""Exceptions and warnings raised by the library."""


class AlgebraMismatch(ValueError):
    """Operands belong to different (or differently sized) algebras."""


class NotClosed(ValueError):
    """Commutators of the given matrices leave their linear span."""


class DegenerateForm(ValueError):
    """The trace form restricted to the span is singular."""


class AliasRisk(ValueError):
    """The requested grid cannot resolve the loop's Fourier band."""


class AliasWarning(RuntimeWarning):
    """A grid field carries non-negligible energy near the Nyquist mode."""


class ConstraintViolation(ValueError):
    """Samples of a group loop fail the group membership test."""


class GridMismatch(ValueError):
    """Two grid-sampled objects live on different grids."""


class DivisionByCenter(ZeroDivisionError):
    """A formula divides by the level ``k`` but ``k`` is zero."""


class KindMismatch(TypeError):
    """A momentum functional got a weight of the wrong type."""


class ConfigInvalid(ValueError):
    """The verification run configuration is inconsistent."""
