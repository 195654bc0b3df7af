"""Central finite differences with one Richardson extrapolation step."""

from typing import Callable, Sequence, TypeVar


Scalar = TypeVar('Scalar', float, complex)

RICHARDSON_STEPS = (1e-4, 1e-5)


def central_difference(
        curve: Callable[[float], Scalar],
        step: float,
) -> Scalar:
    """Approximate the derivative at zero of a scalar curve."""
    return (curve(step) - curve(-step)) / (2 * step)


def richardson_derivative(
        curve: Callable[[float], Scalar],
        steps: Sequence[float] = RICHARDSON_STEPS,
) -> Scalar:
    """Differentiate at zero, cancelling the leading ``O(h**2)`` error."""
    coarse_step, fine_step = steps
    coarse = central_difference(curve, coarse_step)
    fine = central_difference(curve, fine_step)
    ratio = (coarse_step / fine_step) ** 2
    return fine + (fine - coarse) / (ratio - 1)


def relative_gap(lhs: complex, rhs: complex) -> float:
    """Return ``|lhs - rhs|`` relative to the larger side, floored at one.

    Sides of order one are therefore compared absolutely.
    """
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
