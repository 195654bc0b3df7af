"""The loop algebra ``C^inf(S^1, g)`` as band-limited Fourier series.

A loop is stored as a dense array of Fourier modes ``X_n`` for
``n = -N, ..., N`` so that ``X(x) = sum_n X_n exp(i n x)``. Brackets and
derivatives act exactly on these coefficients; only :func:`to_grid`
and :func:`from_grid` cross over to samples on a uniform grid.
"""

from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from ._errors import AlgebraMismatch, AliasRisk  # noqa: WPS436
from ._orthogonal_algebra import (  # noqa: WPS436
    AlgebraElement, OrthogonalAlgebra, unit_disc,
)


NEGLIGIBLE_MODE = 1e-13
DEFAULT_BAND = 4


@dataclass(frozen=True, eq=False)
class LoopElement:
    """A trigonometric polynomial with values in ``g``.

    ``modes[n + band]`` holds the coordinates of ``X_n``; modes outside
    the band are zero.
    """

    algebra: OrthogonalAlgebra
    modes: np.ndarray

    __array_ufunc__ = None  # let numpy scalars defer to __rmul__

    def __post_init__(self) -> None:
        """Validate the shape of the mode array."""
        count = self.modes.shape[0] if self.modes.ndim == 2 else 0
        if (
                self.modes.ndim != 2
                or count % 2 != 1
                or self.modes.shape[1] != self.algebra.dim
        ):
            raise AlgebraMismatch(
                'Expected an odd number of modes of length '
                f'{self.algebra.dim} but got shape {self.modes.shape!r}',
            )

    @property
    def band(self) -> int:
        """Return ``N``, the largest representable mode index."""
        return (self.modes.shape[0] - 1) // 2

    def mode(self, index: int) -> np.ndarray:
        """Return the coordinates of ``X_index`` (zero outside the band)."""
        if abs(index) > self.band:
            return np.zeros(self.algebra.dim, dtype=complex)
        return self.modes[index + self.band]

    def padded(self, band: int) -> 'LoopElement':
        """Return the same loop stored with at least ``band`` modes."""
        if band <= self.band:
            return self
        extra = band - self.band
        return LoopElement(
            self.algebra,
            np.pad(self.modes, ((extra, extra), (0, 0))),
        )

    def norm(self) -> float:
        """Return the max norm over all coefficients."""
        return float(np.max(np.abs(self.modes), initial=0))

    def __add__(self, other: 'LoopElement') -> 'LoopElement':
        """Add two loops, widening to the larger band."""
        _ensure_same_algebra(self, other)
        band = max(self.band, other.band)
        return LoopElement(
            self.algebra,
            self.padded(band).modes + other.padded(band).modes,
        )

    def __neg__(self) -> 'LoopElement':
        """Negate the loop."""
        return LoopElement(self.algebra, -self.modes)

    def __sub__(self, other: 'LoopElement') -> 'LoopElement':
        """Subtract two loops, widening to the larger band."""
        return self + (-other)

    def __mul__(self, scalar: complex) -> 'LoopElement':
        """Scale by a complex number."""
        return LoopElement(self.algebra, scalar * self.modes)

    __rmul__ = __mul__


def _ensure_same_algebra(left: LoopElement, right: LoopElement) -> None:
    if left.algebra is not right.algebra:
        raise AlgebraMismatch(
            f'Cannot combine loops in {left.algebra.name!r} '
            f'and {right.algebra.name!r}',
        )


def zero_loop(algebra: OrthogonalAlgebra, band: int = 0) -> LoopElement:
    """Return the zero loop with the given (padded) band."""
    return LoopElement(
        algebra, np.zeros((2 * band + 1, algebra.dim), dtype=complex),
    )


def constant_loop(value: AlgebraElement) -> LoopElement:
    """Return the loop that is identically ``value``."""
    return LoopElement(value.algebra, value.coeffs[np.newaxis, :].copy())


def monomial(value: AlgebraElement, index: int) -> LoopElement:
    """Return ``value * exp(i index x)``."""
    loop = zero_loop(value.algebra, abs(index))
    loop.modes[index + loop.band] = value.coeffs
    return loop


def truncate(loop: LoopElement, band: int) -> LoopElement:
    """Drop every mode above ``band``; this loses information."""
    if band >= loop.band:
        return loop
    cut = loop.band - band
    return LoopElement(loop.algebra, loop.modes[cut:loop.modes.shape[0] - cut])


def loop_bracket(x_loop: LoopElement, y_loop: LoopElement) -> LoopElement:
    """Return the pointwise bracket as an exact Fourier convolution.

    The band of the result is the sum of the input bands.
    """
    _ensure_same_algebra(x_loop, y_loop)
    algebra = x_loop.algebra
    products = np.einsum(
        'pi,qj,ijk->pqk',
        x_loop.modes, y_loop.modes, algebra.structure_constants,
    )
    result = zero_loop(algebra, x_loop.band + y_loop.band)
    y_count = y_loop.modes.shape[0]
    for p_index, row in enumerate(products):
        result.modes[p_index:p_index + y_count] += row
    return result


def loop_derivative(loop: LoopElement) -> LoopElement:
    """Differentiate term by term: ``X_n -> i n X_n``."""
    indices = np.arange(-loop.band, loop.band + 1)
    return LoopElement(loop.algebra, 1j * indices[:, np.newaxis] * loop.modes)


def loop_pair(xi_loop: LoopElement, x_loop: LoopElement) -> complex:
    """Return ``int_0^2pi (xi(x), X(x)) dx`` computed on the modes."""
    _ensure_same_algebra(xi_loop, x_loop)
    band = max(xi_loop.band, x_loop.band)
    reflected = xi_loop.padded(band).modes[::-1]
    return complex(
        2 * np.pi * np.sum(
            x_loop.algebra.pair_coefficients(
                reflected, x_loop.padded(band).modes,
            ),
        ),
    )


def central_cocycle(x_loop: LoopElement, y_loop: LoopElement) -> complex:
    """Return the 2-cocycle ``int_0^2pi (X(y), Y'(y)) dy``."""
    return loop_pair(x_loop, loop_derivative(y_loop))


def grid_points(grid_size: int) -> np.ndarray:
    """Return the nodes ``x_j = 2 pi j / M``."""
    return 2 * np.pi * np.arange(grid_size) / grid_size


def to_grid(loop: LoopElement, grid_size: int) -> np.ndarray:
    """Sample the loop at the grid nodes as an ``(M, d)`` array.

    :raises AliasRisk: unless ``M > 2 * band``
    """
    if grid_size <= 2 * loop.band:
        raise AliasRisk(
            f'A grid of {grid_size} points cannot resolve band {loop.band}; '
            f'at least {2 * loop.band + 1} points are required',
        )
    spectrum = np.zeros((grid_size, loop.algebra.dim), dtype=complex)
    indices = np.arange(-loop.band, loop.band + 1)
    spectrum[indices % grid_size] = loop.modes
    return grid_size * np.fft.ifft(spectrum, axis=0)


def from_grid(
        samples: np.ndarray,
        algebra: OrthogonalAlgebra,
) -> LoopElement:
    """Recover the Fourier modes of samples taken on the uniform grid.

    The result has band ``(M - 1) // 2``; modes whose coefficient vector
    is smaller than ``1e-13`` are set to zero.
    """
    grid_size = samples.shape[0]
    spectrum = np.fft.fft(samples, axis=0) / grid_size
    band = (grid_size - 1) // 2
    indices = np.arange(-band, band + 1)
    modes = spectrum[indices % grid_size]
    negligible = np.max(np.abs(modes), axis=1) < NEGLIGIBLE_MODE
    modes[negligible] = 0
    return LoopElement(algebra, modes)


def quadrature_pair(
        xi_loop: LoopElement,
        x_loop: LoopElement,
        grid_size: int,
) -> complex:
    """Approximate :func:`loop_pair` with the rectangle rule on a grid."""
    _ensure_same_algebra(xi_loop, x_loop)
    integrand = x_loop.algebra.pair_coefficients(
        to_grid(xi_loop, grid_size), to_grid(x_loop, grid_size),
    )
    return complex(2 * np.pi * np.mean(integrand))


def loop_to_field(loop: LoopElement, grid_size: int) -> np.ndarray:
    """Sample the loop as ``(M, m, m)`` matrices."""
    return loop.algebra.coefficients_to_matrices(to_grid(loop, grid_size))


def field_to_loop(
        field: np.ndarray,
        algebra: OrthogonalAlgebra,
) -> LoopElement:
    """Turn ``(M, m, m)`` matrix samples in ``g`` back into a loop."""
    return from_grid(algebra.matrices_to_coefficients(field), algebra)


def random_loop(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
        band: int = DEFAULT_BAND,
) -> LoopElement:
    """Draw a smooth random loop.

    Each coordinate of ``X_n`` is uniform in the unit disc scaled by
    ``1 / (1 + n**2)``.
    """
    indices = np.arange(-band, band + 1)
    damping = 1 / (1 + indices ** 2)
    coefficients = unit_disc(rng, (2 * band + 1, algebra.dim))
    return LoopElement(algebra, damping[:, np.newaxis] * coefficients)


def to_json(loop: LoopElement) -> Dict[str, object]:
    """Serialize the nonzero modes as ``{mode: [[re, im], ...]}``."""
    modes: Dict[str, List[List[float]]] = {}
    for index in range(-loop.band, loop.band + 1):
        coeffs = loop.mode(index)
        if np.any(coeffs):
            modes[str(index)] = [
                [float(value.real), float(value.imag)] for value in coeffs
            ]
    return {'algebra': loop.algebra.name, 'band': loop.band, 'modes': modes}


def from_json(
        document: Dict[str, object],
        algebra: OrthogonalAlgebra,
) -> LoopElement:
    """Rebuild a loop serialized by :func:`to_json`."""
    if document['algebra'] != algebra.name:
        raise AlgebraMismatch(
            f'Loop was serialized in {document["algebra"]!r} '
            f'but {algebra.name!r} was supplied',
        )
    loop = zero_loop(algebra, int(document['band']))  # type: ignore[arg-type]
    for index, pairs in document['modes'].items():  # type: ignore[union-attr]
        values = np.asarray(pairs, dtype=float)
        loop.modes[int(index) + loop.band] = values[:, 0] + 1j * values[:, 1]
    return loop
