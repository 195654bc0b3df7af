"""The full affine algebra ``C x| (loop algebra + C)`` and its dual.

Vectors are triples ``(z, X, a)`` and covectors are triples
``(alpha, xi, e)``; the two are paired by
``Re(alpha z + int (xi, X) dx + e a)``. The quadratic invariant
``kappa`` and the center projection ``pi`` live here as well.
"""

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from ._finite_differences import richardson_derivative  # noqa: WPS436
from ._loop_fourier import (  # noqa: WPS436
    LoopElement, central_cocycle, loop_bracket, loop_derivative, loop_pair,
    random_loop, zero_loop,
)
from ._loop_fourier import from_json as loop_from_json  # noqa: WPS436
from ._loop_fourier import to_json as loop_to_json  # noqa: WPS436
from ._orthogonal_algebra import (  # noqa: WPS436
    OrthogonalAlgebra, unit_disc,
)


@dataclass(frozen=True, eq=False)
class AffineVector:
    """An element ``(z, X, a)`` of the full affine algebra."""

    z: complex
    loop: LoopElement
    a: complex

    __array_ufunc__ = None  # let numpy scalars defer to __rmul__

    def __add__(self, other: 'AffineVector') -> 'AffineVector':
        """Add componentwise."""
        return AffineVector(
            self.z + other.z, self.loop + other.loop, self.a + other.a,
        )

    def __neg__(self) -> 'AffineVector':
        """Negate componentwise."""
        return AffineVector(-self.z, -self.loop, -self.a)

    def __sub__(self, other: 'AffineVector') -> 'AffineVector':
        """Subtract componentwise."""
        return self + (-other)

    def __mul__(self, scalar: complex) -> 'AffineVector':
        """Scale by a complex number."""
        return AffineVector(
            scalar * self.z, scalar * self.loop, scalar * self.a,
        )

    __rmul__ = __mul__

    def norm(self) -> float:
        """Return the max norm over all components."""
        return max(abs(self.z), self.loop.norm(), abs(self.a))


@dataclass(frozen=True, eq=False)
class AffineCovector:
    """An element ``(alpha, xi, e)`` of the dual; ``e`` is the level."""

    alpha: complex
    xi: LoopElement
    e: complex

    __array_ufunc__ = None

    def __add__(self, other: 'AffineCovector') -> 'AffineCovector':
        """Add componentwise."""
        return AffineCovector(
            self.alpha + other.alpha, self.xi + other.xi, self.e + other.e,
        )

    def __neg__(self) -> 'AffineCovector':
        """Negate componentwise."""
        return AffineCovector(-self.alpha, -self.xi, -self.e)

    def __sub__(self, other: 'AffineCovector') -> 'AffineCovector':
        """Subtract componentwise."""
        return self + (-other)

    def __mul__(self, scalar: complex) -> 'AffineCovector':
        """Scale by a complex number."""
        return AffineCovector(
            scalar * self.alpha, scalar * self.xi, scalar * self.e,
        )

    __rmul__ = __mul__

    def norm(self) -> float:
        """Return the max norm over all components."""
        return max(abs(self.alpha), self.xi.norm(), abs(self.e))


GradientMap = Callable[[AffineCovector], AffineVector]


def bar_bracket(u: AffineVector, v: AffineVector) -> AffineVector:
    """Return ``[(z1, X, a), (z2, Y, b)]``.

    That is ``(0, [X, Y] + z1 Y' - z2 X', int (X, Y') dx)``; the central
    slots ``a`` and ``b`` never contribute.
    """
    loop = (
        loop_bracket(u.loop, v.loop)
        + u.z * loop_derivative(v.loop)
        - v.z * loop_derivative(u.loop)
    )
    return AffineVector(0j, loop, central_cocycle(u.loop, v.loop))


def pair_bilinear(mu: AffineCovector, u: AffineVector) -> complex:
    """Return ``alpha z + int (xi, X) dx + e a`` before taking ``Re``."""
    return mu.alpha * u.z + loop_pair(mu.xi, u.loop) + mu.e * u.a


def dual_pair(mu: AffineCovector, u: AffineVector) -> float:
    """Return the real duality pairing of a covector and a vector."""
    return pair_bilinear(mu, u).real


def ad_star(u: AffineVector, mu: AffineCovector) -> AffineCovector:
    """Return the coadjoint action ``ad*_u mu``.

    It is ``(int (xi, X') dx, [X, xi] + z xi' + e X', 0)``, minus the
    dual of ``ad_u``.
    """
    x_prime = loop_derivative(u.loop)
    xi_loop = (
        loop_bracket(u.loop, mu.xi)
        + u.z * loop_derivative(mu.xi)
        + mu.e * x_prime
    )
    return AffineCovector(loop_pair(mu.xi, x_prime), xi_loop, 0j)


def kappa(mu: AffineCovector) -> complex:
    """Return ``e alpha - 1/2 int (xi, xi) dx``."""
    return mu.e * mu.alpha - loop_pair(mu.xi, mu.xi) / 2


def pi_center(mu: AffineCovector) -> complex:
    """Project onto the center coefficient ``e``."""
    return complex(mu.e)


def grad_kappa(mu: AffineCovector) -> AffineVector:
    """Return the functional derivative ``(e, -xi, alpha)`` of kappa."""
    return AffineVector(mu.e, -mu.xi, mu.alpha)


def grad_pi(mu: AffineCovector) -> AffineVector:
    """Return the constant functional derivative of the projection."""
    return AffineVector(0j, zero_loop(mu.xi.algebra), 1 + 0j)


def casimir_gradient(
        dfunc_dkappa: Callable[[complex, complex], complex],
        dfunc_dpi: Callable[[complex, complex], complex],
) -> GradientMap:
    """Build the gradient of ``F(kappa, pi)`` from the partials of ``F``."""
    def gradient(mu: AffineCovector) -> AffineVector:
        invariants = kappa(mu), pi_center(mu)
        return (
            complex(dfunc_dkappa(*invariants)) * grad_kappa(mu)
            + complex(dfunc_dpi(*invariants)) * grad_pi(mu)
        )
    return gradient


def linear_functional_gradient(weight: LoopElement) -> GradientMap:
    """Return the gradient of ``mu -> Re int (xi, weight) dx``."""
    def gradient(mu: AffineCovector) -> AffineVector:
        return AffineVector(0j, weight, 0j)
    return gradient


def invariance_residual(
        gradient: GradientMap,
        u: AffineVector,
        mu: AffineCovector,
) -> float:
    """Measure the ad*-invariance defect ``|<mu, [u, grad F(mu)]>|``.

    The complex-bilinear pairing is used, which bounds its real part.
    """
    return abs(pair_bilinear(mu, bar_bracket(u, gradient(mu))))


def coadjoint_duality_residual(
        u: AffineVector,
        v: AffineVector,
        mu: AffineCovector,
) -> float:
    """Measure ``<ad*_u mu, v> + <mu, [u, v]>``."""
    return abs(
        pair_bilinear(ad_star(u, mu), v)
        + pair_bilinear(mu, bar_bracket(u, v)),
    )


def bar_jacobi_residual(
        u: AffineVector,
        v: AffineVector,
        w: AffineVector,
) -> float:
    """Measure the cyclic Jacobi sum of :func:`bar_bracket`."""
    cyclic_sum = (
        bar_bracket(u, bar_bracket(v, w))
        + bar_bracket(v, bar_bracket(w, u))
        + bar_bracket(w, bar_bracket(u, v))
    )
    return cyclic_sum.norm()


def _unit_covector(
        template: AffineCovector,
        slot: str,
        position: int = 0,
) -> AffineCovector:
    xi_modes = np.zeros_like(template.xi.modes)
    alpha = e_level = 0j
    if slot == 'alpha':
        alpha = 1 + 0j
    elif slot == 'e':
        e_level = 1 + 0j
    else:
        xi_modes.flat[position] = 1
    return AffineCovector(
        alpha, LoopElement(template.xi.algebra, xi_modes), e_level,
    )


def gradient_by_differences(
        func: Callable[[AffineCovector], float],
        mu: AffineCovector,
) -> AffineVector:
    """Recover the functional derivative of a real function numerically.

    The slope along every real coordinate direction (real and imaginary
    part of each slot and of each Fourier coordinate within the band of
    ``xi``) comes from Richardson-extrapolated central differences, and the
    vector reproducing those slopes under :func:`dual_pair` is returned.
    """
    def slopes(direction: AffineCovector) -> complex:
        along_real = richardson_derivative(
            lambda step: func(mu + step * direction),
        )
        along_imag = richardson_derivative(
            lambda step: func(mu + (1j * step) * direction),
        )
        # Re(w) and Re(1j w) = -Im(w) are the measured slopes.
        return along_real - 1j * along_imag

    algebra = mu.xi.algebra
    band = mu.xi.band
    paired = np.array([
        slopes(_unit_covector(mu, 'xi', position))
        for position in range(mu.xi.modes.size)
    ]).reshape(mu.xi.modes.shape)
    # paired[n] = 2 pi B X_{-n}
    loop_modes = np.linalg.solve(
        algebra.form, paired[::-1, :, np.newaxis],
    )[..., 0] / (2 * np.pi)
    return AffineVector(
        slopes(_unit_covector(mu, 'alpha')),
        LoopElement(algebra, loop_modes).padded(band),
        slopes(_unit_covector(mu, 'e')),
    )


def random_vector(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
        band: int,
) -> AffineVector:
    """Draw ``(z, X, a)`` with unit-disc scalars and a random loop."""
    z_value, a_value = unit_disc(rng, (2,))
    return AffineVector(
        complex(z_value), random_loop(algebra, rng, band), complex(a_value),
    )


def random_covector(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
        band: int,
) -> AffineCovector:
    """Draw ``(alpha, xi, e)`` with unit-disc scalars and a random loop."""
    alpha, e_level = unit_disc(rng, (2,))
    return AffineCovector(
        complex(alpha), random_loop(algebra, rng, band), complex(e_level),
    )


def _complex_to_json(value: complex) -> list:
    return [float(value.real), float(value.imag)]


def vector_to_json(u: AffineVector) -> Dict[str, object]:
    """Serialize a vector for report artifacts."""
    return {
        'z': _complex_to_json(u.z),
        'loop': loop_to_json(u.loop),
        'a': _complex_to_json(u.a),
    }


def covector_to_json(mu: AffineCovector) -> Dict[str, object]:
    """Serialize a covector for report artifacts."""
    return {
        'alpha': _complex_to_json(mu.alpha),
        'xi': loop_to_json(mu.xi),
        'e': _complex_to_json(mu.e),
    }


def vector_from_json(
        document: Dict[str, object],
        algebra: OrthogonalAlgebra,
) -> AffineVector:
    """Rebuild a vector serialized by :func:`vector_to_json`."""
    return AffineVector(
        complex(*document['z']),  # type: ignore[misc]
        loop_from_json(document['loop'], algebra),  # type: ignore[arg-type]
        complex(*document['a']),  # type: ignore[misc]
    )


def covector_from_json(
        document: Dict[str, object],
        algebra: OrthogonalAlgebra,
) -> AffineCovector:
    """Rebuild a covector serialized by :func:`covector_to_json`."""
    return AffineCovector(
        complex(*document['alpha']),  # type: ignore[misc]
        loop_from_json(document['xi'], algebra),  # type: ignore[arg-type]
        complex(*document['e']),  # type: ignore[misc]
    )
