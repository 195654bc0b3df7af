"""The twisted cotangent bundle of the loop group and its Poisson engine.

Points are pairs ``(g, mu)`` of a grid-sampled matrix loop ``g`` and a
covector ``mu`` of the loop algebra (identified with a loop through the
trace pairing), together with the level ``k`` of the twist. Functions on
this phase space are handled through :class:`AdmissibleFunction`, which
bundles a value with its fiber gradient and its base directional
derivative: exactly the ingredients of the Poisson bracket.

Loops of the algebra that appear mid-computation (gradients, momentum
fields, generators) are kept as *fields*, that is ``(M, m, m)`` complex
arrays of matrix samples on the nodes ``x_j = 2 pi j / M``. Pairings of
fields use the rectangle rule, derivatives are spectral.
"""

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Tuple, Union

import numpy as np
from scipy import linalg

from ._affine import (  # noqa: WPS436
    AffineCovector, AffineVector, bar_bracket, dual_pair,
)
from ._errors import (  # noqa: WPS436
    AlgebraMismatch, AliasWarning, ConstraintViolation, DivisionByCenter,
    GridMismatch, KindMismatch,
)
from ._finite_differences import (  # noqa: WPS436
    relative_gap, richardson_derivative,
)
from ._loop_fourier import (  # noqa: WPS436
    DEFAULT_BAND, LoopElement, central_cocycle, field_to_loop, loop_derivative,
    loop_to_field, random_loop,
)
from ._orthogonal_algebra import OrthogonalAlgebra  # noqa: WPS436


DEFAULT_GRID_SIZE = 128
GROUP_TOLERANCE = 1e-10
ALIAS_TAIL_TOLERANCE = 1e-10
GROUP_LOOP_SCALE = 0.5

MOMENTUM_KINDS = frozenset(('left', 'right', 'scalar'))
ACTIONS = frozenset(('left', 'right'))


Field = np.ndarray
Weight = Union[LoopElement, Field, complex]


def spectral_derivative(field: Field) -> Field:
    """Differentiate samples along the grid axis through the FFT.

    The Nyquist mode of an even grid is dropped so that the discrete
    derivative stays skew-adjoint under the rectangle rule.
    """
    grid_size = field.shape[0]
    wavenumbers = np.fft.fftfreq(grid_size, d=1 / grid_size)
    if grid_size % 2 == 0:
        wavenumbers[grid_size // 2] = 0
    multiplier = 1j * wavenumbers.reshape((-1,) + (1,) * (field.ndim - 1))
    return np.fft.ifft(multiplier * np.fft.fft(field, axis=0), axis=0)


def alias_tail_energy(field: Field) -> float:
    """Return the spectral energy fraction above mode ``M/2 - 1``."""
    grid_size = field.shape[0]
    power = np.abs(np.fft.fft(field, axis=0)) ** 2
    power = power.reshape(grid_size, -1).sum(axis=1)
    total = power.sum()
    if total == 0:
        return 0.0
    wavenumbers = np.abs(np.fft.fftfreq(grid_size, d=1 / grid_size))
    return float(power[wavenumbers > grid_size / 2 - 1].sum() / total)


def commutator(left: Field, right: Field) -> Field:
    """Return the pointwise matrix commutator."""
    return left @ right - right @ left


def pair_fields(left: Field, right: Field) -> complex:
    """Return ``int_0^2pi tr(A(x) B(x)) dx`` by the rectangle rule."""
    integrand = np.einsum('jab,jba->j', left, right)
    return complex(2 * np.pi * np.mean(integrand))


def _check_group_membership(
        samples: Field,
        algebra: OrthogonalAlgebra,
) -> None:
    scale = max(1.0, float(np.max(np.abs(samples))))
    basis = algebra.basis_matrices
    size = algebra.matrix_size
    traceless = np.allclose(np.trace(basis, axis1=1, axis2=2), 0)
    antisymmetric = np.allclose(basis, -np.swapaxes(basis, 1, 2))

    determinants = np.linalg.det(samples)
    if np.min(np.abs(determinants)) <= GROUP_TOLERANCE:
        raise ConstraintViolation('Some loop samples are not invertible')
    if traceless:
        defect = float(np.max(np.abs(determinants - 1)))
        if defect > GROUP_TOLERANCE * scale ** size:
            raise ConstraintViolation(
                f'Samples leave the special linear group: det defect {defect}',
            )
    if antisymmetric:
        gram = np.swapaxes(samples, 1, 2) @ samples
        defect = float(np.max(np.abs(gram - np.eye(size))))
        if defect > GROUP_TOLERANCE * scale ** 2:
            raise ConstraintViolation(
                f'Samples leave the orthogonal group: g^T g defect {defect}',
            )


@dataclass(frozen=True, eq=False)
class GroupLoop:
    """A loop in the matrix group sampled on ``M`` uniform nodes."""

    algebra: OrthogonalAlgebra
    samples: Field

    def __post_init__(self) -> None:
        """Check the sample layout and invertibility."""
        size = self.algebra.matrix_size
        if self.samples.ndim != 3 or self.samples.shape[1:] != (size, size):
            raise AlgebraMismatch(
                f'Expected samples of {size}x{size} matrices '
                f'but got shape {self.samples.shape!r}',
            )
        determinants = np.abs(np.linalg.det(self.samples))
        if np.min(determinants) <= GROUP_TOLERANCE:
            raise ConstraintViolation('Some loop samples are not invertible')

    @property
    def grid_size(self) -> int:
        """Return the number of grid nodes ``M``."""
        return int(self.samples.shape[0])

    @cached_property
    def inverse(self) -> Field:
        """Return the pointwise inverse ``g(x)^-1``."""
        return np.linalg.inv(self.samples)

    @cached_property
    def derivative(self) -> Field:
        """Return ``g'`` by spectral differentiation."""
        return spectral_derivative(self.samples)

    def __matmul__(self, other: 'GroupLoop') -> 'GroupLoop':
        """Multiply two loops pointwise."""
        _ensure_compatible_loops(self, other)
        return GroupLoop(self.algebra, self.samples @ other.samples)


def _ensure_compatible_loops(left: GroupLoop, right: GroupLoop) -> None:
    if left.algebra is not right.algebra:
        raise AlgebraMismatch(
            f'Cannot combine loops in {left.algebra.name!r} '
            f'and {right.algebra.name!r}',
        )
    if left.grid_size != right.grid_size:
        raise GridMismatch(
            f'Loops sampled on {left.grid_size} and {right.grid_size} '
            'nodes cannot be combined',
        )


def identity_loop(
        algebra: OrthogonalAlgebra,
        grid_size: int = DEFAULT_GRID_SIZE,
) -> GroupLoop:
    """Return the constant identity loop."""
    size = algebra.matrix_size
    samples = np.broadcast_to(
        np.eye(size, dtype=complex), (grid_size, size, size),
    )
    return GroupLoop(algebra, samples.copy())


def exp_loop(
        loop: LoopElement,
        grid_size: int = DEFAULT_GRID_SIZE,
) -> GroupLoop:
    """Exponentiate a loop of the algebra pointwise.

    :raises AliasRisk: when the grid cannot resolve the loop
    :raises ConstraintViolation: when the samples fail group membership
    """
    samples = linalg.expm(loop_to_field(loop, grid_size))
    _check_group_membership(samples, loop.algebra)
    return GroupLoop(loop.algebra, samples)


def random_group_loop(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
        band: int = DEFAULT_BAND,
        grid_size: int = DEFAULT_GRID_SIZE,
) -> GroupLoop:
    """Exponentiate half of a random loop."""
    loop = random_loop(algebra, rng, band)
    return exp_loop(GROUP_LOOP_SCALE * loop, grid_size)


def loop_log_derivatives(group_loop: GroupLoop) -> Tuple[Field, Field]:
    """Return the Maurer-Cartan fields ``(g' g^-1, g^-1 g')``.

    An :class:`AliasWarning` is issued when the samples of ``g`` carry
    a relative spectral energy above ``1e-10`` beyond mode ``M/2 - 1``.
    """
    tail = alias_tail_energy(group_loop.samples)
    if tail > ALIAS_TAIL_TOLERANCE:
        warnings.warn(
            f'Group loop is under-resolved on {group_loop.grid_size} nodes '
            f'(relative tail energy {tail:.3e})',
            AliasWarning,
            stacklevel=2,
        )
    derivative = group_loop.derivative
    return (
        derivative @ group_loop.inverse,
        group_loop.inverse @ derivative,
    )


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """A point ``(g, mu)`` of the phase space at level ``k``."""

    g: GroupLoop
    mu: LoopElement
    k: complex

    def __post_init__(self) -> None:
        """Check that ``g`` and ``mu`` fit together."""
        if self.g.algebra is not self.mu.algebra:
            raise AlgebraMismatch(
                f'Group loop in {self.g.algebra.name!r} cannot carry '
                f'a covector in {self.mu.algebra.name!r}',
            )
        if 2 * self.mu.band >= self.g.grid_size:
            raise GridMismatch(
                f'Covector band {self.mu.band} is not resolved by '
                f'{self.g.grid_size} nodes',
            )

    @property
    def algebra(self) -> OrthogonalAlgebra:
        """Return the underlying algebra."""
        return self.g.algebra

    @property
    def grid_size(self) -> int:
        """Return the number of grid nodes."""
        return self.g.grid_size

    @cached_property
    def mu_field(self) -> Field:
        """Return ``mu`` sampled as matrices."""
        return loop_to_field(self.mu, self.grid_size)

    @cached_property
    def log_derivatives(self) -> Tuple[Field, Field]:
        """Return the Maurer-Cartan fields of ``g``."""
        return loop_log_derivatives(self.g)

    def with_group_loop(self, samples: Field) -> 'PhasePoint':
        """Return the point with ``g`` replaced and the fiber kept."""
        return PhasePoint(GroupLoop(self.algebra, samples), self.mu, self.k)


def random_phase_point(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
        k: complex,
        band: int = DEFAULT_BAND,
        grid_size: int = DEFAULT_GRID_SIZE,
) -> PhasePoint:
    """Draw a random group loop and covector at level ``k``."""
    group_loop = random_group_loop(algebra, rng, band, grid_size)
    return PhasePoint(group_loop, random_loop(algebra, rng, band), k)


def as_field(weight: Union[LoopElement, Field], grid_size: int) -> Field:
    """Sample a loop on the grid, or check the grid of a field."""
    if isinstance(weight, LoopElement):
        return loop_to_field(weight, grid_size)
    field = np.asarray(weight, dtype=complex)
    if field.ndim != 3 or field.shape[0] != grid_size:
        raise GridMismatch(
            f'Expected a field on {grid_size} nodes '
            f'but got shape {field.shape!r}',
        )
    return field


def conjugate(group_loop: GroupLoop, field: Field) -> Field:
    """Return ``g X g^-1`` pointwise."""
    return group_loop.samples @ field @ group_loop.inverse


def left_momentum_field(point: PhasePoint) -> Field:
    """Return ``J^L = g mu g^-1 + k g' g^-1`` as a field."""
    left_log, _right_log = point.log_derivatives
    return conjugate(point.g, point.mu_field) + point.k * left_log


def momentum_left(point: PhasePoint) -> LoopElement:
    """Return the left momentum ``J^L(g, mu)``."""
    return field_to_loop(left_momentum_field(point), point.algebra)


def momentum_right(point: PhasePoint) -> LoopElement:
    """Return the right momentum ``J^R(g, mu) = -mu``."""
    return -point.mu


def momentum_scalar(point: PhasePoint) -> complex:
    """Return the momentum of the rotation action.

    That is ``int (g^-1 g', mu) + 1/2 int (k g^-1 g', g^-1 g')``. The
    dual of the complex line is identified with itself through
    ``Re(z1 z2)``, so the real value of the momentum along ``z`` is
    ``Re(z * momentum_scalar(point))``. The value itself is
    complex, as the level and the loops may be.
    """
    _left_log, right_log = point.log_derivatives
    return (
        pair_fields(right_log, point.mu_field)
        + point.k * pair_fields(right_log, right_log) / 2
    )


def act_left(h_loop: GroupLoop, point: PhasePoint) -> PhasePoint:
    """Apply ``L_h(g, mu) = (h g, mu)``."""
    return PhasePoint(h_loop @ point.g, point.mu, point.k)


def act_right(h_loop: GroupLoop, point: PhasePoint) -> PhasePoint:
    """Apply ``R_h^-1(g, mu) = (g h^-1, h mu h^-1 + k h' h^-1)``."""
    _ensure_compatible_loops(h_loop, point.g)
    h_left_log, _h_right_log = loop_log_derivatives(h_loop)
    fiber = conjugate(h_loop, point.mu_field) + point.k * h_left_log
    return PhasePoint(
        GroupLoop(point.algebra, point.g.samples @ h_loop.inverse),
        field_to_loop(fiber, point.algebra),
        point.k,
    )


def left_curve(
        point: PhasePoint,
        generator: Field,
        time: float,
) -> PhasePoint:
    """Return ``(e^{tX} g, mu)``."""
    flowed = linalg.expm(time * generator) @ point.g.samples
    return point.with_group_loop(flowed)


def right_curve(
        point: PhasePoint,
        generator: Field,
        time: float,
) -> PhasePoint:
    """Return ``(g e^{-tX}, e^{tX} mu e^{-tX} + t k X')``."""
    forward = linalg.expm(time * generator)
    backward = linalg.expm(-time * generator)
    fiber = (
        forward @ point.mu_field @ backward
        + time * point.k * spectral_derivative(generator)
    )
    return PhasePoint(
        GroupLoop(point.algebra, point.g.samples @ backward),
        field_to_loop(fiber, point.algebra),
        point.k,
    )


def central_curve(
        point: PhasePoint,
        z_value: complex,
        time: float,
) -> PhasePoint:
    """Return ``(g e^{t z g^-1 g'}, mu + t z mu')``."""
    _left_log, right_log = point.log_derivatives
    samples = point.g.samples @ linalg.expm(time * z_value * right_log)
    return PhasePoint(
        GroupLoop(point.algebra, samples),
        point.mu + (time * z_value) * loop_derivative(point.mu),
        point.k,
    )


class FlowCurves(NamedTuple):
    """The three generator curves evaluated at one parameter value."""

    left: PhasePoint
    right: PhasePoint
    central: PhasePoint


def flow_curves(
        point: PhasePoint,
        generator: Union[LoopElement, Field],
        z_value: complex,
        time: float,
) -> FlowCurves:
    """Evaluate the left, right and central generator curves at ``t``."""
    field = as_field(generator, point.grid_size)
    return FlowCurves(
        left=left_curve(point, field, time),
        right=right_curve(point, field, time),
        central=central_curve(point, z_value, time),
    )


@dataclass(frozen=True)
class AdmissibleFunction:
    """A real function on the phase space with its partial derivatives.

    ``fiber_grad(p)`` is the field representing the gradient of the
    fiber restriction at ``mu`` relative to the real trace pairing, and
    ``base_deriv(p, Y)`` is the derivative at ``t = 0`` of the function
    along ``(g e^{tY}, mu)``.
    """

    value: Callable[[PhasePoint], float]
    fiber_grad: Callable[[PhasePoint], Field]
    base_deriv: Callable[[PhasePoint, Field], float]
    name: str = 'phi'

    def __add__(self, other: 'AdmissibleFunction') -> 'AdmissibleFunction':
        """Add two functions together with their derivatives."""
        return AdmissibleFunction(
            value=lambda point: self.value(point) + other.value(point),
            fiber_grad=lambda point: (
                self.fiber_grad(point) + other.fiber_grad(point)
            ),
            base_deriv=lambda point, direction: (
                self.base_deriv(point, direction)
                + other.base_deriv(point, direction)
            ),
            name=f'{self.name} + {other.name}',
        )

    def __mul__(self, scalar: float) -> 'AdmissibleFunction':
        """Scale by a real number."""
        return AdmissibleFunction(
            value=lambda point: scalar * self.value(point),
            fiber_grad=lambda point: scalar * self.fiber_grad(point),
            base_deriv=lambda point, direction: (
                scalar * self.base_deriv(point, direction)
            ),
            name=f'{scalar!r} * {self.name}',
        )

    __rmul__ = __mul__


def poisson(
        phi: AdmissibleFunction,
        psi: AdmissibleFunction,
        point: PhasePoint,
) -> float:
    """Evaluate the twisted Poisson bracket ``{phi, psi}`` at a point.

    It is ``D_{grad psi} phi - D_{grad phi} psi - <mu, [grad phi,
    grad psi]> - <k grad phi, (grad psi)'>`` with real pairings.
    """
    phi_grad = phi.fiber_grad(point)
    psi_grad = psi.fiber_grad(point)
    return (
        phi.base_deriv(point, psi_grad)
        - psi.base_deriv(point, phi_grad)
        - pair_fields(point.mu_field, commutator(phi_grad, psi_grad)).real
        - pair_fields(
            point.k * phi_grad, spectral_derivative(psi_grad),
        ).real
    )


def _left_functional(weight: Union[LoopElement, Field]) -> AdmissibleFunction:
    def transported(point: PhasePoint) -> Field:
        field = as_field(weight, point.grid_size)
        return point.g.inverse @ field @ point.g.samples

    def value(point: PhasePoint) -> float:
        field = as_field(weight, point.grid_size)
        return pair_fields(left_momentum_field(point), field).real

    def base_deriv(point: PhasePoint, direction: Field) -> float:
        tangent = (
            commutator(direction, point.mu_field)
            + point.k * spectral_derivative(direction)
        )
        return pair_fields(tangent, transported(point)).real

    return AdmissibleFunction(value, transported, base_deriv, '<J^L, X>')


def _right_functional(weight: Union[LoopElement, Field]) -> AdmissibleFunction:
    def value(point: PhasePoint) -> float:
        field = as_field(weight, point.grid_size)
        return -pair_fields(point.mu_field, field).real

    def fiber_grad(point: PhasePoint) -> Field:
        return -as_field(weight, point.grid_size)

    def base_deriv(point: PhasePoint, direction: Field) -> float:
        return 0.0

    return AdmissibleFunction(value, fiber_grad, base_deriv, '<J^R, X>')


def _scalar_functional(z_value: complex) -> AdmissibleFunction:
    def value(point: PhasePoint) -> float:
        return (z_value * momentum_scalar(point)).real

    def fiber_grad(point: PhasePoint) -> Field:
        _left_log, right_log = point.log_derivatives
        return z_value * right_log

    def base_deriv(point: PhasePoint, direction: Field) -> float:
        _left_log, right_log = point.log_derivatives
        tangent = (
            commutator(right_log, direction) + spectral_derivative(direction)
        )
        return (
            pair_fields(tangent, z_value * point.mu_field)
            + pair_fields(tangent, z_value * point.k * right_log)
        ).real

    return AdmissibleFunction(value, fiber_grad, base_deriv, '<J, z>')


def make_momentum_functional(kind: str, weight: Weight) -> AdmissibleFunction:
    """Package a momentum component as an admissible function.

    ``left`` and ``right`` take a loop (or field) ``X`` and give
    ``<J^L, X>`` and ``<J^R, X>``; ``scalar`` takes a complex ``z`` and
    gives ``Re(z J)`` for the momentum of the rotation action.

    :raises KindMismatch: on an unknown kind or a weight of wrong type
    """
    if kind not in MOMENTUM_KINDS:
        raise KindMismatch(
            f'Expected "kind" to be one of {sorted(MOMENTUM_KINDS)!r} '
            f'but got {kind!r}',
        )
    is_number = isinstance(weight, (int, float, complex, np.number))
    if kind == 'scalar':
        if not is_number:
            raise KindMismatch(
                f'The scalar momentum takes a complex weight, not {weight!r}',
            )
        return _scalar_functional(complex(weight))  # type: ignore[arg-type]
    if is_number:
        raise KindMismatch(
            f'The {kind} momentum takes a loop weight, not {weight!r}',
        )
    if kind == 'left':
        return _left_functional(weight)  # type: ignore[arg-type]
    return _right_functional(weight)  # type: ignore[arg-type]


def compose_left(
        phi: AdmissibleFunction,
        h_loop: GroupLoop,
) -> AdmissibleFunction:
    """Return ``phi o L_h`` as an admissible function."""
    return AdmissibleFunction(
        value=lambda point: phi.value(act_left(h_loop, point)),
        fiber_grad=lambda point: phi.fiber_grad(act_left(h_loop, point)),
        base_deriv=lambda point, direction: phi.base_deriv(
            act_left(h_loop, point), direction,
        ),
        name=f'{phi.name} o L_h',
    )


def fiber_grad_residual(
        phi: AdmissibleFunction,
        point: PhasePoint,
        direction: LoopElement,
) -> float:
    """Compare ``fiber_grad`` with differences of ``value`` along ``mu``."""
    numeric = richardson_derivative(
        lambda time: phi.value(
            PhasePoint(point.g, point.mu + time * direction, point.k),
        ),
    )
    analytic = pair_fields(
        as_field(direction, point.grid_size), phi.fiber_grad(point),
    ).real
    return relative_gap(numeric, analytic)


def base_deriv_residual(
        phi: AdmissibleFunction,
        point: PhasePoint,
        direction: Union[LoopElement, Field],
) -> float:
    """Compare ``base_deriv`` with differences along ``g e^{tY}``."""
    field = as_field(direction, point.grid_size)
    numeric = richardson_derivative(
        lambda time: phi.value(
            point.with_group_loop(point.g.samples @ linalg.expm(time * field)),
        ),
    )
    return relative_gap(numeric, phi.base_deriv(point, field))


def _generator_curve(
        kind: str,
        weight: Weight,
        point: PhasePoint,
) -> Callable[[float], PhasePoint]:
    if kind == 'scalar':
        z_value = complex(weight)  # type: ignore[arg-type]
        return lambda time: central_curve(point, z_value, time)
    field = as_field(weight, point.grid_size)  # type: ignore[arg-type]
    generator_curve = left_curve if kind == 'left' else right_curve
    return lambda time: generator_curve(point, field, time)


def check_momentum_equation(
        kind: str,
        weight: Weight,
        phi_test: AdmissibleFunction,
        point: PhasePoint,
) -> float:
    """Compare a generator's flow derivative with a Poisson bracket.

    The derivative of ``phi_test`` along the left, right or central
    generator curve must equal ``{phi_test, <momentum, weight>}``.
    """
    momentum = make_momentum_functional(kind, weight)
    curve = _generator_curve(kind, weight, point)
    numeric = richardson_derivative(lambda time: phi_test.value(curve(time)))
    return relative_gap(numeric, poisson(phi_test, momentum, point))


def check_rotation_momentum_split(point: PhasePoint) -> float:
    """Compare the scalar momentum with ``(1/2k) int (J^L,J^L)-(J^R,J^R)``.

    :raises DivisionByCenter: when ``k == 0``
    """
    if point.k == 0:
        raise DivisionByCenter(
            'The scalar momentum cannot be rewritten through J^L and J^R '
            'at level k = 0',
        )
    left_field = left_momentum_field(point)
    right_field = -point.mu_field
    rewritten = (
        pair_fields(left_field, left_field)
        - pair_fields(right_field, right_field)
    ) / (2 * point.k)
    return relative_gap(momentum_scalar(point), rewritten)


def check_casimir_momentum_relation(point: PhasePoint) -> float:
    """Compare ``-1/2 int (J^R,J^R)`` with ``k J - 1/2 int (J^L,J^L)``."""
    left_field = left_momentum_field(point)
    right_field = -point.mu_field
    lhs = -pair_fields(right_field, right_field) / 2
    rhs = (
        point.k * momentum_scalar(point)
        - pair_fields(left_field, left_field) / 2
    )
    return relative_gap(lhs, rhs)


def big_s(point: PhasePoint) -> AffineCovector:
    """Return the combined momentum ``(J, J^L, k)`` as a covector."""
    return AffineCovector(
        momentum_scalar(point), momentum_left(point), complex(point.k),
    )


def check_cocycle_relation(  # noqa: WPS211
        z_value: complex,
        x_loop: LoopElement,
        zeta_value: complex,
        y_loop: LoopElement,
        point: PhasePoint,
        a_value: complex = 0,
        b_value: complex = 0,
) -> float:
    """Compare brackets of combined momenta with the affine bracket.

    ``{<(J, J^L), (z, X)>, <(J, J^L), (zeta, Y)>}`` must equal
    ``<(J, J^L, k), [(z, X, a), (zeta, Y, b)]>`` for any ``a`` and ``b``.
    """
    first = (
        make_momentum_functional('scalar', z_value)
        + make_momentum_functional('left', x_loop)
    )
    second = (
        make_momentum_functional('scalar', zeta_value)
        + make_momentum_functional('left', y_loop)
    )
    affine_bracket = bar_bracket(
        AffineVector(complex(z_value), x_loop, complex(a_value)),
        AffineVector(complex(zeta_value), y_loop, complex(b_value)),
    )
    return relative_gap(
        poisson(first, second, point),
        dual_pair(big_s(point), affine_bracket),
    )


def check_independence_formula(  # noqa: WPS211
        xi_loop: Union[LoopElement, Field],
        eta_loop: Union[LoopElement, Field],
        generator: Union[LoopElement, Field],
        nu_loop: LoopElement,
        point: PhasePoint,
) -> float:
    """Differentiate ``<xi, J^L> + <J^R, eta>`` along ``(g e^{tX}, mu+t nu)``.

    The difference quotient is compared with the closed form
    ``<g^-1 xi g, nu + [X, mu] + k X'> - <eta, nu>``.
    """
    grid_size = point.grid_size
    xi_field = as_field(xi_loop, grid_size)
    eta_field = as_field(eta_loop, grid_size)
    generator_field = as_field(generator, grid_size)
    nu_field = as_field(nu_loop, grid_size)

    def combined(time: float) -> float:
        moved = PhasePoint(
            GroupLoop(
                point.algebra,
                point.g.samples @ linalg.expm(time * generator_field),
            ),
            point.mu + time * nu_loop,
            point.k,
        )
        return (
            pair_fields(xi_field, left_momentum_field(moved))
            - pair_fields(moved.mu_field, eta_field)
        ).real

    tangent = (
        nu_field
        + commutator(generator_field, point.mu_field)
        + point.k * spectral_derivative(generator_field)
    )
    closed_form = (
        pair_fields(point.g.inverse @ xi_field @ point.g.samples, tangent)
        - pair_fields(eta_field, nu_field)
    ).real
    return relative_gap(richardson_derivative(combined), closed_form)


def omega_twist(
        group_loop: GroupLoop,
        x_loop: LoopElement,
        y_loop: LoopElement,
        k: complex,
) -> float:
    """Evaluate the twist 2-form ``Re int (X, k Y') dx``.

    The tangent vectors at ``g`` are given by left-translated generators
    ``g e^{tX}`` and ``g e^{tY}``, so the value does not depend on ``g``.
    """
    return (k * central_cocycle(x_loop, y_loop)).real


def _transformed_weight(
        action: str,
        kind: str,
        weight: Field,
        h_loop: GroupLoop,
) -> Field:
    """Return the weight of ``<J, X> o action_h`` up to a constant."""
    if action == kind:
        return h_loop.inverse @ weight @ h_loop.samples
    return weight


def _transformation_offset(
        action: str,
        kind: str,
        weight: Field,
        h_loop: GroupLoop,
        k: complex,
) -> float:
    if action != kind:
        return 0.0
    h_left_log, _h_right_log = loop_log_derivatives(h_loop)
    offset = pair_fields(k * h_left_log, weight).real
    return offset if action == 'left' else -offset


def _act(action: str, h_loop: GroupLoop, point: PhasePoint) -> PhasePoint:
    if action not in ACTIONS:
        raise KindMismatch(
            f'Expected "action" to be one of {sorted(ACTIONS)!r} '
            f'but got {action!r}',
        )
    return (act_left if action == 'left' else act_right)(h_loop, point)


def check_momentum_transformation(
        action: str,
        kind: str,
        weight: Union[LoopElement, Field],
        h_loop: GroupLoop,
        point: PhasePoint,
) -> float:
    """Check how ``<J^L, X>`` or ``<J^R, X>`` transform under an action.

    Under the left action ``J^L -> h J^L h^-1 + k h' h^-1`` while ``J^R``
    is unchanged; under the right action ``J^R -> -(h mu h^-1 + k h'
    h^-1)`` while ``J^L`` is unchanged.
    """
    field = as_field(weight, point.grid_size)
    momentum = make_momentum_functional(kind, field)
    if action == 'left':
        moved = compose_left(momentum, h_loop).value(point)
    else:
        moved = momentum.value(_act(action, h_loop, point))
    transformed = make_momentum_functional(
        kind, _transformed_weight(action, kind, field, h_loop),
    ).value(point)
    offset = _transformation_offset(action, kind, field, h_loop, point.k)
    return relative_gap(moved, transformed + offset)


def check_symplecticity(  # noqa: WPS211
        action: str,
        kinds: Tuple[str, str],
        x_loop: Union[LoopElement, Field],
        y_loop: Union[LoopElement, Field],
        h_loop: GroupLoop,
        point: PhasePoint,
) -> float:
    """Check ``{phi o A_h, psi o A_h} = {phi, psi} o A_h``.

    ``phi`` and ``psi`` are momentum components of the given kinds and
    the composites are built from the transformation rules checked by
    :func:`check_momentum_transformation`.
    """
    grid_size = point.grid_size
    weights = as_field(x_loop, grid_size), as_field(y_loop, grid_size)
    composed = [
        make_momentum_functional(
            kind, _transformed_weight(action, kind, weight, h_loop),
        )
        for kind, weight in zip(kinds, weights)
    ]
    originals = [
        make_momentum_functional(kind, weight)
        for kind, weight in zip(kinds, weights)
    ]
    return relative_gap(
        poisson(composed[0], composed[1], point),
        poisson(originals[0], originals[1], _act(action, h_loop, point)),
    )


def check_poisson_jacobi(
        kind: str,
        loops: Tuple[
            Union[LoopElement, Field],
            Union[LoopElement, Field],
            Union[LoopElement, Field],
        ],
        point: PhasePoint,
) -> float:
    """Check the Jacobi identity on ``<J^L, .>`` or ``<J^R, .>``.

    The inner brackets are replaced by their closed forms
    ``<J, [X, Y]> + const``; constants drop out of the outer bracket.
    """
    x_field, y_field, z_field = (
        as_field(loop, point.grid_size) for loop in loops
    )

    def nested(first: Field, second: Field, third: Field) -> float:
        return poisson(
            make_momentum_functional(kind, commutator(first, second)),
            make_momentum_functional(kind, third),
            point,
        )

    terms = (
        nested(x_field, y_field, z_field),
        nested(y_field, z_field, x_field),
        nested(z_field, x_field, y_field),
    )
    return abs(sum(terms)) / max(1.0, *(abs(term) for term in terms))


def check_mixed_poisson_jacobi(
        x_loop: Union[LoopElement, Field],
        y_loop: Union[LoopElement, Field],
        z_value: complex,
        point: PhasePoint,
) -> float:
    """Check the Jacobi identity on ``<J^L, X>``, ``<J^R, Y>``, ``<J, z>``.

    Each outer bracket ``{{phi, psi}, chi}`` is the derivative of
    ``{phi, psi}`` along the generator curve of ``chi``, so no closed
    form of the inner brackets is assumed.
    """
    slots = (('left', x_loop), ('right', y_loop), ('scalar', z_value))
    functionals = [
        make_momentum_functional(kind, weight) for kind, weight in slots
    ]
    curves = [_generator_curve(kind, weight, point) for kind, weight in slots]

    def nested(first: int, second: int, third: int) -> float:
        return richardson_derivative(
            lambda time: poisson(
                functionals[first], functionals[second], curves[third](time),
            ),
        )

    terms = (nested(0, 1, 2), nested(1, 2, 0), nested(2, 0, 1))
    return abs(sum(terms)) / max(1.0, *(abs(term) for term in terms))


def momentum_bracket_defect(
        kind: str,
        x_loop: Union[LoopElement, Field],
        y_loop: Union[LoopElement, Field],
        point: PhasePoint,
) -> float:
    """Return ``{<J, X>, <J, Y>} - <J, [X, Y]>`` for ``J^L`` or ``J^R``.

    The defect is the constant ``+<X, kY'>`` for the left momentum and
    ``-<X, kY'>`` for the right one; it vanishes only at ``k = 0``.
    """
    x_field = as_field(x_loop, point.grid_size)
    y_field = as_field(y_loop, point.grid_size)
    bracket_value = poisson(
        make_momentum_functional(kind, x_field),
        make_momentum_functional(kind, y_field),
        point,
    )
    return bracket_value - make_momentum_functional(
        kind, commutator(x_field, y_field),
    ).value(point)


def check_left_symplecticity(
        kinds: Tuple[str, str],
        x_loop: Union[LoopElement, Field],
        y_loop: Union[LoopElement, Field],
        h_loop: GroupLoop,
        point: PhasePoint,
) -> float:
    """Check that ``L_h`` preserves brackets of momentum components."""
    return check_symplecticity('left', kinds, x_loop, y_loop, h_loop, point)


def check_right_symplecticity(
        kinds: Tuple[str, str],
        x_loop: Union[LoopElement, Field],
        y_loop: Union[LoopElement, Field],
        h_loop: GroupLoop,
        point: PhasePoint,
) -> float:
    """Check that ``R_h^-1`` preserves brackets of momentum components."""
    return check_symplecticity('right', kinds, x_loop, y_loop, h_loop, point)
