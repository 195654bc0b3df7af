"""The identity suites and the runner that turns them into a report.

Every check draws its inputs from a generator seeded by the run seed
and a 64-bit offset derived from the case id alone, so any single case
can be re-run in isolation with ``--case``. Identity modules are called
through their module objects; tests rely on patching them there.
"""

import hashlib
import json
import math
import warnings
from dataclasses import dataclass
from fnmatch import fnmatchcase
from logging import getLogger
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from . import _affine as affine  # noqa: WPS436
from . import _loop_fourier as loops  # noqa: WPS436
from . import _orthogonal_algebra as algebras  # noqa: WPS436
from . import _phase_space as phase  # noqa: WPS436
from ._config import SUITE_NAMES, SuiteConfig, format_complex  # noqa: WPS436
from ._errors import DivisionByCenter  # noqa: WPS436
from ._finite_differences import relative_gap  # noqa: WPS436
from ._report import CaseRecord, SuiteReport  # noqa: WPS436
from ._version import __version__  # noqa: WPS436


logger = getLogger(__name__)

WITNESS_THRESHOLD = 1e-3


@dataclass(frozen=True)
class CaseInputs:
    """What a check gets to build its inputs from."""

    algebra: algebras.OrthogonalAlgebra
    rng: np.random.Generator
    band: int
    grid: int
    k: complex
    trials: int
    k_values: Tuple[complex, ...]

    def element(self) -> algebras.AlgebraElement:
        """Draw an element of the algebra."""
        return algebras.random_element(self.algebra, self.rng)

    def loop(self) -> loops.LoopElement:
        """Draw a loop in the configured band."""
        return loops.random_loop(self.algebra, self.rng, self.band)

    def vector(self) -> affine.AffineVector:
        """Draw an element of the full affine algebra."""
        return affine.random_vector(self.algebra, self.rng, self.band)

    def covector(self) -> affine.AffineCovector:
        """Draw an element of its dual."""
        return affine.random_covector(self.algebra, self.rng, self.band)

    def scalar(self) -> complex:
        """Draw a complex number from the unit disc."""
        return complex(algebras.unit_disc(self.rng, (1,))[0])

    def group_loop(self) -> phase.GroupLoop:
        """Draw a group loop on the configured grid."""
        return phase.random_group_loop(
            self.algebra, self.rng, self.band, self.grid,
        )

    def point(self, level: Optional[complex] = None) -> phase.PhasePoint:
        """Draw a phase space point at level ``k`` (or ``level``)."""
        return phase.random_phase_point(
            self.algebra, self.rng,
            self.k if level is None else level,
            self.band, self.grid,
        )


Check = Callable[[CaseInputs], float]


class CheckSpec(NamedTuple):
    """A registered identity check.

    ``repeat`` multiplies the configured trial count; ``0`` makes the
    check a single case. ``per_level`` checks run once per level ``k``.
    """

    suite: str
    name: str
    func: Check
    tolerance: str
    repeat: int
    per_level: bool


class PlannedCase(NamedTuple):
    """One concrete case of a run, before it is evaluated."""

    spec: CheckSpec
    case_id: str
    trial: int
    k: complex


CHECKS: List[CheckSpec] = []


def _register(
        suite: str,
        name: str,
        tolerance: str = 'exact',
        repeat: int = 1,
        per_level: bool = False,
) -> Callable[[Check], Check]:
    def decorator(func: Check) -> Check:
        CHECKS.append(
            CheckSpec(suite, name, func, tolerance, repeat, per_level),
        )
        return func
    return decorator


def _scaled(residual: float, *magnitudes: float) -> float:
    return residual / max(1.0, *magnitudes)


# Base algebra


@_register('base', 'ad-invariance', repeat=4)
def _ad_invariance(case: CaseInputs) -> float:
    return algebras.ad_invariance_residual(
        case.element(), case.element(), case.element(),
    )


@_register('base', 'jacobi', repeat=4)
def _jacobi(case: CaseInputs) -> float:
    return algebras.jacobi_residual(
        case.element(), case.element(), case.element(),
    )


@_register('base', 'matrix-realization', repeat=4)
def _matrix_realization(case: CaseInputs) -> float:
    return algebras.realization_residual(case.element(), case.element())


@_register('base', 'structure-constants', repeat=0)
def _structure_constants(case: CaseInputs) -> float:
    return max(algebras.invariant_residuals(case.algebra).values())


# Loop algebra


@_register('loop', 'cocycle-antisymmetry')
def _cocycle_antisymmetry(case: CaseInputs) -> float:
    x_loop, y_loop = case.loop(), case.loop()
    forward = loops.central_cocycle(x_loop, y_loop)
    backward = loops.central_cocycle(y_loop, x_loop)
    return _scaled(abs(forward + backward), abs(forward))


@_register('loop', 'derivation-rule')
def _derivation_rule(case: CaseInputs) -> float:
    x_loop, y_loop = case.loop(), case.loop()
    lhs = loops.loop_derivative(loops.loop_bracket(x_loop, y_loop))
    rhs = (
        loops.loop_bracket(loops.loop_derivative(x_loop), y_loop)
        + loops.loop_bracket(x_loop, loops.loop_derivative(y_loop))
    )
    return _scaled((lhs - rhs).norm(), lhs.norm())


@_register('loop', 'pair-symmetry')
def _pair_symmetry(case: CaseInputs) -> float:
    xi_loop, x_loop = case.loop(), case.loop()
    return relative_gap(
        loops.loop_pair(xi_loop, x_loop), loops.loop_pair(x_loop, xi_loop),
    )


@_register('loop', 'pair-ad-invariance')
def _pair_ad_invariance(case: CaseInputs) -> float:
    x_loop, y_loop, z_loop = case.loop(), case.loop(), case.loop()
    return relative_gap(
        loops.loop_pair(x_loop, loops.loop_bracket(y_loop, z_loop)),
        loops.loop_pair(loops.loop_bracket(x_loop, y_loop), z_loop),
    )


@_register('loop', 'quadrature', tolerance='grid')
def _quadrature(case: CaseInputs) -> float:
    xi_loop, x_loop = case.loop(), case.loop()
    return relative_gap(
        loops.loop_pair(xi_loop, x_loop),
        loops.quadrature_pair(xi_loop, x_loop, case.grid),
    )


@_register('loop', 'grid-round-trip')
def _grid_round_trip(case: CaseInputs) -> float:
    loop = case.loop()
    recovered = loops.from_grid(loops.to_grid(loop, case.grid), case.algebra)
    return _scaled((recovered - loop).norm(), loop.norm())


def _field_gap(lhs: np.ndarray, rhs: np.ndarray) -> float:
    scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)))
    return _scaled(float(np.max(np.abs(lhs - rhs), initial=0)), scale)


@_register('loop', 'derivative-on-grid', tolerance='grid')
def _derivative_on_grid(case: CaseInputs) -> float:
    loop = case.loop()
    return _field_gap(
        loops.to_grid(loops.loop_derivative(loop), case.grid),
        phase.spectral_derivative(loops.to_grid(loop, case.grid)),
    )


@_register('loop', 'bracket-on-grid', tolerance='grid')
def _bracket_on_grid(case: CaseInputs) -> float:
    x_loop, y_loop = case.loop(), case.loop()
    return _field_gap(
        loops.loop_to_field(loops.loop_bracket(x_loop, y_loop), case.grid),
        phase.commutator(
            loops.loop_to_field(x_loop, case.grid),
            loops.loop_to_field(y_loop, case.grid),
        ),
    )


@_register('loop', 'cocycle-on-grid', tolerance='grid')
def _cocycle_on_grid(case: CaseInputs) -> float:
    x_loop, y_loop = case.loop(), case.loop()
    integrand = case.algebra.pair_coefficients(
        loops.to_grid(x_loop, case.grid),
        phase.spectral_derivative(loops.to_grid(y_loop, case.grid)),
    )
    return relative_gap(
        loops.central_cocycle(x_loop, y_loop),
        2 * np.pi * np.mean(integrand),
    )


# Full affine algebra


@_register('affine', 'bar-jacobi', repeat=2)
def _bar_jacobi(case: CaseInputs) -> float:
    u, v, w = case.vector(), case.vector(), case.vector()
    scale = affine.bar_bracket(u, affine.bar_bracket(v, w)).norm()
    return _scaled(affine.bar_jacobi_residual(u, v, w), scale)


@_register('affine', 'coadjoint-duality', repeat=2)
def _coadjoint_duality(case: CaseInputs) -> float:
    u, v, mu = case.vector(), case.vector(), case.covector()
    scale = abs(affine.pair_bilinear(mu, affine.bar_bracket(u, v)))
    return _scaled(affine.coadjoint_duality_residual(u, v, mu), scale)


def _invariance(
        case: CaseInputs,
        gradient: affine.GradientMap,
) -> float:
    u, mu = case.vector(), case.covector()
    scale = mu.norm() * u.norm() * gradient(mu).norm()
    return _scaled(affine.invariance_residual(gradient, u, mu), scale)


@_register('affine', 'kappa-invariance', repeat=2)
def _kappa_invariance(case: CaseInputs) -> float:
    return _invariance(case, affine.grad_kappa)


@_register('affine', 'pi-invariance', repeat=2)
def _pi_invariance(case: CaseInputs) -> float:
    u, mu = case.vector(), case.covector()
    return affine.invariance_residual(affine.grad_pi, u, mu) + abs(
        affine.pi_center(affine.ad_star(u, mu)),
    )


@_register('affine', 'casimir-invariance', repeat=2)
def _casimir_invariance(case: CaseInputs) -> float:
    # F(kappa, pi) = kappa**2 + 3 kappa pi + sin(pi)
    gradient = affine.casimir_gradient(
        lambda kappa, center: 2 * kappa + 3 * center,
        lambda kappa, center: 3 * kappa + np.cos(center),
    )
    return _invariance(case, gradient)


@_register('affine', 'kappa-homogeneity')
def _kappa_homogeneity(case: CaseInputs) -> float:
    mu = case.covector()
    scale = 1 + 2 * case.scalar()
    return relative_gap(
        affine.kappa(scale * mu), scale ** 2 * affine.kappa(mu),
    )


@_register('affine', 'kappa-gradient', tolerance='fd')
def _kappa_gradient(case: CaseInputs) -> float:
    mu = case.covector()
    numeric = affine.gradient_by_differences(
        lambda covector: affine.kappa(covector).real, mu,
    )
    analytic = affine.grad_kappa(mu)
    return _scaled((numeric - analytic).norm(), analytic.norm())


@_register('affine', 'non-invariance-witness', tolerance='witness', repeat=0)
def _non_invariance_witness(case: CaseInputs) -> float:
    gradient = affine.linear_functional_gradient(case.loop())
    largest = max(
        affine.invariance_residual(gradient, case.vector(), case.covector())
        for _trial in range(case.trials)
    )
    return 1 / largest if largest else math.inf


# Phase space


def _left(weight: phase.Weight) -> phase.AdmissibleFunction:
    return phase.make_momentum_functional('left', weight)


def _right(weight: phase.Weight) -> phase.AdmissibleFunction:
    return phase.make_momentum_functional('right', weight)


def _rotation(z_value: complex) -> phase.AdmissibleFunction:
    return phase.make_momentum_functional('scalar', z_value)


def _momentum_brackets(case: CaseInputs, kind: str) -> float:
    point = case.point()
    x_loop, y_loop = case.loop(), case.loop()
    momentum = _left if kind == 'left' else _right
    cocycle = (point.k * loops.central_cocycle(x_loop, y_loop)).real
    sign = 1 if kind == 'left' else -1
    commutator = phase.commutator(
        loops.loop_to_field(x_loop, case.grid),
        loops.loop_to_field(y_loop, case.grid),
    )
    return relative_gap(
        phase.poisson(momentum(x_loop), momentum(y_loop), point),
        momentum(commutator).value(point) + sign * cocycle,
    )


@_register('phase', 'left-left-bracket', tolerance='grid', per_level=True)
def _left_left_bracket(case: CaseInputs) -> float:
    return _momentum_brackets(case, 'left')


@_register('phase', 'right-right-bracket', tolerance='grid', per_level=True)
def _right_right_bracket(case: CaseInputs) -> float:
    return _momentum_brackets(case, 'right')


@_register('phase', 'left-right-bracket', tolerance='grid', per_level=True)
def _left_right_bracket(case: CaseInputs) -> float:
    point = case.point()
    return abs(phase.poisson(_left(case.loop()), _right(case.loop()), point))


@_register('phase', 'rotation-bracket', tolerance='grid', per_level=True)
def _rotation_bracket(case: CaseInputs) -> float:
    point = case.point()
    first, second = _rotation(case.scalar()), _rotation(case.scalar())
    return abs(phase.poisson(first, second, point))


@_register('phase', 'poisson-antisymmetry', tolerance='grid', per_level=True)
def _poisson_antisymmetry(case: CaseInputs) -> float:
    point = case.point()
    phi = _left(case.loop()) + _rotation(case.scalar())
    psi = _right(case.loop()) + _left(case.loop())
    forward = phase.poisson(phi, psi, point)
    return relative_gap(forward, -phase.poisson(psi, phi, point))


@_register('phase', 'poisson-bilinearity', tolerance='grid', per_level=True)
def _poisson_bilinearity(case: CaseInputs) -> float:
    point = case.point()
    phi, chi = _left(case.loop()), _rotation(case.scalar())
    psi = _right(case.loop()) + _left(case.loop())
    weight = float(case.rng.uniform(-2, 2))
    combined = phase.poisson(phi + weight * chi, psi, point)
    separate = (
        phase.poisson(phi, psi, point)
        + weight * phase.poisson(chi, psi, point)
    )
    return relative_gap(combined, separate)


@_register('phase', 'left-jacobi', tolerance='grid', per_level=True)
def _left_jacobi(case: CaseInputs) -> float:
    point = case.point()
    return phase.check_poisson_jacobi(
        'left', (case.loop(), case.loop(), case.loop()), point,
    )


@_register('phase', 'right-jacobi', tolerance='grid', per_level=True)
def _right_jacobi(case: CaseInputs) -> float:
    point = case.point()
    return phase.check_poisson_jacobi(
        'right', (case.loop(), case.loop(), case.loop()), point,
    )


@_register('phase', 'mixed-jacobi', tolerance='fd', per_level=True)
def _mixed_jacobi(case: CaseInputs) -> float:
    point = case.point()
    return phase.check_mixed_poisson_jacobi(
        case.loop(), case.loop(), case.scalar(), point,
    )


@_register('phase', 'fiber-gradients', tolerance='fd', per_level=True)
def _fiber_gradients(case: CaseInputs) -> float:
    point = case.point()
    direction = case.loop()
    functionals = (
        _left(case.loop()), _right(case.loop()), _rotation(case.scalar()),
    )
    return max(
        phase.fiber_grad_residual(phi, point, direction)
        for phi in functionals
    )


@_register('phase', 'base-derivatives', tolerance='fd', per_level=True)
def _base_derivatives(case: CaseInputs) -> float:
    point = case.point()
    direction = case.loop()
    functionals = (
        _left(case.loop()), _right(case.loop()), _rotation(case.scalar()),
    )
    return max(
        phase.base_deriv_residual(phi, point, direction)
        for phi in functionals
    )


def _momentum_equation(case: CaseInputs, kind: str) -> float:
    point = case.point()
    weight = case.scalar() if kind == 'scalar' else case.loop()
    phi_test = (
        _left(case.loop()) + _right(case.loop()) + _rotation(case.scalar())
    )
    return phase.check_momentum_equation(kind, weight, phi_test, point)


@_register('phase', 'left-generator', tolerance='fd', per_level=True)
def _left_generator(case: CaseInputs) -> float:
    return _momentum_equation(case, 'left')


@_register('phase', 'right-generator', tolerance='fd', per_level=True)
def _right_generator(case: CaseInputs) -> float:
    return _momentum_equation(case, 'right')


@_register('phase', 'rotation-generator', tolerance='fd', per_level=True)
def _rotation_generator(case: CaseInputs) -> float:
    return _momentum_equation(case, 'scalar')


@_register('phase', 'independence-formula', tolerance='fd', per_level=True)
def _independence_formula(case: CaseInputs) -> float:
    point = case.point()
    return phase.check_independence_formula(
        case.loop(), case.loop(), case.loop(), case.loop(), point,
    )


@_register(
    'phase', 'rotation-momentum-split', tolerance='grid', per_level=True,
)
def _rotation_momentum_split(case: CaseInputs) -> float:
    point = case.point()
    if point.k == 0:
        return _division_guard(point)
    return phase.check_rotation_momentum_split(point)


def _division_guard(point: phase.PhasePoint) -> float:
    try:
        phase.check_rotation_momentum_split(point)
    except DivisionByCenter:
        return 0.0
    return math.inf


@_register('phase', 'rotation-momentum-split-zero-level', repeat=0)
def _rotation_momentum_split_zero_level(case: CaseInputs) -> float:
    return _division_guard(case.point(level=0j))


@_register(
    'phase', 'casimir-momentum-relation', tolerance='grid', per_level=True,
)
def _casimir_momentum_relation(case: CaseInputs) -> float:
    return phase.check_casimir_momentum_relation(case.point())


@_register('phase', 'combined-kappa', tolerance='grid', per_level=True)
def _combined_kappa(case: CaseInputs) -> float:
    point = case.point()
    right_field = -point.mu_field
    return relative_gap(
        affine.kappa(phase.big_s(point)),
        -phase.pair_fields(right_field, right_field) / 2,
    )


@_register(
    'phase', 'combined-kappa-left-invariance',
    tolerance='grid', per_level=True,
)
def _combined_kappa_left_invariance(case: CaseInputs) -> float:
    point = case.point()
    moved = phase.act_left(case.group_loop(), point)
    return relative_gap(
        affine.kappa(phase.big_s(moved)), affine.kappa(phase.big_s(point)),
    )


@_register('phase', 'cocycle-relation', tolerance='grid', per_level=True)
def _cocycle_relation(case: CaseInputs) -> float:
    point = case.point()
    return phase.check_cocycle_relation(
        case.scalar(), case.loop(), case.scalar(), case.loop(), point,
    )


@_register('phase', 'rotation-compatibility', tolerance='grid', per_level=True)
def _rotation_compatibility(case: CaseInputs) -> float:
    point = case.point()
    zero = loops.zero_loop(case.algebra)
    return phase.check_cocycle_relation(1, zero, 0, case.loop(), point)


@_register('phase', 'cocycle-central-independence', per_level=True)
def _cocycle_central_independence(case: CaseInputs) -> float:
    point = case.point()
    arguments = (
        case.scalar(), case.loop(), case.scalar(), case.loop(), point,
    )
    return abs(
        phase.check_cocycle_relation(
            *arguments, a_value=case.scalar(), b_value=case.scalar(),
        )
        - phase.check_cocycle_relation(*arguments),
    )


def _transformation(case: CaseInputs, action: str, kind: str) -> float:
    point = case.point()
    return phase.check_momentum_transformation(
        action, kind, case.loop(), case.group_loop(), point,
    )


@_register(
    'phase', 'left-action-on-left-momentum', tolerance='grid', per_level=True,
)
def _left_action_on_left(case: CaseInputs) -> float:
    return _transformation(case, 'left', 'left')


@_register(
    'phase', 'left-action-on-right-momentum', tolerance='grid', per_level=True,
)
def _left_action_on_right(case: CaseInputs) -> float:
    return _transformation(case, 'left', 'right')


@_register(
    'phase', 'right-action-on-left-momentum', tolerance='grid', per_level=True,
)
def _right_action_on_left(case: CaseInputs) -> float:
    return _transformation(case, 'right', 'left')


@_register(
    'phase', 'right-action-on-right-momentum',
    tolerance='grid', per_level=True,
)
def _right_action_on_right(case: CaseInputs) -> float:
    return _transformation(case, 'right', 'right')


@_register(
    'phase', 'left-momentum-right-invariance',
    tolerance='grid', per_level=True,
)
def _left_momentum_right_invariance(case: CaseInputs) -> float:
    point = case.point()
    original = phase.momentum_left(point)
    moved = phase.momentum_left(phase.act_right(case.group_loop(), point))
    return _scaled((moved - original).norm(), original.norm())


@_register('phase', 'left-symplecticity', tolerance='grid', per_level=True)
def _left_symplecticity(case: CaseInputs) -> float:
    point, h_loop = case.point(), case.group_loop()
    return max(
        phase.check_left_symplecticity(
            kinds, case.loop(), case.loop(), h_loop, point,
        )
        for kinds in (('left', 'left'), ('left', 'right'), ('right', 'right'))
    )


@_register('phase', 'right-symplecticity', tolerance='grid', per_level=True)
def _right_symplecticity(case: CaseInputs) -> float:
    point, h_loop = case.point(), case.group_loop()
    return max(
        phase.check_right_symplecticity(
            kinds, case.loop(), case.loop(), h_loop, point,
        )
        for kinds in (('left', 'left'), ('left', 'right'), ('right', 'right'))
    )


@_register('phase', 'twist-antisymmetry')
def _twist_antisymmetry(case: CaseInputs) -> float:
    x_loop, y_loop = case.loop(), case.loop()
    g_loop = case.group_loop()
    level = case.scalar()
    forward = phase.omega_twist(g_loop, x_loop, y_loop, level)
    backward = phase.omega_twist(g_loop, y_loop, x_loop, level)
    return _scaled(abs(forward + backward), abs(forward))


@_register('phase', 'non-equivariance-witness', tolerance='witness', repeat=0)
def _non_equivariance_witness(case: CaseInputs) -> float:
    level = next((k for k in case.k_values if k != 0), 1 + 0j)
    # constant loops have no cocycle
    band = max(1, case.band)
    largest = max(
        abs(phase.momentum_bracket_defect(
            'left',
            loops.random_loop(case.algebra, case.rng, band),
            loops.random_loop(case.algebra, case.rng, band),
            case.point(level=level),
        ))
        for _trial in range(case.trials)
    )
    return 1 / largest if largest else math.inf


# Runner


def _tolerance(cfg: SuiteConfig, tolerance: str) -> float:
    return {
        'exact': cfg.tol_exact,
        'grid': cfg.tol_grid,
        'fd': cfg.tol_fd,
        'witness': 1 / WITNESS_THRESHOLD,
    }[tolerance]


def _case_id(spec: CheckSpec, trial: int, k: complex) -> str:
    level = f'@k={format_complex(k)}' if spec.per_level else ''
    return f'{spec.name}{level}#{trial:04d}'


def plan_cases(cfg: SuiteConfig) -> Iterator[PlannedCase]:
    """Enumerate the cases a run executes, in report order."""
    for suite in SUITE_NAMES:
        if suite not in cfg.suites:
            continue
        planned = []
        for spec in CHECKS:
            if spec.suite != suite:
                continue
            levels = cfg.k_values if spec.per_level else (0j,)
            for k in levels:
                for trial in range(max(1, spec.repeat * cfg.trials)):
                    case_id = _case_id(spec, trial, k)
                    if cfg.case is None or fnmatchcase(case_id, cfg.case):
                        planned.append(PlannedCase(spec, case_id, trial, k))
        planned.sort(key=lambda planned_case: planned_case.case_id)
        yield from planned


def seed_offset(suite: str, case_id: str) -> int:
    """Derive the 64-bit generator offset of a case from its id."""
    digest = hashlib.blake2b(
        f'{suite}/{case_id}'.encode(), digest_size=8,
    ).digest()
    return int.from_bytes(digest, 'big')


def _algebra_fingerprint(algebra: algebras.OrthogonalAlgebra) -> str:
    fingerprint = hashlib.sha256()
    for array in (
            algebra.basis_matrices,
            algebra.structure_constants,
            algebra.form,
    ):
        fingerprint.update(np.ascontiguousarray(array).tobytes())
    return fingerprint.hexdigest()


def _inputs_digest(
        cfg: SuiteConfig,
        fingerprint: str,
        offset: int,
        k: complex,
) -> str:
    inputs = json.dumps([
        cfg.algebra_name, fingerprint, cfg.band, cfg.grid,
        cfg.seed, offset, format_complex(k),
    ])
    return hashlib.sha256(inputs.encode()).hexdigest()[:16]


def _evaluate(
        cfg: SuiteConfig,
        planned: PlannedCase,
        offset: int,
        fingerprint: str,
) -> CaseRecord:
    spec = planned.spec
    case = CaseInputs(
        algebra=cfg.resolved_algebra,
        rng=np.random.default_rng([cfg.seed, offset]),
        band=cfg.band,
        grid=cfg.grid,
        k=planned.k,
        trials=cfg.trials,
        k_values=cfg.k_values,
    )
    error = None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        try:
            residual = float(spec.func(case))
        except Exception as case_err:  # noqa: B902, WPS429
            residual = math.inf
            error = f'{type(case_err).__name__}: {case_err!s}'
    for warning in caught:
        logger.warning(
            'Case %s/%s: %s',  # noqa: WPS323
            spec.suite, planned.case_id, warning.message,
        )
    return CaseRecord(
        suite=spec.suite,
        case=planned.case_id,
        inputs_digest=_inputs_digest(cfg, fingerprint, offset, planned.k),
        residual=residual,
        tolerance=_tolerance(cfg, spec.tolerance),
        error=error,
        warnings=tuple(str(warning.message) for warning in caught),
    )


def run_suites(cfg: SuiteConfig) -> SuiteReport:
    """Evaluate every planned case and collect the outcome.

    Cases never abort the run: an exception raised while evaluating a
    case is recorded as a failure with an infinite residual.
    """
    records: List[CaseRecord] = []
    counts: Dict[str, Tuple[int, int]] = {}
    fingerprint = _algebra_fingerprint(cfg.resolved_algebra)
    for planned in plan_cases(cfg):
        offset = seed_offset(planned.spec.suite, planned.case_id)
        logger.debug(
            'Running %s/%s with seed %s and offset %s',  # noqa: WPS323
            planned.spec.suite, planned.case_id, cfg.seed, offset,
        )
        record = _evaluate(cfg, planned, offset, fingerprint)
        if not record.passed:
            logger.debug(
                'Case %s/%s failed: residual %r, '  # noqa: WPS323
                'tolerance %r, error %s',
                record.suite, record.case, record.residual,
                record.tolerance, record.error,
            )
        records.append(record)
        passed, total = counts.get(record.suite, (0, 0))
        counts[record.suite] = passed + record.passed, total + 1

    for suite, (passed, total) in counts.items():
        logger.info(
            'Suite %s: %s of %s cases passed',  # noqa: WPS323
            suite, passed, total,
        )
    return SuiteReport(
        config=cfg.to_json(),
        cases=tuple(records),
        version=__version__,
    )
