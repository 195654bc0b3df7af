"""Tests of the loop group phase space and its Poisson bracket."""

import numpy as np
import pytest

from kacmoody_invariants import _phase_space
from kacmoody_invariants._affine import kappa
from kacmoody_invariants._errors import (
    AlgebraMismatch, AliasWarning, ConstraintViolation, DivisionByCenter,
    GridMismatch, KindMismatch,
)
from kacmoody_invariants._loop_fourier import (
    LoopElement, grid_points, loop_to_field, monomial, random_loop, zero_loop,
)
from kacmoody_invariants._orthogonal_algebra import (
    OrthogonalAlgebra, basis_element, sl2, so3,
)
from kacmoody_invariants._phase_space import (
    AdmissibleFunction, GroupLoop, PhasePoint, _check_group_membership,
    act_left, act_right, as_field, base_deriv_residual, big_s,
    check_casimir_momentum_relation, check_cocycle_relation,
    check_independence_formula, check_left_symplecticity,
    check_mixed_poisson_jacobi, check_momentum_equation,
    check_momentum_transformation, check_poisson_jacobi,
    check_right_symplecticity, check_rotation_momentum_split, commutator,
    compose_left, exp_loop, fiber_grad_residual, flow_curves, identity_loop,
    loop_log_derivatives, make_momentum_functional, momentum_bracket_defect,
    momentum_left, momentum_right, momentum_scalar, omega_twist, pair_fields,
    poisson, random_group_loop, random_phase_point, spectral_derivative,
)


BAND = 2
GRID = 64
GRID_TOLERANCE = 1e-8
FD_TOLERANCE = 1e-6


def _sine(algebra: OrthogonalAlgebra, index: int) -> LoopElement:
    value = basis_element(algebra, index)
    return (monomial(value, 1) - monomial(value, -1)) * (1 / 2j)


def _cosine(algebra: OrthogonalAlgebra, index: int) -> LoopElement:
    value = basis_element(algebra, index)
    return 0.5 * monomial(value, 1) + 0.5 * monomial(value, -1)


@pytest.fixture(
    params=(1 + 0.5j, -2 + 0j, 0j),
    ids=('k=1+0.5i', 'k=-2', 'k=0'),
)
def level(request: pytest.FixtureRequest) -> complex:
    """Provide the levels of the twist."""
    return request.param


@pytest.fixture
def point(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
        level: complex,
) -> PhasePoint:
    """Draw a smooth phase space point."""
    return random_phase_point(algebra, rng, level, BAND, GRID)


@pytest.fixture
def h_loop(point: PhasePoint, rng: np.random.Generator) -> GroupLoop:
    """Draw a group loop acting on the point."""
    return random_group_loop(point.algebra, rng, BAND, GRID)


def test_exp_loop_of_a_cartan_sine() -> None:
    """Exponentiate ``h sin x`` into ``diag(e^sin, e^-sin)``."""
    group_loop = exp_loop(_sine(sl2(), 2), 32)
    sines = np.sin(grid_points(32))
    np.testing.assert_allclose(group_loop.samples[:, 0, 0], np.exp(sines))
    np.testing.assert_allclose(group_loop.samples[:, 1, 1], np.exp(-sines))
    np.testing.assert_allclose(group_loop.samples[:, 0, 1], 0, atol=1e-15)


def test_log_derivatives_of_a_cartan_sine() -> None:
    """Check that both Maurer-Cartan fields are ``h cos x``."""
    algebra = sl2()
    group_loop = exp_loop(_sine(algebra, 2), GRID)
    left_log, right_log = loop_log_derivatives(group_loop)
    expected = loop_to_field(_cosine(algebra, 2), GRID)
    np.testing.assert_allclose(left_log, expected, atol=1e-10)
    np.testing.assert_allclose(right_log, expected, atol=1e-10)


def test_scalar_momentum_on_the_zero_section() -> None:
    """Check ``J = k pi`` for ``g = exp(h sin x)`` and ``mu = 0``."""
    algebra = sl2()
    level = 1 + 0.5j
    zero_section = PhasePoint(
        exp_loop(_sine(algebra, 2), GRID), zero_loop(algebra), level,
    )
    assert momentum_scalar(zero_section) == pytest.approx(
        level * np.pi, abs=1e-10,
    )


def test_momenta_at_the_identity(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Ensure ``J^L = mu`` and ``J^R = -mu`` when ``g = 1``."""
    mu = random_loop(algebra, rng, BAND)
    base_point = PhasePoint(identity_loop(algebra, GRID), mu, 3 + 0j)
    assert (momentum_left(base_point) - mu).norm() < 1e-12
    assert (momentum_right(base_point) + mu).norm() == 0
    assert momentum_scalar(base_point) == pytest.approx(0, abs=1e-12)


def test_spectral_derivative_of_a_sine() -> None:
    """Differentiate ``sin x`` on the grid."""
    nodes = grid_points(16)
    np.testing.assert_allclose(
        spectral_derivative(np.sin(nodes)), np.cos(nodes), atol=1e-13,
    )


def test_under_resolved_loops_warn(rng: np.random.Generator) -> None:
    """Ensure noisy samples trigger an aliasing warning."""
    noise = rng.standard_normal((GRID, 2, 2)) + 1j * rng.standard_normal(
        (GRID, 2, 2),
    )
    noisy = GroupLoop(sl2(), np.eye(2) * 4 + 0.1 * noise)
    with pytest.warns(AliasWarning, match='under-resolved on 64 nodes'):
        loop_log_derivatives(noisy)


@pytest.mark.parametrize(
    ('algebra_factory', 'samples', 'expected_error_msg'),
    (
        pytest.param(
            sl2, 2 * np.eye(2), '^Samples leave the special linear group',
            id='sl2 with determinant four',
        ),
        pytest.param(
            so3, np.diag([2, 0.5, 1]), '^Samples leave the orthogonal group',
            id='so3 with a stretch',
        ),
        pytest.param(
            sl2, np.zeros((2, 2)), '^Some loop samples are not invertible$',
            id='singular samples',
        ),
    ),
)
def test_group_membership_violations(
        algebra_factory,
        samples: np.ndarray,
        expected_error_msg: str,
) -> None:
    """Check the group constraints picked from the basis."""
    grid_samples = np.broadcast_to(samples, (8,) + samples.shape)
    with pytest.raises(ConstraintViolation, match=expected_error_msg):
        _check_group_membership(
            grid_samples.astype(complex), algebra_factory(),
        )


def test_group_loop_sample_shape() -> None:
    """Ensure samples of the wrong matrix size are rejected."""
    with pytest.raises(AlgebraMismatch, match='^Expected samples of 3x3'):
        GroupLoop(so3(), np.broadcast_to(np.eye(2), (8, 2, 2)).copy())


def test_loops_on_different_grids(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Ensure actions refuse loops sampled on another grid."""
    point = random_phase_point(algebra, rng, 1 + 0j, BAND, GRID)
    with pytest.raises(
            GridMismatch,
            match='^Loops sampled on 32 and 64 nodes cannot be combined$',
    ):
        act_left(identity_loop(algebra, 32), point)


def test_covector_band_must_fit_the_grid(rng: np.random.Generator) -> None:
    """Ensure the fiber is resolved by the grid of ``g``."""
    algebra = sl2()
    with pytest.raises(
            GridMismatch,
            match='^Covector band 4 is not resolved by 8 nodes$',
    ):
        PhasePoint(identity_loop(algebra, 8), random_loop(algebra, rng, 4), 1)


def test_fields_on_a_foreign_grid() -> None:
    """Ensure raw fields are checked against the grid size."""
    with pytest.raises(GridMismatch, match='^Expected a field on 64 nodes'):
        as_field(np.zeros((32, 2, 2)), 64)


@pytest.mark.parametrize(
    ('kind', 'weight', 'expected_error_msg'),
    (
        pytest.param(
            'scalar', zero_loop(sl2()), 'takes a complex weight',
            id='scalar with a loop',
        ),
        pytest.param(
            'left', 1j, 'takes a loop weight', id='left with a number',
        ),
        pytest.param(
            'right', 2.0, 'takes a loop weight', id='right with a number',
        ),
        pytest.param(
            'middle', 1j, '^Expected "kind" to be one of', id='unknown kind',
        ),
    ),
)
def test_momentum_functional_kind_mismatch(
        kind: str,
        weight: object,
        expected_error_msg: str,
) -> None:
    """Ensure the weight type has to match the momentum kind."""
    with pytest.raises(KindMismatch, match=expected_error_msg):
        make_momentum_functional(kind, weight)  # type: ignore[arg-type]


def test_unknown_action(point: PhasePoint, h_loop: GroupLoop) -> None:
    """Ensure only the left and right actions are known."""
    with pytest.raises(KindMismatch, match='^Expected "action" to be one of'):
        check_momentum_transformation(
            'up', 'left', zero_loop(point.algebra), h_loop, point,
        )


def test_rotation_momentum_split(point: PhasePoint) -> None:
    """Rewrite the scalar momentum through ``J^L`` and ``J^R``."""
    if point.k == 0:
        with pytest.raises(DivisionByCenter, match='at level k = 0$'):
            check_rotation_momentum_split(point)
        return
    assert check_rotation_momentum_split(point) < GRID_TOLERANCE


def test_casimir_momentum_relation(point: PhasePoint) -> None:
    """Relate both momenta with the scalar one at every level."""
    assert check_casimir_momentum_relation(point) < GRID_TOLERANCE


def test_combined_momentum_kappa(point: PhasePoint) -> None:
    """Evaluate ``kappa`` on the combined momentum."""
    right_field = -point.mu_field
    assert kappa(big_s(point)) == pytest.approx(
        -pair_fields(right_field, right_field) / 2, rel=GRID_TOLERANCE,
    )


def test_poisson_bracket_is_antisymmetric(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Swap two mixed admissible functions."""
    algebra = point.algebra
    phi = (
        make_momentum_functional('left', random_loop(algebra, rng, BAND))
        + make_momentum_functional('scalar', 0.5 - 1j)
    )
    psi = 2.0 * make_momentum_functional(
        'right', random_loop(algebra, rng, BAND),
    )
    assert poisson(phi, psi, point) == pytest.approx(
        -poisson(psi, phi, point), abs=GRID_TOLERANCE,
    )


def test_scalar_momenta_commute(point: PhasePoint) -> None:
    """Ensure the rotation momentum commutes with itself."""
    first = make_momentum_functional('scalar', 1 + 0j)
    second = make_momentum_functional('scalar', 0.3j)
    bracket_value = poisson(first, second, point)
    assert bracket_value == pytest.approx(0, abs=GRID_TOLERANCE)


def test_left_and_right_momenta_commute(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Check that ``<J^L, X>`` and ``<J^R, Y>`` Poisson commute."""
    algebra = point.algebra
    bracket_value = poisson(
        make_momentum_functional('left', random_loop(algebra, rng, BAND)),
        make_momentum_functional('right', random_loop(algebra, rng, BAND)),
        point,
    )
    assert bracket_value == pytest.approx(0, abs=GRID_TOLERANCE)


@pytest.mark.parametrize(('kind', 'sign'), (('left', 1), ('right', -1)))
def test_momentum_bracket_defect_is_the_twist(
        kind: str,
        sign: int,
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Compare the non-equivariance with the twist 2-form."""
    x_loop = random_loop(point.algebra, rng, BAND)
    y_loop = random_loop(point.algebra, rng, BAND)
    defect = momentum_bracket_defect(kind, x_loop, y_loop, point)
    assert defect == pytest.approx(
        sign * omega_twist(point.g, x_loop, y_loop, point.k),
        rel=GRID_TOLERANCE, abs=GRID_TOLERANCE,
    )


def test_twist_is_antisymmetric(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Swap the tangent vectors of the twist 2-form."""
    g_loop = random_group_loop(algebra, rng, BAND, GRID)
    x_loop = random_loop(algebra, rng, BAND)
    y_loop = random_loop(algebra, rng, BAND)
    assert omega_twist(g_loop, x_loop, y_loop, 2 - 1j) == pytest.approx(
        -omega_twist(g_loop, y_loop, x_loop, 2 - 1j), abs=1e-12,
    )


def test_twist_of_cosine_and_sine() -> None:
    """Evaluate the twist on ``e cos x`` and ``f sin x`` at level one."""
    algebra = sl2()
    twist = omega_twist(
        identity_loop(algebra, GRID),
        _cosine(algebra, 0),
        _sine(algebra, 1),
        1,
    )
    assert twist == pytest.approx(np.pi, abs=1e-12)


@pytest.mark.parametrize('kind', ('left', 'right'))
def test_poisson_jacobi(
        kind: str,
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Evaluate the cyclic sum of nested momentum brackets."""
    loops = tuple(random_loop(point.algebra, rng, BAND) for _slot in range(3))
    assert check_poisson_jacobi(kind, loops, point) < GRID_TOLERANCE


def test_mixed_poisson_jacobi(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Mix a left, a right and the scalar momentum in one cyclic sum."""
    x_loop = random_loop(point.algebra, rng, BAND)
    y_loop = random_loop(point.algebra, rng, BAND)
    assert check_mixed_poisson_jacobi(
        x_loop, y_loop, 0.5 - 1j, point,
    ) < FD_TOLERANCE


@pytest.mark.parametrize('kind', ('left', 'right', 'scalar'))
def test_partial_derivatives_match_differences(
        kind: str,
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Compare both partial derivatives with difference quotients."""
    algebra = point.algebra
    weight = (
        0.7 + 0.2j if kind == 'scalar'
        else random_loop(algebra, rng, BAND)
    )
    phi = make_momentum_functional(kind, weight)
    direction = random_loop(algebra, rng, BAND)
    assert fiber_grad_residual(phi, point, direction) < FD_TOLERANCE
    assert base_deriv_residual(phi, point, direction) < FD_TOLERANCE


@pytest.mark.parametrize('kind', ('left', 'right', 'scalar'))
def test_momenta_generate_the_actions(
        kind: str,
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Differentiate a test function along each generator curve."""
    algebra = point.algebra
    weight = (
        1 - 0.5j if kind == 'scalar'
        else random_loop(algebra, rng, BAND)
    )
    phi_test = (
        make_momentum_functional('left', random_loop(algebra, rng, BAND))
        + make_momentum_functional('right', random_loop(algebra, rng, BAND))
        + make_momentum_functional('scalar', 0.4 + 0.3j)
    )
    assert check_momentum_equation(
        kind, weight, phi_test, point,
    ) < FD_TOLERANCE


def test_independence_formula(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Differentiate ``<xi, J^L> + <J^R, eta>`` along a mixed curve."""
    loops = [random_loop(point.algebra, rng, BAND) for _slot in range(4)]
    assert check_independence_formula(*loops, point) < FD_TOLERANCE


def test_cocycle_relation(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Compare brackets of combined momenta with the affine bracket."""
    x_loop = random_loop(point.algebra, rng, BAND)
    y_loop = random_loop(point.algebra, rng, BAND)
    assert check_cocycle_relation(
        0.5 + 0.5j, x_loop, -1j, y_loop, point,
    ) < GRID_TOLERANCE
    assert check_cocycle_relation(
        1, zero_loop(point.algebra), 0, y_loop, point,
    ) < GRID_TOLERANCE


def test_cocycle_relation_ignores_central_slots(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Ensure ``a`` and ``b`` never change the residual."""
    arguments = (
        0.5, random_loop(point.algebra, rng, BAND),
        2j, random_loop(point.algebra, rng, BAND),
        point,
    )
    assert check_cocycle_relation(
        *arguments, a_value=3 + 1j, b_value=-2,
    ) == check_cocycle_relation(*arguments)


@pytest.mark.parametrize('action', ('left', 'right'))
@pytest.mark.parametrize('kind', ('left', 'right'))
def test_momentum_transformation(
        action: str,
        kind: str,
        point: PhasePoint,
        h_loop: GroupLoop,
        rng: np.random.Generator,
) -> None:
    """Transform each momentum under each action."""
    weight = random_loop(point.algebra, rng, BAND)
    assert check_momentum_transformation(
        action, kind, weight, h_loop, point,
    ) < GRID_TOLERANCE


def test_left_transformation_composes_the_momentum(
        point: PhasePoint,
        h_loop: GroupLoop,
        rng: np.random.Generator,
        monkeypatch: pytest.MonkeyPatch,
) -> None:
    """Ensure the left rule evaluates the moved momentum as ``phi o L_h``."""
    composed_names: list = []
    original = _phase_space.compose_left

    def recording(
            phi: AdmissibleFunction,
            group_loop: GroupLoop,
    ) -> AdmissibleFunction:
        composed_names.append(phi.name)
        return original(phi, group_loop)

    monkeypatch.setattr(_phase_space, 'compose_left', recording)
    weight = random_loop(point.algebra, rng, BAND)

    assert check_momentum_transformation(
        'left', 'right', weight, h_loop, point,
    ) < GRID_TOLERANCE
    assert len(composed_names) == 1


def test_left_momentum_is_right_invariant(
        point: PhasePoint,
        h_loop: GroupLoop,
) -> None:
    """Ensure the right action leaves ``J^L`` alone."""
    original = momentum_left(point)
    moved = momentum_left(act_right(h_loop, point))
    assert (moved - original).norm() < GRID_TOLERANCE * max(
        1.0, original.norm(),
    )


@pytest.mark.parametrize(
    'check',
    (check_left_symplecticity, check_right_symplecticity),
    ids=('left action', 'right action'),
)
@pytest.mark.parametrize(
    'kinds',
    (('left', 'left'), ('left', 'right'), ('right', 'right')),
    ids=('LL', 'LR', 'RR'),
)
def test_actions_are_symplectic(
        check,
        kinds: tuple,
        point: PhasePoint,
        h_loop: GroupLoop,
        rng: np.random.Generator,
) -> None:
    """Compare brackets before and after an action."""
    x_loop = random_loop(point.algebra, rng, BAND)
    y_loop = random_loop(point.algebra, rng, BAND)
    assert check(kinds, x_loop, y_loop, h_loop, point) < GRID_TOLERANCE


def test_compose_left_transforms_the_left_momentum(
        point: PhasePoint,
        h_loop: GroupLoop,
        rng: np.random.Generator,
) -> None:
    """Pull ``<J^L, X>`` back along the left action."""
    weight = loop_to_field(random_loop(point.algebra, rng, BAND), GRID)
    composed = compose_left(make_momentum_functional('left', weight), h_loop)
    h_left_log, _h_right_log = loop_log_derivatives(h_loop)
    expected = (
        make_momentum_functional(
            'left', h_loop.inverse @ weight @ h_loop.samples,
        ).value(point)
        + pair_fields(point.k * h_left_log, weight).real
    )
    assert composed.value(point) == pytest.approx(
        expected, rel=GRID_TOLERANCE, abs=GRID_TOLERANCE,
    )


def test_admissible_functions_combine_linearly(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Check the values of sums and multiples."""
    phi = make_momentum_functional('left', random_loop(point.algebra, rng, 1))
    psi = make_momentum_functional('scalar', 2 + 1j)
    combined = 3.0 * phi + psi
    assert combined.value(point) == pytest.approx(
        3 * phi.value(point) + psi.value(point),
    )
    np.testing.assert_allclose(
        combined.fiber_grad(point),
        3 * phi.fiber_grad(point) + psi.fiber_grad(point),
    )


def test_flow_curves_start_at_the_point(
        point: PhasePoint,
        rng: np.random.Generator,
) -> None:
    """Evaluate the generator curves at ``t = 0``."""
    curves = flow_curves(point, random_loop(point.algebra, rng, BAND), 1j, 0)
    for moved in curves:
        np.testing.assert_allclose(moved.g.samples, point.g.samples)
        assert (moved.mu - point.mu).norm() < 1e-12


def test_left_action_composes(
        point: PhasePoint,
        h_loop: GroupLoop,
        rng: np.random.Generator,
) -> None:
    """Check ``L_h2 L_h1 = L_(h2 h1)``."""
    other = random_group_loop(point.algebra, rng, BAND, GRID)
    twice = act_left(other, act_left(h_loop, point))
    once = act_left(other @ h_loop, point)
    np.testing.assert_allclose(twice.g.samples, once.g.samples, atol=1e-12)


def test_right_action_of_a_constant_loop(rng: np.random.Generator) -> None:
    """Ensure a constant ``h`` only conjugates the covector."""
    algebra = sl2()
    point = random_phase_point(algebra, rng, 1 + 0.5j, BAND, GRID)
    h_loop = exp_loop(0.5 * random_loop(algebra, rng, band=0), GRID)
    h_matrix = h_loop.samples[0]
    h_inverse = np.linalg.inv(h_matrix)

    moved = act_right(h_loop, point)

    np.testing.assert_allclose(
        moved.g.samples, point.g.samples @ h_inverse, atol=1e-12,
    )
    np.testing.assert_allclose(
        moved.mu_field, h_matrix @ point.mu_field @ h_inverse, atol=1e-12,
    )
    assert moved.k == point.k


def test_commutator_of_fields_is_antisymmetric(
        rng: np.random.Generator,
) -> None:
    """Swap the arguments of the pointwise commutator."""
    left, right = rng.standard_normal((2, 4, 3, 3))
    np.testing.assert_allclose(
        commutator(left, right), -commutator(right, left),
    )
