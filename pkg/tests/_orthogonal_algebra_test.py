"""Tests of the finite-dimensional orthogonal algebras."""

import json
import logging
from pathlib import Path

import numpy as np
import pytest

from kacmoody_invariants._errors import (
    AlgebraMismatch, DegenerateForm, NotClosed,
)
from kacmoody_invariants._orthogonal_algebra import (
    OrthogonalAlgebra, ad_invariance_residual, basis_element, bracket,
    element, from_json, from_matrices, from_matrix, inner,
    invariant_residuals, jacobi_residual, load_algebra, random_element,
    realization_residual, sl2, so3, to_matrix, zero_element,
)


E_MATRIX = [[0, 1], [0, 0]]
F_MATRIX = [[0, 0], [1, 0]]
H_MATRIX = [[1, 0], [0, -1]]


def _pairs(matrix: list) -> list:
    return [[[entry, 0] for entry in row] for row in matrix]


def test_sl2_bracket_of_raising_and_lowering() -> None:
    """Check that ``[e, f] = h``."""
    algebra = sl2()
    e_elem, f_elem, h_elem = (basis_element(algebra, idx) for idx in range(3))
    np.testing.assert_allclose(
        bracket(e_elem, f_elem).coeffs, h_elem.coeffs, atol=1e-12,
    )


def test_sl2_bracket_of_cartan_and_raising() -> None:
    """Check that ``[h, e] = 2e``."""
    algebra = sl2()
    e_elem, h_elem = basis_element(algebra, 0), basis_element(algebra, 2)
    np.testing.assert_allclose(
        bracket(h_elem, e_elem).coeffs, 2 * e_elem.coeffs, atol=1e-12,
    )


def test_bracket_with_itself_vanishes(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Ensure the bracket is antisymmetric."""
    x_elem = random_element(algebra, rng)
    assert bracket(x_elem, x_elem).norm() < 1e-12


def test_so3_bracket_is_the_cross_product() -> None:
    """Check ``[L_1, L_2] = L_3`` for infinitesimal rotations."""
    algebra = so3()
    np.testing.assert_allclose(
        bracket(basis_element(algebra, 0), basis_element(algebra, 1)).coeffs,
        basis_element(algebra, 2).coeffs,
        atol=1e-12,
    )


@pytest.mark.parametrize(
    ('left_index', 'right_index', 'expected'),
    (
        (2, 2, 2),
        (0, 1, 1),
        (0, 0, 0),
    ),
    ids=('(h, h)', '(e, f)', '(e, e)'),
)
def test_sl2_trace_form(
        left_index: int,
        right_index: int,
        expected: complex,
) -> None:
    """Compare the invariant form with ``tr(A B)``."""
    algebra = sl2()
    assert inner(
        basis_element(algebra, left_index),
        basis_element(algebra, right_index),
    ) == pytest.approx(expected, abs=1e-12)


def test_inner_with_zero(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Ensure the form is bilinear."""
    assert inner(random_element(algebra, rng), zero_element(algebra)) == 0


@pytest.mark.parametrize(
    'residual',
    (ad_invariance_residual, jacobi_residual),
    ids=('ad-invariance', 'jacobi'),
)
def test_random_triples_satisfy_the_identities(
        residual,
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Evaluate the defining identities on random triples."""
    for _trial in range(200):
        triple = (random_element(algebra, rng) for _slot in range(3))
        assert residual(*triple) < 1e-12


def test_bracket_reproduces_matrix_commutators(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Compare coordinates with the matrix realization."""
    x_elem, y_elem = random_element(algebra, rng), random_element(algebra, rng)
    assert realization_residual(x_elem, y_elem) < 1e-12


def test_builtin_invariants_hold(algebra: OrthogonalAlgebra) -> None:
    """Check every invariant on the basis of the built-in algebras."""
    assert max(invariant_residuals(algebra).values()) < 1e-12


def test_matrix_coordinates_bridge(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> None:
    """Read the coordinates back from the realizing matrix."""
    x_elem = random_element(algebra, rng)
    np.testing.assert_allclose(
        from_matrix(algebra, to_matrix(x_elem)).coeffs, x_elem.coeffs,
        atol=1e-12,
    )


def test_single_matrix_spans_an_abelian_algebra() -> None:
    """Build a one-dimensional algebra from ``diag(1, -1)``."""
    algebra = from_matrices([H_MATRIX], name='abelian')
    assert algebra.dim == 1
    np.testing.assert_array_equal(algebra.structure_constants, 0)
    np.testing.assert_allclose(algebra.form, [[2]])


@pytest.mark.parametrize(
    ('matrices', 'error', 'expected_error_msg'),
    (
        pytest.param(
            [E_MATRIX, H_MATRIX], DegenerateForm, 'is degenerate$',
            id='Borel subalgebra',
        ),
        pytest.param(
            [E_MATRIX, F_MATRIX], NotClosed, 'leave its span',
            id='commutator outside the span',
        ),
        pytest.param(
            [H_MATRIX, [[2, 0], [0, -2]]], DegenerateForm,
            'linearly dependent$',
            id='dependent matrices',
        ),
    ),
)
def test_from_matrices_rejects_bad_bases(
        matrices: list,
        error: type,
        expected_error_msg: str,
) -> None:
    """Ensure invalid bases are reported with the matching error."""
    with pytest.raises(error, match=expected_error_msg):
        from_matrices(matrices)


def test_mixing_algebras_is_rejected(rng: np.random.Generator) -> None:
    """Ensure elements of different algebras do not combine."""
    with pytest.raises(
            AlgebraMismatch,
            match="^Cannot combine elements of 'sl2' and 'so3'$",
    ):
        bracket(random_element(sl2(), rng), random_element(so3(), rng))


def test_element_length_is_checked() -> None:
    """Ensure the coordinate vector fits the dimension."""
    with pytest.raises(AlgebraMismatch, match='^Expected 3 coordinates'):
        element(sl2(), [1, 2])


def test_from_json_reads_a_basis(tmp_path: Path) -> None:
    """Load ``sl2`` from nested ``[re, im]`` pairs."""
    algebra_path = tmp_path / 'sl2.json'
    algebra_path.write_text(
        json.dumps({
            'name': 'sl2-from-file',
            'basis': [_pairs(E_MATRIX), _pairs(F_MATRIX), _pairs(H_MATRIX)],
        }),
        encoding='utf-8',
    )
    algebra = load_algebra(algebra_path)
    assert algebra.name == 'sl2-from-file'
    np.testing.assert_allclose(
        algebra.structure_constants, sl2().structure_constants, atol=1e-12,
    )


def test_structure_constant_override_is_used_as_is(
        caplog: pytest.LogCaptureFixture,
        rng: np.random.Generator,
        tmp_path: Path,
) -> None:
    """Check that corrupted constants break the ad-invariance."""
    corrupted = sl2().structure_constants.copy()
    corrupted[0, 1, 2] += 1e-3
    corrupted[1, 0, 2] -= 1e-3
    algebra_path = tmp_path / 'corrupted.json'
    algebra_path.write_text(
        json.dumps({
            'basis': [_pairs(E_MATRIX), _pairs(F_MATRIX), _pairs(H_MATRIX)],
            'structure_constants': np.stack(
                (corrupted.real, corrupted.imag), axis=-1,
            ).tolist(),
        }),
        encoding='utf-8',
    )

    with caplog.at_level(logging.WARNING):
        algebra = from_json(algebra_path)

    assert algebra.name == 'corrupted'
    assert 'as-is' in caplog.text
    worst = max(
        ad_invariance_residual(
            *(random_element(algebra, rng) for _slot in range(3)),
        )
        for _trial in range(20)
    )
    assert worst > 1e-6


def test_load_algebra_unknown_name() -> None:
    """Ensure unknown algebras raise a lookup error."""
    with pytest.raises(
            LookupError,
            match="^Unknown algebra e8: expected one of",
    ):
        load_algebra('e8')


def test_load_algebra_passes_instances_through() -> None:
    """Check that an algebra object is returned unchanged."""
    assert load_algebra(so3()) is so3()
