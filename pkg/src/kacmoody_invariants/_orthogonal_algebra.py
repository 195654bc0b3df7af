"""Finite-dimensional orthogonal Lie algebras in a chosen basis.

An orthogonal Lie algebra carries a nondegenerate symmetric bilinear form
that is invariant under the adjoint action, i.e.
``(X, [Y, Z]) == ([X, Y], Z)``. Everything here is realized by complex
matrices with the trace form ``(A, B) = tr(A B)`` so that the coadjoint
action of the group is plain matrix conjugation.
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from logging import getLogger
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from scipy import linalg

from ._errors import (  # noqa: WPS436
    AlgebraMismatch, DegenerateForm, NotClosed,
)


CLOSURE_TOLERANCE = 1e-10
FORM_CONDITION_TOLERANCE = 1e-10
INVARIANT_TOLERANCE = 1e-10

UTF8_ENCODING = 'utf-8'


logger = getLogger(__name__)


# pylint: disable-next=too-many-instance-attributes
@dataclass(frozen=True, eq=False)
class OrthogonalAlgebra:
    """A Lie algebra ``g`` with basis, structure constants and form.

    ``structure_constants[i, j, k]`` is the coefficient of ``b_k`` in
    ``[b_i, b_j]`` and ``form[i, j]`` is ``(b_i, b_j)``. Instances
    compare by identity: two loops are compatible only when they share
    the very same algebra object.
    """

    name: str
    basis_matrices: np.ndarray
    structure_constants: np.ndarray
    form: np.ndarray

    @property
    def dim(self) -> int:
        """Return the dimension of the algebra."""
        return int(self.form.shape[0])

    @property
    def matrix_size(self) -> int:
        """Return the size of the realizing matrices."""
        return int(self.basis_matrices.shape[-1])

    def bracket_coefficients(
            self,
            x_coeffs: np.ndarray,
            y_coeffs: np.ndarray,
    ) -> np.ndarray:
        """Bracket coordinate arrays, broadcasting over leading axes."""
        return np.einsum(
            '...i,...j,ijk->...k',
            x_coeffs, y_coeffs, self.structure_constants,
        )

    def pair_coefficients(
            self,
            x_coeffs: np.ndarray,
            y_coeffs: np.ndarray,
    ) -> np.ndarray:
        """Apply the invariant form, broadcasting over leading axes."""
        return np.einsum('...i,ij,...j->...', x_coeffs, self.form, y_coeffs)

    def coefficients_to_matrices(self, coeffs: np.ndarray) -> np.ndarray:
        """Turn ``(..., d)`` coordinates into ``(..., m, m)`` matrices."""
        return np.einsum('...i,iab->...ab', coeffs, self.basis_matrices)

    def matrices_to_coefficients(self, matrices: np.ndarray) -> np.ndarray:
        """Project ``(..., m, m)`` matrices to coordinates via the form.

        The input is assumed to lie in the span of the basis; the
        coordinates solve ``B c = (tr(b_i A))_i``.
        """
        traces = np.einsum('iab,...ba->...i', self.basis_matrices, matrices)
        return np.linalg.solve(self.form, traces[..., np.newaxis])[..., 0]


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element of ``g`` given by its coordinates in the basis."""

    algebra: OrthogonalAlgebra
    coeffs: np.ndarray

    __array_ufunc__ = None  # let numpy scalars defer to __rmul__

    def __post_init__(self) -> None:
        """Check the coordinate vector length."""
        if self.coeffs.shape != (self.algebra.dim,):
            raise AlgebraMismatch(
                f'Expected {self.algebra.dim} coordinates for '
                f'{self.algebra.name!r} but got shape {self.coeffs.shape!r}',
            )

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        """Add two elements of the same algebra."""
        _ensure_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        """Subtract two elements of the same algebra."""
        _ensure_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> 'AlgebraElement':
        """Scale the element by a complex number."""
        return AlgebraElement(self.algebra, scalar * self.coeffs)

    __rmul__ = __mul__

    def norm(self) -> float:
        """Return the max norm over the coordinates."""
        return float(np.max(np.abs(self.coeffs), initial=0))


def _ensure_same_algebra(
        left: AlgebraElement,
        right: AlgebraElement,
) -> None:
    if left.algebra is not right.algebra:
        raise AlgebraMismatch(
            f'Cannot combine elements of {left.algebra.name!r} '
            f'and {right.algebra.name!r}',
        )


def element(
        algebra: OrthogonalAlgebra,
        coeffs: Sequence[complex],
) -> AlgebraElement:
    """Build an element from its coordinates."""
    return AlgebraElement(algebra, np.asarray(coeffs, dtype=complex))


def zero_element(algebra: OrthogonalAlgebra) -> AlgebraElement:
    """Return the zero element."""
    return AlgebraElement(algebra, np.zeros(algebra.dim, dtype=complex))


def basis_element(algebra: OrthogonalAlgebra, index: int) -> AlgebraElement:
    """Return the basis vector ``b_index``."""
    coeffs = np.zeros(algebra.dim, dtype=complex)
    coeffs[index] = 1
    return AlgebraElement(algebra, coeffs)


def to_matrix(x: AlgebraElement) -> np.ndarray:
    """Realize the element as a matrix."""
    return x.algebra.coefficients_to_matrices(x.coeffs)


def from_matrix(
        algebra: OrthogonalAlgebra,
        matrix: np.ndarray,
) -> AlgebraElement:
    """Read off the coordinates of a matrix lying in the algebra."""
    return AlgebraElement(
        algebra,
        algebra.matrices_to_coefficients(np.asarray(matrix, dtype=complex)),
    )


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Return ``[X, Y]`` computed from the structure constants."""
    _ensure_same_algebra(x, y)
    return AlgebraElement(
        x.algebra,
        x.algebra.bracket_coefficients(x.coeffs, y.coeffs),
    )


def inner(x: AlgebraElement, y: AlgebraElement) -> complex:
    """Return the complex-bilinear invariant form ``(X, Y)``."""
    _ensure_same_algebra(x, y)
    return complex(x.algebra.pair_coefficients(x.coeffs, y.coeffs))


def unit_disc(rng: np.random.Generator, shape: Sequence[int]) -> np.ndarray:
    """Draw complex numbers uniformly from the closed unit disc."""
    radius = np.sqrt(rng.uniform(size=shape))
    angle = rng.uniform(0, 2 * np.pi, size=shape)
    return radius * np.exp(1j * angle)


def random_element(
        algebra: OrthogonalAlgebra,
        rng: np.random.Generator,
) -> AlgebraElement:
    """Draw an element with coordinates uniform in the unit disc."""
    return AlgebraElement(algebra, unit_disc(rng, (algebra.dim,)))


def ad_invariance_residual(
        x: AlgebraElement,
        y: AlgebraElement,
        z: AlgebraElement,
) -> float:
    """Measure ``|(X, [Y, Z]) - ([X, Y], Z)|``."""
    return abs(inner(x, bracket(y, z)) - inner(bracket(x, y), z))


def jacobi_residual(
        x: AlgebraElement,
        y: AlgebraElement,
        z: AlgebraElement,
) -> float:
    """Measure the cyclic Jacobi sum in the max norm."""
    cyclic_sum = (
        bracket(x, bracket(y, z))
        + bracket(y, bracket(z, x))
        + bracket(z, bracket(x, y))
    )
    return cyclic_sum.norm()


def realization_residual(x: AlgebraElement, y: AlgebraElement) -> float:
    """Compare ``bracket`` against the matrix commutator."""
    x_mat, y_mat = to_matrix(x), to_matrix(y)
    commutator = x_mat @ y_mat - y_mat @ x_mat
    return float(np.max(np.abs(to_matrix(bracket(x, y)) - commutator)))


def invariant_residuals(algebra: OrthogonalAlgebra) -> dict:
    """Evaluate the defining invariants on the basis.

    Returns a mapping of invariant names to max-norm residuals.
    """
    consts = algebra.structure_constants
    form = algebra.form
    basis = algebra.basis_matrices
    # (b_i, [b_j, b_k]) - ([b_i, b_j], b_k)
    left = np.einsum('jkl,il->ijk', consts, form)
    right = np.einsum('ijl,lk->ijk', consts, form)
    jacobi = (
        np.einsum('jkl,ilm->ijkm', consts, consts)
        + np.einsum('kil,jlm->ijkm', consts, consts)
        + np.einsum('ijl,klm->ijkm', consts, consts)
    )
    commutators = (
        np.einsum('iab,jbc->ijac', basis, basis)
        - np.einsum('jab,ibc->ijac', basis, basis)
    )
    expanded = np.einsum('ijk,kac->ijac', consts, basis)
    trace_form = np.einsum('iab,jba->ij', basis, basis)
    return {
        'antisymmetry': _max_abs(consts + consts.transpose(1, 0, 2)),
        'jacobi': _max_abs(jacobi),
        'symmetry': _max_abs(form - form.T),
        'ad-invariance': _max_abs(left - right),
        'commutators': _max_abs(expanded - commutators),
        'trace-form': _max_abs(trace_form - form),
    }


def _max_abs(array: np.ndarray) -> float:
    return float(np.max(np.abs(array), initial=0))


def from_matrices(
        matrices: Sequence[np.ndarray],
        name: str = 'custom',
) -> OrthogonalAlgebra:
    """Build an orthogonal algebra spanned by the given matrices.

    The structure constants come from a least-squares expansion of every
    commutator in the basis and the form is the trace form.

    :raises DegenerateForm: when the matrices are linearly dependent or
        the trace form on their span is singular
    :raises NotClosed: when some commutator leaves the span
    """
    basis = np.asarray(matrices, dtype=complex)
    if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
        raise ValueError(
            'Expected a list of square matrices of equal size '
            f'but got an array of shape {basis.shape!r}',
        )
    dim, size = basis.shape[0], basis.shape[1]

    flat_basis = basis.reshape(dim, size * size).T
    if np.linalg.matrix_rank(flat_basis, tol=CLOSURE_TOLERANCE) < dim:
        raise DegenerateForm(
            f'The {dim} matrices given for {name!r} are linearly dependent',
        )

    commutators = (
        np.einsum('iab,jbc->ijac', basis, basis)
        - np.einsum('jab,ibc->ijac', basis, basis)
    ).reshape(dim * dim, size * size).T
    expansion, _residues, _rank, _svals = linalg.lstsq(
        flat_basis, commutators,
    )
    closure_defect = _max_abs(flat_basis @ expansion - commutators)
    scale = max(1.0, _max_abs(commutators))
    if closure_defect > CLOSURE_TOLERANCE * scale:
        raise NotClosed(
            f'Commutators of the {name!r} basis leave its span '
            f'(defect {closure_defect:.3e})',
        )
    structure_constants = expansion.T.reshape(dim, dim, dim)

    form = np.einsum('iab,jba->ij', basis, basis)
    singular_values = np.linalg.svd(form, compute_uv=False)
    if singular_values[-1] <= FORM_CONDITION_TOLERANCE * singular_values[0]:
        raise DegenerateForm(
            f'The trace form on the span of {name!r} is degenerate',
        )

    algebra = OrthogonalAlgebra(
        name=name,
        basis_matrices=basis,
        structure_constants=structure_constants,
        form=form,
    )
    failed = {
        invariant: residual
        for invariant, residual in invariant_residuals(algebra).items()
        if residual > INVARIANT_TOLERANCE * scale
    }
    if failed:
        raise NotClosed(
            f'Algebra {name!r} violates its defining invariants: {failed!r}',
        )
    return algebra


@lru_cache(maxsize=None)
def sl2() -> OrthogonalAlgebra:
    """Return ``sl(2, C)`` in the basis ``(e, f, h)``."""
    e_mat = [[0, 1], [0, 0]]
    f_mat = [[0, 0], [1, 0]]
    h_mat = [[1, 0], [0, -1]]
    return from_matrices([e_mat, f_mat, h_mat], name='sl2')


@lru_cache(maxsize=None)
def so3() -> OrthogonalAlgebra:
    """Return ``so(3, C)`` in the basis of infinitesimal rotations."""
    levi_civita = np.zeros((3, 3, 3))
    for (i, j, k), sign in (
            ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
    ):
        levi_civita[i, j, k] = sign
    return from_matrices(list(-levi_civita), name='so3')


BUILTIN_ALGEBRAS = {
    'sl2': sl2,
    'so3': so3,
}


def _complex_array(nested_pairs: list) -> np.ndarray:
    pairs = np.asarray(nested_pairs, dtype=float)
    if pairs.shape[-1] != 2:
        raise ValueError(
            'Expected complex numbers encoded as [re, im] pairs',
        )
    return pairs[..., 0] + 1j * pairs[..., 1]


def from_json(path: Union[str, Path]) -> OrthogonalAlgebra:
    """Load an algebra from a JSON document.

    The document has a ``basis`` key holding a list of square matrices
    whose entries are ``[re, im]`` pairs, and an optional ``name``. An
    optional ``structure_constants`` key (a ``d x d x d`` array of pairs)
    replaces the computed constants without re-validation, which lets a
    verification run be fed a deliberately corrupted algebra.
    """
    json_path = Path(path)
    document = json.loads(json_path.read_text(encoding=UTF8_ENCODING))
    name = document.get('name', json_path.stem)
    algebra = from_matrices(_complex_array(document['basis']), name=name)

    if 'structure_constants' not in document:
        return algebra

    overridden = _complex_array(document['structure_constants'])
    if overridden.shape != algebra.structure_constants.shape:
        raise AlgebraMismatch(
            f'Structure constants of shape {overridden.shape!r} do not '
            f'fit the {algebra.dim}-dimensional algebra {name!r}',
        )
    logger.warning(
        'Using structure constants of %s from %s as-is, '  # noqa: WPS323
        'they are not checked against the matrix realization',
        name,
        json_path,
    )
    return OrthogonalAlgebra(
        name=name,
        basis_matrices=algebra.basis_matrices,
        structure_constants=overridden,
        form=algebra.form,
    )


def load_algebra(
        name_or_path: Union[str, Path, OrthogonalAlgebra],
) -> OrthogonalAlgebra:
    """Resolve a built-in name, a JSON path or an algebra instance."""
    if isinstance(name_or_path, OrthogonalAlgebra):
        return name_or_path
    if str(name_or_path) in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[str(name_or_path)]()
    try:
        return from_json(name_or_path)
    except FileNotFoundError as missing_err:
        raise LookupError(
            f'Unknown algebra {name_or_path!s}: expected one of '
            f'{sorted(BUILTIN_ALGEBRAS)!r} or a path to a JSON file',
        ) from missing_err
