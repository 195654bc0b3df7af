"""Configuration of a verification run."""

import re
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

from ._errors import ConfigInvalid  # noqa: WPS436
from ._orthogonal_algebra import (  # noqa: WPS436
    OrthogonalAlgebra, load_algebra,
)


DEFAULT_SEED = 0xA11FEE
DEFAULT_LEVELS = (1 + 0j, 1 + 0.5j)
SUITE_NAMES = ('base', 'loop', 'affine', 'phase')
MIN_GRID = 4

_BARE_IMAGINARY_UNIT = re.compile(r'(^|[+-])i$')
_MAX_SEED = 2 ** 64


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` notation (``j`` works too).

    >>> parse_complex('1+0.5i')
    (1+0.5j)
    >>> parse_complex('2-i')
    (2-1j)
    """
    compact = text.strip().replace(' ', '')
    normalized = _BARE_IMAGINARY_UNIT.sub(r'\g<1>1i', compact)
    try:
        return complex(normalized.replace('i', 'j'))
    except ValueError as parse_err:
        raise ConfigInvalid(
            f'Cannot read {text!r} as a complex number of the form a+bi',
        ) from parse_err


def format_complex(value: complex) -> str:
    """Render a complex number the way :func:`parse_complex` reads it.

    >>> format_complex(1 + 0.5j)
    '1+0.5i'
    >>> format_complex(2)
    '2'
    """
    value = complex(value)
    if value.imag == 0:
        return f'{value.real:g}'
    if value.real == 0:
        return f'{value.imag:g}i'
    return f'{value.real:g}{value.imag:+g}i'


def _is_power_of_two(number: int) -> bool:
    return number > 0 and number & (number - 1) == 0


# pylint: disable-next=too-many-instance-attributes
@dataclass(frozen=True)
class SuiteConfig:
    """Everything that determines the cases of a run and their outcome.

    ``suites`` restricts the run to some of :data:`SUITE_NAMES` and
    ``case`` to the case ids matching a shell-style pattern.
    """

    algebra: Union[str, OrthogonalAlgebra] = 'sl2'
    band: int = 4
    grid: int = 128
    trials: int = 50
    seed: int = DEFAULT_SEED
    k_values: Tuple[complex, ...] = DEFAULT_LEVELS
    tol_exact: float = 1e-12
    tol_grid: float = 1e-8
    tol_fd: float = 1e-6
    suites: Tuple[str, ...] = SUITE_NAMES
    case: Optional[str] = None
    resolved_algebra: OrthogonalAlgebra = field(
        init=False, repr=False, compare=False,
    )

    def __post_init__(self) -> None:
        """Validate the settings and resolve the algebra.

        :raises ConfigInvalid: on any inconsistent setting
        """
        if self.band < 0:
            raise ConfigInvalid(
                f'The band must be nonnegative, got {self.band}',
            )
        if not _is_power_of_two(self.grid):
            raise ConfigInvalid(
                f'The grid size must be a power of two, got {self.grid}',
            )
        if self.grid < MIN_GRID:
            raise ConfigInvalid(
                f'A grid of {self.grid} points cannot resolve the first '
                f'Fourier mode; use at least {MIN_GRID} points',
            )
        if self.grid <= 4 * self.band:
            raise ConfigInvalid(
                f'A grid of {self.grid} points leaves brackets of band '
                f'{2 * self.band} loops unresolved; use more than '
                f'{4 * self.band} points',
            )
        if self.trials < 1:
            raise ConfigInvalid(
                f'At least one trial is required, got {self.trials}',
            )
        if not 0 <= self.seed < _MAX_SEED:
            raise ConfigInvalid(
                f'The seed must be a 64-bit unsigned integer, got {self.seed}',
            )
        if not self.k_values:
            raise ConfigInvalid('At least one level k is required')
        for tolerance_name in ('tol_exact', 'tol_grid', 'tol_fd'):
            tolerance = getattr(self, tolerance_name)
            if not tolerance > 0:
                raise ConfigInvalid(
                    f'"{tolerance_name}" must be positive, got {tolerance!r}',
                )
        unknown_suites = set(self.suites) - set(SUITE_NAMES)
        if unknown_suites or not self.suites:
            raise ConfigInvalid(
                f'Expected suites among {SUITE_NAMES!r} '
                f'but got {self.suites!r}',
            )

        object.__setattr__(  # noqa: WPS609
            self, 'k_values', tuple(complex(level) for level in self.k_values),
        )
        try:
            algebra = load_algebra(self.algebra)
        except (LookupError, ValueError) as algebra_err:
            raise ConfigInvalid(
                f'Cannot load the algebra {self.algebra!s}: {algebra_err!s}',
            ) from algebra_err
        object.__setattr__(self, 'resolved_algebra', algebra)  # noqa: WPS609

    @property
    def algebra_name(self) -> str:
        """Return the label of the algebra under test."""
        return self.resolved_algebra.name

    def to_json(self) -> Dict[str, object]:
        """Echo the configuration for the report."""
        return {
            'algebra': (
                self.algebra.name
                if isinstance(self.algebra, OrthogonalAlgebra)
                else str(self.algebra)
            ),
            'band': self.band,
            'grid': self.grid,
            'trials': self.trials,
            'seed': self.seed,
            'k_values': [format_complex(level) for level in self.k_values],
            'tol_exact': self.tol_exact,
            'tol_grid': self.tol_grid,
            'tol_fd': self.tol_fd,
            'suites': list(self.suites),
            'case': self.case,
        }
