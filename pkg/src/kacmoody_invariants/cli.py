"""Command line entry point of the identity verifier.

Exit status is ``0`` when every case passes, ``1`` when some case fails
and ``2`` when the configuration is unusable.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from ._config import (  # noqa: WPS436
    DEFAULT_SEED, SUITE_NAMES, SuiteConfig, format_complex, parse_complex,
)
from ._errors import ConfigInvalid  # noqa: WPS436
from ._report import emit_report, format_table  # noqa: WPS436
from ._suites import plan_cases, run_suites  # noqa: WPS436
from ._version import __version__  # noqa: WPS436


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG_ERROR = 2

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


logger = logging.getLogger(__name__)


def _parse_levels(text: str) -> List[complex]:
    try:
        return [parse_complex(level) for level in text.split(',')]
    except ConfigInvalid as level_err:
        raise argparse.ArgumentTypeError(str(level_err)) from level_err


def _parse_seed(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    """Describe the command line."""
    defaults = SuiteConfig()
    default_levels = ','.join(
        format_complex(level) for level in defaults.k_values
    )
    parser = argparse.ArgumentParser(
        prog='kacmoody-verify',
        description=(
            'Check the identities of the full affine algebra and of the '
            'loop group phase space on seeded random inputs.'
        ),
    )
    parser.add_argument(
        '--algebra', default='sl2',
        help='built-in algebra (sl2, so3) or path to a JSON basis file',
    )
    parser.add_argument(
        '--band', type=int, default=defaults.band,
        help='Fourier band of random loops',
    )
    parser.add_argument(
        '--grid', type=int, default=defaults.grid,
        help='number of grid nodes, a power of two',
    )
    parser.add_argument(
        '--trials', type=int, default=defaults.trials,
        help='random samples per identity',
    )
    parser.add_argument(
        '--seed', type=_parse_seed, default=DEFAULT_SEED,
        help=f'64-bit run seed (default {DEFAULT_SEED:#x})',
    )
    parser.add_argument(
        '--k', dest='k_values', type=_parse_levels,
        default=list(defaults.k_values),
        help=f'comma separated levels a+bi (default {default_levels})',
    )
    parser.add_argument('--tol-exact', type=float, default=defaults.tol_exact)
    parser.add_argument('--tol-grid', type=float, default=defaults.tol_grid)
    parser.add_argument('--tol-fd', type=float, default=defaults.tol_fd)
    parser.add_argument(
        '--suite', dest='suites', action='append', choices=SUITE_NAMES,
        help='run only this suite; repeatable',
    )
    parser.add_argument(
        '--case',
        help='run only the case ids matching this shell-style pattern',
    )
    parser.add_argument('--report', help='write the JSON report to this path')
    parser.add_argument(
        '--list', dest='list_cases', action='store_true',
        help='print the selected case ids and exit',
    )
    parser.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='log suite summaries; twice for every case and its seed offset',
    )
    parser.add_argument(
        '--version', action='version', version=f'%(prog)s {__version__}',
    )
    return parser


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    """Turn parsed flags into a validated configuration.

    :raises ConfigInvalid: on inconsistent flags
    """
    return SuiteConfig(
        algebra=args.algebra,
        band=args.band,
        grid=args.grid,
        trials=args.trials,
        seed=args.seed,
        k_values=tuple(args.k_values),
        tol_exact=args.tol_exact,
        tol_grid=args.tol_grid,
        tol_fd=args.tol_fd,
        suites=tuple(args.suites or SUITE_NAMES),
        case=args.case,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the verifier and return the exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=_LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)],
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        cfg = config_from_args(args)
    except ConfigInvalid as config_err:
        print(f'Invalid configuration: {config_err!s}', file=sys.stderr)
        return EXIT_CONFIG_ERROR

    if args.list_cases:
        for planned in plan_cases(cfg):
            print(f'{planned.spec.suite}/{planned.case_id}')
        return EXIT_OK

    report = run_suites(cfg)
    print(format_table(report))
    if args.report is not None:
        emit_report(report, args.report)
        logger.info('Wrote the report to %s', args.report)  # noqa: WPS323
    return EXIT_OK if report.ok else EXIT_FAILED
