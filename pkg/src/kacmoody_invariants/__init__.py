"""Invariants of the full affine Kac-Moody algebra, checked numerically.

This is an importable package containing the whole project: the
orthogonal algebra ``g``, its loop algebra as Fourier series, the full
affine algebra with the invariants ``kappa`` and ``pi``, and the twisted
cotangent bundle of the loop group with its momentum maps. The
``kacmoody-verify`` command evaluates every identity on seeded random
inputs:

.. code-block:: console

    $ kacmoody-verify --algebra so3 --suite phase --report report.json

"""

from ._affine import (  # noqa: WPS436
    AffineCovector, AffineVector, ad_star, bar_bracket, casimir_gradient,
    dual_pair, grad_kappa, grad_pi, invariance_residual, kappa, pi_center,
)
from ._config import SuiteConfig  # noqa: WPS436
from ._loop_fourier import (  # noqa: WPS436
    LoopElement, central_cocycle, from_grid, loop_bracket, loop_derivative,
    loop_pair, to_grid,
)
from ._orthogonal_algebra import (  # noqa: WPS436
    AlgebraElement, OrthogonalAlgebra, bracket, from_matrices, inner,
    load_algebra, sl2, so3,
)
from ._phase_space import (  # noqa: WPS436
    AdmissibleFunction, GroupLoop, PhasePoint, act_left, act_right, big_s,
    exp_loop, make_momentum_functional, momentum_left, momentum_right,
    momentum_scalar, poisson,
)
from ._report import SuiteReport, emit_report, load_report  # noqa: WPS436
from ._suites import run_suites  # noqa: WPS436
from ._version import __version__  # noqa: WPS436
