"""Allow running the verifier as ``python -m kacmoody_invariants``."""

from .cli import main  # noqa: WPS436


if __name__ == '__main__':
    raise SystemExit(main())
