# ATTENTION: This file only exists to make relative helper imports work.
# ATTENTION: Do not put anything inside!
"""Test suite for `kacmoody_invariants`."""
