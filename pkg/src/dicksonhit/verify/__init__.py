"""Mechanical checks of the Steenrod tables, the proof's case analysis, and the scan."""

from .reports import CEILING, EXACT, FAILED, HIT, INFO, MOD_HIT, ReplayReport, Step
from .tables import (
    check_davis_composite,
    check_sq_on_Q,
    check_sq_on_V,
    check_sq_vanishing_on_V4_powers,
    check_V_identity,
    davis_word,
)
from .replay import CASES, classify, replay_case, replay_grid
from .scan import ScanReport, main_theorem_scan
from .suites import DEFAULT_SEED, SUITES, run_suite
