"""Exact measures of targets in finite Galois cover scenarios.

The core objects are :class:`CoverScenario` (a finite group ``G``, a normal
subgroup ``G0`` and named target subgroups) and :class:`TowerScenario` (two
scenarios joined by an epimorphism). Everything is computed exactly with
rationals over fully materialised permutation groups.
"""

__version__ = "0.1.0"

from .asymptotics import generic_target, omega_sum, ultralimit
from .config import Limits, get_limits, use_limits
from .counting import (
    all_lift_counts,
    brute_force_spectrum,
    gaschutz_count,
    hall_phi,
    tuple_spectrum,
)
from .exceptions import PACMeasureError, ResourceCapError, ValidationError
from .groups import (
    Epimorphism,
    FiniteGroup,
    Subgroup,
    alternating,
    construct_named,
    cyclic,
    dihedral,
    direct_product,
    group_from_generators,
    quotient_map,
    semidirect,
    symmetric,
    wreath,
)
from .measure import (
    CoverScenario,
    SignedPowerSum,
    TowerScenario,
    bijection_factor,
    closed_form,
    measure_at,
    measure_split_at,
    validate_scenario,
    verify_refinement,
)
from .montecarlo import sample_measure
from .prop import prop_measure_at, verify_prop_refinement
from .amenability import MeasuredGroup, check_measure, finite_index_extend, finite_kernel_pull, uniform_measure
from .estimators import ClosedFormMeasure, MonteCarloMeasure, PACMeasure
from . import catalog
