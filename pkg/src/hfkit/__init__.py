"""Exact-arithmetic toolkit for horseshoes, blow-ups and shift spaces of PL interval maps."""

from .analysis import cycle_verify, mixing_decomposition, pipeline, swap_map
from .denjoy import (
    BlowupModel,
    OrbitSet,
    build_blowup,
    interval_orbit_check,
    obstruction_report,
    orbit_closure,
    semiconjugacy_check,
    tent_plateau,
)
from .errors import (
    AlphabetMismatch,
    CertError,
    CollarOverlap,
    DomainError,
    NonEventuallyPeriodicGuard,
    OrbitError,
    ParseError,
    PlateauError,
    PreconditionError,
    ResourceError,
)
from .horseshoe import (
    HorseshoeCert,
    WordIntervalTable,
    conjugacy_self_test,
    entropy_lower_bound,
    find_horseshoe,
    point_for_itinerary,
    pullback,
    singleton_rate,
    verify_horseshoe,
)
from .intervals import Interval, IntervalSet, fmt_rat, parse_rat
from .plmap import (
    PLMap,
    lap_count,
    lap_entropy_estimate,
    laps,
    pl_compose,
    pl_eval,
    pl_image,
    pl_power,
    pl_preimage,
    pl_restrict,
)
from .shift import (
    EPSeq,
    LabeledGraph,
    Word,
    asymptotic_resolve,
    cantor_depth_check,
    graph_is_primitive,
    itinerary,
    power_block_encode,
    shift,
)

__version__ = "0.1.0"
