"""Exact calculators for effective connectivity bounds of complete intersections."""

from .bounds import (
    INFINITE,
    BoundBudgetError,
    BoundConfig,
    BoundEngine,
    BoundKey,
    BoundResult,
    MemoCycleError,
    degree_decrement,
    fano_expected_dim,
    is_finite,
    lang_nagata_system_base,
    predonzan_min_n,
    replay_trace,
    tsen_lang_base,
)
from .cohomology import (
    ProfileBounds,
    RegularityProfile,
    bott_dimension,
    bound_profile,
    load_profile,
    m_x,
    minimal_regular_twist,
    profile_pn,
    regularity_of_omega,
)
from .core import FieldClass, Multidegree, binomial, partial_degree_sum
from .report import (
    Finding,
    Report,
    connectivity_report,
    hodge_level,
    report_from_dict,
    report_to_dict,
)
from .threshold import (
    DegenerateQueryError,
    NoriCertificate,
    NoriQuery,
    TupleWitness,
    ceil_fraction,
    enumerate_tuples,
    n_of_e_bruteforce,
    n_of_e_closed_form,
    nori_certificate,
)

__version__ = "0.1.0"
