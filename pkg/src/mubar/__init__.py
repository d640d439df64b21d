"""Exact computation of the mu-bar invariant and eta-invariant combination
of Seifert fibered homology spheres."""
from .dedekind import c_invariant, c_invariant_cotangent, dedekind_rademacher_sum, dedekind_sum
from .exceptions import ConsistencyError, InputError
from .invariants import (
    InvariantReport,
    eta_combination,
    mubar_c_form,
    mubar_dedekind_form,
    verify_main_theorem,
)
from .numeric import ExactRational, format_rational, fractional_part, parse_rational, sawtooth
from .plumbing import (
    IntersectionForm,
    PlumbingGraph,
    WuClass,
    aps_index,
    build_plumbing,
    intersection_form,
    mubar_oracle,
    negative_continued_fraction,
    signature,
    wu_class,
)
from .seifert import (
    CoefficientVector,
    SeifertData,
    alternate_coefficients,
    enumerate_corpus,
    normalize_even,
    solve_coefficients,
    validate,
)

__version__ = "0.1.0"
