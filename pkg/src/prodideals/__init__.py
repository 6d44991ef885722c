"""Exact computation with prime and maximal ideals in finite products of
arithmetic rings: finite/cofinite Boolean algebra and ultrafilters over the
maximal spectra, induced ideals with decision procedures and constructive
witnesses, separating-element property checkers, valuation comparison, and
a brute-force oracle for cross-checking on finite instances.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    FactorizationBudgetExceeded,
    FiniteIntersectionViolation,
    InconsistentInput,
    InvalidSample,
    NonPositiveValueVector,
    NotMember,
    NotUnitIdeal,
    NoWitness,
    ParseError,
    ShapeMismatch,
    UnsupportedDescriptor,
    UnsupportedRing,
    ValidationError,
    ZeroElement,
)
from .values import INF, Infinity
from .rings import (
    FinCofSet,
    IntegerRing,
    LocalizedIntegersRing,
    MaxIdealId,
    PolynomialRing,
    ResidueRing,
    RingElement,
    RingHandle,
    ZERO_MARKER,
    ZeroMarker,
    bezout_certificate,
    crt_solve,
    dset,
    jacobson_radical_generator,
    valuation,
    vset,
    vset_pair,
)
from .boolalg import (
    AlgebraElement,
    FilterDescriptor,
    FilterExtension,
    FipResult,
    UltrafilterDescriptor,
    complement,
    enumerate_ultrafilters,
    extend_filter,
    fip_check,
    is_zero,
    join,
    leq,
    meet,
    membership,
)
from .products import (
    IndexUltrafilter,
    KernelIdeal,
    MaximalityVerdict,
    PointwiseMaxIdeal,
    ProductElement,
    ProductRing,
    SkolemResult,
    UltrafilterIdeal,
    ValuationIdeal,
    enumerate_maximal_ideals,
    ideal_member,
    index_filter_of,
    is_maximal,
    is_prime,
    minimal_prime_below,
    skolem_check,
    vset_vector,
)
from .properties import (
    PlusPlusVerdict,
    PlusWitness,
    one_dim_plus_witness,
    plus_witness,
    plusplus_check,
    plusplus_witness,
)
from .valuations import (
    ChainVerdict,
    InterpolationReport,
    PrefixSample,
    ValueVector,
    chain_strictness,
    floor_div_log,
    interpolate_chain,
    ll_relation,
    min_prime_over,
    ug_member,
    valuation_compare,
)
from .oracle import OracleReport, oracle_run
from .scenario import Report, Scenario, parse_scenario, run_scenario
