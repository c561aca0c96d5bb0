"""Graphs defined on finite groups: construction, isomorphism, verification."""

from .builders import (
    DegreeTable,
    GraphKind,
    build_graph,
    delta_graph,
    directed_power_graph,
    edge_count_identity_holds,
    element_graph,
    euler_product_nilpotent,
    gen_probability,
    join_graph,
    nilpotent_degree_table,
    prime_graph,
)
from .catalog import CatalogSpec, default_catalog, parse_group_spec, resolve_catalog
from .claims import ClaimReport
from .decompose import (
    DeltaClass,
    SupersolubleDecomposition,
    build_supersoluble_instance,
    classify_frattini_quotient,
    coprime_direct_factors,
    find_supersoluble_decomposition,
    is_p_group,
    recover_primes_from_ratio,
)
from .errors import (
    AbelianGroupError,
    CayleyParseError,
    CyclicGroupError,
    DecompositionNotFoundError,
    Graph6ParseError,
    GroupGraphsError,
    NotADivisorError,
    NotAGroupError,
    NotAnActionError,
    NotNilpotentError,
    NotNormalError,
    NotTwoGeneratedError,
    SizeLimitError,
    UnrecoverableRatioError,
)
from .graph6 import from_graph6, to_dot, to_graph6
from .graphs import DiGraph, SimpleGraph
from .groups import (
    FiniteGroup,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    from_generators,
    load_cayley_file,
    parse_cayley_text,
    quaternion,
    semidirect_product,
    symmetric,
    trivial,
)
from .isomorphism import IsoResult, are_isomorphic, fingerprint
from .scanner import CONTRACT_KINDS, ScanReport, scan_question1
from .structure import (
    PrimeSignature,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    conjugacy_class_size_multiset,
    engel_reaches_identity,
    fitting,
    frattini,
    generated_subgroup,
    group_isomorphic,
    hypercenter,
    is_2generated,
    is_abelian,
    is_ac_group,
    is_cyclic,
    is_nilpotent,
    is_soluble,
    is_supersoluble,
    maximal_subgroups,
    order_spectrum,
    prime_signature,
    quotient_group,
    sylow_subgroup,
)

__version__ = "0.1.0"
