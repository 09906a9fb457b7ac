"""Finite semigroups and commutativity from power identities.

Cayley tables, class predicates, semilattice decompositions, an exhaustive
census of small semigroups, brute-force theorem audits and a checker for
equational proof scripts.
"""
from .census import all_tables, count_semigroups, enumerate_semigroups
from .classify import (
    Check,
    ClassificationReport,
    check_basic,
    check_cube_conditions,
    check_regularity,
    classify,
    consecutive_powers,
    power_endomorphism,
    powers_commute,
)
from .construct import (
    TriElement,
    brandt_b2,
    build,
    clifford_chains,
    cyclic_group,
    heisenberg_mod,
    klein_group,
    monogenic,
    strong_semilattice_of_groups,
    symmetric_group,
)
from .decompose import (
    Partition,
    audit_prop_1_2,
    congruence_closure,
    decompose_semilattice,
    least_semilattice_congruence,
    quotient,
)
from .errors import (
    ContractViolation,
    InputError,
    InvariantFailure,
    PreconditionError,
    ResourceLimitError,
    SemicommError,
)
from .table import CayleyTable, format_sg, is_associative, load_sg, parse_sg, power, save_sg
from .verify import (
    AuditResult,
    audit_counterexample,
    audit_theorem,
    bezout,
    check_g_axioms,
    instantiate_g_from_powers,
    search_g_maps,
)

__version__ = "0.1.0"
