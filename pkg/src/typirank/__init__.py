"""Defeasible description-logic reasoning with a typicality operator.

Concepts, knowledge bases, and queries live in `model` and `parse`; the
classical tableau in `alc`. Entailment comes in four modes: monotonic
typicality via `encoding`, rational closure via `rc`, the skeptical
closure via `sc`, and bounded model enumeration via `oracle`. The `probext`
module adds probability-of-exception reasoning, `tcl` prototypical concept
combination, and `cli` the command-line front end.
"""

from .model import (
    And,
    Atom,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    Not,
    Or,
    Plain,
    RoleAssertion,
    Top,
    Typical,
    canonical_form,
    concept_to_str,
    materialization,
    signature,
)
from .parse import ParseError, parse_concept, parse_kb, parse_query, serialize_kb
from .alc import abox_consistent, entails, instance_of, is_satisfiable
from .ranked import RankedInterpretation, check_postulates
from .encoding import encode, tr_entails
from .rc import (
    InconsistentKbError,
    RankingResult,
    compute_ranking,
    rc_abox_entails,
    rc_entails_tbox,
)
from .sc import Base, build_base, sc_entails
from .probext import (
    AboxExtension,
    AssumptionIndex,
    build_index,
    enumerate_extensions,
    prob_entails,
    query_probability,
)
from .tcl import (
    CombinationResult,
    Scenario,
    enumerate_scenarios,
    is_consistent_scenario,
    revise,
    select_scenarios,
)
from .oracle import oracle_entails, oracle_min_canonical_entails

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "Bottom", "Concept", "ConceptAssertion", "Exists", "Forall",
    "Inclusion", "KnowledgeBase", "Not", "Or", "Plain", "RoleAssertion",
    "Top", "Typical", "canonical_form", "concept_to_str", "materialization",
    "signature",
    "ParseError", "parse_concept", "parse_kb", "parse_query", "serialize_kb",
    "abox_consistent", "entails", "instance_of", "is_satisfiable",
    "RankedInterpretation", "check_postulates",
    "encode", "tr_entails",
    "InconsistentKbError", "RankingResult", "compute_ranking",
    "rc_abox_entails", "rc_entails_tbox",
    "Base", "build_base", "sc_entails",
    "AboxExtension", "AssumptionIndex", "build_index",
    "enumerate_extensions", "prob_entails", "query_probability",
    "CombinationResult", "Scenario", "enumerate_scenarios",
    "is_consistent_scenario", "revise", "select_scenarios",
    "oracle_entails", "oracle_min_canonical_entails",
    "__version__",
]
