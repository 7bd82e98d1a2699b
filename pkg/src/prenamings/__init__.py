"""First-order term and substitution toolkit built around prenamings:
variable-pure substitutions injective on an explicit relaxed core.

The package covers the substitution algebra (composition, restriction,
sums, completeness), prenaming machinery (closure into a renaming,
injectivity domains, safe application, term matching), a deterministic
renaming-compatible unifier, a small resolution engine with fully
annotated derivations, and a checker that certifies the variance between
two similar derivations step by step.
"""

from .errors import PrenamingsError
from .terms import (
    Compound,
    Term,
    Var,
    atom,
    format_term,
    make_list,
    occurs_in,
    var_disjoint,
    vars_of,
)
from .subst import (
    EMPTY,
    OverlappingCores,
    Subst,
    apply,
    compose,
    format_subst,
    pointwise_equal,
    power,
    relax,
    sum_substs,
)
from .prenaming import (
    Prenaming,
    PrenFailure,
    NotARenaming,
    NotInjective,
    NotVariablePure,
    OverlappingRanges,
    UnsafePrenaming,
    apply_pren,
    closure,
    cycle_decomposition,
    epsoid,
    epsoid_of_term,
    extend_pren,
    inverse_pren,
    is_renaming,
    is_safe_for,
    make_prenaming,
    noninj,
    pren,
    subst_variant,
)
from .unify import Equation, UnifyFailure, unify, unify_terms
from .sld import (
    Clause,
    Derivation,
    DerivationStep,
    Goal,
    NotSuccessful,
    Program,
    computed_answer,
    derive,
    partial_answer,
    resolve_step,
    resultant,
    standardize_apart,
)
from .variance import (
    ExtensionUndefined,
    NotSimilar,
    SimilarityReport,
    VarianceCertificate,
    VerificationFailed,
    check_similar,
    check_variant,
    propagate,
)
from .syntax import (
    ParseError,
    ReservedVariable,
    SourceSpan,
    derivation_from_json,
    derivation_to_json,
    derivation_to_text,
    parse_prenaming,
    parse_program,
    parse_query,
    parse_subst,
    parse_term,
)

__version__ = "0.1.0"
