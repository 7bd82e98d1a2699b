"""Variance checking for pairs of SLD derivations.

Two derivations are *similar* when their queries are variants, they have
the same length, atoms in the same positions are selected, and the input
clauses used at each step are variants.  For similar derivations built
with a renaming-compatible unifier, the variance between them is not
just known to exist — it can be computed incrementally: start from the
prenaming ``alpha`` matching the queries, and at each step extend it by
``lambda_i``, the prenaming matching the two input-clause variants.  The
running sum ``beta_i = alpha (+) lambda_1 (+) ... (+) lambda_i`` then
carries goals, unifiers, partial answers and resultants of one
derivation exactly onto the other's.

:func:`check_variant` performs that construction and *verifies* every
claimed equality, returning a certificate.  False verdicts are recorded,
not thrown: a certificate that pinpoints which equality broke (for
example because an imported trace used a name-sensitive unifier) is
useful output in itself.  Only two conditions abort the construction:
the derivations not being similar, and the prenaming sum not existing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import PrenamingsError
from .prenaming import (
    OverlappingCores,
    OverlappingRanges,
    PrenFailure,
    Prenaming,
    UnsafePrenaming,
    apply_pren,
    extend_pren,
    pren,
    subst_variant,
)
from .subst import Subst, apply, format_subst, pointwise_equal
from .sld import (
    Clause,
    Derivation,
    DerivationStep,
    Goal,
    computed_answer,
    conjunction,
    partial_answer,
)
from .terms import Compound, Term, Var, format_term, vars_of

_GOAL_WRAPPER = "\x00goal"
_CLAUSE_WRAPPER = "\x00clause"

STEP_VERDICTS = (
    "complete_H",
    "complete_sigma",
    "cumulative",
    "mgu_relevant",
    "H_eq",
    "sigma_eq",
)
ANSWER_VERDICTS = ("partial_answer_eq", "resultant_eq")
VERDICT_NAMES = STEP_VERDICTS + ANSWER_VERDICTS


class NotSimilar(PrenamingsError):
    def __init__(self, report: "SimilarityReport"):
        self.report = report
        super().__init__("derivations are not similar")


class ExtensionUndefined(PrenamingsError):
    """The running prenaming cannot absorb this step's clause prenaming.

    Happens when the accumulated core or range collides with the new
    one — the situation a non-cumulative starting prenaming provokes.
    """

    def __init__(self, witness: Var, step_index: int):
        self.witness = witness
        self.step_index = step_index
        super().__init__(f"extension undefined at step {step_index}: {witness}")


class VerificationFailed(PrenamingsError):
    def __init__(self, step_index: int, check: str, witness: str):
        self.step_index = step_index
        self.check = check
        self.witness = witness
        super().__init__(f"step {step_index}: {check} failed ({witness})")


def goal_term(goal: Goal) -> Term:
    # n-ary wrapper: unequal goal lengths fail the match as an arity clash
    return Compound(_GOAL_WRAPPER, goal.atoms) if goal.atoms else Compound(_GOAL_WRAPPER)


def clause_term(clause: Clause) -> Term:
    return Compound(_CLAUSE_WRAPPER, clause.atoms())


def are_variants(s: Term, t: Term) -> bool:
    try:
        pren(s, t)
        pren(t, s)
    except PrenFailure:
        return False
    return True


@dataclass(frozen=True)
class StepSimilarity:
    position_equal: bool
    clauses_variant: bool

    @property
    def ok(self) -> bool:
        return self.position_equal and self.clauses_variant


@dataclass(frozen=True)
class SimilarityReport:
    queries_variant: bool
    same_length: bool
    lengths: tuple[int, int]
    steps: tuple[StepSimilarity, ...]

    @property
    def ok(self) -> bool:
        return self.queries_variant and self.same_length and all(s.ok for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "similar": self.ok,
            "queries_variant": self.queries_variant,
            "same_length": self.same_length,
            "lengths": list(self.lengths),
            "steps": [
                {"position_equal": s.position_equal, "clauses_variant": s.clauses_variant}
                for s in self.steps
            ],
        }


def check_similar(first: Derivation, second: Derivation) -> SimilarityReport:
    """Report whether two derivations are similar; never raises."""
    queries_variant = are_variants(goal_term(first.query), goal_term(second.query))
    lengths = (len(first.steps), len(second.steps))
    steps = []
    for s1, s2 in zip(first.steps, second.steps):
        steps.append(StepSimilarity(
            position_equal=s1.selected_index == s2.selected_index,
            clauses_variant=are_variants(clause_term(s1.input_clause),
                                         clause_term(s2.input_clause)),
        ))
    return SimilarityReport(queries_variant, lengths[0] == lengths[1],
                            lengths, tuple(steps))


@dataclass(frozen=True)
class StepCheck:
    lam: Prenaming
    beta: Prenaming
    verdicts: dict[str, bool]
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def all_true(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "lambda": format_subst(self.lam.base),
            "beta": format_subst(self.beta.base),
            "verdicts": dict(self.verdicts),
            "witnesses": dict(self.witnesses),
        }


@dataclass(frozen=True)
class VarianceCertificate:
    alpha: Prenaming
    steps: tuple[StepCheck, ...]
    final_cas_eq: bool | None

    @property
    def all_true(self) -> bool:
        if not all(s.all_true for s in self.steps):
            return False
        return self.final_cas_eq is not False

    def failures(self) -> list[tuple[int, str, str]]:
        out = []
        for i, step in enumerate(self.steps, start=1):
            for name, value in step.verdicts.items():
                if not value:
                    out.append((i, name, step.witnesses.get(name, "")))
        if self.final_cas_eq is False:
            out.append((len(self.steps), "cas_eq", ""))
        return out

    def to_dict(self) -> dict:
        return {
            "alpha": format_subst(self.alpha.base),
            "steps": [s.to_dict() for s in self.steps],
            "final": {"cas_eq": self.final_cas_eq},
            "all_verdicts_true": self.all_true,
        }


class _Verdicts:
    def __init__(self):
        self.values: dict[str, bool] = {}
        self.witnesses: dict[str, str] = {}

    def record(self, name: str, value: bool, witness: str = "") -> None:
        self.values[name] = value
        if not value and witness:
            self.witnesses[name] = witness


def _apply_pren_goal(beta: Prenaming, goal: Goal) -> Goal:
    return Goal(tuple(apply_pren(beta, a) for a in goal.atoms))


def _step_verdicts(beta: Prenaming, step: DerivationStep, step2: DerivationStep,
                   derivation_vars: set[Var], derivation_vars2: set[Var],
                   out: _Verdicts) -> None:
    """The per-step propagation checks: the extended prenaming covers the
    new resolvent and unifier, stays inside the two derivations, and maps
    this step's resolvent and unifier onto the other derivation's."""
    h_vars = step.goal_after.variables()
    out.record("complete_H", beta.base.is_complete_for_vars(h_vars),
               f"vars({step.goal_after}) not within core of {beta}")

    sigma_vars = step.mgu.vars_relaxed()
    out.record("complete_sigma", beta.base.is_complete_for_vars(sigma_vars),
               f"vars({step.mgu}) not within core of {beta}")

    cum_left = set(beta.cplus) <= derivation_vars
    cum_right = set(beta.rplus) <= derivation_vars2
    out.record("cumulative", cum_left and cum_right,
               "core outside first derivation" if not cum_left
               else "range outside second derivation")

    # re-validated instead of trusted: imported traces may carry
    # unifiers that drag in extraneous variables
    selected = step.goal_before.atoms[step.selected_index]
    allowed = set(vars_of(selected)) | set(vars_of(step.input_clause.head))
    out.record("mgu_relevant", sigma_vars <= allowed,
               f"{step.mgu} uses variables outside the resolved atoms")

    try:
        mapped_goal = _apply_pren_goal(beta, step.goal_after)
        out.record("H_eq", mapped_goal == step2.goal_after,
                   f"{mapped_goal} vs {step2.goal_after}")
    except UnsafePrenaming as exc:
        out.record("H_eq", False, str(exc))

    try:
        mapped_sigma = subst_variant(beta, step.mgu)
        out.record("sigma_eq", pointwise_equal(mapped_sigma, step2.mgu),
                   f"{mapped_sigma} vs {step2.mgu}")
    except UnsafePrenaming as exc:
        out.record("sigma_eq", False, str(exc))


def _answer_verdicts(beta: Prenaming, step: DerivationStep, step2: DerivationStep,
                     pa1: Subst, pa2: Subst, query1: Goal, query2: Goal,
                     out: _Verdicts) -> None:
    """The accumulated checks: partial answers and resultants correspond."""
    try:
        mapped_pa = subst_variant(beta, pa1)
        out.record("partial_answer_eq", pointwise_equal(mapped_pa, pa2),
                   f"{mapped_pa} vs {pa2}")
    except UnsafePrenaming as exc:
        out.record("partial_answer_eq", False, str(exc))

    try:
        head1 = apply(pa1, conjunction(query1))
        head2 = apply(pa2, conjunction(query2))
        mapped_head = apply_pren(beta, head1)
        mapped_goal = _apply_pren_goal(beta, step.goal_after)
        out.record("resultant_eq",
                   mapped_head == head2 and mapped_goal == step2.goal_after,
                   f"{format_term(mapped_head)} vs {format_term(head2)}")
    except UnsafePrenaming as exc:
        out.record("resultant_eq", False, str(exc))


def propagate(alpha: Prenaming, step: DerivationStep, step2: DerivationStep,
              derivation_vars: Iterable[Var], derivation_vars2: Iterable[Var],
              step_index: int = 1) -> tuple[Prenaming, Prenaming]:
    """One propagation step, strict form.

    ``derivation_vars``/``derivation_vars2`` are the variables of the two
    derivations up to and including this step.  Returns the pair
    ``(lambda, beta)`` where ``lambda`` matches the input-clause variants
    and ``beta = alpha (+) lambda``.  Raises :class:`ExtensionUndefined`
    when the sum does not exist and :class:`VerificationFailed` on the
    first per-step equality that does not hold.
    """
    lam = pren(clause_term(step.input_clause), clause_term(step2.input_clause))
    try:
        beta = extend_pren(alpha, lam)
    except (OverlappingCores, OverlappingRanges) as exc:
        raise ExtensionUndefined(exc.witness, step_index) from exc
    out = _Verdicts()
    _step_verdicts(beta, step, step2, set(derivation_vars), set(derivation_vars2), out)
    for name in STEP_VERDICTS:
        if not out.values[name]:
            raise VerificationFailed(step_index, name, out.witnesses.get(name, ""))
    return lam, beta


def check_variant(first: Derivation, second: Derivation) -> VarianceCertificate:
    """Build and verify the variance certificate for two derivations.

    Raises :class:`NotSimilar` when the derivations are not similar and
    :class:`ExtensionUndefined` when the prenaming sum collapses; every
    other check lands in the certificate as a verdict.  When both
    derivations reach the empty goal, the computed answers are compared
    as well (their correspondence survives the restriction to query
    variables because the query variables are covered by ``alpha``).
    """
    report = check_similar(first, second)
    if not report.ok:
        raise NotSimilar(report)
    alpha = pren(goal_term(first.query), goal_term(second.query))
    beta = alpha
    vars1 = set(first.query.variables())
    vars2 = set(second.query.variables())
    checks: list[StepCheck] = []
    for i, (s1, s2) in enumerate(zip(first.steps, second.steps), start=1):
        lam = pren(clause_term(s1.input_clause), clause_term(s2.input_clause))
        try:
            beta = extend_pren(beta, lam)
        except (OverlappingCores, OverlappingRanges) as exc:
            raise ExtensionUndefined(exc.witness, i) from exc
        vars1 |= s1.variables()
        vars2 |= s2.variables()
        out = _Verdicts()
        _step_verdicts(beta, s1, s2, vars1, vars2, out)
        _answer_verdicts(beta, s1, s2,
                         partial_answer(first, i), partial_answer(second, i),
                         first.query, second.query, out)
        checks.append(StepCheck(lam, beta, out.values, out.witnesses))
    final_cas: bool | None = None
    if first.final_goal.is_empty and second.final_goal.is_empty:
        cas1 = computed_answer(first)
        cas2 = computed_answer(second)
        try:
            final_cas = pointwise_equal(subst_variant(beta, cas1), cas2)
        except UnsafePrenaming:
            final_cas = False
    return VarianceCertificate(alpha, tuple(checks), final_cas)
