"""SLD resolution for pure Horn clause programs, with annotated derivations.

This is a derivation engine, not a search interpreter: it has no
backtracking.  Each step resolves the leftmost goal atom against one
program clause, either replaying an explicit list of clause choices or
greedily taking the first clause that applies.  Every step records the
goal, the selected position, the standardized-apart clause variant that
was actually used, and the unifier, so a finished derivation can be
re-checked and compared against another derivation step by step.

Standardization-apart draws fresh variables ``_G0, _G1, ...`` from a
per-derivation counter, so replays with the same program, query and
choices reproduce the derivation exactly, generated names included.
Variables introduced this way and absent from the query are the
derivation's local variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import PrenamingsError
from .subst import EMPTY, Subst, apply, compose
from .terms import (
    CONJ,
    Compound,
    Term,
    Var,
    format_term,
    generated_var,
    vars_of,
    vars_of_all,
)
from .unify import Equation, UnifyFailure, unify

Unifier = Callable[[Term, Term], Subst]

SUCCESS = "success"
NO_STEP = "no_step"
STEP_LIMIT = "step_limit"
CHOICES_EXHAUSTED = "choices_exhausted"


class NotSuccessful(PrenamingsError):
    pass


@dataclass(frozen=True)
class Clause:
    """``head :- body``; an empty body makes a fact."""

    head: Term
    body: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if not isinstance(self.head, Compound):
            raise ValueError("clause head must be a compound or 0-ary atom")
        for b in self.body:
            if not isinstance(b, Compound):
                raise ValueError("clause body atoms must be compounds")

    def atoms(self) -> tuple[Term, ...]:
        return (self.head,) + self.body

    def variables(self) -> list[Var]:
        return vars_of_all(self.atoms())

    def __str__(self) -> str:
        if not self.body:
            return format_term(self.head)
        return format_term(self.head) + " :- " + ", ".join(format_term(b) for b in self.body)


@dataclass(frozen=True)
class Program:
    """Clauses in source order; choices index into this order, 1-based."""

    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))

    def __len__(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class Goal:
    """A sequence of atoms; the empty sequence is the empty clause."""

    atoms: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @property
    def is_empty(self) -> bool:
        return not self.atoms

    def variables(self) -> list[Var]:
        return vars_of_all(self.atoms)

    def __str__(self) -> str:
        if not self.atoms:
            return "□"
        return ", ".join(format_term(a) for a in self.atoms)


def apply_to_goal(sigma: Subst, goal: Goal) -> Goal:
    return Goal(tuple(apply(sigma, a) for a in goal.atoms))


def conjunction(goal: Goal) -> Term:
    """The goal as a single right-nested ','/2 term (display/variant use)."""
    if not goal.atoms:
        return Compound("true")
    out = goal.atoms[-1]
    for a in reversed(goal.atoms[:-1]):
        out = Compound(CONJ, (a, out))
    return out


@dataclass(frozen=True)
class DerivationStep:
    goal_before: Goal
    selected_index: int
    input_clause: Clause
    mgu: Subst
    goal_after: Goal
    clause_index: int | None = None  # 1-based program position, when known

    def variables(self) -> set[Var]:
        out = set(self.goal_after.variables())
        out.update(self.input_clause.variables())
        out.update(self.mgu.vars_relaxed())
        return out


@dataclass(frozen=True)
class Derivation:
    query: Goal
    steps: tuple[DerivationStep, ...] = ()
    fresh_counter: int = 0
    outcome: str = SUCCESS

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final_goal(self) -> Goal:
        return self.steps[-1].goal_after if self.steps else self.query

    def goal_at(self, i: int) -> Goal:
        if not 0 <= i <= len(self.steps):
            raise IndexError(f"no goal at step {i}")
        return self.query if i == 0 else self.steps[i - 1].goal_after

    def variables(self) -> set[Var]:
        """Everything the derivation mentions: goals, unifiers, and the
        clause variants used (the annotations count as part of it)."""
        out = set(self.query.variables())
        for step in self.steps:
            out |= step.variables()
        return out


def standardize_apart(clause: Clause, avoid: Iterable[Var],
                      counter: int) -> tuple[Clause, int]:
    """Rename clause variables, in order of first appearance, to fresh
    generated variables ``_G<counter>, _G<counter+1>, ...``.

    Counter values whose name already occurs in ``avoid`` are skipped, so
    the result is always variable-disjoint from ``avoid``.
    """
    avoid_names = {v.name for v in avoid}
    mapping: dict[Var, Term] = {}
    for v in clause.variables():
        while generated_var(counter).name in avoid_names:
            counter += 1
        mapping[v] = generated_var(counter)
        counter += 1
    renaming = Subst(tuple(mapping.items()))
    return Clause(apply(renaming, clause.head),
                  tuple(apply(renaming, b) for b in clause.body)), counter


def resolve_step(goal: Goal, index: int, clause: Clause, avoid: Iterable[Var],
                 counter: int, unifier: Unifier | None = None,
                 clause_index: int | None = None) -> tuple[DerivationStep, int]:
    """Resolve the atom at ``index`` against ``clause``.

    The clause is standardized apart from ``avoid`` and the goal first.
    The recorded unifier solves ``head = atom`` (clause side left), so a
    variable-variable tie binds the fresh clause variable to the goal's
    variable and resolvents keep the goal's names.  The new goal splices
    the instantiated clause body in place of the selected atom.
    """
    if not 0 <= index < len(goal.atoms):
        raise IndexError(f"goal has no atom at position {index}")
    selected = goal.atoms[index]
    avoid_all = set(avoid) | set(goal.variables())
    variant, counter = standardize_apart(clause, avoid_all, counter)
    solve = unifier if unifier is not None else (lambda h, a: unify([Equation(h, a)]))
    mgu = solve(variant.head, selected)
    spliced = goal.atoms[:index] + variant.body + goal.atoms[index + 1:]
    after = Goal(tuple(apply(mgu, a) for a in spliced))
    return DerivationStep(goal, index, variant, mgu, after, clause_index), counter


def derive(program: Program, query: Goal,
           clause_choices: Sequence[int] | None = None,
           max_steps: int = 100, fresh_base: int = 0,
           unifier: Unifier | None = None) -> Derivation:
    """Run leftmost-selection resolution from ``query``.

    With ``clause_choices`` (1-based positions into the program) the
    derivation replays exactly those clauses, which is how similar
    derivations are constructed; without it, each step takes the first
    program clause whose head unifies with the selected atom.

    The outcome distinguishes reaching the empty goal (``success``) from
    no clause applying (``no_step``), the step budget running out
    (``step_limit``), and an explicit choice list ending early
    (``choices_exhausted``).
    """
    goal = query
    counter = fresh_base
    steps: list[DerivationStep] = []
    derivation_vars = set(query.variables())
    outcome = None
    while True:
        if goal.is_empty:
            outcome = SUCCESS
            break
        if clause_choices is not None and len(steps) >= len(clause_choices):
            outcome = CHOICES_EXHAUSTED
            break
        if len(steps) >= max_steps:
            outcome = STEP_LIMIT
            break
        if clause_choices is not None:
            pos = clause_choices[len(steps)]
            if not 1 <= pos <= len(program.clauses):
                raise IndexError(f"program has no clause {pos}")
            try:
                step, counter = resolve_step(goal, 0, program.clauses[pos - 1],
                                             derivation_vars, counter, unifier, pos)
            except UnifyFailure:
                outcome = NO_STEP
                break
        else:
            step = None
            for pos, clause in enumerate(program.clauses, start=1):
                try:
                    step, counter = resolve_step(goal, 0, clause, derivation_vars,
                                                 counter, unifier, pos)
                    break
                except UnifyFailure:
                    continue
            if step is None:
                outcome = NO_STEP
                break
        steps.append(step)
        derivation_vars |= step.variables()
        goal = step.goal_after
    return Derivation(query, tuple(steps), counter, outcome)


def partial_answer(derivation: Derivation, i: int) -> Subst:
    """The composition of the first ``i`` unifiers, latest applied last
    (step i's unifier outermost); ``i = 0`` gives the identity."""
    if not 0 <= i <= len(derivation.steps):
        raise IndexError(f"no step {i} in derivation of length {len(derivation.steps)}")
    answer = EMPTY
    for step in derivation.steps[:i]:
        answer = compose(step.mgu, answer)
    return answer


def computed_answer(derivation: Derivation) -> Subst:
    """The final partial answer restricted to the query's variables.

    Only defined when the derivation reached the empty goal.
    """
    if not derivation.final_goal.is_empty:
        raise NotSuccessful("derivation did not reach the empty goal")
    full = partial_answer(derivation, len(derivation.steps))
    return full.restrict(derivation.query.variables())


def resultant(derivation: Derivation, i: int) -> tuple[Term, Goal]:
    """The pair ``instantiated query <- goal at step i``."""
    answer = partial_answer(derivation, i)
    return apply(answer, conjunction(derivation.query)), derivation.goal_at(i)


def replayed_choices(derivation: Derivation) -> list[int]:
    """The 1-based clause positions this derivation used, for replay."""
    out = []
    for step in derivation.steps:
        if step.clause_index is None:
            raise ValueError("derivation step lacks a recorded clause position")
        out.append(step.clause_index)
    return out
