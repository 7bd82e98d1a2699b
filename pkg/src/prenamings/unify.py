"""Deterministic solved-form unification.

The solver processes equations first-in-first-out, decomposing compound
pairs left to right, with the occurs check on.  Produced unifiers are
idempotent (every image is fully resolved), relevant (they use only
variables of the input equations), and deterministic for a fixed input.

No decision ever depends on variable *names* — only on positions and on
structural equality — so the algorithm commutes with renamings: unifying
a renamed problem yields the correspondingly renamed unifier, and
unsolvable problems keep their failure kind under renaming.  The one free
choice, orientation of a variable-variable equation, is positional: the
left variable is bound to the right one (``x = y`` gives ``x/y``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import PrenamingsError
from .subst import Subst, apply
from .terms import Compound, Term, Var, format_term, vars_of

CLASH = "clash"
OCCURS_CHECK = "occurs_check"


@dataclass(frozen=True)
class Equation:
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{format_term(self.left)}={format_term(self.right)}"


class UnifyFailure(PrenamingsError):
    def __init__(self, kind: str, equation: Equation):
        self.kind = kind
        self.equation = equation
        super().__init__(f"failure: {kind} ({equation})")


def _subst_var(t: Term, x: Var, image: Term) -> Term:
    if isinstance(t, Var):
        return image if t == x else t
    if not t.args:
        return t
    return Compound(t.functor, tuple(_subst_var(a, x, image) for a in t.args))


def _first_appearance(equations: Sequence[Equation]) -> dict[Var, int]:
    index: dict[Var, int] = {}
    n = 0
    for eq in equations:
        for t in (eq.left, eq.right):
            for v in vars_of(t):
                if v not in index:
                    index[v] = n
                    n += 1
    return index


def _orient_positional(x: Var, y: Var) -> tuple[Var, Var]:
    return x, y


def _orient_by_name(x: Var, y: Var) -> tuple[Var, Var]:
    # Deliberately name-dependent: NOT renaming-compatible.  Kept for
    # tests that demonstrate the compatibility requirement has teeth.
    return (x, y) if x.name < y.name else (y, x)


def _solve(equations: Sequence[Equation],
           orient: Callable[[Var, Var], tuple[Var, Var]]) -> Subst:
    work: deque[tuple[Term, Term]] = deque((eq.left, eq.right) for eq in equations)
    solution: dict[Var, Term] = {}

    def bind(x: Var, t: Term, witness: Equation) -> None:
        if isinstance(t, Compound) and x in vars_of(t):
            raise UnifyFailure(OCCURS_CHECK, witness)
        for y in solution:
            solution[y] = _subst_var(solution[y], x, t)
        solution[x] = t

    while work:
        s, t = work.popleft()
        s = apply_solution(solution, s)
        t = apply_solution(solution, t)
        if s == t:
            continue
        if isinstance(s, Var) and isinstance(t, Var):
            x, img = orient(s, t)
            bind(x, img, Equation(s, t))
        elif isinstance(s, Var):
            bind(s, t, Equation(s, t))
        elif isinstance(t, Var):
            bind(t, s, Equation(s, t))
        else:
            if s.shape != t.shape:
                raise UnifyFailure(CLASH, Equation(s, t))
            work.extend(zip(s.args, t.args))

    appearance = _first_appearance(equations)
    ordered = sorted(solution.items(), key=lambda item: appearance[item[0]])
    return Subst(tuple(ordered))


def apply_solution(solution: dict[Var, Term], t: Term) -> Term:
    if isinstance(t, Var):
        return solution.get(t, t)
    if not t.args:
        return t
    return Compound(t.functor, tuple(apply_solution(solution, a) for a in t.args))


def unify(equations: Iterable[Equation]) -> Subst:
    """Most general unifier of the equation list.

    Raises :class:`UnifyFailure` with kind ``clash`` on a functor or
    arity mismatch and kind ``occurs_check`` when a variable would have
    to contain itself.

    >>> from .terms import Compound, Var
    >>> x, y = Var("x"), Var("y")
    >>> str(unify([Equation(Compound("p", (x,)), Compound("p", (y,)))]))
    '(x/y)'
    """
    return _solve(tuple(equations), _orient_positional)


def unify_terms(s: Term, t: Term) -> Subst:
    return unify([Equation(s, t)])
