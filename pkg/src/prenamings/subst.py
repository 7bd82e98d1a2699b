"""Substitutions in relaxed core representation.

A substitution is a variable-to-term mapping that is identity almost
everywhere, represented by an ordered list of bindings ``x/t``.  The
representation is *relaxed*: passive pairs ``x/x`` are allowed alongside
real bindings, so a substitution can lay explicit claim to variables it
does not move.  The left-hand variables (the *relaxed core*, ``c+``) must
be pairwise distinct; the *core* is the subset that is actually moved.

Binding order is preserved as given.  Dataclass equality is therefore
representation equality; use :func:`pointwise_equal` to compare
substitutions as functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import PrenamingsError
from .terms import Compound, Term, Var, format_term, vars_of

Binding = tuple[Var, Term]


class DuplicateCoreVariable(PrenamingsError):
    def __init__(self, var: Var):
        self.var = var
        super().__init__(f"left-hand variable {var} bound twice")


class OverlappingCores(PrenamingsError):
    """Sum of substitutions attempted with a shared left-hand variable."""

    def __init__(self, witness: Var):
        self.witness = witness
        super().__init__(f"overlapping cores: {witness}")


class SpuriousAlias(PrenamingsError):
    """Relaxing would add a passive pair for a variable already in range."""

    def __init__(self, witness: Var):
        self.witness = witness
        super().__init__(f"passive pair for {witness} would alias an existing image")


@dataclass(frozen=True)
class Subst:
    """An ordered binding list; ``Subst()`` is the identity substitution.

    >>> s = Subst(((Var("z"), Var("y")), (Var("u"), Var("z")), (Var("x"), Var("x"))))
    >>> sorted(v.name for v in s.core())
    ['u', 'z']
    >>> [v.name for v in s.relaxed_core()]
    ['z', 'u', 'x']
    """

    bindings: tuple[Binding, ...] = ()
    _map: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "bindings", tuple(self.bindings))
        mapping: dict[Var, Term] = {}
        for v, t in self.bindings:
            if v in mapping:
                raise DuplicateCoreVariable(v)
            mapping[v] = t
        object.__setattr__(self, "_map", mapping)

    def lookup(self, v: Var) -> Term:
        return self._map.get(v, v)

    def __call__(self, t: Term) -> Term:
        return apply(self, t)

    def relaxed_core(self) -> list[Var]:
        """c+: every left-hand variable, in binding order."""
        return [v for v, _ in self.bindings]

    def core(self) -> set[Var]:
        """Active domain: the variables actually moved."""
        return {v for v, t in self.bindings if t != v}

    def relaxed_range(self) -> list[Term]:
        """r+: the images of the relaxed core, in binding order."""
        return [t for _, t in self.bindings]

    def active_range(self) -> set[Term]:
        return {t for v, t in self.bindings if t != v}

    def vars_relaxed(self) -> set[Var]:
        """v+ = c+ together with all variables of r+."""
        out = set(self._map)
        for t in self.relaxed_range():
            out.update(vars_of(t))
        return out

    def vars_active(self) -> set[Var]:
        """Core together with all variables of the active range."""
        out = self.core()
        for t in self.active_range():
            out.update(vars_of(t))
        return out

    def unrelax(self) -> "Subst":
        """Drop passive pairs; the result's relaxed core equals its core."""
        return Subst(tuple((v, t) for v, t in self.bindings if t != v))

    def restrict(self, keep: Iterable[Var]) -> "Subst":
        """Behave as before on ``keep``, identity elsewhere."""
        keep = set(keep)
        return Subst(tuple((v, t) for v, t in self.bindings if v in keep))

    def is_complete_for(self, t: Term) -> bool:
        """True iff every variable of ``t`` is claimed by the relaxed core."""
        return all(v in self._map for v in vars_of(t))

    def is_complete_for_vars(self, vs: Iterable[Var]) -> bool:
        return all(v in self._map for v in vs)

    def is_idempotent(self) -> bool:
        return pointwise_equal(compose(self, self), self)

    def __str__(self) -> str:
        return format_subst(self)


EMPTY = Subst()


def from_pairs(pairs: Iterable[tuple[Var, Term]]) -> Subst:
    return Subst(tuple(pairs))


def apply(sigma: Subst, t: Term) -> Term:
    """Replace each variable of ``t`` by its image, simultaneously."""
    if isinstance(t, Var):
        return sigma.lookup(t)
    if not t.args:
        return t
    return Compound(t.functor, tuple(apply(sigma, a) for a in t.args))


def compose(theta: Subst, sigma: Subst) -> Subst:
    """The composition ``theta`` after ``sigma``: x maps to theta(sigma(x)).

    The result is in unrelaxed core representation; passive and duplicate
    pairs are normalised away, keeping first sigma's bindings and then
    theta's surviving ones, in order.
    """
    out: list[Binding] = []
    for x, t in sigma.bindings:
        img = apply(theta, t)
        if img != x:
            out.append((x, img))
    for y, s in theta.bindings:
        if y not in sigma._map and s != y:
            out.append((y, s))
    return Subst(tuple(out))


def power(sigma: Subst, n: int) -> Subst:
    """n-fold composition; ``power(sigma, 0)`` is the identity."""
    if n < 0:
        raise ValueError("exponent must be a natural number")
    acc = EMPTY
    for _ in range(n):
        acc = compose(sigma, acc)
    return acc


def sum_substs(sigma: Subst, theta: Subst) -> Subst:
    """Disjoint union of the binding lists (the extension operator).

    Defined only when the relaxed cores are disjoint; otherwise the
    extension would be unsound and :class:`OverlappingCores` is raised
    with a witness variable.
    """
    for v, _ in theta.bindings:
        if v in sigma._map:
            raise OverlappingCores(v)
    return Subst(sigma.bindings + theta.bindings)


def relax(sigma: Subst, extra: Iterable[Var]) -> Subst:
    """Add passive pairs for the given variables not already in c+.

    Refuses to add a passive pair for a variable that already occurs in
    an image: in a prenaming that would silently alias two core
    variables.
    """
    range_vars: set[Var] = set()
    for t in sigma.relaxed_range():
        range_vars.update(vars_of(t))
    new = []
    for v in extra:
        if v in sigma._map or any(v == w for w, _ in new):
            continue
        if v in range_vars:
            raise SpuriousAlias(v)
        new.append((v, v))
    return Subst(sigma.bindings + tuple(new))


def pointwise_equal(a: Subst, b: Subst) -> bool:
    """Equality as functions on all variables (order-insensitive)."""
    for v in set(a._map) | set(b._map):
        if a.lookup(v) != b.lookup(v):
            return False
    return True


def format_subst(sigma: Subst) -> str:
    """Textual form ``(x/t, y/s)``; ``()`` for the identity."""
    return "(" + ", ".join(f"{v.name}/{format_term(t)}" for v, t in sigma.bindings) + ")"
