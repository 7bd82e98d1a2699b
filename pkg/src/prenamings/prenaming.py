"""Prenamings: injective variable-pure substitutions on a relaxed core.

A prenaming maps finitely many variables to pairwise-distinct variables
and may include passive pairs ``x/x``.  It is the mathematical form of
the everyday practice of renaming a term by writing down just the
necessary bindings, without first checking that they form a permutation.

The module provides:

* validation (:func:`make_prenaming`) and the renaming test;
* :func:`closure`, which embeds a prenaming into a proper renaming by
  closing its open variable chains, staying inside the prenaming's own
  variables;
* the injectivity domain machinery (:func:`noninj`, :func:`is_safe_for`):
  a prenaming behaves injectively everywhere except on the finite set
  ``r+ \\ c+``, so that set is the only unsafe place to apply it;
* matching (:func:`pren`): the unique prenaming carrying one term onto
  another, found by decomposing the pair of terms;
* variants of terms and substitutions under safe prenamings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import PrenamingsError
from .subst import OverlappingCores, Subst, apply, format_subst, sum_substs
from .terms import Compound, Term, Var, format_term, vars_of

ALIAS = "alias"
INSTANCE = "instance"
CLASH = "clash"


class NotVariablePure(PrenamingsError):
    def __init__(self, var: Var, image: Term):
        self.var, self.image = var, image
        super().__init__(f"binding {var}/{format_term(image)} has a non-variable image")


class NotInjective(PrenamingsError):
    def __init__(self, first: Var, second: Var):
        self.first, self.second = first, second
        super().__init__(f"variables {first} and {second} share an image")


class NotARenaming(PrenamingsError):
    pass


class OverlappingRanges(PrenamingsError):
    def __init__(self, witness: Var):
        self.witness = witness
        super().__init__(f"overlapping ranges: {witness}")


class UnsafePrenaming(PrenamingsError):
    """Application attempted on a variable where the prenaming may alias."""

    def __init__(self, witness: Var):
        self.witness = witness
        super().__init__(f"unsafe application: {witness} lies outside the injectivity domain")


class PrenFailure(PrenamingsError):
    """Term matching failed; ``kind`` names the rule that fired.

    * ``alias``: two core variables would need the same image, or one
      variable two images;
    * ``instance``: a variable is paired with a non-variable;
    * ``clash``: functor or arity mismatch.
    """

    def __init__(self, kind: str, equation: tuple[Term, Term],
                 conflict: tuple[Var, Var] | None = None):
        self.kind = kind
        self.equation = equation
        self.conflict = conflict
        super().__init__(str(self))

    def __str__(self) -> str:
        left, right = self.equation
        eq = f"{format_term(left)}={format_term(right)}"
        if self.conflict is not None:
            a, b = self.conflict
            return f"failure: {self.kind} ({eq} conflicts {a.name}/{b.name})"
        return f"failure: {self.kind} ({eq})"


@dataclass(frozen=True)
class Prenaming:
    """A validated variable-pure substitution injective on its relaxed core."""

    base: Subst
    _rplus: tuple[Var, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        images: dict[Var, Var] = {}
        for v, t in self.base.bindings:
            if not isinstance(t, Var):
                raise NotVariablePure(v, t)
            if t in images:
                raise NotInjective(images[t], v)
            images[t] = v
        object.__setattr__(self, "_rplus", tuple(t for _, t in self.base.bindings))

    @property
    def cplus(self) -> list[Var]:
        return self.base.relaxed_core()

    @property
    def rplus(self) -> list[Var]:
        return list(self._rplus)

    def lookup(self, v: Var) -> Var:
        img = self.base.lookup(v)
        assert isinstance(img, Var)
        return img

    def __call__(self, t: Term) -> Term:
        return apply_pren(self, t)

    def __str__(self) -> str:
        return format_subst(self.base)


def make_prenaming(sigma: Subst) -> Prenaming:
    """Validate ``sigma`` as a prenaming, keeping its relaxed core."""
    return Prenaming(sigma)


def prenaming_of_pairs(pairs: Iterable[tuple[Var, Var]]) -> Prenaming:
    return Prenaming(Subst(tuple(pairs)))


def epsoid(variables: Iterable[Var]) -> Prenaming:
    """The prenaming with relaxed core ``variables`` mapping each to itself.

    It acts as the identity; its point is the explicit core, which makes
    terms over those variables *complete* and hence extension-stable.
    """
    seen: dict[Var, None] = {}
    for v in variables:
        seen.setdefault(v, None)
    return Prenaming(Subst(tuple((v, v) for v in seen)))


def epsoid_of_term(t: Term) -> Prenaming:
    return epsoid(vars_of(t))


def is_renaming(alpha: Prenaming) -> bool:
    """True iff the active core is mapped onto itself (a finite permutation)."""
    core = alpha.base.core()
    return {alpha.lookup(v) for v in core} == core


def noninj(alpha: Prenaming) -> list[Var]:
    """The variables on which injectivity may break: ``r+ \\ c+``.

    The complement (the injectivity domain) is co-finite and never
    materialised; it is represented by this finite set.
    """
    cplus = set(alpha.cplus)
    return [v for v in alpha.rplus if v not in cplus]


def indom_excludes(alpha: Prenaming) -> list[Var]:
    return noninj(alpha)


def is_safe_for(alpha: Prenaming, t: Term) -> bool:
    """True iff no variable of ``t`` lies on ``noninj(alpha)``."""
    bad = set(noninj(alpha))
    return not any(v in bad for v in vars_of(t))


def unsafe_witness(alpha: Prenaming, variables: Iterable[Var]) -> Var | None:
    bad = set(noninj(alpha))
    for v in variables:
        if v in bad:
            return v
    return None


def apply_pren(alpha: Prenaming, t: Term) -> Term:
    """Safety-checked application; the result is a variant of ``t``."""
    witness = unsafe_witness(alpha, vars_of(t))
    if witness is not None:
        raise UnsafePrenaming(witness)
    return apply(alpha.base, t)


def inverse_pren(alpha: Prenaming) -> Prenaming:
    """Swap every binding pair; open chains run in the opposite direction."""
    return Prenaming(Subst(tuple((t, v) for v, t in alpha.base.bindings)))


def extend_pren(alpha: Prenaming, beta: Prenaming) -> Prenaming:
    """Sum of prenamings; defined when both cores and ranges are disjoint."""
    rplus = set(alpha._rplus)
    for v in beta._rplus:
        if v in rplus:
            raise OverlappingRanges(v)
    return Prenaming(sum_substs(alpha.base, beta.base))


def closure(alpha: Prenaming) -> Prenaming:
    """Embed ``alpha`` into a renaming over its own variables.

    Active bindings are kept; each open chain ``z, alpha(z), ...`` ending
    in some ``x`` outside the core is closed by a new binding ``x/z`` back
    to the chain's start.  The result agrees with ``alpha`` everywhere
    except on ``noninj(alpha)`` and uses no variable outside ``v+``.
    """
    active = [(v, t) for v, t in alpha.base.bindings if v != t]
    back: dict[Var, Var] = {t: v for v, t in active}
    out = list(active)
    for x in noninj(alpha):
        z = x
        while z in back:
            z = back[z]
        out.append((x, z))
    return Prenaming(Subst(tuple(out)))


def cycle_decomposition(rho: Prenaming) -> list[tuple[Var, ...]]:
    """Disjoint cycles covering the core of a renaming.

    Each cycle lists variables so that the renaming carries every element
    to the next, cyclically.  Cycles start at the first unvisited core
    variable in binding order, which makes the output deterministic;
    cycles compare equal up to rotation.
    """
    if not is_renaming(rho):
        raise NotARenaming(f"{rho} does not permute its core")
    core_order = [v for v, t in rho.base.bindings if v != t]
    visited: set[Var] = set()
    cycles = []
    for start in core_order:
        if start in visited:
            continue
        cycle = [start]
        visited.add(start)
        cur = rho.lookup(start)
        while cur != start:
            cycle.append(cur)
            visited.add(cur)
            cur = rho.lookup(cur)
        cycles.append(tuple(cycle))
    return cycles


def format_cycles(cycles: Iterable[tuple[Var, ...]]) -> str:
    return "{" + ", ".join("(" + ",".join(v.name for v in c) + ")" for c in cycles) + "}"


def pren(s: Term, t: Term) -> Prenaming:
    """The prenaming carrying ``s`` onto ``t``, complete for ``s``.

    Decomposes the equation ``s = t`` left to right.  Variable pairs are
    recorded as bindings (including passive ``x/x``); a variable facing a
    compound fails with ``instance``, mismatched shapes fail with
    ``clash``, and conflicting variable pairs fail with ``alias``.  On
    success the result maps ``s`` exactly onto ``t``, with core inside
    ``vars(s)`` and range inside ``vars(t)``.
    """
    work: deque[tuple[Term, Term]] = deque([(s, t)])
    by_left: dict[Var, Var] = {}
    by_right: dict[Var, Var] = {}
    order: list[tuple[Var, Var]] = []
    while work:
        left, right = work.popleft()
        if isinstance(left, Var) and isinstance(right, Var):
            if by_left.get(left) == right:
                continue
            if left in by_left:
                raise PrenFailure(ALIAS, (left, right), (left, by_left[left]))
            if right in by_right:
                raise PrenFailure(ALIAS, (left, right), (by_right[right], right))
            by_left[left] = right
            by_right[right] = left
            order.append((left, right))
        elif isinstance(left, Var) or isinstance(right, Var):
            raise PrenFailure(INSTANCE, (left, right))
        else:
            if left.shape != right.shape:
                raise PrenFailure(CLASH, (left, right))
            work.extend(zip(left.args, right.args))
    return Prenaming(Subst(tuple(order)))


def subst_variant(alpha: Prenaming, sigma: Subst) -> Subst:
    """Rename a substitution as a syntactic object: each active binding
    ``x/t`` becomes ``alpha(x)/alpha(t)``.

    Requires ``alpha`` safe for ``sigma`` (no variable of ``sigma`` on
    ``noninj``); without safety the image need not be a substitution at
    all.  The result is in core representation, ordered like ``sigma``'s
    active bindings, and coincides with conjugation by ``closure(alpha)``.
    """
    order = list(sigma.relaxed_core())
    in_order = set(order)
    for t in sigma.relaxed_range():
        for v in vars_of(t):
            if v not in in_order:
                order.append(v)
                in_order.add(v)
    witness = unsafe_witness(alpha, order)
    if witness is not None:
        raise UnsafePrenaming(witness)
    out = []
    for x, t in sigma.bindings:
        if t == x:
            continue
        out.append((alpha.lookup(x), apply(alpha.base, t)))
    return Subst(tuple(out))


__all__ = [
    "ALIAS", "INSTANCE", "CLASH",
    "Prenaming", "PrenFailure",
    "NotVariablePure", "NotInjective", "NotARenaming",
    "OverlappingCores", "OverlappingRanges", "UnsafePrenaming",
    "make_prenaming", "prenaming_of_pairs", "epsoid", "epsoid_of_term",
    "is_renaming", "noninj", "indom_excludes", "is_safe_for", "apply_pren",
    "inverse_pren", "extend_pren", "closure", "cycle_decomposition",
    "format_cycles", "pren", "subst_variant", "unsafe_witness",
]
