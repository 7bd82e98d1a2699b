"""First-order terms: variables and compound terms.

A term is either a :class:`Var` or a :class:`Compound` ``f(t1, ..., tn)``.
Atoms are 0-ary compounds.  Lists are sugar over pairing: ``[]`` is the
0-ary compound ``'[]'`` and ``[h|t]`` is the 2-ary compound ``'.'(h, t)``.

Two variables are equal iff their name texts are equal.  Names starting
with ``_G`` are reserved for machine-generated variables (created by
standardization-apart); user-facing parsers reject them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

GENERATED_PREFIX = "_G"

LIST_NIL = "[]"
LIST_PAIR = "."
CONJ = ","


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")

    @property
    def is_generated(self) -> bool:
        return self.name.startswith(GENERATED_PREFIX)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple["Term", ...] = ()

    def __post_init__(self):
        if not self.functor:
            raise ValueError("functor must be non-empty")
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def shape(self) -> tuple[str, int]:
        # functor *and* arity: f/1 and f/2 never compare equal
        return (self.functor, len(self.args))

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Var, Compound]

EMPTY_LIST = Compound(LIST_NIL)


def atom(name: str) -> Compound:
    return Compound(name)


def pair(head: Term, tail: Term) -> Compound:
    return Compound(LIST_PAIR, (head, tail))


def make_list(items: Iterable[Term], tail: Term = EMPTY_LIST) -> Term:
    out = tail
    for item in reversed(tuple(items)):
        out = pair(item, out)
    return out


def generated_var(index: int) -> Var:
    return Var(f"{GENERATED_PREFIX}{index}")


def vars_of(t: Term) -> list[Var]:
    """All variables of ``t`` in first-occurrence order, without duplicates.

    >>> x, y = Var("x"), Var("y")
    >>> vars_of(Compound("f", (x, Compound("g", (x, y)))))
    [Var(name='x'), Var(name='y')]
    """
    seen: dict[Var, None] = {}
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Var):
            seen.setdefault(cur, None)
        else:
            stack.extend(reversed(cur.args))
    return list(seen)


def vars_of_all(ts: Iterable[Term]) -> list[Var]:
    seen: dict[Var, None] = {}
    for t in ts:
        for v in vars_of(t):
            seen.setdefault(v, None)
    return list(seen)


def occurs_in(s: Term, t: Term) -> bool:
    """True iff ``s`` equals ``t`` or occurs inside some argument of ``t``."""
    if s == t:
        return True
    if isinstance(t, Compound):
        return any(occurs_in(s, arg) for arg in t.args)
    return False


def var_disjoint(s: Term, t: Term) -> bool:
    """True iff ``s`` and ``t`` share no variable.  Symmetric."""
    return not (set(vars_of(s)) & set(vars_of(t)))


def _list_parts(t: Compound) -> tuple[list[Term], Term]:
    items = []
    cur: Term = t
    while isinstance(cur, Compound) and cur.shape == (LIST_PAIR, 2):
        items.append(cur.args[0])
        cur = cur.args[1]
    return items, cur


def _conj_parts(t: Compound) -> list[Term]:
    parts = []
    cur: Term = t
    while isinstance(cur, Compound) and cur.shape == (CONJ, 2):
        parts.append(cur.args[0])
        cur = cur.args[1]
    parts.append(cur)
    return parts


def format_term(t: Term) -> str:
    """Render a term in the concrete syntax understood by the parser.

    List cells print in bracket sugar; conjunction cells (','/2, which
    only arise from resultants) print as a parenthesised sequence and are
    display-only.
    """
    if isinstance(t, Var):
        return t.name
    if t.shape == (LIST_PAIR, 2):
        items, tail = _list_parts(t)
        body = ",".join(format_term(i) for i in items)
        if tail == EMPTY_LIST:
            return f"[{body}]"
        return f"[{body}|{format_term(tail)}]"
    if t.shape == (CONJ, 2):
        return "(" + ", ".join(format_term(p) for p in _conj_parts(t)) + ")"
    if not t.args:
        return t.functor
    return t.functor + "(" + ",".join(format_term(a) for a in t.args) + ")"
