"""Concrete syntax: parsing and printing for terms, substitutions,
programs, and derivation traces.

The term grammar is a small Prolog subset: bare lowercase atoms, compound
terms ``f(t1,...,tn)``, list sugar ``[a,b|T]``, no operators, no quoted
atoms, no numbers.  Programs are facts ``h.`` and rules ``h :- b1, ..., bn.``
with ``%`` line comments.

A token names a variable when it starts with an uppercase letter or an
underscore (the Prolog convention), or when it is one of the letters
``u``–``z`` optionally followed by digits (the convention of the algebra
examples, so ``p(z,u,x)`` and ``(z/y, u/z, x/x)`` read the way they are
written).  Everything else is an atom or functor.

Names beginning with ``_G`` belong to generated variables.  Program and
query parsing rejects them; term and substitution parsing accepts them so
that engine output can be fed back in.

All printers round-trip: ``parse(print(x)) == x``.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterator

from .errors import PrenamingsError
from .prenaming import Prenaming, format_cycles, make_prenaming
from .sld import Clause, Derivation, DerivationStep, Goal, Program, partial_answer
from .subst import Subst, format_subst
from .terms import (
    EMPTY_LIST,
    GENERATED_PREFIX,
    Compound,
    Term,
    Var,
    format_term,
    make_list,
)

_MATH_VAR = re.compile(r"[u-z][0-9]*\Z")
_TOKEN = re.compile(r"[ \t\r\n]+|%[^\n]*|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>:-|[()\[\],|/.])")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class ParseError(PrenamingsError):
    def __init__(self, span: SourceSpan, message: str):
        self.span = span
        self.message = message
        super().__init__(f"{span}: {message}")


class ReservedVariable(ParseError):
    def __init__(self, span: SourceSpan, name: str):
        self.name = name
        super().__init__(span, f"variable name {name} is reserved for generated variables")


def is_variable_name(name: str) -> bool:
    return name[0].isupper() or name[0] == "_" or bool(_MATH_VAR.fullmatch(name))


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "punct" | "eof"
    value: str
    span: SourceSpan


def _tokenize(text: str, filename: str) -> list[_Token]:
    line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def span_at(offset: int, length: int) -> SourceSpan:
        line = bisect_right(line_starts, offset)
        column = offset - line_starts[line - 1] + 1
        return SourceSpan(filename, line, column, length)

    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(span_at(pos, 1), f"unexpected character {text[pos]!r}")
        if m.lastgroup == "name":
            tokens.append(_Token("name", m.group(), span_at(pos, len(m.group()))))
        elif m.lastgroup == "punct":
            tokens.append(_Token("punct", m.group(), span_at(pos, len(m.group()))))
        pos = m.end()
    tokens.append(_Token("eof", "", span_at(len(text), 0)))
    return tokens


class _Parser:
    def __init__(self, text: str, filename: str = "<string>", allow_generated: bool = True):
        self.tokens = _tokenize(text, filename)
        self.pos = 0
        self.allow_generated = allow_generated

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.current
        self.pos += 1
        return tok

    def expect_punct(self, value: str) -> _Token:
        tok = self.current
        if tok.kind != "punct" or tok.value != value:
            raise ParseError(tok.span, f"expected {value!r}, found {tok.value or 'end of input'!r}")
        return self.advance()

    def at_punct(self, value: str) -> bool:
        return self.current.kind == "punct" and self.current.value == value

    def _variable(self, tok: _Token) -> Var:
        if tok.value.startswith(GENERATED_PREFIX) and not self.allow_generated:
            raise ReservedVariable(tok.span, tok.value)
        return Var(tok.value)

    def term(self) -> Term:
        tok = self.current
        if tok.kind == "name":
            self.advance()
            if is_variable_name(tok.value):
                return self._variable(tok)
            if self.at_punct("("):
                self.advance()
                args = [self.term()]
                while self.at_punct(","):
                    self.advance()
                    args.append(self.term())
                self.expect_punct(")")
                return Compound(tok.value, tuple(args))
            return Compound(tok.value)
        if tok.kind == "punct" and tok.value == "[":
            return self._list()
        raise ParseError(tok.span, f"expected a term, found {tok.value or 'end of input'!r}")

    def _list(self) -> Term:
        self.expect_punct("[")
        if self.at_punct("]"):
            self.advance()
            return EMPTY_LIST
        items = [self.term()]
        while self.at_punct(","):
            self.advance()
            items.append(self.term())
        tail: Term = EMPTY_LIST
        if self.at_punct("|"):
            self.advance()
            tail = self.term()
        self.expect_punct("]")
        return make_list(items, tail)

    def subst(self) -> Subst:
        self.expect_punct("(")
        bindings = []
        if not self.at_punct(")"):
            bindings.append(self._binding())
            while self.at_punct(","):
                self.advance()
                bindings.append(self._binding())
        self.expect_punct(")")
        return Subst(tuple(bindings))

    def _binding(self) -> tuple[Var, Term]:
        tok = self.current
        if tok.kind != "name" or not is_variable_name(tok.value):
            raise ParseError(tok.span, f"expected a variable, found {tok.value or 'end of input'!r}")
        self.advance()
        left = self._variable(tok)
        self.expect_punct("/")
        return left, self.term()

    def _atom(self) -> Term:
        tok = self.current
        t = self.term()
        if not isinstance(t, Compound):
            raise ParseError(tok.span, "a goal atom may not be a variable")
        return t

    def clause(self, require_dot: bool = True) -> Clause:
        head_tok = self.current
        head = self.term()
        if not isinstance(head, Compound):
            raise ParseError(head_tok.span, "a clause head may not be a variable")
        body: list[Term] = []
        if self.at_punct(":-"):
            self.advance()
            body.append(self._atom())
            while self.at_punct(","):
                self.advance()
                body.append(self._atom())
        if require_dot or self.at_punct("."):
            self.expect_punct(".")
        return Clause(head, tuple(body))

    def program(self) -> Program:
        clauses = []
        while self.current.kind != "eof":
            clauses.append(self.clause())
        return Program(tuple(clauses))

    def goal(self) -> Goal:
        if self.current.kind == "eof":
            return Goal(())
        atoms = [self._atom()]
        while self.at_punct(","):
            self.advance()
            atoms.append(self._atom())
        if self.at_punct("."):
            self.advance()
        return Goal(tuple(atoms))

    def finish(self) -> None:
        tok = self.current
        if tok.kind != "eof":
            raise ParseError(tok.span, f"unexpected trailing input {tok.value!r}")


def parse_term(text: str, filename: str = "<string>") -> Term:
    parser = _Parser(text, filename)
    t = parser.term()
    parser.finish()
    return t


def parse_subst(text: str, filename: str = "<string>") -> Subst:
    parser = _Parser(text, filename)
    s = parser.subst()
    parser.finish()
    return s


def parse_prenaming(text: str, filename: str = "<string>") -> Prenaming:
    return make_prenaming(parse_subst(text, filename))


def parse_clause(text: str, filename: str = "<string>",
                 allow_generated: bool = True) -> Clause:
    parser = _Parser(text, filename, allow_generated=allow_generated)
    c = parser.clause(require_dot=False)
    parser.finish()
    return c


def parse_program(text: str, filename: str = "<string>") -> Program:
    parser = _Parser(text, filename, allow_generated=False)
    p = parser.program()
    parser.finish()
    return p


def parse_query(text: str, filename: str = "<string>") -> Goal:
    parser = _Parser(text, filename, allow_generated=False)
    g = parser.goal()
    parser.finish()
    return g


def format_goal(goal: Goal) -> str:
    return str(goal)


def format_clause(clause: Clause) -> str:
    return str(clause)


def format_program(program: Program) -> str:
    return "".join(f"{c}.\n" for c in program.clauses)


# -- derivation traces --------------------------------------------------

def derivation_to_dict(derivation: Derivation) -> dict:
    steps = []
    for i, step in enumerate(derivation.steps, start=1):
        steps.append({
            "goal": [format_term(a) for a in step.goal_before.atoms],
            "selected_index": step.selected_index,
            "clause_index": step.clause_index,
            "input_clause": format_clause(step.input_clause),
            "mgu": format_subst(step.mgu),
            "partial_answer": format_subst(partial_answer(derivation, i)),
            "goal_after": [format_term(a) for a in step.goal_after.atoms],
        })
    return {
        "query": [format_term(a) for a in derivation.query.atoms],
        "fresh_counter": derivation.fresh_counter,
        "outcome": derivation.outcome,
        "steps": steps,
    }


def derivation_from_dict(data: dict) -> Derivation:
    def goal_of(atoms: list[str]) -> Goal:
        return Goal(tuple(parse_term(a) for a in atoms))

    steps = []
    for raw in data["steps"]:
        steps.append(DerivationStep(
            goal_before=goal_of(raw["goal"]),
            selected_index=raw["selected_index"],
            input_clause=parse_clause(raw["input_clause"]),
            mgu=parse_subst(raw["mgu"]),
            goal_after=goal_of(raw["goal_after"]),
            clause_index=raw.get("clause_index"),
        ))
    return Derivation(
        query=goal_of(data["query"]),
        steps=tuple(steps),
        fresh_counter=data["fresh_counter"],
        outcome=data["outcome"],
    )


def derivation_to_json(derivation: Derivation) -> str:
    return json.dumps(derivation_to_dict(derivation), indent=2)


def derivation_from_json(text: str) -> Derivation:
    return derivation_from_dict(json.loads(text))


def derivation_to_text(derivation: Derivation) -> str:
    """Arrow-notation rendering: each resolution step prints as an arrow
    annotated with the input clause actually used and its unifier."""
    lines = [format_goal(derivation.query)]
    for step in derivation.steps:
        lines.append(f"  →{{ {format_clause(step.input_clause)} : {format_subst(step.mgu)} }}")
        lines.append(format_goal(step.goal_after))
    lines.append(f"% outcome: {derivation.outcome}")
    return "\n".join(lines) + "\n"


__all__ = [
    "SourceSpan", "ParseError", "ReservedVariable",
    "is_variable_name",
    "parse_term", "parse_subst", "parse_prenaming",
    "parse_clause", "parse_program", "parse_query",
    "format_goal", "format_clause", "format_program",
    "format_term", "format_subst", "format_cycles",
    "derivation_to_dict", "derivation_from_dict",
    "derivation_to_json", "derivation_from_json",
    "derivation_to_text",
]
