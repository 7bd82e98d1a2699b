"""Command-line front door.

One binary, subcommand style.  Results go to stdout, diagnostics to
stderr.  Exit codes: 0 for success (all verdicts true), 1 for a domain
failure (failed match or unification, unsafe application, false verdict),
2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PrenamingsError
from .prenaming import closure, cycle_decomposition, format_cycles, noninj, subst_variant
from .sld import derive, replayed_choices
from .syntax import (
    ParseError,
    derivation_to_json,
    derivation_to_text,
    parse_prenaming,
    parse_program,
    parse_query,
    parse_subst,
    parse_term,
)
from .unify import unify_terms
from .variance import check_variant
from . import prenaming as pren_mod


def _choices(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated clause numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prenamings",
        description="First-order renaming toolkit: prenamings, closures, "
                    "unification, resolution derivations, and variance checking.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pren", help="prenaming carrying the first term onto the second")
    p.add_argument("term1")
    p.add_argument("term2")

    p = sub.add_parser("closure", help="embed a prenaming into a renaming; prints its cycles")
    p.add_argument("subst")

    p = sub.add_parser("indom", help="show the finite complement of the injectivity domain")
    p.add_argument("subst")

    p = sub.add_parser("unify", help="most general unifier of two terms")
    p.add_argument("term1")
    p.add_argument("term2")

    p = sub.add_parser("variant-subst", help="rename a substitution by a safe prenaming")
    p.add_argument("prenaming")
    p.add_argument("subst")

    p = sub.add_parser("derive", help="run a resolution derivation and print its trace")
    p.add_argument("--program", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--choices", type=_choices, default=None,
                   help="1-based program clause positions to replay, e.g. 1,3")
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--fresh-base", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--expect-success", action="store_true",
                   help="exit 1 unless the derivation reaches the empty goal")

    p = sub.add_parser("check-variant",
                       help="replay two derivations with shared choices and certify their variance")
    p.add_argument("--program", required=True)
    p.add_argument("--query1", required=True)
    p.add_argument("--query2", required=True)
    p.add_argument("--choices", type=_choices, default=None,
                   help="clause positions replayed for both derivations; "
                        "defaults to whatever the first derivation uses")
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--fresh-base", type=int, default=0)
    p.add_argument("--fresh-base2", type=int, default=1000,
                   help="fresh-variable offset of the second derivation, keeping "
                        "its generated names apart from the first's")
    p.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _cmd_pren(args) -> int:
    result = pren_mod.pren(parse_term(args.term1), parse_term(args.term2))
    print(result)
    return 0


def _cmd_closure(args) -> int:
    rho = closure(parse_prenaming(args.subst))
    print(rho)
    print("cycles:", format_cycles(cycle_decomposition(rho)))
    return 0


def _cmd_indom(args) -> int:
    alpha = parse_prenaming(args.subst)
    print("noninj = {" + ", ".join(v.name for v in noninj(alpha)) + "}")
    return 0


def _cmd_unify(args) -> int:
    print(unify_terms(parse_term(args.term1), parse_term(args.term2)))
    return 0


def _cmd_variant_subst(args) -> int:
    alpha = parse_prenaming(args.prenaming)
    print(subst_variant(alpha, parse_subst(args.subst)))
    return 0


def _load_program(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_program(handle.read(), filename=path)


def _cmd_derive(args) -> int:
    program = _load_program(args.program)
    query = parse_query(args.query)
    derivation = derive(program, query, clause_choices=args.choices,
                        max_steps=args.max_steps, fresh_base=args.fresh_base)
    if args.format == "json":
        print(derivation_to_json(derivation))
    else:
        print(derivation_to_text(derivation), end="")
    if args.expect_success and derivation.outcome != "success":
        return 1
    return 0


def _format_certificate_text(certificate) -> str:
    lines = [f"alpha = {certificate.alpha}"]
    for i, step in enumerate(certificate.steps, start=1):
        verdicts = " ".join(f"{name}={str(value).lower()}"
                            for name, value in step.verdicts.items())
        lines.append(f"step {i}: lambda = {step.lam}")
        lines.append(f"        beta   = {step.beta}")
        lines.append(f"        verdicts: {verdicts}")
        for name, witness in step.witnesses.items():
            lines.append(f"        {name} witness: {witness}")
    cas = "n/a" if certificate.final_cas_eq is None else str(certificate.final_cas_eq).lower()
    lines.append(f"final: cas_eq = {cas}")
    lines.append("all verdicts true" if certificate.all_true else "FALSE VERDICTS PRESENT")
    return "\n".join(lines) + "\n"


def _cmd_check_variant(args) -> int:
    program = _load_program(args.program)
    query1 = parse_query(args.query1)
    query2 = parse_query(args.query2)
    first = derive(program, query1, clause_choices=args.choices,
                   max_steps=args.max_steps, fresh_base=args.fresh_base)
    choices = args.choices if args.choices is not None else replayed_choices(first)
    second = derive(program, query2, clause_choices=choices,
                    max_steps=args.max_steps, fresh_base=args.fresh_base2)
    certificate = check_variant(first, second)
    if args.format == "json":
        print(json.dumps(certificate.to_dict(), indent=2))
    else:
        print(_format_certificate_text(certificate), end="")
    return 0 if certificate.all_true else 1


_HANDLERS = {
    "pren": _cmd_pren,
    "closure": _cmd_closure,
    "indom": _cmd_indom,
    "unify": _cmd_unify,
    "variant-subst": _cmd_variant_subst,
    "derive": _cmd_derive,
    "check-variant": _cmd_check_variant,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print(exc, file=sys.stderr)
        return 2
    except PrenamingsError as exc:
        print(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
