import json

import pytest

from prenamings.cli import main

from conftest import DATA

FAMILY = str(DATA / "family.pl")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pren_success(capsys):
    code, out, _ = run(capsys, "pren", "p(z,u,x)", "p(y,z,x)")
    assert code == 0
    assert out == "(z/y, u/z, x/x)\n"


def test_pren_identity_gives_epsoid(capsys):
    code, out, _ = run(capsys, "pren", "p(x,y)", "p(x,y)")
    assert code == 0
    assert out == "(x/x, y/y)\n"
    code, out, _ = run(capsys, "pren", "t", "t")
    assert code == 0
    assert out == "()\n"


def test_pren_alias_failure(capsys):
    code, out, _ = run(capsys, "pren", "p(z,u,x)", "p(y,y,x)")
    assert code == 1
    assert out == "failure: alias (u=y conflicts z/y)\n"


def test_pren_clash_and_instance(capsys):
    code, out, _ = run(capsys, "pren", "f(x)", "g(x)")
    assert code == 1 and out.startswith("failure: clash")
    code, out, _ = run(capsys, "pren", "x", "f(y)")
    assert code == 1 and out.startswith("failure: instance")


def test_closure_prints_cycles(capsys):
    code, out, _ = run(capsys, "closure", "(z/y, u/z)")
    assert code == 0
    assert out == "(z/y, u/z, y/u)\ncycles: {(z,y,u)}\n"


def test_indom(capsys):
    code, out, _ = run(capsys, "indom", "(z/y, u/z, y/x)")
    assert code == 0
    assert out == "noninj = {x}\n"


def test_unify(capsys):
    code, out, _ = run(capsys, "unify", "p(x)", "p(y)")
    assert code == 0
    assert out == "(x/y)\n"


def test_unify_failure(capsys):
    code, out, _ = run(capsys, "unify", "x", "f(x)")
    assert code == 1
    assert out.startswith("failure: occurs_check")


def test_variant_subst(capsys):
    code, out, _ = run(capsys, "variant-subst", "(A/B, u/v, C/D)", "(u/A)")
    assert code == 0
    assert out == "(v/B)\n"


def test_variant_subst_unsafe(capsys):
    code, out, _ = run(capsys, "variant-subst", "(y/x)", "(x/a, y/b)")
    assert code == 1
    assert "unsafe" in out


def test_derive_text_matches_golden(capsys):
    code, out, _ = run(capsys, "derive", "--program", FAMILY,
                       "--query", "son(A)", "--choices", "1,3")
    assert code == 0
    assert out == (DATA / "family_trace.txt").read_text()


def test_derive_json(capsys):
    code, out, _ = run(capsys, "derive", "--program", FAMILY,
                       "--query", "son(A)", "--choices", "1,3",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["outcome"] == "choices_exhausted"
    assert len(data["steps"]) == 2


def test_derive_expect_success(capsys):
    code, _, _ = run(capsys, "derive", "--program", FAMILY,
                     "--query", "son(A)", "--choices", "1,3",
                     "--expect-success")
    assert code == 1
    code, _, _ = run(capsys, "derive", "--program", FAMILY,
                     "--query", "son(A)", "--choices", "1,3,4",
                     "--expect-success")
    assert code == 0


def test_derive_missing_file(capsys):
    code, _, err = run(capsys, "derive", "--program", "no/such/file.pl",
                       "--query", "son(A)")
    assert code == 2
    assert err


def test_derive_query_parse_error(capsys):
    code, _, err = run(capsys, "derive", "--program", FAMILY, "--query", "son(")
    assert code == 2
    assert "expected" in err


def test_derive_reserved_query_variable(capsys):
    code, _, err = run(capsys, "derive", "--program", FAMILY, "--query", "son(_G0)")
    assert code == 2
    assert "reserved" in err


def test_check_variant_all_true(capsys):
    code, out, _ = run(capsys, "check-variant", "--program", FAMILY,
                       "--query1", "son(A)", "--query2", "son(B)",
                       "--choices", "1,3")
    assert code == 0
    assert out.splitlines()[0] == "alpha = (A/B)"
    assert out.splitlines()[-1] == "all verdicts true"


def test_check_variant_json_golden(capsys):
    code, out, _ = run(capsys, "check-variant", "--program", FAMILY,
                       "--query1", "son(A)", "--query2", "son(B)",
                       "--choices", "1,3", "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads((DATA / "family_certificate.json").read_text())


def test_check_variant_defaults_to_first_derivations_choices(capsys):
    code, out, _ = run(capsys, "check-variant", "--program", FAMILY,
                       "--query1", "male(x)", "--query2", "male(y)")
    assert code == 0
    assert "all verdicts true" in out


def test_check_variant_not_similar(capsys):
    code, out, _ = run(capsys, "check-variant", "--program", FAMILY,
                       "--query1", "son(A)", "--query2", "son(c)",
                       "--choices", "1,3")
    assert code == 1
    assert "not similar" in out


def test_identical_queries_give_epsoid_alpha(capsys):
    code, out, _ = run(capsys, "check-variant", "--program", FAMILY,
                       "--query1", "son(A)", "--query2", "son(A)",
                       "--choices", "1,3")
    assert code == 0
    assert out.splitlines()[0] == "alpha = (A/A)"


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["derive", "--query", "son(A)"])  # missing --program
    assert err.value.code == 2
