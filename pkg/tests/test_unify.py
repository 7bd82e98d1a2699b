import random

import pytest

from prenamings.prenaming import subst_variant
from prenamings.subst import apply, compose, pointwise_equal
from prenamings.syntax import parse_subst, parse_term
from prenamings.unify import (
    Equation,
    UnifyFailure,
    _orient_by_name,
    _solve,
    unify,
    unify_terms,
)

from gen import (
    CONSTANTS,
    ground_assignments,
    rand_renaming,
    rename_equations,
    solvable_equations,
)


def T(text):
    return parse_term(text)


def eq(left, right):
    return Equation(T(left), T(right))


def test_var_var_orientation_binds_left():
    assert unify([eq("p(x)", "p(y)")]) == parse_subst("(x/y)")


def test_identical_terms_unify_to_identity():
    assert unify([eq("f(x,g(a,y))", "f(x,g(a,y))")]).bindings == ()


def test_var_against_structure():
    assert unify([eq("nat(X)", "nat(s(B))")]) == parse_subst("(X/s(B))")


def test_occurs_check():
    with pytest.raises(UnifyFailure) as err:
        unify([eq("x", "f(x)")])
    assert err.value.kind == "occurs_check"


def test_clash():
    with pytest.raises(UnifyFailure) as err:
        unify([eq("f(x)", "g(x)")])
    assert err.value.kind == "clash"
    with pytest.raises(UnifyFailure) as err:
        unify([eq("f(x)", "f(x,y)")])
    assert err.value.kind == "clash"


def test_unify_terms_delegates():
    assert unify_terms(T("p(x)"), T("p(y)")) == unify([eq("p(x)", "p(y)")])
    with pytest.raises(UnifyFailure):
        unify_terms(T("x"), T("f(x)"))


def test_chained_variables():
    theta = unify([eq("p(x,y)", "p(y,a)")])
    assert apply(theta, T("p(x,y)")) == apply(theta, T("p(y,a)")) == T("p(a,a)")


def test_binding_order_follows_first_appearance():
    theta = unify([eq("p(z,u,x)", "p(a,b,c)")])
    assert [v.name for v, _ in theta.bindings] == ["z", "u", "x"]


def test_deterministic():
    eqs = [eq("k(x,y,z)", "k(y,f(z),g(a,b))")]
    assert unify(eqs) == unify(eqs)


def test_soundness_idempotence_relevance():
    from prenamings.terms import vars_of

    rng = random.Random(109)
    for _ in range(300):
        eqs = solvable_equations(rng)
        theta = unify(eqs)
        for e in eqs:
            assert apply(theta, e.left) == apply(theta, e.right)
        assert pointwise_equal(compose(theta, theta), theta)
        input_vars = set()
        for e in eqs:
            input_vars |= set(vars_of(e.left)) | set(vars_of(e.right))
        assert theta.vars_relaxed() <= input_vars


def test_renaming_compatibility():
    rng = random.Random(113)
    for _ in range(300):
        eqs = solvable_equations(rng)
        rho = rand_renaming(rng)
        theta = unify(eqs)
        renamed_theta = unify(rename_equations(rho, eqs))
        assert pointwise_equal(renamed_theta, subst_variant(rho, theta))


def test_renaming_compatibility_preserves_failure_kind():
    rng = random.Random(127)
    cases = [
        [eq("f(x)", "g(x)")],
        [eq("x", "f(x)")],
        [eq("p(x,b)", "p(a,y)"), eq("x", "f(y,x)")],
        [eq("h(x)", "h(g(x,x))")],
    ]
    for eqs in cases:
        with pytest.raises(UnifyFailure) as plain:
            unify(eqs)
        for _ in range(20):
            rho = rand_renaming(rng)
            with pytest.raises(UnifyFailure) as renamed:
                unify(rename_equations(rho, eqs))
            assert renamed.value.kind == plain.value.kind


def test_name_ordered_orientation_breaks_renaming_compatibility():
    # the same solver with a name-based variable orientation is still a
    # correct unifier, but renaming the problem changes which variable
    # gets bound, so compatibility fails
    eqs = [eq("p(x)", "p(y)")]
    named = _solve(eqs, _orient_by_name)
    assert named == parse_subst("(x/y)")
    renamed = [eq("p(z)", "p(y)")]  # rename x to z
    named_renamed = _solve(renamed, _orient_by_name)
    assert named_renamed == parse_subst("(y/z)")
    rho = parse_subst("(x/z, z/x)")
    from prenamings.prenaming import make_prenaming
    expected = subst_variant(make_prenaming(rho), named)
    assert not pointwise_equal(named_renamed, expected)


def test_most_general_by_ground_enumeration():
    # flat equations over two constants: every ground unifier must be an
    # instance of the computed one, i.e. composing with it changes nothing
    from prenamings.terms import vars_of

    cases = [
        [eq("p(x,y,a)", "p(y,x,x)")],
        [eq("p(x,y)", "p(y,x)")],
        [eq("q(x,b)", "q(a,y)")],
        [eq("r(x,y,z)", "r(y,z,x)")],
        [eq("p(x,a)", "p(x,a)")],
    ]
    for eqs in cases:
        theta = unify(eqs)
        variables = []
        for e in eqs:
            for v in vars_of(e.left) + vars_of(e.right):
                if v not in variables:
                    variables.append(v)
        found_unifier = False
        for gamma in ground_assignments(variables, CONSTANTS[:2]):
            if all(apply(gamma, e.left) == apply(gamma, e.right) for e in eqs):
                found_unifier = True
                assert pointwise_equal(compose(gamma, theta), gamma)
        assert found_unifier
