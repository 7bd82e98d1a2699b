import random

import pytest

from prenamings.subst import (
    EMPTY,
    DuplicateCoreVariable,
    OverlappingCores,
    SpuriousAlias,
    Subst,
    apply,
    compose,
    format_subst,
    pointwise_equal,
    power,
    relax,
    sum_substs,
)
from prenamings.syntax import parse_subst, parse_term

from gen import UNIVERSE, iterate_var, pointwise_apply, rand_subst, rand_term

x, y = parse_term("x"), parse_term("y")


def S(text):
    return parse_subst(text)


def T(text):
    return parse_term(text)


def test_apply_aliasing_example():
    assert apply(S("(y/x)"), T("p(x,f(y))")) == T("p(x,f(x))")


def test_apply_identity():
    t = T("f(x,g(a,y))")
    assert apply(EMPTY, t) == t


def test_apply_is_simultaneous():
    # pointwise map oracle: x and y are replaced in one sweep, not in sequence
    sigma = S("(x/g(y), y/a)")
    t = T("f(x,y)")
    oracle = pointwise_apply({v: img for v, img in sigma.bindings}, t)
    assert oracle == T("f(g(y),a)")
    assert apply(sigma, t) == oracle


def test_core_and_relaxed_core():
    sigma = S("(z/y, u/z, x/x)")
    assert sigma.core() == {T("z"), T("u")}
    assert sigma.relaxed_core() == [T("z"), T("u"), T("x")]


def test_core_of_identity_empty():
    assert EMPTY.core() == set()


def test_ranges_and_vars_by_definition():
    sigma = S("(x/a, y/y, z/f(w))")
    assert sigma.active_range() == {T("a"), T("f(w)")}
    assert sigma.unrelax().vars_active() == {T("x"), T("z"), T("w")}
    assert sigma.vars_relaxed() == {T("x"), T("y"), T("z"), T("w")}


def test_unrelax():
    assert S("(z/y, u/z, x/x)").unrelax() == S("(z/y, u/z)")
    assert EMPTY.unrelax() == EMPTY
    assert S("(x/x, y/y)").unrelax() == EMPTY


def test_unrelax_preserves_behaviour():
    rng = random.Random(23)
    for _ in range(200):
        sigma = rand_subst(rng)
        t = rand_term(rng)
        assert apply(sigma.unrelax(), t) == apply(sigma, t)


def test_restrict():
    assert S("(x/a, y/b)").restrict([T("x")]) == S("(x/a)")
    assert S("(x/a, y/b)").restrict([]) == EMPTY
    sigma = S("(z/y, u/z, x/x)")
    restricted = sigma.restrict([T("u"), T("x")])
    assert restricted == S("(u/z, x/x)")
    # pointwise check on the whole universe
    for v in UNIVERSE:
        expected = sigma.lookup(v) if v in (T("u"), T("x")) else v
        assert restricted.lookup(v) == expected


def test_compose_strikeout_example():
    theta = S("(x/u, w/v, u/x, v/w)")
    sigma = S("(u/x, v/w, x/y, y/u, z/v, w/z)")
    assert compose(theta, sigma) == S("(x/y, y/x, z/w, w/z)")


def test_compose_identity_unrelaxes():
    sigma = S("(z/y, u/z, x/x)")
    assert compose(EMPTY, sigma) == sigma.unrelax()
    assert compose(sigma, EMPTY) == sigma.unrelax()


def test_compose_with_closure_example():
    rho = S("(x/y, y/x)")
    alpha_closed = S("(z/y, u/z, y/x, x/u)")
    assert compose(rho, alpha_closed) == S("(z/x, u/z, x/u)")


def test_compose_pointwise_meaning():
    rng = random.Random(29)
    for _ in range(300):
        theta, sigma = rand_subst(rng), rand_subst(rng)
        composed = compose(theta, sigma)
        t = rand_term(rng)
        assert apply(composed, t) == apply(theta, apply(sigma, t))


def test_compose_associativity():
    rng = random.Random(31)
    for _ in range(300):
        rho, theta, sigma = (rand_subst(rng) for _ in range(3))
        left = compose(compose(rho, theta), sigma)
        right = compose(rho, compose(theta, sigma))
        assert pointwise_equal(left, right)


def test_power():
    swap = S("(x/y, y/x)")
    assert power(swap, 2) == EMPTY
    sigma = S("(z/y, u/z, x/x)")
    assert power(sigma, 1) == sigma.unrelax()
    cycle = S("(x/y, y/z, z/x)")
    # iterate pointwise oracle
    for v in (T("x"), T("y"), T("z")):
        assert iterate_var(cycle, v, 3) == v
    assert power(cycle, 3) == EMPTY


def test_is_idempotent():
    assert S("(x/a)").is_idempotent()
    assert not S("(x/y, y/x)").is_idempotent()
    assert S("(x/f(y))").is_idempotent()
    assert not S("(x/f(x))").is_idempotent()


def test_sum():
    assert sum_substs(S("(A/B)"), S("(u/v, C/D)")) == S("(A/B, u/v, C/D)")
    sigma = S("(x/a, y/y)")
    assert sum_substs(sigma, EMPTY) == sigma
    with pytest.raises(OverlappingCores) as err:
        sum_substs(S("(x/a)"), S("(x/b)"))
    assert err.value.witness == T("x")


def test_backward_compatibility_of_sum():
    rng = random.Random(37)
    for _ in range(400):
        pool = list(UNIVERSE)
        rng.shuffle(pool)
        sigma = rand_subst(rng, pool=pool[:4])
        theta = rand_subst(rng, pool=pool[4:])
        joined = sum_substs(sigma, theta)
        for v in UNIVERSE:
            assert (joined.lookup(v) == sigma.lookup(v)) == (theta.lookup(v) == v)


def test_complete_for():
    assert S("(z/y, u/z, x/x)").is_complete_for(T("p(z,u,x)"))
    assert not S("(z/y, u/z)").is_complete_for(T("p(z,u,x)"))
    assert EMPTY.is_complete_for(T("a"))


def test_completeness_survives_extension():
    rng = random.Random(41)
    for _ in range(400):
        pool = list(UNIVERSE)
        rng.shuffle(pool)
        t = rand_term(rng, pool=pool[:4])
        base = rand_subst(rng, pool=pool[:4], allow_passive=False)
        claimed = set(base.relaxed_core())
        sigma = Subst(base.bindings + tuple((v, v) for v in pool[:4] if v not in claimed))
        theta = rand_subst(rng, pool=pool[4:])
        assert sigma.is_complete_for(t)
        joined = sum_substs(sigma, theta)
        assert joined.is_complete_for(t)
        assert apply(joined, t) == apply(sigma, t)


def test_relax_adds_passive_pairs():
    sigma = relax(S("(x/a)"), [T("y"), T("x"), T("y")])
    assert sigma == S("(x/a, y/y)")


def test_relax_refuses_alias_risk():
    with pytest.raises(SpuriousAlias) as err:
        relax(S("(y/x)"), [T("x")])
    assert err.value.witness == T("x")


def test_duplicate_core_rejected():
    with pytest.raises(DuplicateCoreVariable):
        Subst(((T("x"), T("a")), (T("x"), T("b"))))


def test_pointwise_vs_representation_equality():
    first = S("(x/a, y/b)")
    second = S("(y/b, x/a, z/z)")
    assert first != second
    assert pointwise_equal(first, second)


def test_format_round_trip():
    for text in ("()", "(x/a)", "(z/y, u/z, x/x)", "(x/f(g(y),a))"):
        assert format_subst(parse_subst(text)) == text
