import pytest

from gasymp.groebner import (GroebnerCaps, Ideal, NotCompleted, exact_divide,
                             lift_membership, reduce_full)
from gasymp.poly import BLOCK_X, GREVLEX, LEX, VariableTable, format_poly
from gasymp.properties import groebner_selfchecks


def _table(*names):
    return VariableTable(tuple(names), (BLOCK_X,) * len(names))


def test_two_way_reduction_certifies_basis():
    # grevlex with x the larger variable
    t = _table("y", "x")
    x, y = t.var("x"), t.var("y")
    gens = [x ** 2 - y, y ** 2 - x]
    ideal = Ideal(t, gens)
    basis = ideal.groebner()
    # every input generator reduces to zero against the output
    for g in gens:
        assert reduce_full(g, list(basis), GREVLEX).is_zero()
    # every output element is certified a member of the input ideal
    for g in basis:
        cof = lift_membership(g, gens)
        assert cof is not None
        total = t.zero()
        for c, gen in zip(cof, gens):
            total = total + c * gen
        assert total == g
    # the lex basis eliminates x and exposes the univariate relation
    lex_basis = ideal.groebner(LEX)
    assert any(g == y ** 4 - y for g in lex_basis)
    assert ideal.member(y ** 4 - y)


def test_zero_ideal():
    t = _table("x")
    assert Ideal(t, []).groebner() == ()
    assert Ideal(t, [t.zero()]).groebner() == ()


def test_membership_examples():
    t = _table("x", "y")
    x, y = t.var("x"), t.var("y")
    assert Ideal(t, [x]).member(x ** 2 * y)
    assert not Ideal(t, [x ** 2, y ** 2]).member(x + y)


def test_colon_and_saturate():
    t = _table("x", "y")
    x, y = t.var("x"), t.var("y")
    assert Ideal(t, [x * y]).colon(x).same_ideal(Ideal(t, [y]))
    colon = Ideal(t, [x ** 2 * y, x * y ** 2]).colon(x * y)
    assert colon.same_ideal(Ideal(t, [x, y]))
    sat = Ideal(t, [x ** 2 * y]).saturate(x)
    assert sat.same_ideal(Ideal(t, [y]))
    # idempotent
    assert sat.saturate(x).same_ideal(sat)
    with pytest.raises(ValueError):
        Ideal(t, [x]).colon(t.zero())


def test_colon_property_randomized():
    import random

    from gasymp.properties import _random_poly

    rng = random.Random(3)
    t = _table("x", "y")
    for _ in range(50):
        gens = [_random_poly(rng, t, max_degree=2, max_terms=2, coeff_bound=2)
                for _ in range(2)]
        f = _random_poly(rng, t, max_degree=1, max_terms=1, coeff_bound=2)
        if f.is_zero():
            continue
        ideal = Ideal(t, gens)
        colon = ideal.colon(f)
        for g in colon.gens:
            assert ideal.member(g * f)


def test_eliminate():
    t = VariableTable(("x", "y", "t"), (BLOCK_X, BLOCK_X, "aux"))
    x, y, tt = t.var("x"), t.var("y"), t.var("t")
    parent = Ideal(t, [x - tt, y - tt ** 2])
    out = parent.eliminate(["x", "y"])
    sub = out.table
    assert out.same_ideal(Ideal(sub, [sub.var("y") - sub.var("x") ** 2]))
    # every output element is a member of the input ideal and t-free
    for g in out.gens:
        assert parent.member(sub.lift(g, t))
    # keep everything: the ideal comes back unchanged
    keep_all = Ideal(t, [x]).eliminate(["x", "y", "t"])
    assert keep_all.member(keep_all.table.var("x"))


def test_image_of_component_embedding():
    # graph of the map (x2, 0, x2*a2, -x2*a2^2, 0, x2*a2); eliminating the
    # source variables leaves the image ideal, satisfied by the components
    src = ("x2", "a2")
    tags = tuple(f"h{i}" for i in range(1, 7))
    table = VariableTable(src + tags, (BLOCK_X,) * 2 + ("aux",) * 6)
    x2, a2 = table.var("x2"), table.var("a2")
    comps = [x2, table.zero(), x2 * a2, -x2 * a2 ** 2, table.zero(), x2 * a2]
    graph = [table.var(tag) - c for tag, c in zip(tags, comps)]
    image = Ideal(table, graph).eliminate(tags)
    assert image.gens  # the image is a proper subvariety
    sub = image.table
    for g in image.gens:
        expanded = sub.lift(g, table).substitute(dict(zip(tags, comps)))
        assert expanded.is_zero()


def test_dimension():
    t = _table("x", "y")
    x = t.var("x")
    assert Ideal(t, [x]).dimension() == 1
    assert Ideal(t, []).dimension() == 2
    assert Ideal(t, [t.one()]).dimension() == -1
    t6 = _table("x1", "x2", "x3", "a1", "a2", "a3")
    sing = Ideal(t6, [t6.var(n) for n in ("x2", "x3", "a1", "a2")])
    assert sing.dimension() == 2


def test_radical_membership():
    t = _table("x", "y")
    x, y = t.var("x"), t.var("y")
    ideal = Ideal(t, [x ** 2])
    assert ideal.radical_member(x)
    assert not ideal.radical_member(y)


def test_exact_divide():
    t = _table("x", "y")
    x, y = t.var("x"), t.var("y")
    assert exact_divide(x ** 2 * y + x * y ** 2, x * y) == x + y
    assert exact_divide(x ** 2 + y, x) is None


def test_caps_raise_not_completed():
    t = _table("x", "y", "z")
    x, y, z = t.var("x"), t.var("y"), t.var("z")
    gens = [x * y - z ** 2, x * z - y ** 2]
    with pytest.raises(NotCompleted):
        Ideal(t, gens).groebner(caps=GroebnerCaps(max_degree=40, max_pairs=0))
    with pytest.raises(NotCompleted):
        Ideal(t, gens).groebner(caps=GroebnerCaps(max_degree=2, max_pairs=100))


def test_randomized_selfchecks():
    assert groebner_selfchecks(1000) == 0


def test_deterministic_output():
    t = _table("x", "y", "z")
    x, y, z = t.var("x"), t.var("y"), t.var("z")
    gens = [x * y - z ** 2, y ** 2 - x * z, x ** 2 - y * z]
    a = [format_poly(g) for g in Ideal(t, gens).groebner()]
    b = [format_poly(g) for g in Ideal(t, gens).groebner()]
    c = [format_poly(g) for g in Ideal(t, list(reversed(gens))).groebner()]
    assert a == b == c
