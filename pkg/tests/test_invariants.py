from fractions import Fraction

import pytest

from gasymp.comparison import sym2_levelset_invariants
from gasymp.groebner import GroebnerCaps, Ideal
from gasymp.invariants import (DegreeSpan, EssenConfig, NoSliceError, QuotientRing,
                               algebra_equal_up_to_degree, essen_derksen, graded_kernel,
                               nullcone_equals_fixed, restriction_misses, section_sigma,
                               standard_sym1_invariants, verify_generators)
from gasymp.moments import ga_moment, sl2_moment_w
from gasymp.poly import format_poly
from gasymp.reps import GaRep, ga_derivation, parse_rep, sl2_infinitesimal

CFG = EssenConfig(caps=GroebnerCaps(max_degree=40, max_pairs=20000, max_basis=400),
                  certify_degree=4, max_rounds=8)


def _level_zero_ring(spec):
    rep = parse_rep(spec)
    table = rep.table_tv()
    return rep, QuotientRing(table, Ideal(table, [ga_moment(rep)]),
                             ga_derivation(rep, table))


def test_quotient_ring_checks_stability():
    rep = parse_rep("sym1")
    table = rep.table_tv()
    with pytest.raises(ValueError):
        QuotientRing(table, Ideal(table, [table.var("x1")]), ga_derivation(rep, table))


def test_graded_kernel_examples():
    rep = parse_rep("sym1")
    ambient = QuotientRing.ambient_tv(rep)
    deg1 = graded_kernel(ambient, 1)
    assert {format_poly(p) for p in deg1} == {"x2", "a1"}
    _, ring = _level_zero_ring("sym1")
    deg2 = graded_kernel(ring, 2)
    assert any(p == ring.table.var("x1") * ring.table.var("a1") for p in deg2)
    assert graded_kernel(ring, 0) == [ring.table.one()]


def test_graded_kernel_requires_homogeneous_data():
    rep = parse_rep("sym1")
    table = rep.table_tv()
    ring = QuotientRing(table, Ideal(table, [ga_moment(rep) - 1]), ga_derivation(rep, table))
    with pytest.raises(ValueError):
        graded_kernel(ring, 2)


def test_essen_sym1_ambient():
    report = essen_derksen(QuotientRing.ambient_tv(parse_rep("sym1")), CFG)
    assert report.termination == "Terminated"
    table = parse_rep("sym1").table_tv()
    expected = [table.var("x2"), table.var("a1"),
                table.var("x1") * table.var("a1") + table.var("x2") * table.var("a2")]
    ambient = QuotientRing.ambient_tv(parse_rep("sym1"))
    assert algebra_equal_up_to_degree(ambient, list(report.generators), expected, 6)


def test_essen_sym1_zero_level_caps():
    _, ring = _level_zero_ring("sym1")
    report = essen_derksen(ring, CFG)
    assert report.termination == "CapReached"
    assert any("zerodivisor" in note for note in report.notes)
    # mined generators include the intrinsic non-extending invariants
    table = ring.table
    span = DegreeSpan(ring, list(report.generators), 4)
    assert span.contains(table.var("x1") * table.var("a1"))
    assert span.contains(table.var("x2") * table.var("a2") ** 2)


def test_essen_sym2_zero_level_matches_table():
    rep, ring = _level_zero_ring("sym2")
    report = essen_derksen(ring, EssenConfig(caps=CFG.caps, certify_degree=6, max_rounds=8))
    assert report.termination == "Terminated"
    fs = sym2_levelset_invariants(rep)
    assert algebra_equal_up_to_degree(ring, list(report.generators), fs, 6)
    assert report.certified_degree >= 6


def test_essen_components_terminate():
    rep = parse_rep("sym1")
    table = rep.table_tv()
    d = ga_derivation(rep, table)
    for var, expected in (("x2", {"x1", "a1"}), ("a1", {"x2", "a2"})):
        ring = QuotientRing(table, Ideal(table, [table.var(var)]), d)
        report = essen_derksen(ring, CFG)
        assert report.termination == "Terminated"
        assert {format_poly(g) for g in report.generators} == expected


def test_essen_trivial_action_raises():
    rep = GaRep((0, 0))
    table = rep.table_tv()
    ring = QuotientRing(table, Ideal(table, []), ga_derivation(rep, table))
    with pytest.raises(NoSliceError):
        essen_derksen(ring, CFG)


def test_verify_generators_sym2_table():
    rep, ring = _level_zero_ring("sym2")
    verdict, certified = verify_generators(ring, sym2_levelset_invariants(rep), 4)
    assert verdict.ok
    assert certified == 4


def test_verify_generators_flags_non_invariant():
    rep, ring = _level_zero_ring("sym2")
    bad = [ring.table.var("x1")]
    verdict, certified = verify_generators(ring, bad, 2)
    assert not verdict.ok
    assert certified == 0
    assert "not invariant" in verdict.notes[0]


def test_verify_generators_flags_incomplete():
    rep, ring = _level_zero_ring("sym2")
    partial = [ring.table.var("x3")]
    verdict, certified = verify_generators(ring, partial, 2)
    assert not verdict.ok


def test_verify_generators_multi_derivation():
    # enveloping invariants on the enveloping zero level, all three derivations
    rep = parse_rep("sym1")
    table = rep.table_tw()
    ideal = Ideal(table, list(sl2_moment_w(rep)))
    ders = [sl2_infinitesimal(rep, b, include_w=True) for b in "HEF"]
    ring = QuotientRing(table, ideal, ders[1], check=False)
    from gasymp.comparison import sym1_enveloping_invariants

    verdict, certified = verify_generators(ring, sym1_enveloping_invariants(rep), 4,
                                           derivations=ders)
    assert verdict.ok and certified == 4


def test_restriction_misses():
    _, ring = _level_zero_ring("sym1")
    table = ring.table
    x1, x2 = table.var("x1"), table.var("x2")
    a1, a2 = table.var("a1"), table.var("a2")
    assert restriction_misses(ring, x1 * a1, 2)
    assert not restriction_misses(ring, x2, 1)
    assert restriction_misses(ring, x2 * a2 ** 2, 3)
    for n in range(1, 11):
        assert restriction_misses(ring, x1 ** n * a1, n + 1)
        assert restriction_misses(ring, x2 * a2 ** n, n + 1)
    with pytest.raises(ValueError):
        restriction_misses(ring, x1, 2)


def test_nullcone_equals_fixed():
    for n in (1, 2, 3):
        spec = "sym1" if n == 1 else f"sym1^{n}"
        assert nullcone_equals_fixed(parse_rep(spec)).ok
    with pytest.raises(ValueError):
        nullcone_equals_fixed(parse_rep("sym2"))


def test_standard_sym1_invariants_are_invariant():
    rep = parse_rep("sym1^2")
    ambient = QuotientRing.ambient_tv(rep)
    for g in standard_sym1_invariants(rep):
        assert ambient.is_invariant(g)


def test_section_sigma():
    sol1 = section_sigma(parse_rep("sym1"))
    assert sol1.coefficients == (Fraction(1), Fraction(0))
    assert sol1.solution_dim == 1
    sol2 = section_sigma(parse_rep("sym2"))
    assert sol2.solution_dim == 1
    d = ga_derivation(parse_rep("sym2"))
    assert d(sol2.sigma) == ga_moment(parse_rep("sym2"))
    # one free coefficient per summand
    sol11 = section_sigma(parse_rep("sym1+sym0"))
    assert sol11.solution_dim >= 1
    with pytest.raises(ValueError):
        section_sigma(GaRep((0,)))


def test_oracle_agreement_small_reps():
    for spec in ("sym1", "sym1+sym0", "sym2"):
        ring = QuotientRing.ambient_tv(parse_rep(spec))
        report = essen_derksen(ring, CFG)
        assert report.certified_degree >= 4
