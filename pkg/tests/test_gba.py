"""Generalized/idealized Boolean algebras and the finite Stone functors."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trunclab.errors import StructureError
from trunclab.gba import (BooleanAlgebra, GeneralizedBooleanAlgebra,
                          IdealizedBooleanAlgebra, Primed, clopen,
                          find_gba_isomorphism, find_iba_isomorphism,
                          gba_diff, gba_validate, iba_forget, idealize, stone)
from trunclab.sampling import closed_set_family
from trunclab.spaces import PointedBooleanSpace, pointed_bijection, space


def powerset_gba(*labels):
    fam = closed_set_family(random.Random(0), [], seeds=0) | {frozenset(labels)}
    # close the singleton-generated family by hand: full powerset
    import itertools
    fam = [frozenset(c) for r in range(len(labels) + 1)
           for c in itertools.combinations(labels, r)]
    return GeneralizedBooleanAlgebra.from_sets(fam)


def test_powerset_family_is_valid():
    alg = powerset_gba("1", "2")
    assert gba_validate(alg).ok


def test_broken_diff_table_reports_witness():
    alg = powerset_gba("1", "2")
    assert alg.validate().ok
    bad_diff = dict(alg.diff_table)
    a, b = frozenset({"1", "2"}), frozenset({"1"})
    bad_diff[(a, b)] = a
    broken = GeneralizedBooleanAlgebra(alg.carrier, alg.join, alg.meet,
                                       alg.bottom, bad_diff)
    report = broken.validate()
    assert not report.ok
    assert any(v.law == "diff equations fail" and v.witness[:2] == (a, b)
               for v in report.violations)


def test_three_chain_has_no_relative_complements():
    labels = ["b", "m", "t"]
    leq = {(x, x) for x in labels} | {("b", "m"), ("b", "t"), ("m", "t")}
    chain = GeneralizedBooleanAlgebra.from_order(labels, leq)
    report = chain.validate()
    assert not report.ok
    assert any(v.law == "relative complement missing" and v.witness == ("t", "m")
               for v in report.violations)


def test_diff_examples():
    alg = powerset_gba("1", "2")
    full, one, two, none = (frozenset({"1", "2"}), frozenset({"1"}),
                            frozenset({"2"}), frozenset())
    assert gba_diff(alg, full, two) == one
    for a in alg.carrier:
        assert gba_diff(alg, a, none) == a
    assert gba_diff(alg, one, full) == none


def test_idealize_powerset2():
    alg = powerset_gba("1", "2")
    bi = idealize(alg)
    assert len(bi) == 8
    assert bi.validate().ok
    one, two = frozenset({"1"}), frozenset({"2"})
    # a1 v a2' = (a2 \ a1)'
    assert bi.algebra.join[(one, Primed(two))] == Primed(two - one)
    assert bi.algebra.join[(one, Primed(two))] == Primed(two)


def test_idealize_trivial_gba():
    alg = GeneralizedBooleanAlgebra.from_sets([frozenset()])
    bi = idealize(alg)
    assert len(bi) == 2
    assert bi.validate().ok
    assert bi.algebra.top == Primed(frozenset())


def test_idealize_powerset3_boolean_axioms_exhaustive():
    bi = idealize(powerset_gba("1", "2", "3"))
    assert len(bi) == 16
    assert bi.validate().ok


def test_forget_idealize_is_identity_on_labels():
    alg = powerset_gba("1", "2")
    back = iba_forget(idealize(alg))
    assert back.carrier == alg.carrier
    assert back.validate().ok
    for a in alg.carrier:
        for b in alg.carrier:
            assert back.join[(a, b)] == alg.join[(a, b)]
            assert back.meet[(a, b)] == alg.meet[(a, b)]
            assert back.diff_table[(a, b)] == alg.diff_table[(a, b)]


def test_forget_trivial_ideal():
    ba = BooleanAlgebra.powerset(["p"])
    bi = IdealizedBooleanAlgebra(ba, frozenset([frozenset()]))
    back = iba_forget(bi)
    assert back.carrier == frozenset([frozenset()])
    assert back.validate().ok


def test_forget_powerset3_subsets_of_pq():
    ba = BooleanAlgebra.powerset(["p", "q", "r"])
    ideal = frozenset(s for s in ba.carrier if "r" not in s)
    back = iba_forget(IdealizedBooleanAlgebra(ba, ideal))
    assert find_gba_isomorphism(back, powerset_gba("p", "q")) is not None


def test_stone_powerset3():
    ba = BooleanAlgebra.powerset(["p", "q", "r"])
    ideal = frozenset(s for s in ba.carrier if "r" not in s)
    x = stone(IdealizedBooleanAlgebra(ba, ideal))
    assert len(x.points) == 3
    assert x.star == frozenset({"r"})


def test_stone_two_element_algebra():
    ba = BooleanAlgebra.powerset(["p"])
    x = stone(IdealizedBooleanAlgebra(ba, frozenset([frozenset()])))
    assert len(x.points) == 1
    assert x.star == frozenset({"p"})


def test_stone_of_idealized_powerset2():
    bi = idealize(powerset_gba("1", "2"))
    x = stone(bi)
    assert len(x.points) == 3
    # the star is the atom adjoined by idealization
    assert x.star == Primed(frozenset({"1", "2"}))


def test_stone_rejects_nonmaximal_ideal():
    ba = BooleanAlgebra.powerset(["p", "q"])
    with pytest.raises(StructureError):
        stone(IdealizedBooleanAlgebra(ba, frozenset([frozenset()])))


def test_clopen_examples():
    x = space("1", "2")
    bi = clopen(x)
    assert len(bi) == 8
    assert bi.ideal == frozenset({frozenset(), frozenset({"1"}),
                                  frozenset({"2"}), frozenset({"1", "2"})})
    single = space()
    bi1 = clopen(single)
    assert len(bi1) == 2
    assert bi1.ideal == frozenset({frozenset()})


def test_stone_clopen_round_trip():
    for n in range(4):
        x = space(*(str(i) for i in range(n)))
        back = stone(clopen(x))
        assert pointed_bijection(x, back) is not None
        assert back.star == frozenset({x.star})


def test_ideal_maximality_validation():
    ba = BooleanAlgebra.powerset(["p", "q"])
    not_maximal = IdealizedBooleanAlgebra(ba, frozenset([frozenset()]))
    report = not_maximal.validate()
    assert any(v.law == "ideal not maximal" for v in report.violations)


def test_iba_isomorphism_search():
    bi = idealize(powerset_gba("1", "2"))
    bj = clopen(space("a", "b"))
    assert find_iba_isomorphism(bi, bj) is not None
    assert find_iba_isomorphism(bi, clopen(space("a"))) is None


@settings(max_examples=30, deadline=None, derandomize=True)
@given(st.integers(0, 1000))
def test_random_closed_families_validate(seed):
    rng = random.Random(seed)
    fam = closed_set_family(rng, ["a", "b", "c"])
    alg = GeneralizedBooleanAlgebra.from_sets(fam)
    report = alg.validate()
    assert report.ok
    for a in fam:
        for b in fam:
            c = alg.diff_table[(a, b)]
            assert c | b == a | b and not (c & b)


def test_space_requires_star():
    with pytest.raises(StructureError):
        PointedBooleanSpace(frozenset({"1"}), "2")
