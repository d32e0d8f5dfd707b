"""Trunc calculus on simple elements: ops, sequences, quotients, suprema."""

from fractions import Fraction as F

import pytest

from trunclab.elements import (GoodSequence, SimpleElement, SimpleTrunc,
                               apply_op, bound_witness,
                               bounded_away_from_zero, clearance,
                               clearance_decomposition, clearance_step,
                               dini_check, element_from_good,
                               good_from_element, is_unital_component, lc,
                               normal_form, normal_form_reconstruct,
                               pointwise_sup, restriction_hom,
                               truncation_sequence,
                               truncation_sequence_check, uc, yosida_quotient)
from trunclab.errors import (PositivityError, SpaceMismatchError,
                             StructureError)
from trunclab.spaces import space

X3 = space("1", "2", "3")


def el(a, b, c):
    return SimpleElement(X3, {"1": F(a), "2": F(b), "3": F(c)})


def test_truncate_example():
    assert el(2, F(1, 2), 0).truncate() == el(1, F(1, 2), 0)


def test_tminus_example():
    assert el(2, F(1, 2), 0).tminus(1) == el(1, 0, 0)
    g = el(5, 2, F(1, 3))
    assert g.tminus(0) is g


def test_truncN_example():
    assert el(5, 2, F(1, 3)).trunc_at(2) == el(2, 2, F(1, 3))


def test_apply_op_dispatch():
    g = el(1, 2, 3)
    assert apply_op("add", [g, g]) == g.scale(2)
    assert apply_op("negate", [g]) == -g
    assert apply_op("scale", [g], param=F(1, 2)) == el(F(1, 2), 1, F(3, 2))
    assert apply_op("meet", [g, el(2, 1, 1)]) == el(1, 1, 1)
    assert apply_op("join", [g, el(2, 1, 1)]) == el(2, 2, 3)


def test_space_mismatch_and_positivity_errors():
    other = space("1", "2")
    with pytest.raises(SpaceMismatchError):
        el(1, 1, 1) + SimpleElement(other, {"1": 1})
    with pytest.raises(PositivityError):
        el(-1, 0, 0).truncate()
    with pytest.raises(PositivityError):
        el(1, 1, 1).tminus(-1)


def test_member_with_witness():
    family = [frozenset(), frozenset({"1", "2"}), frozenset({"3"}),
              frozenset({"1", "2", "3"})]
    trunc = SimpleTrunc(X3, family)
    full = lc(X3)
    ok, _ = full.member(el(1, F(1, 2), 7))
    assert ok
    ok, witness = trunc.member(el(3, 3, F(1, 2)))
    assert ok
    ok, witness = trunc.member(el(1, 0, 0))
    assert not ok and witness == frozenset({"1"})


def test_unital_components():
    assert is_unital_component(el(1, 1, 0))
    assert not is_unital_component(el(1, F(1, 2), 0))
    assert is_unital_component(el(0, 0, 0))


def test_uc_gives_component_algebra():
    family = [frozenset(), frozenset({"1", "2"}), frozenset({"3"}),
              frozenset({"1", "2", "3"})]
    trunc = SimpleTrunc(X3, family)
    alg = uc(trunc)
    assert alg.carrier == frozenset(family)
    full = uc(lc(X3))
    assert len(full) == 8
    # characteristic elements of the algebra are exactly the unital members
    for comp in alg.carrier:
        u = SimpleElement.chi(X3, comp)
        assert is_unital_component(u) and trunc.member(u)[0]


def test_lc_requires_closure():
    with pytest.raises(StructureError):
        lc(X3, [frozenset(), frozenset({"1"}), frozenset({"2"})])
    assert len(lc(space()).components) == 1


def test_normal_form_examples():
    assert normal_form(el(3, 3, F(1, 2))) == [
        (F(3), frozenset({"1", "2"})), (F(1, 2), frozenset({"3"}))]
    assert normal_form(el(0, 0, 0)) == []
    assert normal_form(el(1, 1, 1)) == [(F(1), frozenset({"1", "2", "3"}))]
    g = el(-2, F(1, 3), -2)
    assert normal_form_reconstruct(X3, normal_form(g)) == g


def test_clearance_examples():
    assert clearance(el(3, 3, F(1, 2))) == F(1, 2)
    assert clearance(el(0, 0, 0)) == 0
    assert clearance(el(1, 1, 0)) == 1
    with pytest.raises(PositivityError):
        clearance(el(-1, 0, 0))


def test_clearance_step_examples():
    g1, u, delta = clearance_step(el(1, 1, F(1, 2)))
    assert (g1, u, delta) == (el(1, 1, 0), el(0, 0, 1), F(1, 2))
    g1, u, delta = clearance_step(el(1, 1, 0))
    assert g1.is_zero() and u == el(1, 1, 0) and delta == 1
    g1, u, delta = clearance_step(el(1, F(1, 2), F(1, 4)))
    assert g1 == el(1, F(1, 2), 0) and u == el(0, 0, 1) and delta == F(1, 4)
    assert clearance(g1) == F(1, 2) > delta
    with pytest.raises(PositivityError):
        clearance_step(el(0, 0, 0))
    with pytest.raises(StructureError):
        clearance_step(el(2, 0, 0))


def test_clearance_decomposition_matches_normal_form():
    g = el(1, F(1, 2), F(1, 4))
    pairs = clearance_decomposition(g)
    assert sorted(pairs) == sorted(normal_form(g))


def test_good_from_element_example():
    g = el(5, 2, F(1, 3))
    gs = good_from_element(g, 5)
    assert [t for t in gs.terms] == [el(1, 1, F(1, 3)), el(1, 1, 0),
                                     el(1, 0, 0), el(1, 0, 0), el(1, 0, 0)]
    assert len(good_from_element(el(0, 0, 0))) == 0
    assert good_from_element(el(1, 0, 0)).terms == (el(1, 0, 0),)
    with pytest.raises(StructureError):
        good_from_element(g, 3)


def test_element_from_good_examples():
    gs = GoodSequence.of([el(1, 1, F(1, 3)), el(1, 1, 0), el(1, 0, 0),
                          el(1, 0, 0), el(1, 0, 0)])
    assert element_from_good(gs) == el(5, 2, F(1, 3))
    assert element_from_good(GoodSequence.of([el(1, 1, 0), el(1, 0, 0)])) == \
        el(2, 1, 0)
    assert element_from_good(GoodSequence.of([]), space=X3) == el(0, 0, 0)
    with pytest.raises(StructureError):
        element_from_good(GoodSequence.of([]))
    with pytest.raises(StructureError):
        element_from_good([el(1, 0, 0), el(1, 1, 0)])  # increasing terms


def test_good_sequence_rejects_with_index():
    with pytest.raises(StructureError, match="index 1"):
        GoodSequence.of([el(F(1, 2), 0, 0), el(F(1, 4), 0, 0)])


def test_truncation_sequence_check_examples():
    seq = [el(1, 1, F(1, 3)), el(2, 2, F(1, 3)), el(3, 2, F(1, 3)),
           el(4, 2, F(1, 3)), el(5, 2, F(1, 3))]
    ok, g = truncation_sequence_check(seq)
    assert ok and g == el(5, 2, F(1, 3))
    ok, g = truncation_sequence_check([el(1, 0, 0), el(1, 0, 0)])
    assert ok and g == el(1, 0, 0)
    ok, idx = truncation_sequence_check([el(1, 1, 0), el(2, 2, 0), el(2, 1, 0)])
    assert not ok and idx == 2
    # an unstable tail is rejected at the last index
    ok, idx = truncation_sequence_check([el(1, 1, 0), el(2, 2, 0)])
    assert ok  # max value 2 <= 2: stable
    ok, idx = truncation_sequence_check([el(1, 1, 0), el(3, 2, 0)])
    assert not ok and idx == 2


def test_bound_witness_examples():
    assert bound_witness(el(5, 2, F(1, 3))) == 5
    assert bound_witness(el(1, 1, F(1, 3))) == 1
    assert bound_witness(el(0, 0, 0)) == 1
    assert bound_witness(el(F(5, 2), 0, 0)) == 3
    g = el(5, 2, F(1, 3))
    n = bound_witness(g)
    assert g.trunc_at(n) == g and g.trunc_at(n - 1) != g


def test_bounded_away_from_zero_examples():
    ok, eps = bounded_away_from_zero(el(1, F(1, 2), 0))
    assert ok and eps == F(1, 2)
    assert el(1, F(1, 2), 0).scale(2).truncate() == el(1, 1, 0)
    ok, eps = bounded_away_from_zero(el(0, 0, 0))
    assert not ok
    ok, eps = bounded_away_from_zero(el(1, 1, 1))
    assert ok and eps == 1


def test_yosida_quotient_examples():
    q, gens, proj = yosida_quotient(X3, [el(1, 1, 0)])
    assert len(q.points) == 2 and q.star == "*"
    assert proj["3"] == "*" and proj["1"] == proj["2"]
    assert gens[0].value(proj["1"]) == 1

    q2, gens2, _ = yosida_quotient(X3, [el(1, 2, 3)])
    assert len(q2.points) == 4

    q3, _, proj3 = yosida_quotient(X3, [])
    assert len(q3.points) == 1 and all(v == "*" for v in proj3.values())


def test_pointwise_sup_examples():
    assert pointwise_sup([el(1, 0, 0), el(0, 1, 0)]) == el(1, 1, 0)
    g = el(2, -1, F(1, 2))
    assert pointwise_sup([g]) == g
    assert pointwise_sup([g, g, g]) == g


def test_dini_example():
    seq = [el(1, 1, 1), el(F(1, 2), F(1, 2), F(1, 2)),
           el(0, 0, 0), el(0, 0, 0)]
    rep = dini_check(seq)
    assert rep.limit_is_zero and rep.uniform
    assert rep.index_map[F(1, 4)] == 3
    with pytest.raises(StructureError):
        dini_check([el(1, 0, 0), el(2, 0, 0)])
    rep = dini_check([el(1, 1, 1), el(1, 1, 1)])
    assert not rep.limit_is_zero


def test_restriction_hom_preserves_sup():
    fam = [el(1, 5, 0), el(2, 0, 3)]
    sup = pointwise_sup(fam)
    _, theta = restriction_hom(X3, {"1", "3"})
    assert theta(sup) == pointwise_sup([theta(g) for g in fam])
