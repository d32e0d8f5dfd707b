"""Kernel conditions, staged closure, and pointwise closure."""

from fractions import Fraction as F

import pytest

from trunclab.elements import SimpleElement, lc
from trunclab.errors import BudgetError, StructureError
from trunclab.kernels import (KernelSpec, kernel_closure, kernel_conditions,
                              pointwise_closed)
from trunclab.seqspace import SeqTrunc, TailElement
from trunclab.spaces import space

X3 = space("1", "2", "3")
FULL = lc(X3)
G0 = TailElement.tail_unit(1)


def test_finite_support_kernel_passes_all_conditions():
    k = KernelSpec(FULL, support={"1", "2"})
    report = kernel_conditions(k, budget=150, seed=2)
    assert report.all_pass
    assert pointwise_closed(k, budget=100, seed=2).closed
    assert kernel_closure(k) == k


def test_whole_trunc_kernel():
    k = KernelSpec(FULL)
    assert kernel_conditions(k, budget=80).all_pass
    assert pointwise_closed(k, budget=60).closed


def test_zero_kernel_on_x3():
    k = KernelSpec(FULL, support=frozenset())
    assert kernel_conditions(k, budget=80).all_pass
    assert kernel_closure(k) == k


def test_tail_zero_kernel_fails_condition3_exactly():
    k = KernelSpec(SeqTrunc(1), support=None, tails_allowed=(False,))
    report = kernel_conditions(k, budget=500, seed=0)
    assert report.cond1.passed and report.cond1.samples >= 500
    assert report.cond2.passed and report.cond2.samples >= 500
    assert not report.cond3.passed and report.cond3.exact
    assert report.cond3.witness == G0
    # every truncated subtraction of the witness lies in the kernel
    for n in (1, 2, 3, 10):
        assert k.contains(G0.tminus(F(1, n)))
    assert not k.contains(G0)


def test_tail_zero_kernel_not_pointwise_closed():
    k = KernelSpec(SeqTrunc(1), support=None, tails_allowed=(False,))
    verdict = pointwise_closed(k, budget=100, seed=0)
    assert not verdict.closed
    assert verdict.family_kind == "support-filtration"
    sup, family = verdict.witness
    assert sup == G0
    assert all(k.contains(h) for h in family)


def test_kernel_closure_reaches_whole_trunc():
    k = KernelSpec(SeqTrunc(1), support=None, tails_allowed=(False,))
    closed = kernel_closure(k)
    assert closed.tails_allowed == (True,)
    assert closed.support is None
    assert kernel_closure(closed) == closed
    assert kernel_conditions(closed, budget=60).all_pass


def test_kernel_closure_idempotent_and_extensive():
    specs = [
        KernelSpec(FULL, support={"1"}),
        KernelSpec(SeqTrunc(1), support=frozenset({1, 2, 5})),
        KernelSpec(SeqTrunc(2), support=None, tails_allowed=(False, False)),
    ]
    for k in specs:
        closed = kernel_closure(k)
        assert kernel_closure(closed) == closed
        if isinstance(k.model, SeqTrunc) and k.support is None:
            assert all(b >= a for a, b in zip(k.tails_allowed,
                                              closed.tails_allowed))


def test_agreement_on_degree2_variants():
    for flags in ((False, False), (False, True), (True, True)):
        k = KernelSpec(SeqTrunc(2), support=None, tails_allowed=flags)
        conds = kernel_conditions(k, budget=120, seed=1)
        verdict = pointwise_closed(k, budget=120, seed=1)
        assert conds.all_pass == verdict.closed == all(flags)


def test_condition1_fails_on_degree2_tail_zero_kernel():
    # the 1/n^2 element is dominated by 1/n, so the archimedean hypothesis
    # holds while the conclusion fails
    k = KernelSpec(SeqTrunc(2), support=None, tails_allowed=(False, False))
    report = kernel_conditions(k, budget=200, seed=0)
    assert not report.cond1.passed
    g, h = report.cond1.witness
    assert g.order() is not None and g.order() > h.order()


def test_nonconvex_description_rejected():
    with pytest.raises(StructureError):
        KernelSpec(SeqTrunc(2), support=None, tails_allowed=(True, False))
    with pytest.raises(StructureError):
        KernelSpec(SeqTrunc(1), support=frozenset({1, 2}),
                   tails_allowed=(True,))
    with pytest.raises(StructureError):
        KernelSpec(FULL, support={"1", "99"})


def test_membership_decisions():
    k = KernelSpec(FULL, support={"1", "2"})
    assert k.contains(SimpleElement(X3, {"1": 1, "2": F(-1, 2)}))
    assert not k.contains(SimpleElement(X3, {"3": 1}))
    ks = KernelSpec(SeqTrunc(1), support=frozenset({1, 2, 5}))
    assert ks.contains(TailElement.chi([1, 5]))
    assert not ks.contains(TailElement.chi([3]))
    assert not ks.contains(G0)


def test_budget_guard():
    k = KernelSpec(FULL, support={"1"})
    with pytest.raises(BudgetError):
        kernel_conditions(k, budget=0)
    with pytest.raises(BudgetError):
        pointwise_closed(k, budget=0)
