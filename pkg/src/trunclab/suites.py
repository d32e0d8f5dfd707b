"""Seeded property suites tying all modules together.

Each suite is a function (seed, cases) -> SuiteResult with exact checks;
failures carry printable witnesses.  The registry order is the execution
order of the `suite` CLI command, and the acceptance tests drive the same
functions at their stated budgets.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import sampling
from .elements import (SimpleElement, bound_witness, bounded_away_from_zero,
                       clearance, clearance_decomposition, dini_check,
                       element_from_good, good_from_element, lc, normal_form,
                       normal_form_reconstruct, pointwise_sup,
                       restriction_hom, truncation_sequence,
                       truncation_sequence_check, uc)
from .equivalences import equivalence_witness
from .frames import (FrameReal, OpenInterval, chi, drop, e0q_exhaustive,
                     e0q_member, frame_dini, frame_pointwise_sup, induced_op,
                     ray_above, ray_below, real_line, surjection_tools,
                     oracle_mismatch)
from .gba import clopen, gba_validate, iba_forget, idealize, stone
from .hyper import hyperarchimedean
from .kernels import KernelSpec, kernel_closure, kernel_conditions, pointwise_closed
from .seqspace import (SeqTrunc, TailElement, bounded_away_from_zero_tail,
                       enough_uc_check, ex1_report, partial_truncations,
                       simple_part_member, sup_of_filtration_is)
from .spaces import PointedBooleanSpace


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def _spaces_for(rng, count):
    return [sampling.random_space(rng) for _ in range(count)]


# --- 1. truncation axioms ---------------------------------------------------

def suite_trunc_axioms(seed=0, cases=200):
    rng = random.Random(seed)
    failures = []
    ran = 0
    for _ in range(cases // 2):
        sp = sampling.random_space(rng)
        g = sampling.simple_element(rng, sp, nonneg=True)
        h = sampling.simple_element(rng, sp, nonneg=True)
        ran += 1
        if not (g.truncate() - g.meet(h.truncate())).is_nonneg():
            failures.append(f"T1 lower fails: g={g!r} h={h!r}")
        if not (g - g.truncate()).is_nonneg():
            failures.append(f"T1 upper fails: g={g!r}")
        if g.truncate().is_zero() and not g.is_zero():
            failures.append(f"T2 fails: g={g!r}")
        big_n = rng.randint(1, 5)
        if not g.is_zero() and all(g.scale(n) == g.scale(n).truncate()
                                   for n in range(1, big_n + 1)):
            if g.max_value() > Fraction(1, big_n):
                failures.append(f"bounded T3 fails: g={g!r} N={big_n}")
    trunc1 = SeqTrunc(1)
    for _ in range(cases - cases // 2):
        g = abs(trunc1.sample_elements(rng, 1)[0])
        h = abs(trunc1.sample_elements(rng, 1)[0])
        ran += 1
        if not (g.truncate() - g.meet(h.truncate())).is_nonneg():
            failures.append(f"T1 lower fails (tail): g={g!r} h={h!r}")
        if not (g - g.truncate()).is_nonneg():
            failures.append(f"T1 upper fails (tail): g={g!r}")
        if g.truncate().is_zero() and not g.is_zero():
            failures.append(f"T2 fails (tail): g={g!r}")
        big_n = rng.randint(1, 4)
        if not g.is_zero() and all(g.scale(n) == g.scale(n).truncate()
                                   for n in range(1, big_n + 1)):
            if g.max_value() > Fraction(1, big_n):
                failures.append(f"bounded T3 fails (tail): g={g!r} N={big_n}")
    return SuiteResult("trunc-axioms", ran, failures)


# --- 2. fundamental identities ----------------------------------------------

def _identity_backends(rng):
    """(g, n, m, ops) triples across the three models for the shared corpus."""
    out = []
    sp = sampling.random_space(rng)
    out.append(("simple", sampling.simple_element(rng, sp, nonneg=True)))
    trunc1 = SeqTrunc(rng.choice([1, 2]))
    out.append(("tail", abs(trunc1.sample_elements(rng, 1)[0])))
    pf = sampling.pointed_frame(rng)
    out.append(("frame", sampling.frame_real(rng, pf, nonneg=True)))
    return out


def _op(kind, g, name, *args):
    if kind == "frame":
        if name == "truncate":
            return induced_op("truncate", [g], verify=False)
        if name == "tminus":
            return induced_op("tminus", [g], param=args[0], verify=False)
        if name == "trunc_at":
            return induced_op("truncN", [g], param=args[0], verify=False)
        if name == "add":
            return induced_op("add", [g, args[0]], verify=False)
    if name == "truncate":
        return g.truncate()
    if name == "tminus":
        return g.tminus(args[0])
    if name == "trunc_at":
        return g.trunc_at(args[0])
    if name == "add":
        return g + args[0]
    raise AssertionError(name)


def suite_identities(seed=0, cases=200):
    rng = random.Random(seed)
    failures = []
    ran = 0
    while ran < cases:
        for kind, g in _identity_backends(rng):
            if ran >= cases:
                break
            ran += 1
            n = rng.randint(1, 4)
            m = rng.randint(1, 5)
            gn = _op(kind, g, "trunc_at", n)
            rem = _op(kind, g, "tminus", n)
            if _op(kind, gn, "add", rem) != g:
                failures.append(f"split identity fails [{kind}]: g={g!r} n={n}")
            if _op(kind, gn, "add", _op(kind, rem, "truncate")) != \
                    _op(kind, g, "trunc_at", n + 1):
                failures.append(f"step identity fails [{kind}]: g={g!r} n={n}")
            acc = None
            for k in range(1, m + 1):
                term = _op(kind, _op(kind, g, "tminus", k - 1), "truncate")
                acc = term if acc is None else _op(kind, acc, "add", term)
            if acc != _op(kind, g, "trunc_at", m):
                failures.append(f"partial-sum identity fails [{kind}]: g={g!r} m={m}")
    # the sup of the truncation sequence recovers g (finite scale)
    for _ in range(min(50, cases)):
        sp = sampling.random_space(rng)
        g = sampling.simple_element(rng, sp, nonneg=True)
        seq = truncation_sequence(g, upto=bound_witness(g) + 1)
        if pointwise_sup(seq) != g:
            failures.append(f"truncation-sequence sup fails: g={g!r}")
    return SuiteResult("identities", ran, failures)


# --- 3. good sequences --------------------------------------------------------

def suite_good_sequences(seed=0, cases=200):
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        sp = sampling.random_space(rng)
        g = sampling.simple_element(rng, sp, nonneg=True)
        gs = good_from_element(g)
        if not g.is_zero() and element_from_good(gs) != g:
            failures.append(f"good round trip fails: g={g!r}")
        if g.is_zero() and len(gs) != 0:
            failures.append("good sequence of zero is nonempty")
        seq = truncation_sequence(g)
        diffs = []
        prev = SimpleElement.zero(sp)
        for t in seq:
            diffs.append(t - prev)
            prev = t
        while diffs and diffs[-1].is_zero():
            diffs.pop()
        if tuple(diffs) != gs.terms:
            failures.append(f"difference/good mismatch: g={g!r}")
        ok, rec = truncation_sequence_check(seq) if seq else (True, g)
        if not ok or (seq and rec != g):
            failures.append(f"truncation sequence check fails: g={g!r}")
    return SuiteResult("good-sequences", cases, failures)


# --- 4. idealization ----------------------------------------------------------

def suite_idealization(seed=0, cases=40):
    rng = random.Random(seed)
    failures = []
    ran = 0
    while ran < cases:
        alg = sampling.random_gba(rng)
        if len(alg) > 16:
            continue
        ran += 1
        bi = idealize(alg)
        report = bi.validate()
        if not report.ok:
            failures.append(f"idealize invalid: {report.violations[:2]}")
        back = iba_forget(bi)
        identity_iso = all(back.join[(a, b)] == alg.join[(a, b)]
                           and back.meet[(a, b)] == alg.meet[(a, b)]
                           for a in alg.carrier for b in alg.carrier)
        if not identity_iso or back.carrier != alg.carrier:
            failures.append("forget(idealize(A)) differs from A on labels")
    return SuiteResult("idealization", ran, failures)


# --- 5. categorical equivalences ----------------------------------------------

def suite_equivalences(seed=0, cases=5):
    failures = []
    ran = 0
    for n in range(0, min(max(1, cases), 5)):  # spaces of at most 5 points
        pts = frozenset({"*"} | {str(i) for i in range(1, n + 1)})
        x = PointedBooleanSpace(pts, "*")
        ran += 1
        rep = equivalence_witness(x)
        if not rep.all_verified:
            failures.append(f"equivalence fails on {n + 1} points: {rep!r}")
        bi = clopen(x)
        if stone(bi).star != frozenset({"*"}):
            failures.append(f"stone star wrong on {n + 1} points")
    return SuiteResult("equivalences", ran, failures)


# --- 6. the join-of-meets oracle ------------------------------------------------

_ALL_TAGS = ("add", "sub", "join", "meet", "scale", "truncate", "tminus", "truncN")


def suite_induced_oracle(seed=0, cases=100):
    rng = random.Random(seed)
    failures = []
    ran = 0
    for _ in range(cases):
        pf = sampling.pointed_frame(rng)
        f = sampling.frame_real(rng, pf)
        g = sampling.frame_real(rng, pf)
        fpos = sampling.frame_real(rng, pf, nonneg=True)
        ran += 1
        for tag in _ALL_TAGS:
            try:
                if tag in ("add", "sub", "join", "meet"):
                    induced_op(tag, [f, g])
                elif tag == "scale":
                    induced_op(tag, [f], param=rng.choice(
                        [Fraction(2), Fraction(-1, 2), Fraction(3, 4)]))
                elif tag == "tminus":
                    induced_op(tag, [fpos], param=rng.choice(
                        [Fraction(1, 2), Fraction(1), Fraction(2, 3)]))
                elif tag == "truncN":
                    induced_op(tag, [fpos], param=rng.randint(1, 3))
                else:
                    induced_op(tag, [fpos])
            except Exception as exc:  # noqa: BLE001 - report as failure
                failures.append(f"{tag} oracle mismatch: {exc}")
    return SuiteResult("induced-oracle", ran, failures)


# --- 7. case formulas for truncation and truncated subtraction -------------------

def suite_cut_cases(seed=0, cases=200):
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        pf = sampling.pointed_frame(rng)
        g = sampling.frame_real(rng, pf, nonneg=True)
        r = sampling.rational(rng)
        fr = pf.frame
        gbar = induced_op("truncate", [g], verify=False)
        want_below = fr.top if r > 1 else g.eval(ray_below(r))
        if gbar.eval(ray_below(r)) != want_below:
            failures.append(f"truncate lower-cut case fails at r={r}: {g!r}")
        want_above = fr.bottom if r >= 1 else g.eval(ray_above(r))
        if gbar.eval(ray_above(r)) != want_above:
            failures.append(f"truncate upper-cut case fails at r={r}: {g!r}")
        gm = induced_op("tminus", [g], param=1, verify=False)
        want_above = fr.top if r < 0 else g.eval(ray_above(r + 1))
        if gm.eval(ray_above(r)) != want_above:
            failures.append(f"tminus upper-cut case fails at r={r}: {g!r}")
        want_below = fr.bottom if r <= 0 else g.eval(ray_below(r + 1))
        if gm.eval(ray_below(r)) != want_below:
            failures.append(f"tminus lower-cut case fails at r={r}: {g!r}")
    return SuiteResult("cut-cases", cases, failures)


# --- 8. normal forms and clearance ----------------------------------------------

def suite_normal_clearance(seed=0, cases=200):
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        sp = sampling.random_space(rng)
        g = sampling.simple_element(rng, sp)
        nf = normal_form(g)
        if normal_form_reconstruct(sp, nf) != g:
            failures.append(f"normal form does not reconstruct: g={g!r}")
        comps = [c for _, c in nf]
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if comps[i] & comps[j]:
                    failures.append(f"normal form components overlap: g={g!r}")
        coeffs = [r for r, _ in nf]
        if len(set(coeffs)) != len(coeffs) or any(r == 0 for r in coeffs):
            failures.append(f"normal form coefficients invalid: g={g!r}")
        gbar = sampling.simple_element(rng, sp, truncated=True)
        if gbar.is_zero():
            continue
        steps = clearance_decomposition(gbar)
        if len(steps) > len(set(gbar.values.values())):
            failures.append(f"clearance iteration too long: g={gbar!r}")
        if sorted(steps) != sorted((r, c) for r, c in normal_form(gbar)):
            failures.append(f"clearance pairs differ from normal form: g={gbar!r}")
        deltas = [d for d, _ in steps]
        if deltas != sorted(deltas) or len(set(deltas)) != len(deltas):
            failures.append(f"clearances not strictly increasing: g={gbar!r}")
        ok, eps = bounded_away_from_zero(gbar)
        if not ok or eps != clearance(gbar):
            failures.append(f"bounded-away-from-zero mismatch: g={gbar!r}")
        if bounded_away_from_zero(gbar)[0] != bounded_away_from_zero(
                gbar.truncate())[0]:
            failures.append(f"baf0(g) != baf0(truncate g): g={gbar!r}")
    return SuiteResult("normal-clearance", cases, failures)


# --- 9. the omega+1 battery -------------------------------------------------------

def suite_ex1(seed=0, cases=500):
    report = ex1_report(seed=seed, samples=cases)
    failures = []
    if not report.hyper_ok:
        failures.append("degree-1 trunc refuted as hyperarchimedean")
    if bounded_away_from_zero_tail(report.not_simple_witness)[0]:
        failures.append("1/n witness is bounded away from zero")
    if simple_part_member(report.not_simple_witness):
        failures.append("1/n witness has finite range")
    if not report.kernel12_ok:
        failures.append("kernel conditions (1)/(2) failed on samples")
    if report.kernel3_witness != TailElement.tail_unit(1):
        failures.append("kernel condition (3) witness is not the 1/n element")
    expected = TailElement({1: Fraction(2, 3), 2: Fraction(1, 6)})
    if report.kernel3_example != expected:
        failures.append(f"tminus(1/3) example wrong: {report.kernel3_example!r}")
    if not report.pointwise_sup_ok:
        failures.append("filtration sup check failed")
    if any(h.tail for h in report.pointwise_witness):
        failures.append("filtration members left the kernel")
    ok, witness = enough_uc_check(SeqTrunc(1), rng=random.Random(seed))
    if ok or witness != TailElement.tail_unit(1):
        failures.append("enough-components check did not refute with 1/n")
    return SuiteResult("ex1-battery", cases, failures)


# --- 10. degree-2 refutation --------------------------------------------------------

def suite_degree2(seed=0, cases=1):
    verdict = hyperarchimedean(SeqTrunc(2), budget=10, seed=seed)
    failures = []
    if verdict.passed:
        failures.append("degree-2 trunc not refuted")
    else:
        f, g, _ = verdict.witness
        if f != TailElement.tail_unit(1) or g != TailElement.tail_unit(2):
            failures.append(f"witness pair is not (1/n, 1/n^2): {verdict.witness!r}")
    return SuiteResult("degree2-refutation", max(1, cases), failures)


# --- 11. Dini ------------------------------------------------------------------------

def suite_dini(seed=0, cases=100):
    rng = random.Random(seed)
    failures = []
    ran = 0
    for _ in range(cases // 2):
        sp = sampling.random_space(rng)
        g = sampling.simple_element(rng, sp, nonneg=True)
        steps = rng.randint(2, 5)
        seq = [g.scale(Fraction(1, k)) for k in range(1, steps + 1)]
        seq += [SimpleElement.zero(sp)] * 2
        ran += 1
        rep = dini_check(seq)
        if not rep.limit_is_zero or not rep.uniform:
            failures.append(f"element dini fails: g={g!r}")
        for eps, m in rep.index_map.items():
            if any(t.max_value() >= eps for t in seq[m - 1:]):
                failures.append(f"element dini index wrong at eps={eps}")
    for _ in range(cases - cases // 2):
        pf = sampling.pointed_frame(rng)
        g = sampling.frame_real(rng, pf, nonneg=True)
        steps = rng.randint(2, 5)
        seq = [g.scale(Fraction(1, k)) for k in range(1, steps + 1)]
        seq += [FrameReal.zero(pf)] * 2
        ran += 1
        rep = frame_dini(seq)
        if not rep.limit_is_zero or not rep.uniform:
            failures.append(f"frame dini fails: g={g!r}")
        for eps, m in rep.index_map.items():
            if any(t.eval(ray_below(eps)) != pf.frame.top for t in seq[m - 1:]):
                failures.append(f"frame dini index wrong at eps={eps}")
    # the canonical omega+1 monotone sequence: tails of g0 with sup 1/(n+1)
    g0 = TailElement.tail_unit(1)
    tails = [g0 - h for h in partial_truncations(g0, 6)]
    for n, t in enumerate(tails, start=1):
        if t.max_value() != Fraction(1, n + 1):
            failures.append(f"omega+1 tail sup wrong at n={n}")
    if not sup_of_filtration_is(g0):
        failures.append("omega+1 filtration sup check failed")
    return SuiteResult("dini", ran, failures)


# --- 12. drops and lifts ---------------------------------------------------------------

def suite_drop_e0q(seed=0, cases=100):
    from .frames import FiniteFrame, FrameSurjection, PointedFiniteFrame

    rng = random.Random(seed)
    failures = []
    ran = 0
    # canonical: Booleanization of the three-chain pointed at the middle
    c3 = FiniteFrame.chain(3)
    pc3 = PointedFiniteFrame(c3, focus=1)
    booleanization = sampling.booleanization(pc3)
    if booleanization is None or not booleanization.dense:
        failures.append("three-chain Booleanization not dense/pointed")
    # canonical: product map (x, y) -> (x**, y)
    f2 = FiniteFrame.chain(2)
    prod = FiniteFrame.product(c3, f2)
    tgt = FiniteFrame.product(f2, f2)
    mapping = {(x, y): (0 if x == 0 else 1, y) for (x, y) in prod.labels}
    psrc = PointedFiniteFrame(prod, focus=(1, 0))
    ptgt = PointedFiniteFrame(tgt, focus=(1, 0))
    prod_q = FrameSurjection(psrc, ptgt, mapping)
    h = chi(ptgt, (0, 1))
    lift = e0q_member(prod_q, h)
    if not lift.ok or lift.witness.cells != ((Fraction(0), (2, 0)),
                                             (Fraction(1), (0, 1))):
        failures.append(f"product lift wrong: {lift!r}")
    canonical = [booleanization, prod_q] if booleanization else [prod_q]
    while ran < cases:
        if ran < len(canonical):
            q = canonical[ran]
        elif ran % 2:
            # small frames keep the exhaustive-partition oracle in play
            pf = sampling.pointed_frame(rng, max_points=3, max_size=12)
            q = sampling.dense_surjection(rng, pf)
        else:
            pf = sampling.pointed_frame(rng)
            q = sampling.dense_surjection(rng, pf)
        ran += 1
        tools = surjection_tools(q)
        if not tools["dense"]:
            failures.append("sampled surjection not dense")
            continue
        h = sampling.frame_real(rng, q.target)
        hp = FrameReal(q.source, [(v, q.adjoint[c]) for v, c in h.cells],
                       extended=True) \
            if q.source.frame.join_all(q.adjoint[c] for _, c in h.cells) \
            == q.source.frame.top else None
        if hp is not None:
            result = drop(q, hp)
            if not result.ok or result.result != h:
                failures.append(f"drop does not invert the lift: {h!r}")
        lift = e0q_member(q, h)
        if len(q.source.frame) <= 12:
            oracle = e0q_exhaustive(q, h, max_frame=12)
            if lift.ok != oracle.ok:
                failures.append(f"adjoint/exhaustive disagree: {h!r}")
            if oracle.ok and not lift.ok:
                failures.append(f"adjoint candidate missed a lift: {h!r}")
        if lift.ok:
            back = drop(q, FrameReal(q.source, lift.witness.cells, extended=True))
            if not back.ok or back.result != h:
                failures.append(f"lift does not drop back: {h!r}")
    # refusal path: a D-type element violating the condition
    two = FiniteFrame.chain(2)
    pc3_top = PointedFiniteFrame(c3, focus=2)
    ptwo = PointedFiniteFrame(two, focus=1)
    qprime = FrameSurjection(pc3_top, ptwo, {0: 0, 1: 0, 2: 1})
    if qprime.dense:
        failures.append("collapsing surjection reported dense")
    hp = FrameReal(pc3_top, [(float("inf"), c3.top)], extended=True, pointed=False)
    refusal = drop(qprime, hp)
    if refusal.ok or refusal.condition_value != two.bottom:
        failures.append(f"drop refusal wrong: {refusal!r}")
    return SuiteResult("drop-e0q", ran, failures)


# --- 13. kernels ------------------------------------------------------------------------

def suite_kernels(seed=0, cases=60):
    rng = random.Random(seed)
    failures = []
    ran = 0
    X = sampling.random_space(rng, max_points=3)
    full = lc(X)
    pts = list(X.nonstar)
    specs = [KernelSpec(full, support=frozenset(pts[:k]))
             for k in range(len(pts) + 1)]
    specs.append(KernelSpec(SeqTrunc(1), support=None, tails_allowed=(False,)))
    specs.append(KernelSpec(SeqTrunc(1), support=None, tails_allowed=(True,)))
    specs.append(KernelSpec(SeqTrunc(1), support=frozenset({1, 2, 5})))
    specs.append(KernelSpec(SeqTrunc(2), support=None,
                            tails_allowed=(False, True)))
    specs.append(KernelSpec(SeqTrunc(2), support=None,
                            tails_allowed=(True, True)))
    for spec in specs:
        ran += 1
        conds = kernel_conditions(spec, budget=max(40, cases), seed=seed)
        verdict = pointwise_closed(spec, budget=max(40, cases), seed=seed)
        if conds.all_pass != verdict.closed:
            failures.append(f"agreement fails for {spec!r}")
        closed = kernel_closure(spec)
        again = kernel_closure(closed)
        if again != closed:
            failures.append(f"closure not idempotent for {spec!r}")
        if isinstance(spec.model, SeqTrunc) and spec.support is None:
            if not all(closed.tails_allowed):
                failures.append(f"closure did not reach the whole trunc: {spec!r}")
        if not kernel_conditions(closed, budget=40, seed=seed).all_pass:
            failures.append(f"closure output fails conditions: {spec!r}")
    return SuiteResult("kernels", ran, failures)


# --- 14. sequence-model closure -----------------------------------------------------------

def suite_seq_closure(seed=0, cases=150):
    rng = random.Random(seed)
    failures = []
    ran = 0
    for degree in (1, 2):
        trunc = SeqTrunc(degree)
        for _ in range(cases // 2):
            f, g = trunc.sample_elements(rng, 2)
            fpos = abs(f)
            ran += 1
            results = {
                "add": f + g, "sub": f - g, "negate": -f,
                "scale": f.scale(Fraction(-3, 2)),
                "meet": f.meet(g), "join": f.join(g),
                "truncate": fpos.truncate(),
                "tminus": fpos.tminus(Fraction(1, 2)),
                "truncN": fpos.trunc_at(2),
            }
            for name, res in results.items():
                if res.degree() > degree:
                    failures.append(f"{name} left the degree-{degree} carrier")
            _, bound = f.crossover(g)
            for n in range(1, bound + 11):
                if results["meet"].value(n) != min(f.value(n), g.value(n)):
                    failures.append(f"meet pointwise mismatch at n={n}")
                    break
                if results["join"].value(n) != max(f.value(n), g.value(n)):
                    failures.append(f"join pointwise mismatch at n={n}")
                    break
                if results["add"].value(n) != f.value(n) + g.value(n):
                    failures.append(f"add pointwise mismatch at n={n}")
                    break
                if results["truncate"].value(n) != min(fpos.value(n), 1):
                    failures.append(f"truncate pointwise mismatch at n={n}")
                    break
                if results["tminus"].value(n) != max(
                        fpos.value(n) - Fraction(1, 2), 0):
                    failures.append(f"tminus pointwise mismatch at n={n}")
                    break
    return SuiteResult("seq-closure", ran, failures)


# --- 15. convergence utilities ---------------------------------------------------------------

def suite_convergence(seed=0, cases=100):
    rng = random.Random(seed)
    failures = []
    ran = 0
    for _ in range(cases):
        sp = sampling.random_space(rng)
        fam = [sampling.simple_element(rng, sp) for _ in range(rng.randint(1, 4))]
        ran += 1
        sup = pointwise_sup(fam)
        if pointwise_sup([fam[0]] * 3) != fam[0]:
            failures.append(f"constant-family sup differs: {fam[0]!r}")
        keep = [p for p in sp.nonstar if rng.random() < 0.6]
        _, theta = restriction_hom(sp, keep)
        if theta(sup) != pointwise_sup([theta(g) for g in fam]):
            failures.append(f"restriction does not preserve sup: {fam!r}")
        pf = sampling.pointed_frame(rng)
        g = sampling.frame_real(rng, pf)
        if frame_pointwise_sup([g, g, g]) != g:
            failures.append(f"frame constant sup differs: {g!r}")
    return SuiteResult("convergence", ran, failures)


# --- 16. boolean structure ---------------------------------------------------------------------

def suite_boolean(seed=0, cases=40):
    rng = random.Random(seed)
    failures = []
    ran = 0
    for _ in range(cases):
        alg = sampling.random_gba(rng)
        ran += 1
        report = gba_validate(alg)
        if not report.ok:
            failures.append(f"set-family gba invalid: {report.violations[:2]}")
            continue
        elems = sorted(alg.carrier, key=lambda s: (len(s), sorted(map(str, s))))
        for a in elems[:4]:
            for b in elems[:4]:
                c = alg.diff(a, b)
                if alg.join[(c, b)] != alg.join[(a, b)] or \
                        alg.meet[(c, b)] != alg.bottom:
                    failures.append(f"diff equations fail at ({a},{b})")
        sp = sampling.random_space(rng)
        bi = clopen(sp)
        x2 = stone(bi)
        if len(x2.points) != len(sp.points) or x2.star != frozenset({sp.star}):
            failures.append(f"stone(clopen) wrong on {sp!r}")
        comp_alg = uc(lc(sp))
        if not gba_validate(comp_alg).ok:
            failures.append(f"component algebra invalid on {sp!r}")
    return SuiteResult("boolean", ran, failures)


SUITES = {
    "trunc-axioms": suite_trunc_axioms,
    "identities": suite_identities,
    "good-sequences": suite_good_sequences,
    "idealization": suite_idealization,
    "equivalences": suite_equivalences,
    "induced-oracle": suite_induced_oracle,
    "cut-cases": suite_cut_cases,
    "normal-clearance": suite_normal_clearance,
    "ex1-battery": suite_ex1,
    "degree2-refutation": suite_degree2,
    "dini": suite_dini,
    "drop-e0q": suite_drop_e0q,
    "kernels": suite_kernels,
    "seq-closure": suite_seq_closure,
    "convergence": suite_convergence,
    "boolean": suite_boolean,
}

_SUITE_BUDGETS = {
    "idealization": 25,
    "equivalences": 5,
    "induced-oracle": 60,
    "ex1-battery": 300,
    "degree2-refutation": 1,
    "drop-e0q": 60,
    "kernels": 40,
    "boolean": 25,
}


def run_all(seed=0, cases=200):
    """Run every suite; per-suite budgets cap the heavyweight ones."""
    results = []
    for name, fn in SUITES.items():
        budget = min(cases, _SUITE_BUDGETS.get(name, cases))
        results.append(fn(seed=seed, cases=budget))
    return results
