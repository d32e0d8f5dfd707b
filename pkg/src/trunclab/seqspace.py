"""The omega+1 model: rational corrections plus polynomial-in-1/n tails.

A TailElement represents a function g on {1, 2, 3, ...} with g(omega) = 0:
g(n) = correction(n) + sum_k c_k * n^(-k), with finitely many corrections and
a fixed tail-degree bound.  Degree 1 carries the hyperarchimedean-but-not-
simple example; degree 2 exists to refute hyperarchimedeanness.  All lattice
operations are computed exactly via a certified crossover bound N beyond
which tail comparison is decided by the leading coefficient.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import (PositivityError, StructureError, UnsupportedOperationError)


def _ceil(f):
    f = Fraction(f)
    return -((-f.numerator) // f.denominator)


def poly_sign(coeffs):
    """Eventual sign of c0 + c1/n + ... + cd/n^d, with a certified bound.

    Returns (sign, N): for all n >= N the expression has the given constant
    sign; sign 0 means identically zero.  The bound is
    N = max(1, ceil(sum_{k>j} |c_k| / |c_j|)) + 1 with j the first nonzero
    index, which dominates the lower-order terms rigorously.
    """
    coeffs = [Fraction(c) for c in coeffs]
    j = next((i for i, c in enumerate(coeffs) if c != 0), None)
    if j is None:
        return 0, 1
    rest = sum(abs(c) for c in coeffs[j + 1:])
    bound = max(1, _ceil(rest / abs(coeffs[j]))) + 1
    return (1 if coeffs[j] > 0 else -1), bound


class TailElement:
    """A correction-plus-tail function on omega+1, canonically represented."""

    __slots__ = ("correction", "tail")

    def __init__(self, correction=None, tail=()):
        corr = {}
        for n, v in (correction or {}).items():
            n = int(n)
            if n < 1:
                raise StructureError(f"correction index {n} must be >= 1")
            v = Fraction(v)
            if v != 0:
                corr[n] = v
        tail = tuple(Fraction(c) for c in tail)
        while tail and tail[-1] == 0:
            tail = tail[:-1]
        self.correction = corr
        self.tail = tail

    @classmethod
    def chi(cls, support):
        return cls({n: 1 for n in support})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def tail_unit(cls, slot):
        """The pure tail n^(-slot); slot 1 is the 1/n example element."""
        coeffs = [0] * slot
        coeffs[slot - 1] = 1
        return cls({}, coeffs)

    def degree(self):
        return len(self.tail)

    def tail_value(self, n):
        return sum(c * Fraction(1, n ** (k + 1)) for k, c in enumerate(self.tail))

    def value(self, n):
        if n < 1:
            raise StructureError(f"positions start at 1, got {n}")
        return self.correction.get(n, Fraction(0)) + self.tail_value(n)

    def order(self):
        """Index of the first nonzero tail coefficient, or None for zero tail."""
        for i, c in enumerate(self.tail):
            if c != 0:
                return i + 1
        return None

    def __eq__(self, other):
        return (isinstance(other, TailElement)
                and self.correction == other.correction and self.tail == other.tail)

    def __hash__(self):
        return hash((tuple(sorted(self.correction.items())), self.tail))

    def __repr__(self):
        corr = ",".join(f"{n}:{v}" for n, v in sorted(self.correction.items()))
        return f"TailElement({{{corr}}}, tail={list(self.tail)})"

    def _merged_tail(self, other, fn):
        d = max(len(self.tail), len(other.tail))
        a = list(self.tail) + [Fraction(0)] * (d - len(self.tail))
        b = list(other.tail) + [Fraction(0)] * (d - len(other.tail))
        return [fn(x, y) for x, y in zip(a, b)]

    def __add__(self, other):
        corr = dict(self.correction)
        for n, v in other.correction.items():
            corr[n] = corr.get(n, Fraction(0)) + v
        return TailElement(corr, self._merged_tail(other, lambda x, y: x + y))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, q):
        q = Fraction(q)
        return TailElement({n: q * v for n, v in self.correction.items()},
                           [q * c for c in self.tail])

    def crossover(self, other):
        """(sign, N): sign of self - other for every n >= N.

        N is past both correction supports, so beyond it only the tails
        compete and the leading-coefficient bound applies.
        """
        diff = self._merged_tail(other, lambda x, y: x - y)
        sign, tail_bound = poly_sign([Fraction(0)] + diff)
        supports = list(self.correction) + list(other.correction)
        return sign, max(supports, default=0) + tail_bound + 1

    def _combine(self, other, fn, winner_tail):
        _, bound = self.crossover(other)
        result = TailElement({}, winner_tail)
        corr = {}
        for n in range(1, bound + 1):
            delta = fn(self.value(n), other.value(n)) - result.tail_value(n)
            if delta != 0:
                corr[n] = delta
        return TailElement(corr, winner_tail)

    def meet(self, other):
        sign, _ = self.crossover(other)
        tail = self.tail if sign <= 0 else other.tail
        return self._combine(other, min, tail)

    def join(self, other):
        sign, _ = self.crossover(other)
        tail = self.tail if sign >= 0 else other.tail
        return self._combine(other, max, tail)

    def is_nonneg(self):
        sign, bound = self.crossover(TailElement.zero())
        if sign < 0:
            return False
        return all(self.value(n) >= 0 for n in range(1, bound + 1))

    def is_zero(self):
        return not self.correction and not self.tail

    def _require_nonneg(self, op):
        if not self.is_nonneg():
            raise PositivityError(f"{op} requires a nonnegative operand")

    def __abs__(self):
        return self.join(-self)

    def meet_const(self, c):
        """Pointwise min with a positive rational constant (crossover-certified)."""
        c = Fraction(c)
        if c <= 0:
            raise PositivityError(f"meet_const needs c > 0, got {c}")
        sign, tail_bound = poly_sign([-c] + list(self.tail))
        assert sign < 0, "tails vanish at infinity, so self < c eventually"
        bound = max(self.correction, default=0) + tail_bound + 1
        corr = {}
        result = TailElement({}, self.tail)
        for n in range(1, bound + 1):
            delta = min(self.value(n), c) - result.tail_value(n)
            if delta != 0:
                corr[n] = delta
        return TailElement(corr, self.tail)

    def truncate(self):
        self._require_nonneg("truncate")
        return self.meet_const(1)

    def trunc_at(self, n):
        n = Fraction(n)
        if n <= 0:
            raise PositivityError(f"trunc_at needs n > 0, got {n}")
        self._require_nonneg("trunc_at")
        return self.meet_const(n)

    def tminus(self, r):
        """(value - r)+ pointwise; the result has finite support for r > 0."""
        r = Fraction(r)
        if r < 0:
            raise PositivityError(f"tminus needs r >= 0, got {r}")
        if r == 0:
            return self
        self._require_nonneg("tminus")
        sign, tail_bound = poly_sign([-r] + list(self.tail))
        assert sign < 0
        bound = max(self.correction, default=0) + tail_bound + 1
        corr = {}
        for n in range(1, bound + 1):
            v = self.value(n) - r
            if v > 0:
                corr[n] = v
        return TailElement(corr, ())

    def support(self):
        """("finite", positions) when the tail vanishes, else ("cofinite", zeros)."""
        if not self.tail:
            return "finite", frozenset(self.correction)
        sign, bound = self.crossover(TailElement.zero())
        assert sign != 0
        zeros = frozenset(n for n in range(1, bound + 1) if self.value(n) == 0)
        return "cofinite", zeros

    def restrict_to_cozero_of(self, g):
        """Zero this element outside the cozero set of g (forced decomposition)."""
        kind, data = g.support()
        if kind == "finite":
            return TailElement({n: self.value(n) for n in data})
        corr = dict(self.correction)
        for n in data:
            corr[n] = -self.tail_value(n)  # force value(n) = 0 at zeros of g
        return TailElement(corr, self.tail)

    def max_value(self):
        """Exact supremum of a nonnegative element (attained; values tend to 0)."""
        self._require_nonneg("max_value")
        _, window = self.crossover(TailElement.zero())
        best = max(self.value(n) for n in range(1, window + 1))
        total = sum(abs(c) for c in self.tail)
        if total == 0 or best <= 0:
            return max(best, Fraction(0))
        # beyond the horizon, value(n) = tail(n) <= total/n < best
        horizon = max(window, _ceil(total / best))
        return max(self.value(n) for n in range(1, horizon + 1))


def tail_apply_op(tag, operands, param=None):
    """Dispatcher mirroring the simple-element operation tags."""
    if not operands:
        raise StructureError("no operands")
    ops = list(operands)
    if tag == "add":
        return reduce(lambda a, b: a + b, ops)
    if tag == "negate":
        return -ops[0]
    if tag == "scale":
        return ops[0].scale(param)
    if tag == "meet":
        return reduce(lambda a, b: a.meet(b), ops)
    if tag == "join":
        return reduce(lambda a, b: a.join(b), ops)
    if tag == "truncate":
        return ops[0].truncate()
    if tag == "tminus":
        return ops[0].tminus(param)
    if tag == "truncN":
        return ops[0].trunc_at(param)
    if tag == "sub":
        return ops[0] - ops[1]
    raise UnsupportedOperationError(
        f"operation tag {tag!r} not available on tail elements (truncs have no "
        f"multiplication)")


@dataclass(frozen=True)
class SeqTrunc:
    """Carrier descriptor: all TailElements with tail degree <= degree."""

    degree: int = 1

    def __post_init__(self):
        if self.degree < 0:
            raise StructureError("degree must be >= 0")

    def __contains__(self, g):
        return isinstance(g, TailElement) and g.degree() <= self.degree

    def member(self, g):
        ok = g in self
        return ok, (None if ok else g.degree())

    def sample_elements(self, rng, count, nonneg=False):
        out = []
        pool = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2)]
        for _ in range(count):
            corr = {}
            for _ in range(rng.randint(0, 3)):
                corr[rng.randint(1, 8)] = pool[rng.randrange(len(pool))]
            tail = [pool[rng.randrange(len(pool))] if rng.random() < 0.7 else 0
                    for _ in range(self.degree)]
            g = TailElement(corr, tail)
            if nonneg:
                g = abs(g)
            out.append(g)
        return out


def baf_infinity(g):
    """Bounded away from infinity: vanishes on a neighborhood of omega.

    True iff the tail is identically zero (finite support); then the witness
    h = 2 * chi(supp g) satisfies truncate(g) <= tminus(1)(h).
    """
    if not g.is_nonneg():
        raise PositivityError("baf_infinity needs g >= 0")
    if g.tail:
        return False, None
    kind, supp = g.support()
    assert kind == "finite"
    h = TailElement.chi(supp).scale(2)
    gap = h.tminus(1) - g.truncate()
    assert gap.is_nonneg(), "witness construction must dominate the truncation"
    return True, h


def simple_part_member(g):
    """Finite range is equivalent to a vanishing tail."""
    return not g.tail


def bounded_away_from_zero_tail(g):
    """(True, eps) when the positive values admit a positive lower bound.

    A nonzero tail forces values arbitrarily close to zero, so the answer
    is False exactly when the tail is nonzero or g = 0.
    """
    if not g.is_nonneg():
        raise PositivityError("bounded_away_from_zero needs g >= 0")
    if g.is_zero():
        return False, None
    if g.tail:
        return False, None
    eps = min(v for v in g.correction.values())
    return True, eps


def clearance_chain(g, length):
    """The first positive values of g along increasing positions."""
    out = []
    n = 1
    limit = 10 * length + max(g.correction, default=0)
    while len(out) < length and n <= limit:
        v = g.value(n)
        if v > 0:
            out.append(v)
        n += 1
    return out


def unital_components_are_finite_chis(u):
    """True iff u = truncate(2u), equivalently all values lie in {0, 1}."""
    if not u.is_nonneg():
        raise PositivityError("unital components are nonnegative")
    return u.scale(2).truncate() == u


def enough_uc_check(trunc, rng=None, budget=50):
    """Search for g >= 0 with no unital component above truncate(g).

    Unital components here are characteristic functions of finite sets, so
    truncate(g) <= u forces a finite cozero set; any nonzero tail refutes.
    The canonical 1/n element is always tested first.
    """
    candidates = []
    if trunc.degree >= 1:
        candidates.append(TailElement.tail_unit(1))
    if rng is not None:
        candidates.extend(abs(g) for g in trunc.sample_elements(rng, budget))
    candidates.append(TailElement.chi([1, 2]))
    for g in candidates:
        if g.tail:
            return False, g
        kind, supp = g.support()
        u = TailElement.chi(supp)
        assert (u - g.truncate()).is_nonneg()
    return True, None


def partial_truncations(g, count):
    """The support filtration g * chi({1..n}) for n = 1..count."""
    out = []
    for n in range(1, count + 1):
        out.append(TailElement({k: g.value(k) for k in range(1, n + 1)}))
    return out


def sup_of_filtration_is(g):
    """Verify the cut criterion: union_n h_n(r, inf) = g(r, inf) on a grid.

    h_n = g * chi({1..n}), so h_m(k) = g(k) for m >= k.  For each grid cut
    r >= 0 and every position k in the probe window, k lies in some h_n's
    upper cut iff it lies in g's; the point omega sits in neither side for
    r >= 0 and in both for r < 0.
    """
    if not g.is_nonneg():
        raise PositivityError("filtration suprema need g >= 0")
    _, bound = g.crossover(TailElement.zero())
    horizon = bound + 10
    filtration = partial_truncations(g, horizon)
    probe = [Fraction(0)] + [g.value(n) for n in range(1, horizon + 1)]
    grid = sorted(set(probe))
    grid += [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    for r in [x for x in sorted(set(grid)) if x >= 0]:
        for k in range(1, horizon + 1):
            in_union = any(h.value(k) > r for h in filtration[k - 1:])
            if in_union != (g.value(k) > r):
                return False
    return True


@dataclass
class Ex1Report:
    """The five-part counterexample battery on the degree-1 trunc."""

    hyper_ok: bool
    hyper_samples: int
    not_simple_witness: TailElement
    clearance_values: list
    kernel12_ok: bool
    kernel12_samples: int
    kernel3_witness: TailElement
    kernel3_example: TailElement  # g0 tminus 1/3, concretely
    pointwise_witness: list
    pointwise_sup_ok: bool

    @property
    def ok(self):
        return (self.hyper_ok and self.kernel12_ok and self.pointwise_sup_ok
                and bool(self.not_simple_witness.tail)
                and bool(self.kernel3_witness.tail))


def ex1_report(seed=0, samples=500):
    """Run the full battery on the degree-1 trunc; see Ex1Report fields."""
    import random

    from .hyper import hyperarchimedean
    from .kernels import KernelSpec, kernel_conditions

    trunc = SeqTrunc(degree=1)
    rng = random.Random(seed)
    hyper = hyperarchimedean(trunc, budget=samples, seed=seed)
    g0 = TailElement.tail_unit(1)
    baf, _ = bounded_away_from_zero_tail(g0)
    assert not baf, "1/n element must not be bounded away from zero"
    chain = clearance_chain(g0, 6)
    kernel = KernelSpec(trunc, support=None, tails_allowed=(False,))
    conds = kernel_conditions(kernel, budget=samples, seed=seed)
    assert conds.cond1.passed and conds.cond2.passed
    assert not conds.cond3.passed and conds.cond3.witness == g0
    filtration = partial_truncations(g0, 5)
    assert all(not h.tail for h in filtration)
    sup_ok = sup_of_filtration_is(g0)
    return Ex1Report(
        hyper_ok=hyper.passed,
        hyper_samples=hyper.samples,
        not_simple_witness=g0,
        clearance_values=chain,
        kernel12_ok=conds.cond1.passed and conds.cond2.passed,
        kernel12_samples=conds.cond1.samples + conds.cond2.samples,
        kernel3_witness=g0,
        kernel3_example=g0.tminus(Fraction(1, 3)),
        pointwise_witness=filtration,
        pointwise_sup_ok=sup_ok,
    )
