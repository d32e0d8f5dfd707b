"""Simple elements and simple truncs over finite pointed spaces.

A simple element is an exact-rational function on a finite pointed space
vanishing at the basepoint.  Everything here is pointwise and exact: the
truncation g -> min(g, 1), truncated subtraction (g - r)+, level-n cutoffs
min(g, n), normal forms, clearance decompositions, good sequences and their
bijection with truncation sequences, boundedness witnesses, quotients that
separate points, and grid-verified pointwise suprema with a Dini check.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import (PositivityError, SpaceMismatchError, StructureError,
                     UnsupportedOperationError)
from .gba import GeneralizedBooleanAlgebra
from .rat import sorted_labels
from .spaces import PointedBooleanSpace


class SimpleElement:
    """Rational-valued function on a pointed space, zero at the basepoint."""

    __slots__ = ("space", "_vals")

    def __init__(self, space, values=None):
        vals = {}
        values = dict(values or {})
        for p in space.nonstar:
            vals[p] = Fraction(values.pop(p, 0))
        if values:
            bad = sorted_labels(values)
            raise StructureError(f"values at unknown or basepoint labels: {bad}")
        self.space = space
        self._vals = vals

    @classmethod
    def chi(cls, space, subset):
        """Characteristic function of a set of non-basepoint labels."""
        subset = frozenset(subset)
        if not subset <= set(space.nonstar):
            raise StructureError(f"subset {subset} not within non-star points")
        return cls(space, {p: Fraction(1) for p in subset})

    @classmethod
    def zero(cls, space):
        return cls(space)

    def value(self, point):
        if point == self.space.star:
            return Fraction(0)
        return self._vals[point]

    @property
    def values(self):
        return dict(self._vals)

    def items(self):
        return tuple((p, self._vals[p]) for p in self.space.nonstar)

    def __eq__(self, other):
        return (isinstance(other, SimpleElement)
                and self.space == other.space and self._vals == other._vals)

    def __hash__(self):
        return hash((self.space, self.items()))

    def __repr__(self):
        inner = ",".join(f"{p}:{v}" for p, v in self.items())
        return f"<{inner}>"

    def _zip(self, other, fn):
        if not isinstance(other, SimpleElement):
            return NotImplemented
        if self.space != other.space:
            raise SpaceMismatchError(f"{self.space} vs {other.space}")
        return SimpleElement(self.space, {p: fn(self._vals[p], other._vals[p])
                                          for p in self.space.nonstar})

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def __abs__(self):
        return SimpleElement(self.space, {p: abs(v) for p, v in self._vals.items()})

    def scale(self, q):
        q = Fraction(q)
        return SimpleElement(self.space, {p: q * v for p, v in self._vals.items()})

    def meet(self, other):
        return self._zip(other, min)

    def join(self, other):
        return self._zip(other, max)

    def is_nonneg(self):
        return all(v >= 0 for v in self._vals.values())

    def is_zero(self):
        return all(v == 0 for v in self._vals.values())

    def _require_nonneg(self, op):
        if not self.is_nonneg():
            bad = next(p for p in self.space.nonstar if self._vals[p] < 0)
            raise PositivityError(f"{op} requires a nonnegative operand; "
                                  f"value at {bad} is {self._vals[bad]}")

    def truncate(self):
        """Pointwise min with 1 (the truncation g -> g-bar)."""
        self._require_nonneg("truncate")
        return SimpleElement(self.space,
                             {p: min(v, Fraction(1)) for p, v in self._vals.items()})

    def tminus(self, r):
        """Pointwise (value - r)+ for rational r >= 0; r = 0 is the identity."""
        r = Fraction(r)
        if r < 0:
            raise PositivityError(f"tminus needs r >= 0, got {r}")
        if r == 0:
            return self
        self._require_nonneg("tminus")
        return SimpleElement(self.space,
                             {p: max(v - r, Fraction(0)) for p, v in self._vals.items()})

    def trunc_at(self, n):
        """Pointwise min with the level n > 0 (the n-th truncation g ^ n)."""
        n = Fraction(n)
        if n <= 0:
            raise PositivityError(f"trunc_at needs n > 0, got {n}")
        self._require_nonneg("trunc_at")
        return SimpleElement(self.space,
                             {p: min(v, n) for p, v in self._vals.items()})

    def support(self):
        return frozenset(p for p, v in self._vals.items() if v != 0)

    def restrict_to(self, subset):
        """Zero out values outside the given set of non-basepoint labels."""
        subset = frozenset(subset)
        return SimpleElement(self.space, {p: v for p, v in self._vals.items()
                                          if p in subset})

    def max_value(self):
        vals = list(self._vals.values())
        return max(vals) if vals else Fraction(0)

    def level_sets(self):
        """Nonzero value -> set of points attaining it."""
        out = {}
        for p, v in self._vals.items():
            if v != 0:
                out.setdefault(v, set()).add(p)
        return {v: frozenset(s) for v, s in out.items()}


def apply_op(tag, operands, param=None):
    """Uniform dispatcher over the truncation-calculus operation tags."""
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
    raise UnsupportedOperationError(f"unknown operation tag {tag!r}")


class SimpleTrunc:
    """A simple trunc given by its component family of subsets.

    The family must contain the empty set and be closed under union,
    intersection and set difference; membership of an element means every
    nonzero level set lies in the family.
    """

    def __init__(self, space, components):
        self.space = space
        fam = frozenset(frozenset(s) for s in components)
        base = set(space.nonstar)
        for s in fam:
            if not s <= base:
                raise StructureError(f"component {set(s)} not within non-star points")
        if frozenset() not in fam:
            raise StructureError("component family must contain the empty set")
        for a in fam:
            for b in fam:
                for r, opname in ((a | b, "union"), (a & b, "intersection"),
                                  (a - b, "difference")):
                    if r not in fam:
                        raise StructureError(
                            f"family not closed: {opname} of {set(a)} and {set(b)} "
                            f"gives {set(r)}")
        self.components = fam

    def __eq__(self, other):
        return (isinstance(other, SimpleTrunc) and self.space == other.space
                and self.components == other.components)

    def __hash__(self):
        return hash((self.space, self.components))

    def member(self, g):
        """Membership with witness: the normal form, or the offending level set."""
        if g.space != self.space:
            raise SpaceMismatchError(f"{g.space} vs {self.space}")
        for v, s in sorted(g.level_sets().items(), key=lambda kv: -kv[0]):
            if s not in self.components:
                return False, s
        return True, normal_form(g)

    def __contains__(self, g):
        return self.member(g)[0]

    def sample_elements(self, rng, count, nonneg=False, coeffs=None):
        """Seeded random members: rational combinations of component functions."""
        comps = sorted(self.components, key=lambda s: (len(s), str(sorted_labels(s))))
        pool = coeffs or [Fraction(n, d) for n in range(-3, 4) for d in (1, 2, 3)]
        out = []
        for _ in range(count):
            g = SimpleElement.zero(self.space)
            for _ in range(rng.randint(1, 3)):
                s = comps[rng.randrange(len(comps))]
                g = g + SimpleElement.chi(self.space, s).scale(
                    pool[rng.randrange(len(pool))])
            if nonneg:
                g = abs(g)
            out.append(g)
        return out


def lc(space, family=None):
    """The simple trunc of locally constant functions with the given components.

    Defaults to the full powerset of non-basepoint labels (the whole function
    trunc of the finite discrete space).
    """
    if family is None:
        pts = list(space.nonstar)
        family = [frozenset(c) for c in _powerset(pts)]
    return SimpleTrunc(space, family)


def _powerset(items):
    import itertools
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def uc(trunc):
    """Unital components of a simple trunc, as a generalized Boolean algebra."""
    alg = GeneralizedBooleanAlgebra.from_sets(trunc.components)
    report = alg.validate()
    if not report.ok:
        raise StructureError(f"component family is not a gBa: {report}")
    return alg


def is_unital_component(u):
    """True iff u = truncate(2u), i.e. all values lie in {0, 1}."""
    if not u.is_nonneg():
        raise PositivityError("unital components are nonnegative")
    return u.scale(2).truncate() == u


def normal_form(g):
    """Unique decomposition into disjoint components with distinct coefficients.

    Returns [(coefficient, component set), ...] sorted by descending
    coefficient; the empty list represents zero.
    """
    return sorted(g.level_sets().items(), key=lambda kv: -kv[0])


def normal_form_reconstruct(space, pairs):
    g = SimpleElement.zero(space)
    for coeff, comp in pairs:
        g = g + SimpleElement.chi(space, comp).scale(coeff)
    return g


def clearance(g):
    """Least nonzero value of a nonnegative element; clearance of 0 is 0."""
    if not g.is_nonneg():
        raise PositivityError("clearance needs g >= 0")
    positive = [v for v in g.values.values() if v > 0]
    return min(positive) if positive else Fraction(0)


def clearance_step(g):
    """Split off the lowest level: g = g1 + delta * u with g1, u disjoint.

    Requires 0 < g = truncate(g).  u is the characteristic function of the
    points where g attains its clearance delta, and clearance(g1) > delta
    whenever g1 is nonzero.
    """
    if not g.is_nonneg() or g.is_zero():
        raise PositivityError("clearance_step needs g > 0")
    if g.truncate() != g:
        raise StructureError("clearance_step needs g with values in [0, 1]")
    delta = clearance(g)
    above = g.tminus(delta).support()
    u = SimpleElement.chi(g.space, g.support() - above)
    g1 = g.restrict_to(above)
    assert g1 + u.scale(delta) == g
    return g1, u, delta


def clearance_decomposition(g):
    """Iterate clearance_step until zero; the pairs reproduce the normal form."""
    pairs = []
    current = g
    while not current.is_zero():
        current, u, delta = clearance_step(current)
        pairs.append((delta, u.support()))
    return pairs


@dataclass(frozen=True)
class GoodSequence:
    """Nonincreasing truncated terms with f_n = truncate(f_n + f_{n+1}), tail zero."""

    terms: tuple

    @staticmethod
    def of(terms):
        terms = list(terms)
        while terms and terms[-1].is_zero():
            terms.pop()
        seq = GoodSequence(tuple(terms))
        problem = seq.check()
        if problem is not None:
            idx, why = problem
            raise StructureError(f"not a good sequence at index {idx}: {why}")
        return seq

    def check(self):
        """None if valid, else (1-based index, reason)."""
        terms = self.terms
        for i, t in enumerate(terms, start=1):
            if not t.is_nonneg():
                return i, "negative value"
            if t.truncate() != t:
                return i, "term differs from its truncation"
        for i in range(len(terms) - 1):
            a, b = terms[i], terms[i + 1]
            if not (a - b).is_nonneg():
                return i + 2, "terms increase"
            if (a + b).truncate() != a:
                return i + 1, "f_n != truncate(f_n + f_{n+1})"
        return None

    def __len__(self):
        return len(self.terms)


def good_from_element(g, m=None):
    """Good sequence of g >= 0: terms truncate(tminus(n-1)(g)) for n = 1..m.

    m must be at least the ceiling of the maximum value so the tail is zero;
    defaults to exactly that bound.  Trailing zero terms are stripped.
    """
    if not g.is_nonneg():
        raise PositivityError("good_from_element needs g >= 0")
    need = bound_witness(g)
    if m is None:
        m = need
    if m < need:
        raise StructureError(f"m = {m} too small; need m >= {need}")
    terms = [g.tminus(n - 1).truncate() for n in range(1, m + 1)]
    return GoodSequence.of(terms)


def element_from_good(seq, space=None):
    """Sum of the terms; rejects invalid sequences with a witness index.

    The empty sequence reconstructs zero, which needs the space spelled out.
    """
    if not isinstance(seq, GoodSequence):
        seq = GoodSequence.of(seq)
    else:
        problem = seq.check()
        if problem is not None:
            idx, why = problem
            raise StructureError(f"not a good sequence at index {idx}: {why}")
    if not seq.terms:
        if space is None:
            raise StructureError("empty sequence: pass the space to get zero")
        return SimpleElement.zero(space)
    return reduce(lambda a, b: a + b, seq.terms)


def truncation_sequence(g, upto=None):
    """The list [g ^ 1, g ^ 2, ..., g ^ m] with m the stabilization bound."""
    if not g.is_nonneg():
        raise PositivityError("truncation sequences need g >= 0")
    m = upto or bound_witness(g)
    return [g.trunc_at(n) for n in range(1, m + 1)]


def truncation_sequence_check(seq):
    """(True, g) if seq is a stabilized truncation-sequence prefix, else (False, index).

    The last listed term is taken as the stable tail, so it must satisfy
    g_m ^ m = g_m, and consecutive terms must satisfy g_n = g_{n+1} ^ n.
    The reported index is 1-based and names the first failing term.
    """
    seq = list(seq)
    if not seq:
        raise StructureError("empty sequence")
    for i, t in enumerate(seq, start=1):
        if not t.is_nonneg():
            return False, i
    for i in range(len(seq) - 1):
        if seq[i] != seq[i + 1].trunc_at(i + 1):
            return False, i + 1  # the n of the failing g_n = g_{n+1} ^ n
    last = seq[-1]
    if last.trunc_at(len(seq)) != last:
        return False, len(seq)
    return True, last


def bound_witness(g):
    """Least n >= 1 with g <= n * truncate(g) (the stabilization level)."""
    if not g.is_nonneg():
        raise PositivityError("bound_witness needs g >= 0")
    m = g.max_value()
    n = 1
    while n < m:
        n += 1
    return n


def bounded_away_from_zero(g):
    """(True, epsilon) with epsilon the clearance, or (False, None) for g = 0.

    Cross-checks that truncate(n*g) is a unital component for n = ceil(1/eps).
    """
    if not g.is_nonneg():
        raise PositivityError("bounded_away_from_zero needs g >= 0")
    if g.is_zero():
        return False, None
    eps = clearance(g)
    n = 1
    while n * eps < 1:
        n += 1
    u = g.scale(n).truncate()
    assert is_unital_component(u), "scaled truncation must be a component"
    return True, eps


def yosida_quotient(space, gens):
    """Quotient identifying points on which all generators agree.

    Points where every generator vanishes merge into the basepoint.  Returns
    (quotient space, mapped generators, projection map); the mapped
    generators separate the points of the quotient.
    """
    sig = {p: tuple(g.value(p) for g in gens) for p in sorted_labels(space.points)}
    classes = {}
    for p in sorted_labels(space.points):
        classes.setdefault(sig[p], []).append(p)
    star_sig = sig[space.star]
    projection = {}
    reps = []
    for s, members in classes.items():
        rep = space.star if s == star_sig else members[0]
        reps.append(rep)
        for p in members:
            projection[p] = rep
    qspace = PointedBooleanSpace(frozenset(reps), space.star)
    mapped = [SimpleElement(qspace, {r: g.value(r) for r in qspace.nonstar})
              for g in gens]
    seen = {tuple(h.value(r) for h in mapped) for r in sorted_labels(qspace.points)}
    assert len(seen) == len(qspace.points), "mapped generators must separate points"
    return qspace, mapped, projection


def cut_grid(values):
    """All cut points among the values, plus midpoints and one beyond each end."""
    vals = sorted(set(Fraction(v) for v in values))
    if not vals:
        vals = [Fraction(0)]
    grid = list(vals)
    for a, b in zip(vals, vals[1:]):
        grid.append((a + b) / 2)
    grid.append(vals[0] - 1)
    grid.append(vals[-1] + 1)
    return sorted(set(grid))


def upper_cut(g, r):
    """The set {p : g(p) > r}, including the basepoint when r < 0."""
    cut = {p for p, v in g.values.items() if v > r}
    if r < 0:
        cut.add(g.space.star)
    return frozenset(cut)


def pointwise_sup(family):
    """Pointwise maximum, verified cut-by-cut on the rational grid."""
    family = list(family)
    if not family:
        raise StructureError("pointwise_sup of an empty family")
    b = reduce(lambda a, c: a.join(c), family)
    values = [v for g in family for v in g.values.values()]
    values += list(b.values.values()) + [0]
    for r in cut_grid(values):
        union = frozenset().union(*(upper_cut(g, r) for g in family))
        if union != upper_cut(b, r):
            raise StructureError(f"pointwise sup fails the cut test at r = {r}")
    return b


@dataclass
class DiniReport:
    limit_is_zero: bool
    uniform: bool
    index_map: dict  # epsilon -> least 1-based index with max value < epsilon

    def __repr__(self):
        if not self.limit_is_zero:
            return "DiniReport(limit nonzero)"
        pairs = ", ".join(f"{e}->{m}" for e, m in sorted(self.index_map.items()))
        return f"DiniReport(uniform, {pairs})"


def dini_check(seq):
    """Monotone nonincreasing, nonnegative, eventually constant sequences.

    When the pointwise limit (the stable tail) is zero, reports the index
    function epsilon -> m realizing the uniform criterion max(g_n) < epsilon
    for n >= m.
    """
    seq = list(seq)
    if not seq:
        raise StructureError("empty sequence")
    for t in seq:
        if not t.is_nonneg():
            raise PositivityError("dini_check needs nonnegative terms")
    for i in range(len(seq) - 1):
        if not (seq[i] - seq[i + 1]).is_nonneg():
            raise StructureError(f"sequence not nonincreasing at index {i + 2}")
    if not seq[-1].is_zero():
        return DiniReport(False, False, {})
    maxima = [t.max_value() for t in seq]
    grid = [e for e in cut_grid(maxima + [0]) if e > 0]
    index_map = {}
    for eps in grid:
        m = next(i for i in range(1, len(seq) + 1)
                 if all(mx < eps for mx in maxima[i - 1:]))
        index_map[eps] = m
    return DiniReport(True, True, index_map)


def restriction_hom(space, keep):
    """Truncation homomorphism restricting to a subspace containing the basepoint."""
    keep = frozenset(keep) | {space.star}
    sub = PointedBooleanSpace(keep, space.star)

    def theta(g):
        return SimpleElement(sub, {p: g.value(p) for p in sub.nonstar})

    return sub, theta
