"""Finite generalized and idealized Boolean algebras and their equivalences.

A generalized Boolean algebra (gBa) is a distributive lattice with bottom in
which every pair a, b has a unique relative complement c = a \\ b satisfying
c v b = a v b and c ^ b = bottom.  An idealized Boolean algebra (iBa) is a
Boolean algebra with a designated maximal ideal.  The functors implemented
here (idealize, forget, stone, clopen) realize the equivalences between
finite gBas, iBas and pointed Boolean spaces.
"""

import itertools
from dataclasses import dataclass, field

from .errors import StructureError
from .rat import sorted_labels
from .spaces import PointedBooleanSpace


@dataclass(frozen=True)
class Primed:
    """Tag wrapper for the formal complements adjoined by idealize()."""

    base: object

    def __repr__(self):
        return f"{self.base}'"


@dataclass
class Violation:
    law: str
    witness: tuple

    def __repr__(self):
        return f"{self.law} at {self.witness}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, *witness):
        self.violations.append(Violation(law, witness))

    def __repr__(self):
        return "valid" if self.ok else f"invalid: {self.violations}"


class GeneralizedBooleanAlgebra:
    """Explicit finite gBa: carrier plus total join/meet tables and bottom.

    The relative-complement table may be supplied or derived by exhaustive
    search during validation.  Carriers stay desk-scale (tens of elements),
    so every check is exhaustive rather than sampled.
    """

    def __init__(self, carrier, join, meet, bottom, diff=None):
        self.carrier = frozenset(carrier)
        self.join = dict(join)
        self.meet = dict(meet)
        self.bottom = bottom
        self.diff_table = dict(diff) if diff is not None else None
        self._validated = None

    @classmethod
    def from_sets(cls, family):
        """Build a gBa from a family of sets under union/intersection/difference."""
        fam = frozenset(frozenset(s) for s in family)
        join, meet, diff = {}, {}, {}
        for a in fam:
            for b in fam:
                join[(a, b)] = a | b
                meet[(a, b)] = a & b
                diff[(a, b)] = a - b
        return cls(fam, join, meet, frozenset(), diff)

    @classmethod
    def from_order(cls, labels, leq):
        """Build a gBa candidate from a partial order; diff is derived by search.

        leq is a set of (x, y) pairs meaning x <= y; it must already be
        reflexive and transitive.  Missing lubs/glbs surface as violations.
        """
        labels = list(labels)
        below = {x: {y for y in labels if (y, x) in leq} for x in labels}
        above = {x: {y for y in labels if (x, y) in leq} for x in labels}
        join, meet = {}, {}
        for a in labels:
            for b in labels:
                ubs = above[a] & above[b]
                lub = [u for u in ubs if all(u in below[v] for v in ubs)]
                lbs = below[a] & below[b]
                glb = [u for u in lbs if all(u in above[v] for v in lbs)]
                if len(lub) != 1 or len(glb) != 1:
                    raise StructureError(f"not a lattice: no unique lub/glb for ({a},{b})")
                join[(a, b)] = lub[0]
                meet[(a, b)] = glb[0]
        bottoms = [x for x in labels if all((x, y) in leq for y in labels)]
        if len(bottoms) != 1:
            raise StructureError("no least element")
        return cls(labels, join, meet, bottoms[0])

    def leq(self, a, b):
        return self.join[(a, b)] == b

    def diff(self, a, b):
        """The unique relative complement a \\ b (requires a valid algebra)."""
        report = self.validate()
        if not report.ok:
            raise StructureError(f"diff on invalid algebra: {report}")
        return self.diff_table[(a, b)]

    def validate(self):
        """Check every gBa axiom exhaustively; report all violations with witnesses."""
        if self._validated is not None:
            return self._validated
        report = ValidationReport()
        elems = sorted_labels(self.carrier)
        for table, name in ((self.join, "join"), (self.meet, "meet")):
            for a in elems:
                for b in elems:
                    if (a, b) not in table:
                        report.add(f"{name} table not total", a, b)
                    elif table[(a, b)] not in self.carrier:
                        report.add(f"{name} not closed", a, b)
        if self.bottom not in self.carrier:
            report.add("bottom not in carrier", self.bottom)
        if not report.ok:
            self._validated = report
            return report
        jn, mt = self.join, self.meet
        for a in elems:
            if jn[(a, a)] != a:
                report.add("join idempotence", a)
            if mt[(a, a)] != a:
                report.add("meet idempotence", a)
            if jn[(a, self.bottom)] != a:
                report.add("bottom not least", a)
            if mt[(a, self.bottom)] != self.bottom:
                report.add("bottom meet law", a)
            for b in elems:
                if jn[(a, b)] != jn[(b, a)]:
                    report.add("join commutativity", a, b)
                if mt[(a, b)] != mt[(b, a)]:
                    report.add("meet commutativity", a, b)
                if jn[(a, mt[(a, b)])] != a:
                    report.add("absorption", a, b)
                if mt[(a, jn[(a, b)])] != a:
                    report.add("absorption", a, b)
                for c in elems:
                    if jn[(jn[(a, b)], c)] != jn[(a, jn[(b, c)])]:
                        report.add("join associativity", a, b, c)
                    if mt[(mt[(a, b)], c)] != mt[(a, mt[(b, c)])]:
                        report.add("meet associativity", a, b, c)
                    if mt[(a, jn[(b, c)])] != jn[(mt[(a, b)], mt[(a, c)])]:
                        report.add("distributivity", a, b, c)
        derived = {}
        for a in elems:
            for b in elems:
                cands = [c for c in elems
                         if jn[(c, b)] == jn[(a, b)] and mt[(c, b)] == self.bottom]
                if not cands:
                    report.add("relative complement missing", a, b)
                elif len(cands) > 1:
                    report.add("relative complement not unique", a, b, tuple(cands))
                else:
                    derived[(a, b)] = cands[0]
                    if self.diff_table is not None:
                        given = self.diff_table.get((a, b))
                        if given is None:
                            report.add("diff table not total", a, b)
                        elif given != cands[0]:
                            report.add("diff equations fail", a, b)
        if report.ok and self.diff_table is None:
            self.diff_table = derived
        self._validated = report
        return report

    def atoms(self):
        nonzero = [a for a in sorted_labels(self.carrier) if a != self.bottom]
        return [a for a in nonzero
                if not any(b != a and self.leq(b, a) for b in nonzero)]

    def __len__(self):
        return len(self.carrier)

    def __eq__(self, other):
        return (isinstance(other, GeneralizedBooleanAlgebra)
                and self.carrier == other.carrier and self.join == other.join
                and self.meet == other.meet and self.bottom == other.bottom)

    def __hash__(self):
        return hash((self.carrier, self.bottom))


class BooleanAlgebra:
    """Explicit finite Boolean algebra with complement table and top."""

    def __init__(self, carrier, join, meet, complement, bottom, top):
        self.carrier = frozenset(carrier)
        self.join = dict(join)
        self.meet = dict(meet)
        self.complement = dict(complement)
        self.bottom = bottom
        self.top = top

    @classmethod
    def powerset(cls, base):
        base = frozenset(base)
        carrier = [frozenset(c) for r in range(len(base) + 1)
                   for c in itertools.combinations(sorted_labels(base), r)]
        join = {(a, b): a | b for a in carrier for b in carrier}
        meet = {(a, b): a & b for a in carrier for b in carrier}
        comp = {a: base - a for a in carrier}
        return cls(carrier, join, meet, comp, frozenset(), base)

    def leq(self, a, b):
        return self.join[(a, b)] == b

    def validate(self):
        report = ValidationReport()
        as_gba = GeneralizedBooleanAlgebra(self.carrier, self.join, self.meet,
                                           self.bottom, diff=None)
        report.violations.extend(as_gba.validate().violations)
        for a in sorted_labels(self.carrier):
            na = self.complement.get(a)
            if na is None or na not in self.carrier:
                report.add("complement table not total", a)
                continue
            if self.join[(a, na)] != self.top:
                report.add("complement join law", a)
            if self.meet[(a, na)] != self.bottom:
                report.add("complement meet law", a)
            if self.join[(a, self.top)] != self.top:
                report.add("top not greatest", a)
        return report

    def atoms(self):
        nonzero = [a for a in sorted_labels(self.carrier) if a != self.bottom]
        return [a for a in nonzero
                if not any(b != a and self.leq(b, a) for b in nonzero)]

    def __len__(self):
        return len(self.carrier)

    def __eq__(self, other):
        return (isinstance(other, BooleanAlgebra)
                and self.carrier == other.carrier and self.join == other.join
                and self.meet == other.meet
                and self.complement == other.complement)

    def __hash__(self):
        return hash((self.carrier, self.bottom, self.top))


class IdealizedBooleanAlgebra:
    """A finite Boolean algebra together with a maximal ideal."""

    def __init__(self, algebra, ideal):
        self.algebra = algebra
        self.ideal = frozenset(ideal)

    def __eq__(self, other):
        return (isinstance(other, IdealizedBooleanAlgebra)
                and self.algebra == other.algebra and self.ideal == other.ideal)

    def __hash__(self):
        return hash((self.algebra, self.ideal))

    def validate(self):
        report = self.algebra.validate()
        alg = self.algebra
        if not self.ideal <= alg.carrier:
            report.add("ideal not a subset of carrier", tuple(self.ideal - alg.carrier))
            return report
        if alg.top in self.ideal:
            report.add("ideal not proper", alg.top)
        if alg.bottom not in self.ideal:
            report.add("ideal misses bottom", alg.bottom)
        for a in self.ideal:
            for b in sorted_labels(alg.carrier):
                if alg.leq(b, a) and b not in self.ideal:
                    report.add("ideal not a downset", a, b)
            for b in self.ideal:
                if alg.join[(a, b)] not in self.ideal:
                    report.add("ideal not join-closed", a, b)
        for b in sorted_labels(alg.carrier):
            inside = (b in self.ideal, alg.complement[b] in self.ideal)
            if inside == (False, False):
                report.add("ideal not maximal", b)
            if inside == (True, True):
                report.add("ideal not proper (element and complement)", b)
        return report

    def __len__(self):
        return len(self.algebra)


def gba_validate(algebra):
    """Validation report for a generalized Boolean algebra candidate."""
    return algebra.validate()


def gba_diff(algebra, a, b):
    """The unique c with c v b = a v b and c ^ b = bottom."""
    return algebra.diff(a, b)


def idealize(algebra):
    """Adjoin formal complements: A becomes the maximal ideal of B_A = A u A'.

    Operation table, with x' the formal complement of x:
      a1 v a2' = (a2 \\ a1)',  a1' v a2' = (a1 ^ a2)',
      a1 ^ a2' = a1 \\ a2,     a1' ^ a2' = (a1 v a2)',
      not a = a', not a' = a, top = bottom'.
    """
    report = algebra.validate()
    if not report.ok:
        raise StructureError(f"idealize needs a valid gBa: {report}")
    base = sorted_labels(algebra.carrier)
    primed = {a: Primed(a) for a in base}
    carrier = list(base) + [primed[a] for a in base]
    jn, mt, df = algebra.join, algebra.meet, algebra.diff_table
    join, meet, comp = {}, {}, {}
    for a in base:
        comp[a] = primed[a]
        comp[primed[a]] = a
        for b in base:
            join[(a, b)] = jn[(a, b)]
            meet[(a, b)] = mt[(a, b)]
            join[(a, primed[b])] = primed[df[(b, a)]]
            join[(primed[a], b)] = primed[df[(a, b)]]
            join[(primed[a], primed[b])] = primed[mt[(a, b)]]
            meet[(a, primed[b])] = df[(a, b)]
            meet[(primed[a], b)] = df[(b, a)]
            meet[(primed[a], primed[b])] = primed[jn[(a, b)]]
    bottom = algebra.bottom
    top = primed[algebra.bottom]
    ba = BooleanAlgebra(carrier, join, meet, comp, bottom, top)
    return IdealizedBooleanAlgebra(ba, frozenset(base))


def iba_forget(idealized):
    """Restrict to the ideal; relative complements become a ^ not b."""
    report = idealized.validate()
    if not report.ok:
        raise StructureError(f"iba_forget needs a valid iBa: {report}")
    alg = idealized.algebra
    ideal = idealized.ideal
    join = {(a, b): alg.join[(a, b)] for a in ideal for b in ideal}
    meet = {(a, b): alg.meet[(a, b)] for a in ideal for b in ideal}
    diff = {(a, b): alg.meet[(a, alg.complement[b])] for a in ideal for b in ideal}
    return GeneralizedBooleanAlgebra(ideal, join, meet, alg.bottom, diff)


def stone(idealized):
    """Pointed Stone space: atoms as points, star the atom outside the ideal."""
    report = idealized.validate()
    if not report.ok:
        raise StructureError(f"stone needs a valid iBa: {report}")
    alg = idealized.algebra
    atoms = alg.atoms()
    outside = [a for a in atoms if a not in idealized.ideal]
    if len(outside) != 1:
        raise StructureError(f"ideal not maximal: {len(outside)} atoms outside")
    return PointedBooleanSpace(frozenset(atoms), outside[0])


def clopen(x):
    """All subsets of a finite discrete pointed space, ideal = sets omitting star."""
    ba = BooleanAlgebra.powerset(x.points)
    ideal = frozenset(s for s in ba.carrier if x.star not in s)
    return IdealizedBooleanAlgebra(ba, ideal)


def _join_all(table, bottom, elems):
    acc = bottom
    for e in elems:
        acc = table[(acc, e)]
    return acc


def find_gba_isomorphism(a, b):
    """Exhaustive isomorphism search between two valid finite gBas.

    Elements of a finite gBa are joins of the atoms below them, so it is
    enough to try atom bijections and extend by joins; atom counts prune
    the search immediately.
    """
    if len(a) != len(b):
        return None
    atoms_a, atoms_b = a.atoms(), b.atoms()
    if len(atoms_a) != len(atoms_b):
        return None
    for perm in itertools.permutations(atoms_b):
        amap = dict(zip(atoms_a, perm))
        phi = {}
        ok = True
        for x in sorted_labels(a.carrier):
            below = [amap[t] for t in atoms_a if a.leq(t, x)]
            phi[x] = _join_all(b.join, b.bottom, below)
        if len(set(phi.values())) != len(a):
            continue
        for x in a.carrier:
            if not ok:
                break
            for y in a.carrier:
                if (phi[a.join[(x, y)]] != b.join[(phi[x], phi[y])]
                        or phi[a.meet[(x, y)]] != b.meet[(phi[x], phi[y])]):
                    ok = False
                    break
        if ok and phi[a.bottom] == b.bottom:
            return phi
    return None


def find_iba_isomorphism(bi, bj):
    """Exhaustive iBa isomorphism: Boolean isomorphism carrying ideal onto ideal."""
    if len(bi) != len(bj):
        return None
    ai, aj = bi.algebra, bj.algebra
    atoms_i, atoms_j = ai.atoms(), aj.atoms()
    if len(atoms_i) != len(atoms_j):
        return None
    star_i = [t for t in atoms_i if t not in bi.ideal]
    star_j = [t for t in atoms_j if t not in bj.ideal]
    if len(star_i) != 1 or len(star_j) != 1:
        return None
    rest_i = [t for t in atoms_i if t != star_i[0]]
    rest_j = [t for t in atoms_j if t != star_j[0]]
    for perm in itertools.permutations(rest_j):
        amap = dict(zip(rest_i, perm))
        amap[star_i[0]] = star_j[0]
        phi = {}
        for x in sorted_labels(ai.carrier):
            below = [amap[t] for t in atoms_i if ai.leq(t, x)]
            phi[x] = _join_all(aj.join, aj.bottom, below)
        ok = len(set(phi.values())) == len(ai.carrier)
        for x in ai.carrier:
            if not ok:
                break
            for y in ai.carrier:
                if (phi[ai.join[(x, y)]] != aj.join[(phi[x], phi[y])]
                        or phi[ai.meet[(x, y)]] != aj.meet[(phi[x], phi[y])]):
                    ok = False
                    break
        if not ok:
            continue
        if any(phi[ai.complement[x]] != aj.complement[phi[x]] for x in ai.carrier):
            continue
        if {phi[x] for x in bi.ideal} != set(bj.ideal):
            continue
        return phi
    return None
