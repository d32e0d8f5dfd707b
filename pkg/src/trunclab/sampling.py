"""Seeded random generators for all model classes.

Everything is driven by an explicit random.Random instance, so suites are
reproducible from their seed.  Frames come from downset lattices of random
posets (disconnected posets give nontrivial Boolean parts, hence nonzero
frame reals); set families are closed under the Boolean operations by
saturation.
"""

import random
from fractions import Fraction

from .elements import SimpleElement
from .frames import FiniteFrame, FrameReal, FrameSurjection, PointedFiniteFrame
from .gba import GeneralizedBooleanAlgebra
from .spaces import PointedBooleanSpace

RATIONAL_POOL = [Fraction(n, d) for n in range(-6, 7) for d in (1, 2, 3, 4)]
POSITIVE_POOL = [q for q in RATIONAL_POOL if q > 0]


def rational(rng, nonneg=False):
    pool = POSITIVE_POOL if nonneg else RATIONAL_POOL
    return pool[rng.randrange(len(pool))]


def simple_element(rng, space, nonneg=False, truncated=False):
    vals = {}
    for p in space.nonstar:
        if rng.random() < 0.75:
            vals[p] = rational(rng, nonneg=nonneg)
    g = SimpleElement(space, vals)
    if nonneg:
        g = abs(g)
    if truncated:
        g = abs(g).truncate()
    return g


def closed_set_family(rng, base, seeds=3):
    """A family of subsets closed under union/intersection/difference."""
    base = list(base)
    family = {frozenset()}
    for _ in range(seeds):
        s = frozenset(p for p in base if rng.random() < 0.5)
        family.add(s)
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                for r in (a | b, a & b, a - b):
                    if r not in family:
                        family.add(r)
                        changed = True
    return frozenset(family)


def random_gba(rng, max_base=4):
    base = [f"e{i}" for i in range(rng.randint(1, max_base))]
    return GeneralizedBooleanAlgebra.from_sets(closed_set_family(rng, base))


def random_poset(rng, size):
    """A random poset on 0..size-1 as a reflexive-transitive leq set."""
    leq = {(i, i) for i in range(size)}
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < 0.4:
                leq.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for (c, d) in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return leq


def downset_frame(rng, max_points=4, max_size=20):
    """Frame of downsets of a random poset, capped at max_size elements.

    The poset is split into at least two comparability components so the
    frame has nontrivial complemented elements.
    """
    while True:
        n1 = rng.randint(1, max_points // 2)
        n2 = rng.randint(1, max_points - n1)
        leq1 = random_poset(rng, n1)
        leq2 = random_poset(rng, n2)
        points = [("a", i) for i in range(n1)] + [("b", i) for i in range(n2)]
        leq = {((("a", i), ("a", j))) for (i, j) in leq1}
        leq |= {((("b", i), ("b", j))) for (i, j) in leq2}
        downsets = set()

        def close_down(s):
            out = set(s)
            for p in list(out):
                for q in points:
                    if (q, p) in leq:
                        out.add(q)
            return frozenset(out)

        import itertools
        for r in range(len(points) + 1):
            for combo in itertools.combinations(points, r):
                downsets.add(close_down(combo))
        if len(downsets) <= max_size:
            return FiniteFrame.from_sets(downsets), points


def pointed_frame(rng, max_points=4, max_size=20):
    """A pointed downset frame; the point is membership of a chosen poset point."""
    frame, points = downset_frame(rng, max_points, max_size)
    focus_pt = points[rng.randrange(len(points))]
    true_set = frozenset(d for d in frame.labels if focus_pt in d)
    return PointedFiniteFrame(frame, true_set=true_set)


def frame_real(rng, pframe, max_blocks=3, nonneg=False):
    """A random step frame real: group the Boolean atoms into valued blocks."""
    fr = pframe.frame
    comp = [c for c in fr.labels if c in fr.complemented and c != fr.bottom]
    atoms = [c for c in comp
             if not any(d != c and d != fr.bottom and fr.leq(d, c) for d in comp)]
    blocks = {}
    for atom in atoms:
        blocks.setdefault(rng.randrange(max_blocks), []).append(atom)
    cells = []
    point_value_cell = None
    for members in blocks.values():
        cell = fr.join_all(members)
        if pframe.point(cell):
            point_value_cell = cell
        else:
            v = rational(rng, nonneg=nonneg)
            cells.append((v, cell))
    assert point_value_cell is not None
    cells.append((Fraction(0), point_value_cell))
    return FrameReal(pframe, cells)


def booleanization(pframe):
    """x -> x** onto the complemented part, when that is a pointed surjection.

    Double pseudocomplements land in the complemented sublattice only for
    some finite frames (the three-chain, Boolean frames, products of such);
    when any condition fails the constructor rejects and None is returned.
    """
    from .errors import StructureError

    fr = pframe.frame
    comp = sorted(set(fr.complemented), key=lambda c: fr.index[c])
    mapping = {x: fr.pseudo[fr.pseudo[x]] for x in fr.labels}
    if any(mapping[x] not in comp for x in fr.labels):
        return None
    for x in fr.labels:
        if pframe.point(mapping[x]) != pframe.point(x):
            return None
    try:
        target_frame = FiniteFrame(comp, {(a, b) for a in comp for b in comp
                                          if fr.leq(a, b)})
        target = PointedFiniteFrame(
            target_frame, true_set=frozenset(c for c in comp if pframe.point(c)))
        return FrameSurjection(pframe, target, mapping)
    except StructureError:
        return None


def open_quotient(pframe, y):
    """x -> x ^ y onto the downset of y; dense iff y is a dense element."""
    fr = pframe.frame
    down = [x for x in fr.labels if fr.leq(x, y)]
    target_frame = FiniteFrame(down, {(a, b) for a in down for b in down
                                      if fr.leq(a, b)})
    mapping = {x: fr.meet(x, y) for x in fr.labels}
    if not pframe.point(y):
        return None
    target = PointedFiniteFrame(target_frame,
                                true_set=frozenset(x for x in down if pframe.point(x)))
    return FrameSurjection(pframe, target, mapping)


def dense_surjection(rng, pframe):
    """A random dense pointed surjection out of pframe (identity fallback)."""
    fr = pframe.frame
    options = []
    dense_elems = [y for y in fr.labels
                   if fr.pseudo[y] == fr.bottom and pframe.point(y)]
    for y in dense_elems:
        q = open_quotient(pframe, y)
        if q is not None and q.dense:
            options.append(q)
    b = booleanization(pframe)
    if b is not None and b.dense:
        options.append(b)
    identity = FrameSurjection(pframe, pframe, {x: x for x in fr.labels})
    options.append(identity)
    return options[rng.randrange(len(options))]


def random_space(rng, max_points=4):
    n = rng.randint(1, max_points)
    return PointedBooleanSpace(frozenset({"*"} | {str(i) for i in range(1, n + 1)}),
                               "*")
