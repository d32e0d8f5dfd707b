"""Finite pointed frames and step-valued frame reals.

A finite frame is a finite distributive lattice; its Heyting implication,
pseudocomplements, rather-below relation and complemented part are derived
tables.  A frame real is a partition of the top into complemented cells,
each carrying a rational value (extended reals allowed for the D-type used
by drop/lift computations); the cell containing the designated point
carries 0.  Induced operations are computed cell-wise and certified against
the join-of-meets formula evaluated on a rational grid; surjections carry
their adjoints, with density decided exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import (BudgetError, PositivityError, SpaceMismatchError,
                     StructureError, UnsupportedOperationError)
from .rat import NEG_INF, POS_INF, is_finite, sorted_labels


@dataclass
class FrameViolation:
    law: str
    witness: tuple

    def __repr__(self):
        return f"{self.law} at {self.witness}"


def frame_validate(labels, leq_pairs):
    """Violations of the finite-frame laws for a raw (labels, order) pair."""
    labels = list(labels)
    leq = set(leq_pairs)
    out = []
    for x in labels:
        if (x, x) not in leq:
            out.append(FrameViolation("order not reflexive", (x,)))
    for x, y in leq:
        if (y, x) in leq and x != y:
            out.append(FrameViolation("order not antisymmetric", (x, y)))
    for x, y in leq:
        for z in labels:
            if (y, z) in leq and (x, z) not in leq:
                out.append(FrameViolation("order not transitive", (x, y, z)))
    if out:
        return out
    above = {x: {y for y in labels if (x, y) in leq} for x in labels}
    below = {x: {y for y in labels if (y, x) in leq} for x in labels}
    join, meet = {}, {}
    for a in labels:
        for b in labels:
            ubs = above[a] & above[b]
            lub = [u for u in ubs if all((u, v) in leq for v in ubs)]
            lbs = below[a] & below[b]
            glb = [u for u in lbs if all((v, u) in leq for v in lbs)]
            if len(lub) != 1:
                out.append(FrameViolation("no unique join", (a, b)))
            if len(glb) != 1:
                out.append(FrameViolation("no unique meet", (a, b)))
            if len(lub) == 1 and len(glb) == 1:
                join[(a, b)] = lub[0]
                meet[(a, b)] = glb[0]
    if out:
        return out
    for a in labels:
        for b in labels:
            for c in labels:
                lhs = meet[(a, join[(b, c)])]
                rhs = join[(meet[(a, b)], meet[(a, c)])]
                if lhs != rhs:
                    out.append(FrameViolation("distributivity", (a, b, c)))
                    return out
    return out


class FiniteFrame:
    """Validated finite frame with all derived tables precomputed."""

    def __init__(self, labels, leq_pairs):
        violations = frame_validate(labels, leq_pairs)
        if violations:
            raise StructureError(f"not a finite frame: {violations[:3]}")
        self.labels = tuple(sorted_labels(labels))
        self.index = {x: i for i, x in enumerate(self.labels)}
        n = len(self.labels)
        leq = set(leq_pairs)
        self.leq_table = [[(self.labels[i], self.labels[j]) in leq
                           for j in range(n)] for i in range(n)]
        self._join = [[None] * n for _ in range(n)]
        self._meet = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                ubs = [k for k in range(n)
                       if self.leq_table[i][k] and self.leq_table[j][k]]
                self._join[i][j] = next(u for u in ubs
                                        if all(self.leq_table[u][v] for v in ubs))
                lbs = [k for k in range(n)
                       if self.leq_table[k][i] and self.leq_table[k][j]]
                self._meet[i][j] = next(u for u in lbs
                                        if all(self.leq_table[v][u] for v in lbs))
        self.bottom = self.labels[next(i for i in range(n)
                                       if all(self.leq_table[i][j] for j in range(n)))]
        self.top = self.labels[next(i for i in range(n)
                                    if all(self.leq_table[j][i] for j in range(n)))]
        bot = self.index[self.bottom]
        self._imp = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = bot
                for k in range(n):
                    if self.leq_table[self._meet[k][i]][j]:
                        acc = self._join[acc][k]
                self._imp[i][j] = acc
        self.pseudo = {self.labels[i]: self.labels[self._imp[i][bot]]
                       for i in range(n)}
        self.complemented = frozenset(
            x for x in self.labels if self.join(x, self.pseudo[x]) == self.top)

    @classmethod
    def from_covers(cls, labels, covers):
        labels = list(labels)
        leq = {(x, x) for x in labels} | set(covers)
        changed = True
        while changed:
            changed = False
            for (a, b) in list(leq):
                for (c, d) in list(leq):
                    if b == c and (a, d) not in leq:
                        leq.add((a, d))
                        changed = True
        return cls(labels, leq)

    @classmethod
    def from_sets(cls, family):
        fam = {frozenset(s) for s in family}
        leq = {(a, b) for a in fam for b in fam if a <= b}
        return cls(fam, leq)

    @classmethod
    def chain(cls, size):
        labels = list(range(size))
        return cls(labels, {(i, j) for i in labels for j in labels if i <= j})

    @classmethod
    def product(cls, a, b):
        labels = [(x, y) for x in a.labels for y in b.labels]
        leq = {((x1, y1), (x2, y2))
               for (x1, y1) in labels for (x2, y2) in labels
               if a.leq(x1, x2) and b.leq(y1, y2)}
        return cls(labels, leq)

    def leq(self, x, y):
        return self.leq_table[self.index[x]][self.index[y]]

    def join(self, x, y):
        return self.labels[self._join[self.index[x]][self.index[y]]]

    def meet(self, x, y):
        return self.labels[self._meet[self.index[x]][self.index[y]]]

    def join_all(self, xs):
        return reduce(self.join, xs, self.bottom)

    def meet_all(self, xs):
        return reduce(self.meet, xs, self.top)

    def implies(self, x, y):
        return self.labels[self._imp[self.index[x]][self.index[y]]]

    def rather_below(self, x, y):
        return self.join(self.pseudo[x], y) == self.top

    def complement(self, x):
        if x not in self.complemented:
            raise StructureError(f"{x} is not complemented")
        return self.pseudo[x]

    def derived_tables(self):
        """The computed structure: implication, pseudocomplement, rather-below,
        complemented elements, and trivial compactness at finite scale."""
        rb = {(x, y) for x in self.labels for y in self.labels
              if self.rather_below(x, y)}
        return {"implies": {(x, y): self.implies(x, y)
                            for x in self.labels for y in self.labels},
                "pseudocomplement": dict(self.pseudo),
                "rather_below": rb,
                "complemented": self.complemented,
                "compact": True}

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (isinstance(other, FiniteFrame) and self.labels == other.labels
                and self.leq_table == other.leq_table)

    def __hash__(self):
        return hash(self.labels)


class PointedFiniteFrame:
    """A finite frame with a frame map onto 2, given by its true-filter."""

    def __init__(self, frame, focus=None, true_set=None):
        self.frame = frame
        if true_set is None:
            if focus is None:
                raise StructureError("need a focal element or an explicit filter")
            true_set = frozenset(x for x in frame.labels if frame.leq(focus, x))
        self.true_set = frozenset(true_set)
        self._validate()

    def point(self, x):
        return x in self.true_set

    def _validate(self):
        fr = self.frame
        if not self.point(fr.top) or self.point(fr.bottom):
            raise StructureError("point must send top to top and bottom to bottom")
        for x in fr.labels:
            for y in fr.labels:
                if self.point(fr.meet(x, y)) != (self.point(x) and self.point(y)):
                    raise StructureError(f"point not meet-preserving at ({x},{y})")
                if self.point(fr.join(x, y)) != (self.point(x) or self.point(y)):
                    raise StructureError(f"point not join-preserving at ({x},{y})")

    def __eq__(self, other):
        return (isinstance(other, PointedFiniteFrame)
                and self.frame == other.frame and self.true_set == other.true_set)

    def __hash__(self):
        return hash((self.frame, self.true_set))

    def __repr__(self):
        return f"PointedFiniteFrame({len(self.frame)} elements)"


@dataclass(frozen=True)
class OpenInterval:
    """An open rational interval, optionally closed at infinite endpoints.

    closed_lo/closed_hi model the extended-real opens [-inf, r) and
    (r, +inf]; they are only meaningful when the endpoint is infinite.
    """

    lo: object
    hi: object
    closed_lo: bool = False
    closed_hi: bool = False

    def contains(self, v):
        if v == NEG_INF:
            return bool(self.closed_lo)
        if v == POS_INF:
            return bool(self.closed_hi)
        return self.lo < v < self.hi

    def restrict_to_reals(self):
        """The image under U -> U n (-inf, inf), dropping the infinite ends."""
        return OpenInterval(self.lo, self.hi)

    def __repr__(self):
        lo = "[-inf" if self.closed_lo else f"({self.lo}"
        hi = "+inf]" if self.closed_hi else f"{self.hi})"
        return f"{lo},{hi}"


def ray_below(r):
    return OpenInterval(NEG_INF, Fraction(r))


def ray_above(r):
    return OpenInterval(Fraction(r), POS_INF)


def real_line():
    return OpenInterval(NEG_INF, POS_INF)


def _value_sort_key(v):
    if v == NEG_INF:
        return (0, Fraction(0))
    if v == POS_INF:
        return (2, Fraction(0))
    return (1, Fraction(v))


class FrameReal:
    """Step-valued frame real: disjoint complemented cells with join top.

    extended=True admits +/-inf cells (the D-type); pointed=False skips
    the basepoint-cell rule, for deliberately unpointed test elements.
    """

    def __init__(self, pframe, cells, extended=False, pointed=True):
        self.pframe = pframe
        self.extended = extended
        self.pointed = pointed
        fr = pframe.frame
        merged = {}
        for value, cell in cells:
            if is_finite(value):
                value = Fraction(value)
            elif not extended:
                raise StructureError("infinite values need a D-type frame real")
            if cell not in fr.index:
                raise StructureError(f"unknown frame element {cell!r}")
            if cell == fr.bottom:
                continue
            merged[value] = fr.join(merged[value], cell) if value in merged else cell
        self.cells = tuple(sorted(merged.items(),
                                  key=lambda kv: _value_sort_key(kv[0])))
        self._validate()

    def _validate(self):
        fr = self.pframe.frame
        items = self.cells
        for i, (_, c) in enumerate(items):
            for j in range(i + 1, len(items)):
                if fr.meet(c, items[j][1]) != fr.bottom:
                    raise StructureError(
                        f"cells {c!r} and {items[j][1]!r} are not disjoint")
        if fr.join_all(c for _, c in items) != fr.top:
            raise StructureError("cells do not cover the frame")
        if self.pointed:
            pointed_cells = [(v, c) for v, c in items if self.pframe.point(c)]
            if len(pointed_cells) != 1 or pointed_cells[0][0] != 0:
                raise StructureError(
                    "the cell containing the designated point must carry 0")

    @classmethod
    def zero(cls, pframe):
        return cls(pframe, [(Fraction(0), pframe.frame.top)])

    @classmethod
    def constant_outside_point(cls, pframe, value, cell):
        comp = pframe.frame.complement(cell)
        return cls(pframe, [(Fraction(value), cell), (Fraction(0), comp)])

    def value_of(self, cell_query):
        for v, c in self.cells:
            if c == cell_query:
                return v
        raise StructureError(f"no cell {cell_query!r}")

    def values(self):
        return [v for v, _ in self.cells]

    def finite_part_join(self):
        fr = self.pframe.frame
        return fr.join_all(c for v, c in self.cells if is_finite(v))

    def eval(self, interval):
        """The frame element assigned to an open interval: join of matching cells."""
        fr = self.pframe.frame
        return fr.join_all(c for v, c in self.cells if interval.contains(v))

    def _zip(self, other, fn):
        if not isinstance(other, FrameReal):
            return NotImplemented
        if self.pframe != other.pframe:
            raise SpaceMismatchError("frame reals over different pointed frames")
        if self.extended or other.extended:
            raise UnsupportedOperationError("arithmetic needs finite-valued operands")
        fr = self.pframe.frame
        cells = []
        for v1, c1 in self.cells:
            for v2, c2 in other.cells:
                c = fr.meet(c1, c2)
                if c != fr.bottom:
                    cells.append((fn(v1, v2), c))
        return FrameReal(self.pframe, cells)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.unary(lambda v: -v)

    def meet(self, other):
        return self._zip(other, min)

    def join(self, other):
        return self._zip(other, max)

    def unary(self, fn):
        if self.extended:
            raise UnsupportedOperationError("arithmetic needs finite-valued operands")
        return FrameReal(self.pframe, [(fn(v), c) for v, c in self.cells])

    def scale(self, q):
        q = Fraction(q)
        return self.unary(lambda v: q * v)

    def is_nonneg(self):
        return all(v >= 0 for v in self.values())

    def _require_nonneg(self, op):
        if not self.is_nonneg():
            raise PositivityError(f"{op} requires a nonnegative frame real")

    def truncate(self):
        self._require_nonneg("truncate")
        return self.unary(lambda v: min(v, Fraction(1)))

    def tminus(self, r):
        r = Fraction(r)
        if r < 0:
            raise PositivityError(f"tminus needs r >= 0, got {r}")
        if r == 0:
            return self
        self._require_nonneg("tminus")
        return self.unary(lambda v: max(v - r, Fraction(0)))

    def trunc_at(self, n):
        n = Fraction(n)
        if n <= 0:
            raise PositivityError(f"trunc_at needs n > 0, got {n}")
        self._require_nonneg("trunc_at")
        return self.unary(lambda v: min(v, n))

    def leq(self, other):
        diff = other - self
        return diff.is_nonneg()

    def coz(self):
        """The cozero element g(0, inf) v g(-inf, 0)."""
        fr = self.pframe.frame
        return fr.join(self.eval(ray_above(0)), self.eval(ray_below(0)))

    def __eq__(self, other):
        return (isinstance(other, FrameReal) and self.pframe == other.pframe
                and self.cells == other.cells)

    def __hash__(self):
        return hash((self.pframe, self.cells))

    def __repr__(self):
        inner = ", ".join(f"{v}:{c}" for v, c in self.cells)
        return f"FrameReal[{inner}]"


# --- induced operations and the join-of-meets oracle ---------------------

_BINARY = {"add": lambda a, b: a + b, "sub": lambda a, b: a - b,
           "join": max, "meet": min}


def _unary_fn(tag, param):
    if tag == "negate":
        return lambda v: -v
    if tag == "scale":
        q = Fraction(param)
        return lambda v: q * v
    if tag == "truncate":
        return lambda v: min(v, Fraction(1))
    if tag == "tminus":
        r = Fraction(param)
        return lambda v: max(v - r, Fraction(0))
    if tag == "truncN":
        n = Fraction(param)
        return lambda v: min(v, n)
    return None


def induced_op(tag, operands, param=None, verify=True):
    """Induced operation on frame reals, computed cell-wise.

    With verify=True (the default) the result is certified against the
    join-of-meets formula on the rational grid generated by the operand
    values; disagreement raises.
    """
    operands = list(operands)
    if not operands:
        raise StructureError("no operands")
    if any(g.extended for g in operands):
        raise UnsupportedOperationError("induced operations act on finite-valued reals")
    if tag in _BINARY:
        if len(operands) != 2:
            raise StructureError(f"{tag} is binary")
        result = operands[0]._zip(operands[1], _BINARY[tag])
    else:
        fn = _unary_fn(tag, param)
        if fn is None:
            raise UnsupportedOperationError(f"unknown operation tag {tag!r}")
        if len(operands) != 1:
            raise StructureError(f"{tag} is unary")
        if tag in ("truncate", "tminus", "truncN"):
            operands[0]._require_nonneg(tag)
            if tag == "tminus" and Fraction(param) < 0:
                raise PositivityError("tminus needs r >= 0")
        result = operands[0].unary(fn)
    if verify:
        mismatch = oracle_mismatch(tag, operands, result, param)
        if mismatch is not None:
            raise StructureError(f"join-of-meets oracle disagrees at {mismatch!r}")
    return result


def _op_value(tag, values, param):
    if tag in _BINARY:
        return _BINARY[tag](*values)
    return _unary_fn(tag, param)(values[0])


def _base_grid(operands, param, tag):
    vals = sorted({Fraction(v) for g in operands for v in g.values()}
                  | ({Fraction(param)} if tag in ("tminus", "truncN") else set())
                  | ({Fraction(1)} if tag == "truncate" else set()))
    grid = list(vals)
    for a, b in zip(vals, vals[1:]):
        grid.append((a + b) / 2)
    grid.append(vals[0] - 1)
    grid.append(vals[-1] + 1)
    return sorted(set(grid))


def _grid_intervals(grid):
    out = [real_line()]
    for r in grid:
        out.append(ray_below(r))
        out.append(ray_above(r))
    for i, a in enumerate(grid):
        for b in grid[i + 1:]:
            out.append(OpenInterval(a, b))
    return out


def oracle_mismatch(tag, operands, result, param=None):
    """First grid interval where the join-of-meets formula differs, or None.

    The formula joins, over boxes of opens whose image lies inside V, the
    meets of the operand evaluations.  For step-valued operands it suffices
    to consider one tight box around each tuple of operand values: general
    opens decompose into intervals and frame distributivity splits their
    contributions, while a tight box around a value tuple realizes the meet
    of the corresponding cells.  The half-width gamma is chosen so small
    that a tight box's image lies in V exactly when the tuple's value does.
    """
    fr = operands[0].pframe.frame
    grid = _base_grid(operands, param, tag)
    value_sets = [[v for v, _ in g.cells] for g in operands]
    combos = []

    def rec(i, acc):
        if i == len(operands):
            combos.append(tuple(acc))
            return
        for v in value_sets[i]:
            rec(i + 1, acc + [v])

    rec(0, [])
    outputs = {_op_value(tag, combo, param) for combo in combos}
    gaps = [abs(c - w) for c in grid for w in outputs if c != w]
    gamma = min(gaps, default=Fraction(1)) / (2 * (len(operands) + 1))
    boxes = []
    for combo in combos:
        meet = fr.top
        for g, v in zip(operands, combo):
            meet = fr.meet(meet, g.eval(OpenInterval(v - gamma, v + gamma)))
        if meet == fr.bottom:
            continue
        image = _image_interval(tag, [(v - gamma, v + gamma) for v in combo], param)
        boxes.append((image, meet))
    for v_int in _grid_intervals(grid):
        formula = fr.join_all(m for image, m in boxes
                              if _image_inside(image, v_int))
        if formula != result.eval(v_int):
            return v_int
    return None


def _image_interval(tag, intervals, param):
    """Exact image (lo, hi, lo_attained, hi_attained) of an open box.

    All supported operations are monotone in each coordinate (subtraction
    antitone in the second), so the image is an interval with endpoints at
    the box corners; clamping operations may attain their kink values.
    """
    if tag == "add":
        (a1, b1), (a2, b2) = intervals
        return (a1 + a2, b1 + b2, False, False)
    if tag == "sub":
        (a1, b1), (a2, b2) = intervals
        return (a1 - b2, b1 - a2, False, False)
    if tag == "join":
        (a1, b1), (a2, b2) = intervals
        return (max(a1, a2), max(b1, b2), False, False)
    if tag == "meet":
        (a1, b1), (a2, b2) = intervals
        return (min(a1, a2), min(b1, b2), False, False)
    (a, b) = intervals[0]
    if tag == "negate":
        return (-b, -a, False, False)
    if tag == "scale":
        q = Fraction(param)
        if q > 0:
            return (q * a, q * b, False, False)
        if q < 0:
            return (q * b, q * a, False, False)
        return (Fraction(0), Fraction(0), True, True)
    if tag in ("truncate", "truncN"):
        cap = Fraction(1) if tag == "truncate" else Fraction(param)
        if b <= cap:
            return (a, b, False, False)
        if a >= cap:
            return (cap, cap, True, True)
        return (a, cap, False, True)
    if tag == "tminus":
        r = Fraction(param)
        if b <= r:
            return (Fraction(0), Fraction(0), True, True)
        if a >= r:
            return (a - r, b - r, False, False)
        return (Fraction(0), b - r, True, False)
    raise UnsupportedOperationError(f"unknown operation tag {tag!r}")


def _image_inside(image, v_int):
    lo, hi, lo_att, hi_att = image
    if lo == hi and lo_att and hi_att:
        return v_int.contains(lo)
    lo_ok = v_int.contains(lo) if lo_att else (
        v_int.lo == NEG_INF or v_int.lo < lo or (v_int.lo == lo and not lo_att))
    hi_ok = v_int.contains(hi) if hi_att else (
        v_int.hi == POS_INF or v_int.hi > hi or (v_int.hi == hi and not hi_att))
    return lo_ok and hi_ok


def frame_apply_op(tag, operands, param=None, verify=True):
    """Dispatcher mirroring the element-level operation tags."""
    return induced_op(tag, operands, param=param, verify=verify)


# --- characteristic functions and unital components ----------------------

def chi(pframe, x):
    """Characteristic frame real of a complemented element avoiding the point."""
    fr = pframe.frame
    if x not in fr.complemented:
        raise StructureError(f"{x!r} is not complemented")
    if pframe.point(x):
        raise StructureError("characteristic functions need a cell avoiding the point")
    if x == fr.bottom:
        return FrameReal.zero(pframe)
    return FrameReal(pframe, [(Fraction(1), x), (Fraction(0), fr.complement(x))])


def frame_uc_check(u):
    """True with the complemented witness coz u iff u = truncate(2u)."""
    if not u.is_nonneg():
        raise PositivityError("unital components are nonnegative")
    if induced_op("truncate", [u.scale(2)], verify=False) != u:
        return False, None
    witness = u.eval(ray_above(0))
    fr = u.pframe.frame
    assert witness in fr.complemented
    assert not u.pframe.point(witness)
    return True, witness


# --- surjections, drops and lifts -----------------------------------------

class FrameSurjection:
    """A pointed frame surjection with its precomputed adjoint."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        self._validate()
        fs, ft = source.frame, target.frame
        self.adjoint = {y: fs.join_all(x for x in fs.labels
                                       if ft.leq(self.mapping[x], y))
                        for y in ft.labels}
        self.dense = all(self.mapping[x] != ft.bottom or x == fs.bottom
                         for x in fs.labels)

    def _validate(self):
        fs, ft = self.source.frame, self.target.frame
        for x in fs.labels:
            if x not in self.mapping or self.mapping[x] not in ft.index:
                raise StructureError(f"map not total at {x!r}")
        if self.mapping[fs.top] != ft.top or self.mapping[fs.bottom] != ft.bottom:
            raise StructureError("map must preserve top and bottom")
        for x in fs.labels:
            for y in fs.labels:
                if self.mapping[fs.join(x, y)] != ft.join(self.mapping[x],
                                                          self.mapping[y]):
                    raise StructureError(f"map not join-preserving at ({x},{y})")
                if self.mapping[fs.meet(x, y)] != ft.meet(self.mapping[x],
                                                          self.mapping[y]):
                    raise StructureError(f"map not meet-preserving at ({x},{y})")
        if set(self.mapping.values()) != set(ft.labels):
            raise StructureError("map not surjective")
        for x in fs.labels:
            if self.target.point(self.mapping[x]) != self.source.point(x):
                raise StructureError(f"map not pointed at {x!r}")

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other):
        return (isinstance(other, FrameSurjection) and self.source == other.source
                and self.target == other.target and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.source, self.target))

    def galois_holds(self):
        """q(x) <= y iff x <= adjoint(y), over all pairs."""
        fs, ft = self.source.frame, self.target.frame
        for x in fs.labels:
            for y in ft.labels:
                if ft.leq(self.mapping[x], y) != fs.leq(x, self.adjoint[y]):
                    return False
        return True


def surjection_tools(q):
    """Adjoint table and exact density flag, with the Galois law asserted."""
    assert q.galois_holds(), "adjoint must satisfy the Galois law"
    return {"adjoint": dict(q.adjoint), "dense": q.dense}


@dataclass
class DropResult:
    ok: bool
    result: object = None  # FrameReal on the target when ok
    condition_value: object = None  # q(h'(-inf, inf)) when refused

    def __repr__(self):
        if self.ok:
            return f"DropResult(ok, {self.result!r})"
        return f"DropResult(refused, condition={self.condition_value!r})"


def drop(q, h_prime):
    """Push a D-type frame real along q when q(h'(-inf,inf)) = top.

    On success the finite-value cells map through q (infinite cells are
    forced to bottom) and the commuting square q o h' = h o p is verified
    on the rational grid; otherwise the failed condition value is returned.
    """
    if h_prime.pframe != q.source:
        raise SpaceMismatchError("h' must live on the source of q")
    ft = q.target.frame
    condition = q(h_prime.finite_part_join())
    if condition != ft.top:
        return DropResult(False, condition_value=condition)
    cells = [(v, q(c)) for v, c in h_prime.cells if is_finite(v)]
    for v, c in h_prime.cells:
        if not is_finite(v):
            assert q(c) == ft.bottom, "infinite cells must collapse under the condition"
    h = FrameReal(q.target, cells, pointed=h_prime.pointed)
    probes = [real_line()]
    for r in _probe_grid(v for v in h_prime.values() if is_finite(v)):
        probes.append(OpenInterval(NEG_INF, r, closed_lo=True))
        probes.append(OpenInterval(r, POS_INF, closed_hi=True))
        probes.append(ray_below(r))
        probes.append(ray_above(r))
    for u in probes:
        if q(h_prime.eval(u)) != h.eval(u.restrict_to_reals()):
            raise StructureError(f"drop square fails at {u!r}")
    return DropResult(True, result=h)


def _probe_grid(values):
    """Values plus midpoints and a point beyond each extreme."""
    vals = sorted({Fraction(v) for v in values} | {Fraction(0)})
    grid = list(vals)
    grid += [(a + b) / 2 for a, b in zip(vals, vals[1:])]
    grid += [vals[0] - 1, vals[-1] + 1]
    return sorted(set(grid))


@dataclass
class LiftResult:
    ok: bool
    witness: object = None  # FrameReal on the source when ok
    method: str = None
    note: str = None

    def __repr__(self):
        if self.ok:
            return f"LiftResult(ok via {self.method}, {self.witness!r})"
        return f"LiftResult(refuted: {self.note})"


def _verify_lift(q, h, h_prime):
    probes = [real_line()]
    for r in _probe_grid(h.values()):
        probes.append(ray_below(r))
        probes.append(ray_above(r))
    return all(q(h_prime.eval(u)) == h.eval(u) for u in probes)


def e0q_member(q, h, max_frame=20):
    """Find h' on the source with q o h' = h o p, or refute exhaustively.

    All step reals on finite frames are bounded, so a single factorization
    of h itself suffices.  The adjoint candidate cells adjoint(x_i) are
    tried first; if they fail to cover, the fallback enumerates complemented
    preimage cells per value (bounded by max_frame source elements).
    """
    if not q.dense:
        raise StructureError("lifting requires a dense surjection")
    if h.pframe != q.target:
        raise SpaceMismatchError("h must live on the target of q")
    fs = q.source.frame
    cand = [(v, q.adjoint[c]) for v, c in h.cells]
    if fs.join_all(c for _, c in cand) == fs.top:
        h_prime = FrameReal(q.source, cand)
        assert _verify_lift(q, h, h_prime)
        return LiftResult(True, witness=h_prime, method="adjoint")
    return e0q_exhaustive(q, h, max_frame=max_frame)


def e0q_exhaustive(q, h, max_frame=20):
    """Complete search over complemented partitions of the source."""
    if not q.dense:
        raise StructureError("lifting requires a dense surjection")
    fs = q.source.frame
    if len(fs) > max_frame:
        raise BudgetError(f"source frame exceeds the {max_frame}-element bound")
    target_cells = list(h.cells)
    candidate_sets = []
    for v, x in target_cells:
        cands = [c for c in fs.labels if c in fs.complemented and q(c) == x]
        candidate_sets.append(cands)

    def search(i, chosen, acc):
        if i == len(target_cells):
            return list(chosen) if acc == fs.top else None
        for c in candidate_sets[i]:
            if all(fs.meet(c, d) == fs.bottom for d in chosen):
                found = search(i + 1, chosen + [c], fs.join(acc, c))
                if found is not None:
                    return found
        return None

    cells = search(0, [], fs.bottom)
    if cells is None:
        return LiftResult(False, note="no complemented partition lifts the cells")
    h_prime = FrameReal(q.source, [(v, c) for (v, _), c in zip(target_cells, cells)])
    assert _verify_lift(q, h, h_prime)
    return LiftResult(True, witness=h_prime, method="exhaustive")


# --- pointwise suprema and Dini --------------------------------------------

def frame_pointwise_sup(family):
    """Cell-wise maximum, verified by the defining join equation at all cuts."""
    family = list(family)
    if not family:
        raise StructureError("pointwise sup of an empty family")
    sup = reduce(lambda a, b: a.join(b), family)
    fr = sup.pframe.frame
    values = sorted({Fraction(v) for g in family + [sup] for v in g.values()})
    grid = values + [(a + b) / 2 for a, b in zip(values, values[1:])]
    grid += [values[0] - 1, values[-1] + 1]
    for r in sorted(set(grid)):
        lhs = fr.join_all(g.eval(ray_above(r)) for g in family)
        if lhs != sup.eval(ray_above(r)):
            raise StructureError(f"pointwise sup fails the cut test at r = {r}")
    return sup


@dataclass
class FrameDiniReport:
    limit_is_zero: bool
    uniform: bool
    index_map: dict

    def __repr__(self):
        if not self.limit_is_zero:
            return "FrameDiniReport(limit nonzero)"
        pairs = ", ".join(f"{e}->{m}" for e, m in sorted(self.index_map.items()))
        return f"FrameDiniReport(uniform, {pairs})"


def frame_dini(seq):
    """Monotone nonincreasing nonnegative frame reals, last term stable.

    When the stable tail is zero, compactness of the finite frame yields an
    index function epsilon -> m with g_n(-inf, epsilon) = top for n >= m.
    """
    seq = list(seq)
    if not seq:
        raise StructureError("empty sequence")
    fr = seq[0].pframe.frame
    for t in seq:
        if not t.is_nonneg():
            raise PositivityError("frame_dini needs nonnegative terms")
    for i in range(len(seq) - 1):
        if not seq[i + 1].leq(seq[i]):
            raise StructureError(f"sequence not nonincreasing at index {i + 2}")
    if seq[-1] != FrameReal.zero(seq[-1].pframe):
        return FrameDiniReport(False, False, {})
    values = sorted({Fraction(v) for g in seq for v in g.values()} | {Fraction(0)})
    grid = values + [(a + b) / 2 for a, b in zip(values, values[1:])]
    index_map = {}
    for eps in sorted(set(e for e in grid + [values[-1] + 1] if e > 0)):
        m = next(i for i in range(1, len(seq) + 1)
                 if all(t.eval(ray_below(eps)) == fr.top for t in seq[i - 1:]))
        index_map[eps] = m
    return FrameDiniReport(True, True, index_map)
