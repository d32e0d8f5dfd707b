"""Finite pointed Boolean spaces: a finite label set with one designated point."""

from dataclasses import dataclass

from .errors import StructureError
from .rat import sorted_labels


@dataclass(frozen=True)
class PointedBooleanSpace:
    """A finite set of opaque point labels plus a designated basepoint."""

    points: frozenset
    star: object

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))
        if self.star not in self.points:
            raise StructureError(f"star {self.star!r} not in points")

    @property
    def nonstar(self):
        """The non-designated points, in deterministic order."""
        return tuple(p for p in sorted_labels(self.points) if p != self.star)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        pts = ",".join(str(p) for p in sorted_labels(self.points))
        return f"PointedBooleanSpace({{{pts}}}, star={self.star})"


def space(*nonstar_points, star="*"):
    """Convenience constructor: space('1','2','3') with default basepoint '*'."""
    return PointedBooleanSpace(frozenset(nonstar_points) | {star}, star)


def pointed_bijection(x, y):
    """A basepoint-preserving bijection between two spaces, or None.

    Finite pointed spaces are discrete, so any bijection matching the stars
    witnesses isomorphism; we return a canonical one.
    """
    if len(x.points) != len(y.points):
        return None
    mapping = {x.star: y.star}
    for p, q in zip(x.nonstar, y.nonstar):
        mapping[p] = q
    return mapping
