"""Farey-tree indexing of Markov regions.

Each non-singular region corresponds to a triplet of rationals
(a/b, x/y, c/d) in [0, 1] whose middle term is the mediant of the outer
two; descending the Markov tree and the mediant tree in lockstep from
({1,5,2}, (0, 1/2, 1)) gives a bijection.  Edge children have the closed
forms (x*k+a)/(y*k+b) on the left and (x*k+c)/(y*k+d) on the right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .edges import Side
from .errors import NotFound
from .tree import MarkovList


@dataclass(frozen=True)
class FareyTriplet:
    low: Fraction
    mid: Fraction
    high: Fraction

    def __post_init__(self):
        if not Fraction(0) <= self.low < self.mid < self.high <= Fraction(1):
            raise ValueError(f"not an ordered Farey triplet: {self}")
        if self.mid != _mediant(self.low, self.high):
            raise ValueError(f"middle term is not the mediant: {self}")
        det = (self.low.numerator * self.high.denominator
               - self.high.numerator * self.low.denominator)
        if abs(det) != 1:
            raise ValueError(f"outer terms not unimodular: {self}")

    def __str__(self):
        return f"({self.low}, {self.mid}, {self.high})"


def _mediant(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


ROOT = FareyTriplet(Fraction(0), Fraction(1, 2), Fraction(1))


def farey_children(t: FareyTriplet) -> tuple[FareyTriplet, FareyTriplet]:
    left = FareyTriplet(t.low, _mediant(t.low, t.mid), t.mid)
    right = FareyTriplet(t.mid, _mediant(t.mid, t.high), t.high)
    return left, right


def farey_for_region(r: int, mlist: MarkovList) -> FareyTriplet:
    """Descend to the region's tree position and return the matching
    Farey triplet."""
    if r in (1, 2):
        raise NotFound(f"singular region {r} has no Farey triplet")
    _, pos = mlist.lookup(r)
    depth = MarkovList.depth_of_position(pos)
    offset = pos - (2 + (1 << (depth - 1)))
    node = ROOT
    for i in range(depth - 1):
        bit = (offset >> (depth - 2 - i)) & 1
        node = farey_children(node)[bit]
    return node


def farey_edge_sequence(t: FareyTriplet, side: Side, k: int) -> Fraction:
    """Farey value of the k-th child along one edge of the region."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x, y = t.mid.numerator, t.mid.denominator
    if side is Side.LEFT:
        a, b = t.low.numerator, t.low.denominator
        return Fraction(x * k + a, y * k + b)
    c, d = t.high.numerator, t.high.denominator
    return Fraction(x * k + c, y * k + d)


def _decimal_digits(n: int) -> int:
    # exact digit count without rendering the whole number
    if n == 0:
        return 1
    est = (n.bit_length() * 30103) // 100000  # ~ floor(log10)
    p = 10 ** est
    while n < p:
        est -= 1
        p //= 10
    while n >= p * 10:
        est += 1
        p *= 10
    return est + 1


def log10_big(n: int) -> float:
    """log10 of a positive integer of any size, from the digit count and
    the leading fifteen digits."""
    if n <= 0:
        raise ValueError("n must be positive")
    digits = _decimal_digits(n)
    if digits <= 15:
        return math.log10(n)
    top = n // 10 ** (digits - 15)
    return (digits - 15) + math.log10(top)


def plot_points(depth: int, mlist: MarkovList):
    """(farey value, log10 R, depth) for every non-singular region through
    the given depth, ordered by Farey value."""
    if depth < 1:
        return []
    mlist.extend_to_depth(depth)
    points = []
    level = [(mlist.entry_at(3), ROOT)]
    d = 1
    while True:
        for trip, ft in level:
            points.append((ft.mid, log10_big(trip.r), d))
        if d == depth:
            break
        start = 2 + (1 << d)  # first position of the next level
        nxt = []
        for i, (trip, ft) in enumerate(level):
            fl, fr = farey_children(ft)
            nxt.append((mlist.entry_at(start + 2 * i), fl))
            nxt.append((mlist.entry_at(start + 2 * i + 1), fr))
        level = nxt
        d += 1
    points.sort(key=lambda p: p[0])
    return points


def plot_rows(depth: int, mlist: MarkovList):
    """CSV-ready rows for the Farey/log-region plot."""
    for frac, logr, d in plot_points(depth, mlist):
        yield {
            "farey_numerator": frac.numerator,
            "farey_denominator": frac.denominator,
            "farey_decimal": float(frac),
            "log10_R": logr,
            "depth": d,
        }
