"""Markov tree generation, ordering and lookups.

Triplets {x, R, z} solve x^2 + R^2 + z^2 = 3xRz with the region number R
as the middle (largest) member.  The canonical list starts with the two
singular triplets {1,1,1}, {1,2,1} and continues breadth-first from
{1,5,2}, left child before right child, so positions are stable:

    1:{1,1,1}  2:{1,2,1}  3:{1,5,2}  4:{1,13,5}  5:{5,29,2}  6:{1,34,13} ...
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import (
    InvalidTriplet,
    NotFound,
    NotSingular,
    ResourceLimit,
    RootTriplet,
    SingularTriplet,
)

DEFAULT_MAX_NODES = 1 << 22
DEFAULT_MAX_DIGITS = 10 ** 6

_SINGULAR = ((1, 1, 1), (1, 2, 1))


@dataclass(frozen=True)
class Triplet:
    x: int
    r: int
    z: int

    @property
    def members(self) -> tuple[int, int, int]:
        return (self.x, self.r, self.z)

    @property
    def is_singular(self) -> bool:
        return self.members in _SINGULAR

    def __str__(self) -> str:
        return f"{{{self.x}, {self.r}, {self.z}}}"


def is_markov(x: int, r: int, z: int) -> bool:
    return (
        x >= 1
        and r >= 1
        and z >= 1
        and x * x + r * r + z * z == 3 * x * r * z
    )


def _require_valid(t: Triplet) -> None:
    if not is_markov(t.x, t.r, t.z):
        raise InvalidTriplet(f"{t} fails the Markov identity")


def _digit_guard(n: int, max_digits) -> None:
    # bits/3.32 lower-bounds the digit count; exact count is not needed.
    if max_digits is not None and n.bit_length() > max_digits * 10 // 3 + 4:
        raise ResourceLimit(f"region number exceeds the {max_digits}-digit budget")


def children(t: Triplet, max_digits=DEFAULT_MAX_DIGITS) -> tuple[Triplet, Triplet]:
    """Ordered (left, right) children of a non-singular triplet."""
    _require_valid(t)
    if t.is_singular:
        raise SingularTriplet(f"{t} is singular; use singular_successor")
    x, r, z = t.members
    left = Triplet(x, 3 * r * x - z, r)
    right = Triplet(r, 3 * r * z - x, z)
    _digit_guard(left.r, max_digits)
    _digit_guard(right.r, max_digits)
    return left, right


def singular_successor(t: Triplet) -> Triplet:
    """Next triplet in the singular chain: {1,1,1} -> {1,2,1} -> {1,5,2}."""
    if t.members == (1, 1, 1):
        return Triplet(1, 2, 1)
    if t.members == (1, 2, 1):
        return Triplet(1, 5, 2)
    raise NotSingular(f"{t} is not a singular triplet")


def parent(t: Triplet) -> Triplet:
    """Parent of a non-singular triplet other than the root {1,5,2}."""
    _require_valid(t)
    if t.is_singular:
        raise SingularTriplet(f"{t} is singular")
    if t.members == (1, 5, 2):
        raise RootTriplet("{1, 5, 2} is the root of the non-singular tree")
    x, r, z = t.members
    s = 3 * x * z - r
    up = Triplet(x, z, s) if x < z else Triplet(s, x, z)
    _require_valid(up)
    return up


def sibling_number(t: Triplet) -> int:
    """Region sibling number s = 3xz - R, the second middle-member solution."""
    _require_valid(t)
    return 3 * t.x * t.z - t.r


class MarkovList:
    """Canonical ordered triplet list with region lookups.

    Instances only grow; generated entries are immutable.  Growth is
    serialized by an internal lock, so concurrent lookups always observe
    a consistent prefix.
    """

    def __init__(self, depth: int = 0, max_nodes: int = DEFAULT_MAX_NODES,
                 max_digits=DEFAULT_MAX_DIGITS):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.max_nodes = max_nodes
        self.max_digits = max_digits
        self._entries = [Triplet(1, 1, 1), Triplet(1, 2, 1)]
        self._positions = {1: 1, 2: 2}
        self._level: list[Triplet] = []
        self._level_min = 2
        self._depth = 0
        self._lock = threading.Lock()
        self.extend_to_depth(depth)

    @property
    def depth(self) -> int:
        return self._depth

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.copy())

    def __getitem__(self, i):
        return self._entries[i]

    def entry_at(self, position: int) -> Triplet:
        """Entry by 1-based list position."""
        if not 1 <= position <= len(self._entries):
            raise NotFound(f"no entry at position {position}")
        return self._entries[position - 1]

    @staticmethod
    def depth_of_position(position: int) -> int:
        """Tree depth of a 1-based position (singular entries have depth 0)."""
        return 0 if position <= 2 else (position - 2).bit_length()

    def extend_to_depth(self, depth: int) -> None:
        with self._lock:
            self._grow(depth)

    def _grow(self, depth: int) -> None:
        while self._depth < depth:
            nodes_after = 2 + (1 << (self._depth + 1)) - 1
            if nodes_after > self.max_nodes:
                raise ResourceLimit(
                    f"depth {self._depth + 1} needs {nodes_after} nodes; "
                    f"budget is {self.max_nodes}"
                )
            if self._depth == 0:
                nxt = [Triplet(1, 5, 2)]
            else:
                nxt = []
                for t in self._level:
                    left, right = children(t, self.max_digits)
                    nxt.append(left)
                    nxt.append(right)
            for t in nxt:
                if t.r in self._positions:
                    raise InvalidTriplet(f"duplicate region number {t.r}")
                self._entries.append(t)
                self._positions[t.r] = len(self._entries)
            self._level = nxt
            self._level_min = min(t.r for t in nxt)
            self._depth += 1

    def position_of(self, region: int, deepen: bool = False) -> int:
        """1-based position of the entry with the given region number."""
        pos = self._positions.get(region)
        if pos is not None:
            return pos
        if not deepen:
            raise NotFound(f"region {region} not generated (depth {self._depth})")
        with self._lock:
            while True:
                pos = self._positions.get(region)
                if pos is not None:
                    return pos
                if region < self._level_min:
                    # every deeper region exceeds its parent, so stop
                    raise NotFound(f"{region} is not a Markov region number")
                self._grow(max(1, self._depth * 2))

    def triplet_for(self, region: int, deepen: bool = False) -> Triplet:
        return self._entries[self.position_of(region, deepen) - 1]

    def lookup(self, region: int, deepen: bool = False) -> tuple[Triplet, int]:
        pos = self.position_of(region, deepen)
        return self._entries[pos - 1], pos


def markov_list(depth: int, max_nodes: int = DEFAULT_MAX_NODES,
                max_digits=DEFAULT_MAX_DIGITS) -> MarkovList:
    """Generate the canonical list through the given non-singular depth."""
    return MarkovList(depth, max_nodes, max_digits)


def enumerate_mod(depth: int, modulus: int, max_nodes: int = DEFAULT_MAX_NODES):
    """Yield (x, R, z) residues mod `modulus` in canonical list order.

    The traversal applies the child formulas entirely in modular
    arithmetic, so it is safe at depths where the exact region numbers
    would be astronomically large.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    total = 2 + (1 << depth) - 1
    if total > max_nodes:
        raise ResourceLimit(f"depth {depth} needs {total} nodes; budget is {max_nodes}")
    m = modulus
    mm = m * m
    yield (1 % m, 1 % m, 1 % m)
    yield (1 % m, 2 % m, 1 % m)
    if depth < 1:
        return
    level = [((1 % m) * mm) + (5 % m) * m + (2 % m)]
    d = 1
    while True:
        for code in level:
            yield (code // mm, (code // m) % m, code % m)
        if d == depth:
            return
        nxt = []
        for code in level:
            x = code // mm
            r = (code // m) % m
            z = code % m
            t3 = 3 * r
            nxt.append(x * mm + ((t3 * x - z) % m) * m + r)
            nxt.append(r * mm + ((t3 * z - x) % m) * m + z)
        level = nxt
        d += 1


def tree_rows(mlist: MarkovList):
    """Rows (position, depth, x, R, z, sibling) for CSV/JSON export."""
    for i, t in enumerate(mlist, start=1):
        yield {
            "position": i,
            "depth": MarkovList.depth_of_position(i),
            "x": t.x,
            "R": t.r,
            "z": t.z,
            "sibling": 3 * t.x * t.z - t.r,
        }
