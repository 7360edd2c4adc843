"""Region-edge sequences: the triplets hanging along each side of a region.

The left edge of region {x, R, z} consists of the triplets whose third
member is R; the right edge of those whose first member is R.  Both
follow the recurrence kernel {3R, -1} and are generated by the shifted
Lucas combinations in `lucas`, valid for every integer index n: the
negative indices of one side reproduce the opposite side.
"""

from __future__ import annotations

from enum import Enum

from .errors import InvalidTriplet, WrongSideForSingular
from .lucas import DEFAULT_MAX_DIGITS, seq_u
from .tree import Triplet, is_markov


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"


def edge_region(head: Triplet, side: Side, n: int,
                max_digits=DEFAULT_MAX_DIGITS) -> int:
    """Region number of the n-th edge triplet; n=0 gives the head's outer
    member nearest that side, negative n wraps to the opposite edge."""
    x, r, z = head.members
    if side is Side.LEFT:
        return seq_u(z, r, x, n + 1, max_digits)
    return seq_u(x, r, z, n + 1, max_digits)


def edge_triplet(head: Triplet, side: Side, n: int,
                 max_digits=DEFAULT_MAX_DIGITS) -> Triplet:
    """The n-th (n >= 1) ordered triplet along one edge of the region."""
    if n < 1:
        raise ValueError("edge triplets are indexed from n = 1")
    if head.members == (1, 1, 1) and side is not Side.RIGHT:
        raise WrongSideForSingular("{1, 1, 1} has only a right edge")
    if head.members == (1, 2, 1) and side is not Side.LEFT:
        raise WrongSideForSingular("{1, 2, 1} has only a left edge")
    x, r, z = head.members
    if side is Side.LEFT:
        t = Triplet(
            seq_u(z, r, x, n, max_digits),
            seq_u(z, r, x, n + 1, max_digits),
            r,
        )
    else:
        t = Triplet(
            r,
            seq_u(x, r, z, n + 1, max_digits),
            seq_u(x, r, z, n, max_digits),
        )
    if not is_markov(*t.members):
        raise InvalidTriplet(f"edge triplet {t} fails the Markov identity")
    return t


def edge_series(head: Triplet, side: Side, count: int):
    """Exact power-series coefficients of the three edge components.

    Coefficient k of each list equals the matching component of
    edge_triplet(head, side, k+1); the constant component is R, R, R, ...
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    x, r, z = head.members
    p = 3 * r
    if side is Side.LEFT:
        seeds = [(x, p * x - z), (p * x - z, p * (p * x - z) - x), None]
    else:
        seeds = [None, (p * z - x, p * (p * z - x) - z), (z, p * z - x)]
    out = []
    for seed in seeds:
        if seed is None:
            out.append([r] * count)
            continue
        a, b = seed
        coeffs = []
        for _ in range(count):
            coeffs.append(a)
            a, b = b, p * b - a
        out.append(coeffs)
    return tuple(out)


def secondary_solution(t: Triplet) -> Triplet:
    """Same outer members, middle member replaced by the sibling 3xz - R."""
    if not is_markov(*t.members):
        raise InvalidTriplet(f"{t} fails the Markov identity")
    if t.is_singular:
        raise InvalidTriplet(f"{t} is singular; the sibling equals a member")
    x, r, z = t.members
    s = Triplet(x, 3 * x * z - r, z)
    if not is_markov(*s.members):
        raise InvalidTriplet(f"secondary {s} fails the Markov identity")
    return s


def edge_rows(head: Triplet, count: int):
    """Rows (n, left triplet, right triplet) for table export."""
    for n in range(1, count + 1):
        left = edge_triplet(head, Side.LEFT, n)
        right = edge_triplet(head, Side.RIGHT, n)
        yield {
            "n": n,
            "left_x": left.x, "left_R": left.r, "left_z": left.z,
            "right_x": right.x, "right_R": right.r, "right_z": right.z,
        }
