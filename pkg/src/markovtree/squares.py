"""The distinguished sum-of-two-squares decomposition of region numbers.

Every Markov number R is a sum of two squares, usually in several ways.
The recursive procedure here singles out one pair (sigma, lam) with
sigma^2 + lam^2 = R by descending the sibling chain and solving, at each
step, the 2x2 linear system tying the pair to min{x,z} and max{x,z}
(an instance of the Brahmagupta-Fibonacci identity, since R*s = x^2+z^2).

Along a region's edges the pairs split into odd- and even-indexed streams
that obey the same {3R, -1} kernel as the region numbers, which gives
sequence functions and series expansions for the square terms, their
digit repeat cycles, and the paired-edge palindromic structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .edges import Side, edge_triplet
from .errors import DecompositionMismatch, NonIntegralSolution
from .lucas import u_pair
from .tree import MarkovList, Triplet, sibling_number

# pairs for the three self-referential startup triplets, keyed by members:
# (region pair, sibling pair)
_STARTUP = {
    (1, 1, 1): ((0, 1), (1, 1)),
    (1, 2, 1): ((1, 1), (0, 1)),
    (1, 5, 2): ((1, 2), (0, 1)),
}

_SIGN_EXCEPTIONS = {(1, 2, 1): -1, (1, 5, 2): -1}


@dataclass(frozen=True)
class SquarePair:
    sigma: int
    lam: int
    target: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.sigma, self.lam)


def region_sign(t: Triplet, mlist: MarkovList) -> int:
    """Sign used when solving for the square pair; the two smallest heads
    are fixed exceptions, otherwise it is the product of a position-parity
    sign (+1 at even list positions) and a divisibility sign (-1 at
    positions divisible by three)."""
    if t.members in _SIGN_EXCEPTIONS:
        return _SIGN_EXCEPTIONS[t.members]
    pos = mlist.position_of(t.r, deepen=True)
    lr = 1 if pos % 2 == 0 else -1
    ps = -1 if pos % 3 == 0 else 1
    return lr * ps


def decompose(t: Triplet, mlist: MarkovList) -> tuple[SquarePair, SquarePair]:
    """Square pairs of a triplet's region number and sibling number.

    Walks the sibling chain down to a startup triplet, then solves back up:
        sign*(sigma_s*lam - lam_s*sigma) = min{x, z}
        lam_s*lam + sigma_s*sigma        = max{x, z}
    The determinant of the system is sigma_s^2 + lam_s^2 = s, so divisions
    are exact whenever the calibration is consistent.
    """
    chain = []
    cur = t
    while cur.members not in _STARTUP:
        chain.append(cur)
        cur = mlist.triplet_for(sibling_number(cur), deepen=True)
    region_pair, sib_pair = _STARTUP[cur.members]
    s_value = sibling_number(cur)
    for node in reversed(chain):
        sig = region_sign(node, mlist)
        ss, ls = region_pair  # pair of node's sibling number
        s = sibling_number(node)
        mn, mx = sorted((node.x, node.z))
        num_sigma = ss * mx - sig * ls * mn
        num_lam = ls * mx + sig * ss * mn
        sigma, rem_s = divmod(num_sigma, s)
        lam, rem_l = divmod(num_lam, s)
        if rem_s or rem_l:
            raise NonIntegralSolution(f"no integral square pair for {node}")
        if not 0 <= sigma <= lam:
            raise DecompositionMismatch(f"pair ({sigma}, {lam}) for {node} not canonical")
        sib_pair, s_value = region_pair, s
        region_pair = (sigma, lam)
    sigma, lam = region_pair
    if sigma * sigma + lam * lam != t.r:
        raise DecompositionMismatch(f"{(sigma, lam)} does not decompose {t.r}")
    return (
        SquarePair(sigma, lam, t.r),
        SquarePair(sib_pair[0], sib_pair[1], s_value),
    )


@dataclass(frozen=True)
class EdgeSquareSeeds:
    """Recurrence seeds for the square-pair streams along one edge.

    The odd-indexed stream takes value `odd_anchor` at k=1 and `odd_base`
    at k=0 (likewise the even-indexed stream); every stream then follows
    v_{k+1} = 3R*v_k - v_{k-1} componentwise.
    """

    odd_anchor: tuple[int, int]
    even_anchor: tuple[int, int]
    odd_base: tuple[int, int]
    even_base: tuple[int, int]

    def pair(self, stream: str) -> tuple[tuple[int, int], tuple[int, int]]:
        if stream == "odd":
            return self.odd_base, self.odd_anchor
        if stream == "even":
            return self.even_base, self.even_anchor
        raise ValueError("stream must be 'odd' or 'even'")


def edge_seeds(first: Triplet, second: Triplet, mlist: MarkovList) -> EdgeSquareSeeds:
    """Seeds from the first two triplets along one edge."""
    (a_pair, a_sib) = decompose(first, mlist)
    (b_pair, b_sib) = decompose(second, mlist)
    s1 = region_sign(first, mlist)
    return EdgeSquareSeeds(
        odd_anchor=a_pair.as_tuple(),
        even_anchor=b_pair.as_tuple(),
        odd_base=(-s1 * a_sib.lam, s1 * a_sib.sigma),
        even_base=b_sib.as_tuple(),
    )


def region_edge_seeds(head: Triplet, side: Side, mlist: MarkovList) -> EdgeSquareSeeds:
    first = edge_triplet(head, side, 1)
    second = edge_triplet(head, side, 2)
    return edge_seeds(first, second, mlist)


def _stream_index(n: int) -> tuple[str, int]:
    if n == 0:
        raise ValueError("the sequence is indexed by nonzero n")
    stream = "odd" if n % 2 else "even"
    k = (n + 1) // 2 if n > 0 else n // 2
    return stream, k


def square_pair(seeds: EdgeSquareSeeds, r: int, n: int) -> tuple[int, int]:
    """(sigma, lam) of the n-th edge value; negative n wraps to the opposite
    edge with the components interchanged and signed."""
    stream, k = _stream_index(n)
    base, anchor = seeds.pair(stream)
    up, uk = u_pair(r, k)
    return (anchor[0] * uk - base[0] * up, anchor[1] * uk - base[1] * up)


def square_series(seeds: EdgeSquareSeeds, r: int, count: int):
    """Exact series coefficients of the two rational stream forms; odd-stream
    coefficient k equals square_pair at n = 2k+1, even-stream at n = 2k+2."""
    if count < 1:
        raise ValueError("count must be >= 1")
    p = 3 * r
    out = []
    for stream in ("odd", "even"):
        base, anchor = seeds.pair(stream)
        a = anchor
        b = (p * anchor[0] - base[0], p * anchor[1] - base[1])
        coeffs = []
        for _ in range(count):
            coeffs.append(a)
            a, b = b, (p * b[0] - a[0], p * b[1] - a[1])
        out.append(coeffs)
    return tuple(out)


def product_identity_check(t: Triplet, pairs) -> bool:
    """R*s = x^2 + z^2 rewritten through both square pairs (the
    Brahmagupta-Fibonacci identity), checked exactly."""
    region_pair, sib_pair = pairs
    sr, lr = region_pair.as_tuple()
    ss, ls = sib_pair.as_tuple()
    s = sibling_number(t)
    if t.r * s != t.x ** 2 + t.z ** 2:
        return False
    lhs = (lr * lr + sr * sr) * (ls * ls + ss * ss)
    rhs = (ls * lr + ss * sr) ** 2 + (ss * lr - ls * sr) ** 2
    return lhs == rhs


def square_cycle_length(seeds: EdgeSquareSeeds, r: int, digits: int,
                        stream: str, component: str | None = None) -> int:
    """Minimal period mod 10^digits of a square-term stream.

    By default the period of the (sigma, lam) pairs is measured.  A single
    component can have a shorter period when its values are degenerate mod
    10^digits (for example every even-indexed sigma of region 5 is a
    multiple of 5, so alone it cycles mod 10 with period 3); pass
    component='sigma' or 'lambda' to measure that raw component period.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    base, anchor = seeds.pair(stream)
    m = 10 ** digits
    p = (3 * r) % m
    if component is None:
        state = tuple(v % m for v in (*base, *anchor))
        s0, v0, s1, v1 = state
        steps = 0
        while True:
            s0, v0, s1, v1 = s1, v1, (p * s1 - s0) % m, (p * v1 - v0) % m
            steps += 1
            if (s0, v0, s1, v1) == state:
                return steps
    ci = {"sigma": 0, "lambda": 1, "lam": 1}[component]
    a, b = base[ci] % m, anchor[ci] % m
    a0, b0 = a, b
    steps = 0
    while True:
        a, b = b, (p * b - a) % m
        steps += 1
        if (a, b) == (a0, b0):
            return steps


def _mod_stream(seeds: EdgeSquareSeeds, r: int, m: int, n_lo: int, n_hi: int):
    """Square pairs mod m for every n in [n_lo, n_hi] (n=0 included as the
    even-stream base).  Built from a two-sided table of U_k mod m."""
    k_hi = max(abs(n_lo), abs(n_hi)) // 2 + 2
    p = (3 * r) % m
    us = {0: 0, 1: 1 % m}
    for k in range(1, k_hi + 1):
        us[k + 1] = (p * us[k] - us[k - 1]) % m
    for k in range(1, k_hi + 2):
        us[-k] = (-us[k]) % m

    def value(n):
        if n == 0:
            base, _ = seeds.pair("even")
            return (base[0] % m, base[1] % m)
        stream, k = _stream_index(n)
        base, anchor = seeds.pair(stream)
        return (
            (anchor[0] * us[k] - base[0] * us[k - 1]) % m,
            (anchor[1] * us[k] - base[1] * us[k - 1]) % m,
        )

    return {n: value(n) for n in range(n_lo, n_hi + 1)}


def wraparound_signs(head: Triplet, mlist: MarkovList) -> tuple[int, int]:
    """Signs tying each edge's negative indices to the opposite edge."""
    s_left = region_sign(edge_triplet(head, Side.LEFT, 1), mlist)
    s_right = region_sign(edge_triplet(head, Side.RIGHT, 1), mlist)
    return s_left, s_right


def wraparound_check(head: Triplet, mlist: MarkovList, n_max: int) -> bool:
    """Exact check of the negative-index wraparound relations.

    With s_L, s_R the region signs of the first left and right edge
    triplets (both +1 trivially for region 5, whose pattern the relations
    generalize):

        left(-n)  =  s_L * (-lam, sigma) of right(n+1)   for odd n
        left(-n)  = -s_R * (-lam, sigma) of right(n-1)   for even n
        right(-n) = -s_R * (lam, -sigma) of left(n+1)    for odd n
        right(-n) =  s_L * (lam, -sigma) of left(n-1)    for even n

    The components always interchange with signs that preserve the sum of
    squares, so each negative index decomposes the same edge value as its
    positive counterpart on the opposite edge.
    """
    r = head.r
    left = region_edge_seeds(head, Side.LEFT, mlist)
    right = region_edge_seeds(head, Side.RIGHT, mlist)
    s_l, s_r = wraparound_signs(head, mlist)
    for n in range(1, n_max + 1):
        shift = 1 if n % 2 else -1
        e_left = s_l if n % 2 else -s_r
        e_right = -s_r if n % 2 else s_l
        rs, rl = square_pair(right, r, n + shift)
        if square_pair(left, r, -n) != (-e_left * rl, e_left * rs):
            return False
        ls, ll = square_pair(left, r, n + shift)
        if square_pair(right, r, -n) != (e_right * ll, -e_right * ls):
            return False
    return True


@dataclass(frozen=True)
class SquarePalindromeReport:
    head: Triplet
    digits: int
    cycle_length: int
    lengths_all_equal: bool
    wraparound_left: bool
    wraparound_right: bool
    left_cycle: tuple[tuple[int, int], ...]
    right_cycle: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return self.lengths_all_equal and self.wraparound_left and self.wraparound_right


def square_palindrome_check(head: Triplet, digits: int,
                            mlist: MarkovList) -> SquarePalindromeReport:
    """Verify the wraparound relations (see `wraparound_check`) mod
    10^digits across one full cycle.  Together they force the mirrored
    structure of the paired cycles: component interchange plus
    10^d-complement signs, anchored like the region-number palindromes at
    edge index 0.
    """
    r = head.r
    left = region_edge_seeds(head, Side.LEFT, mlist)
    right = region_edge_seeds(head, Side.RIGHT, mlist)
    s_l, s_r = wraparound_signs(head, mlist)
    lengths = {
        square_cycle_length(seeds, r, digits, stream)
        for seeds in (left, right)
        for stream in ("odd", "even")
    }
    L = max(lengths)
    n_cycle = 2 * L
    m = 10 ** digits
    lv = _mod_stream(left, r, m, -n_cycle - 1, n_cycle + 1)
    rv = _mod_stream(right, r, m, -n_cycle - 1, n_cycle + 1)
    ok_left = True
    ok_right = True
    for n in range(1, n_cycle + 1):
        shift = 1 if n % 2 else -1
        e_left = s_l if n % 2 else -s_r
        e_right = -s_r if n % 2 else s_l
        rs, rl = rv[n + shift]
        if lv[-n] != ((-e_left * rl) % m, (e_left * rs) % m):
            ok_left = False
        ls, ll = lv[n + shift]
        if rv[-n] != ((e_right * ll) % m, (-e_right * ls) % m):
            ok_right = False
    return SquarePalindromeReport(
        head=head,
        digits=digits,
        cycle_length=L,
        lengths_all_equal=len(lengths) == 1,
        wraparound_left=ok_left,
        wraparound_right=ok_right,
        left_cycle=tuple(lv[n] for n in range(0, n_cycle)),
        right_cycle=tuple(rv[n] for n in range(0, n_cycle)),
    )


@dataclass(frozen=True)
class OscillationReport:
    """Behaviour of lam/sigma along one edge.

    `upper` and `lower` estimate the two accumulation values of lam/sigma
    (one per index parity) at n_max.  When they stay separated the
    oscillation persists and `ratio` is upper/lower; when they collapse
    the path hugs a single ray and `ratio` is the common slope limit.
    """

    region: int
    n_max: int
    points: tuple[tuple[int, int, int], ...]  # (n, sigma, lam)
    upper: Fraction
    lower: Fraction
    separated: bool
    ratio: Fraction
    history: tuple[tuple[int, float], ...]

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


_SEPARATION = Fraction(1, 10 ** 7)


def oscillation_report(seeds: EdgeSquareSeeds, r: int, n_max: int) -> OscillationReport:
    if n_max < 8:
        raise ValueError("n_max must be >= 8")
    points = []
    ratios: dict[int, Fraction] = {}
    for n in range(1, n_max + 1):
        s, l = square_pair(seeds, r, n)
        points.append((n, s, l))
        if s != 0:
            ratios[n] = Fraction(l, s)

    def estimate(limit):
        evens = [ratios[n] for n in ratios if n % 2 == 0 and n <= limit]
        odds = [ratios[n] for n in ratios if n % 2 == 1 and n <= limit]
        if not evens or not odds:
            return None
        a, b = evens[-1], odds[-1]
        hi, lo = (a, b) if a >= b else (b, a)
        gap = (hi - lo) / (hi + lo)
        return hi, lo, gap > _SEPARATION, (hi / lo if gap > _SEPARATION else hi)

    history = []
    for limit in range(4, n_max + 1):
        est = estimate(limit)
        if est is not None:
            history.append((limit, float(est[3])))
    upper, lower, separated, ratio = estimate(n_max)
    return OscillationReport(
        region=r,
        n_max=n_max,
        points=tuple(points),
        upper=upper,
        lower=lower,
        separated=separated,
        ratio=ratio,
        history=tuple(history),
    )
