"""Last-digit behaviour of edge sequences: parity types, repeat cycles,
palindromes, documented internal structure, and frequency statistics.

All cycle detection runs on the pair state (a_n, a_{n+1}) mod 10^d under
the kernel map (a, b) -> (b, 3R*b - a).  The map is invertible mod 10^d,
so orbits are purely periodic and the first return gives the exact
minimal period.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .edges import Side, edge_triplet
from .errors import InvalidParity, SingularTriplet, UnsupportedFamily
from .lucas import u_pair_mod
from .tree import DEFAULT_MAX_NODES, Triplet, enumerate_mod

# cyclic run of Lucas-number last digits; the 12-step cycles of one whole
# pattern family are rotations of this list or of its reversal
CYCLIC_LUCAS_DIGITS = (1, 3, 4, 7, 1, 8, 9, 7, 6, 3, 9, 2)

FIBONACCI_FAMILY = (30, 150, 750)
LUCAS_FAMILY = (12, 60, 300)

# residue classes mod 20 that region numbers can occupy
ALLOWED_MOD20 = frozenset({1, 2, 5, 6, 9, 10, 13, 14, 17, 18})


def parity_type(t: Triplet) -> int:
    kinds = {
        (1, 1, 1): 1,
        (0, 1, 1): 2,
        (1, 1, 0): 3,
        (1, 0, 1): 4,
    }
    key = (t.x & 1, t.r & 1, t.z & 1)
    if key not in kinds:
        raise InvalidParity(f"{t} has parity pattern {key}")
    return kinds[key]


def edge_parity_pattern(head: Triplet, side: Side, count: int) -> list[int]:
    if count < 1:
        raise ValueError("count must be >= 1")
    return [parity_type(edge_triplet(head, side, n)) for n in range(1, count + 1)]


def _start_pair(head: Triplet, side: Side, m: int) -> tuple[int, int]:
    x, r, z = head.members
    if side is Side.LEFT:
        return x % m, (3 * r * x - z) % m
    return z % m, (3 * r * z - x) % m


def _pair_cycle_length(a: int, b: int, p: int, m: int) -> int:
    a0, b0 = a, b
    steps = 0
    while True:
        a, b = b, (p * b - a) % m
        steps += 1
        if (a, b) == (a0, b0):
            return steps


def cycle_length(head: Triplet, side: Side, digits: int) -> int:
    """Minimal period of the edge region numbers mod 10^digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    m = 10 ** digits
    a, b = _start_pair(head, side, m)
    return _pair_cycle_length(a, b, (3 * head.r) % m, m)


def _cycle_residues(head: Triplet, side: Side, m: int) -> list[int]:
    a, b = _start_pair(head, side, m)
    p = (3 * head.r) % m
    out = [a]
    a0, b0 = a, b
    while True:
        a, b = b, (p * b - a) % m
        if (a, b) == (a0, b0):
            return out
        out.append(a)


@dataclass(frozen=True)
class CycleReport:
    head: Triplet
    side: Side
    digits: int
    length: int
    residues: tuple[int, ...]
    palindromic_with_opposite: bool


def palindromic_cycle(head: Triplet, digits: int) -> tuple[CycleReport, CycleReport]:
    """Residue cycles of both edges anchored at index 0 (values x and z).

    Appending either cycle to the other reads the same in both directions;
    the verdict is stored on both reports.
    """
    if head.is_singular:
        raise SingularTriplet(f"{head} has a single edge")
    m = 10 ** digits
    left = _cycle_residues(head, Side.LEFT, m)
    right = _cycle_residues(head, Side.RIGHT, m)
    pal = list(reversed(right)) == left
    mk = lambda side, seq: CycleReport(head, side, digits, len(seq), tuple(seq), pal)
    return mk(Side.LEFT, left), mk(Side.RIGHT, right)


def _is_palindrome(seq) -> bool:
    return list(seq) == list(reversed(seq))


def _odd_fib_residues(count: int, m: int) -> list[int]:
    # odd-indexed Fibonacci numbers 1, 2, 5, 13, ... reduced mod m
    a, b = 1 % m, 2 % m
    out = []
    for _ in range(count):
        out.append(a)
        a, b = b, (3 * b - a) % m
    return out


def _rotation_of(seq, cycle) -> int | None:
    n = len(cycle)
    if len(seq) != n:
        return None
    doubled = list(cycle) + list(cycle)
    for off in range(n):
        if doubled[off:off + n] == list(seq):
            return off
    return None


def _window_offset(seq, cycle) -> int | None:
    """Offset at which seq occurs as a contiguous window of the cyclic list."""
    n = len(cycle)
    doubled = list(cycle) + list(cycle)
    k = len(seq)
    if k == 0 or k > n:
        return None
    for off in range(n):
        if doubled[off:off + k] == list(seq):
            return off
    return None


@dataclass(frozen=True)
class FibonacciStructure:
    family: tuple[int, int, int]
    split_index: int
    first_sublist: tuple[int, ...]
    second_sublist: tuple[int, ...]
    first_is_reflected_fibonacci: bool
    second_window_offset: int | None


@dataclass(frozen=True)
class LucasStructure:
    family: tuple[int, int, int]
    direction: str
    rotation: int
    cycle: tuple[int, ...]
    five_copies: bool


def internal_structure(head: Triplet, side: Side, digits: int):
    """Classify the documented internal structure of a digit cycle.

    Heads whose (d=1,2,3) cycle pattern is (30,150,750) decompose into two
    palindromic sublists; the first is tested against the reflected-then-
    forward odd-indexed Fibonacci residues, the second is located as a
    window of the cyclic Fibonacci residue stream.  Heads with pattern
    (12,60,300) are tested at d=1 against rotations of the cyclic Lucas
    digit list, ascending or descending, five copies per d=2 cycle.
    """
    family = tuple(cycle_length(head, side, d) for d in (1, 2, 3))
    if family == FIBONACCI_FAMILY:
        if digits not in (1, 2, 3):
            raise ValueError("digits must be 1..3")
        m = 10 ** digits
        cyc = _cycle_residues(head, side, m)
        L = len(cyc)
        split = None
        # cut == L is the degenerate case of a fully palindromic cycle
        for cut in range(2, L + 1):
            if _is_palindrome(cyc[:cut]) and _is_palindrome(cyc[cut:]):
                split = cut
                break
        if split is None:
            raise UnsupportedFamily(f"{head} cycle does not split into two palindromes")
        first, second = cyc[:split], cyc[split:]
        fib_ok = False
        if split % 2 == 0:
            g = _odd_fib_residues(split // 2, m)
            fib_ok = first == list(reversed(g)) + g
        fib_cycle = _cycle_residues(Triplet(1, 1, 1), Side.RIGHT, m)
        return FibonacciStructure(
            family=family,
            split_index=split,
            first_sublist=tuple(first),
            second_sublist=tuple(second),
            first_is_reflected_fibonacci=fib_ok,
            second_window_offset=_window_offset(second, fib_cycle),
        )
    if family == LUCAS_FAMILY:
        if digits != 1:
            raise UnsupportedFamily("the Lucas digit structure is documented at d=1")
        cyc = _cycle_residues(head, side, 10)
        rot = _rotation_of(cyc, CYCLIC_LUCAS_DIGITS)
        if rot is not None:
            direction = "ascending"
        else:
            rot = _rotation_of(cyc, tuple(reversed(CYCLIC_LUCAS_DIGITS)))
            if rot is None:
                raise UnsupportedFamily(f"{head} d=1 cycle is not a Lucas rotation")
            direction = "descending"
        sixty = [v % 10 for v in _cycle_residues(head, side, 100)]
        return LucasStructure(
            family=family,
            direction=direction,
            rotation=rot,
            cycle=tuple(cyc),
            five_copies=sixty == cyc * 5,
        )
    raise UnsupportedFamily(f"cycle pattern {family} has no documented structure")


_ENDPOINT_PARAMS = {1: (1, 1, 1), 2: (1, 2, 1)}


def _canonical_lengths(region: int, upto: int) -> list[int]:
    if region == 1:
        return [30, 150] + [75 * 10 ** (d - 2) for d in range(3, upto + 1)]
    return [6, 30] + [3 * 10 ** (d - 1) for d in range(3, upto + 1)]


def cycle_endpoint_table(region: int, lengths) -> dict[int, list[int]]:
    """For each cycle length L, the six values sitting at the mirrored end
    positions of the cycle, shown with one digit beyond the cycling digits.

    Column j (the cycle starting at the j-th edge value) ends at stream
    index (L-1) - j; the extra digit shows where palindromicity breaks.
    """
    if region not in _ENDPOINT_PARAMS:
        raise ValueError("region must be 1 or 2")
    a, r, b = _ENDPOINT_PARAMS[region]
    canon = _canonical_lengths(region, 12)
    table = {}
    for L in lengths:
        if L not in canon:
            raise ValueError(f"{L} is not a cycle length for region {region}")
        d = canon.index(L) + 1
        m = 10 ** (d + 1)
        p = (3 * r) % m
        row = []
        for j in range(6):
            idx = (L - 1) - j
            uk, uk1 = u_pair_mod(p, idx, m)
            # edge value at index idx is b*U_{idx+1} - a*U_idx
            row.append((b * uk1 - a * uk) % m)
        table[L] = row
    return table


@dataclass(frozen=True)
class EvenIndexReport:
    fibonacci_cycle: tuple[int, ...]
    pell_cycle: tuple[int, ...]
    fibonacci_palindromic: bool
    pell_palindromic: bool
    fibonacci_complement: bool
    pell_complement: bool


def even_index_cycles() -> EvenIndexReport:
    """First mod-10 cycles of the even-indexed Fibonacci and Pell numbers,
    with palindrome verdicts and the tens-complement half structure."""

    def cyc(p, a, b):
        a0, b0, out = a, b, [a]
        while True:
            a, b = b, (p * b - a) % 10
            if (a, b) == (a0, b0):
                return out
            out.append(a)

    fib = cyc(3, 0, 1)
    pell = cyc(6, 0, 2)

    def complement(seq):
        h = len(seq) // 2
        return all(seq[h + i] == (10 - seq[i]) % 10 for i in range(h))

    return EvenIndexReport(
        tuple(fib),
        tuple(pell),
        _is_palindrome(fib),
        _is_palindrome(pell),
        complement(fib),
        complement(pell),
    )


def last_digit_frequency(depth: int, digits: int,
                         max_nodes: int = DEFAULT_MAX_NODES) -> Counter:
    """Counts of region-number residues mod 10^digits over all non-singular
    triplets through the given depth (modular traversal)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    it = enumerate_mod(depth, 10 ** digits, max_nodes)
    next(it)
    next(it)
    counts = Counter()
    for _, r, _ in it:
        counts[r] += 1
    return counts


def pattern_by_residue(depth: int,
                       max_nodes: int = DEFAULT_MAX_NODES) -> dict[int, set]:
    """Map each mod-20 class of region numbers seen through `depth` to the
    set of (d=1,2,3) cycle-length patterns observed for that class."""
    out: dict[int, set] = {}
    seen: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    it = enumerate_mod(depth, 1000, max_nodes)
    next(it)
    next(it)
    for x, r, z in it:
        key = (x, r, z)
        pattern = seen.get(key)
        if pattern is None:
            lens = []
            for d in (1, 2, 3):
                m = 10 ** d
                lens.append(
                    _pair_cycle_length(x % m, (3 * r * x - z) % m, (3 * r) % m, m)
                )
            pattern = tuple(lens)
            seen[key] = pattern
        out.setdefault(r % 20, set()).add(pattern)
    return out
