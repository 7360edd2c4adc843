import pytest

from markovtree.cycles import (
    ALLOWED_MOD20,
    CYCLIC_LUCAS_DIGITS,
    cycle_endpoint_table,
    cycle_length,
    edge_parity_pattern,
    even_index_cycles,
    internal_structure,
    last_digit_frequency,
    palindromic_cycle,
    parity_type,
    pattern_by_residue,
)
from markovtree.edges import Side, edge_region
from markovtree.errors import InvalidParity, SingularTriplet, UnsupportedFamily
from markovtree.tree import Triplet, markov_list

from reference import (
    CYCLE_LENGTHS,
    DESCENDING_LUCAS_DIGITS,
    EVEN_FIB_CYCLE,
    EVEN_PELL_CYCLE,
    FIB_ENDPOINTS,
    MONSTER_REGION,
    PALINDROME_ENDS,
    PARITY_HEADS,
    PARITY_PATTERNS,
    PELL_ENDPOINTS,
    SUBLIST_14701,
    classical_fib,
)


def _head(ml, region):
    return ml.triplet_for(region, deepen=True)


@pytest.fixture(scope="module")
def ml():
    return markov_list(8)


def test_parity_types():
    assert parity_type(Triplet(1, 5, 2)) == 3
    assert parity_type(Triplet(1, 2, 1)) == 4
    assert parity_type(Triplet(1, 1, 1)) == 1
    assert parity_type(Triplet(194, 2897, 5)) == 2
    with pytest.raises(InvalidParity):
        parity_type(Triplet(2, 2, 2))


def test_edge_parity_patterns(ml):
    for ptype, members in PARITY_HEADS.items():
        head = Triplet(*members)
        assert parity_type(head) == ptype
        left, right = PARITY_PATTERNS[ptype]
        assert edge_parity_pattern(head, Side.LEFT, 6) == left * 2
        assert edge_parity_pattern(head, Side.RIGHT, 6) == right * 2


def test_cycle_lengths_full_table(ml):
    for region, expected in CYCLE_LENGTHS.items():
        head = _head(ml, region)
        side = Side.RIGHT if region == 1 else Side.LEFT
        assert tuple(cycle_length(head, side, d) for d in (1, 2, 3, 4)) == expected


def test_cycle_length_same_both_sides(ml):
    for head in list(ml)[2:2 + 15]:
        for d in (1, 2, 3):
            assert cycle_length(head, Side.LEFT, d) == cycle_length(head, Side.RIGHT, d)


def test_cycle_length_divides_next_level(ml):
    for head in list(ml)[2:2 + 7]:
        lens = [cycle_length(head, Side.LEFT, d) for d in (1, 2, 3, 4)]
        for a, b in zip(lens, lens[1:]):
            assert b % a == 0


def test_cycle_length_is_minimal_and_periodic():
    head = Triplet(1, 5, 2)
    for d in (1, 2):
        m = 10 ** d
        L = cycle_length(head, Side.LEFT, d)
        vals = [edge_region(head, Side.LEFT, n) % m for n in range(3 * L)]
        assert vals[:L] * 3 == vals
        for p in range(1, L):
            if L % p == 0:
                assert vals[:p] * (3 * L // p) != vals


def test_palindromic_cycle_all_documented_heads(ml):
    for members, (ls, le, rs, re) in PALINDROME_ENDS.items():
        left, right = palindromic_cycle(Triplet(*members), 3)
        assert left.palindromic_with_opposite and right.palindromic_with_opposite
        assert list(left.residues[:4]) == ls
        assert list(left.residues[-4:]) == le
        assert list(right.residues[:4]) == rs
        assert list(right.residues[-4:]) == re


def test_palindromic_cycle_small_digits():
    left, right = palindromic_cycle(Triplet(1, 5, 2), 1)
    joined = list(left.residues) + list(right.residues)
    assert len(joined) == 24
    assert joined == joined[::-1]
    with pytest.raises(SingularTriplet):
        palindromic_cycle(Triplet(1, 1, 1), 1)


def test_cycle_residues_follow_kernel(ml):
    left, _ = palindromic_cycle(Triplet(5, 29, 2), 2)
    seq = left.residues
    for i in range(1, len(seq) - 1):
        assert seq[i + 1] == (3 * 29 * seq[i] - seq[i - 1]) % 100


def test_lucas_family_structure():
    head = Triplet(1, 5, 2)
    st = internal_structure(head, Side.LEFT, 1)
    assert st.direction == "ascending"
    assert st.cycle == CYCLIC_LUCAS_DIGITS
    assert st.five_copies
    st = internal_structure(head, Side.RIGHT, 1)
    assert st.direction == "descending"
    assert st.cycle == DESCENDING_LUCAS_DIGITS
    assert st.five_copies


def test_lucas_family_membership_rule(ml):
    # heads of this family have x and z digits adjacent in the cyclic list
    doubled = CYCLIC_LUCAS_DIGITS * 2
    adjacent = {(doubled[i], doubled[i + 1]) for i in range(12)}
    adjacent |= {(b, a) for a, b in adjacent}
    for members in ((1, 5, 2), (169, 985, 2)):
        head = Triplet(*members)
        assert tuple(cycle_length(head, Side.LEFT, d) for d in (1, 2, 3)) == (12, 60, 300)
        assert (head.x % 10, head.z % 10) in adjacent


def test_fibonacci_family_structure(ml):
    head = _head(ml, 14701)
    st = internal_structure(head, Side.LEFT, 2)
    assert st.split_index == 30
    assert st.first_sublist == SUBLIST_14701
    assert st.first_is_reflected_fibonacci
    assert len(st.second_sublist) == 120
    # the trailing list's digits run through the odd-indexed Fibonacci
    # digit cycle, four full turns from one rotation
    digits = [v % 10 for v in st.second_sublist]
    fib_digits = [classical_fib(2 * k + 1) % 10 for k in range(30)]
    doubled = fib_digits * 2
    off = next(o for o in range(30) if doubled[o:o + 30] == digits[:30])
    assert digits == digits[:30] * 4 and off is not None

    st1 = internal_structure(_head(ml, 7561), Side.LEFT, 1)
    assert st1.first_is_reflected_fibonacci
    assert st1.first_sublist == (3, 5, 2, 1, 1, 2, 5, 3)
    # the second sublist sits inside the cyclic Fibonacci digit stream
    assert st1.second_window_offset is not None

    # at one digit the same head's whole cycle is one palindrome
    st0 = internal_structure(head, Side.LEFT, 1)
    assert st0.split_index == 30 and st0.second_sublist == ()
    assert st0.first_is_reflected_fibonacci


def test_unsupported_families(ml):
    with pytest.raises(UnsupportedFamily):
        internal_structure(Triplet(1, 2, 1), Side.LEFT, 1)
    with pytest.raises(UnsupportedFamily):
        internal_structure(_head(ml, 29), Side.LEFT, 1)


def test_monster_region_structure():
    ml11 = markov_list(11)
    head = list(ml11)[2 + 1505]
    assert head.r == MONSTER_REGION
    st = internal_structure(head, Side.LEFT, 3)
    f47 = [classical_fib(2 * k + 1) % 1000 for k in range(47)]
    assert st.split_index == 94
    assert list(st.first_sublist) == f47[::-1] + f47


def test_endpoint_tables():
    assert cycle_endpoint_table(1, list(FIB_ENDPOINTS)) == FIB_ENDPOINTS
    assert cycle_endpoint_table(2, list(PELL_ENDPOINTS)) == PELL_ENDPOINTS
    with pytest.raises(ValueError):
        cycle_endpoint_table(1, [31])
    with pytest.raises(ValueError):
        cycle_endpoint_table(3, [30])


def test_endpoint_leading_digits_settle():
    # leading digits of the wide rows repeat as 1,4,1,9,6,9
    row = cycle_endpoint_table(1, [75000000])[75000000]
    assert [int(str(v)[0]) for v in row] == [1, 4, 1, 9, 6, 9]


def test_endpoints_against_classical_fibonacci():
    row = cycle_endpoint_table(1, [150])[150]
    for j in range(6):
        idx = 149 - j
        assert row[j] == classical_fib(2 * idx + 1) % 1000


def test_even_index_cycles():
    rep = even_index_cycles()
    assert rep.fibonacci_cycle == EVEN_FIB_CYCLE
    assert rep.pell_cycle == EVEN_PELL_CYCLE
    assert not rep.fibonacci_palindromic
    assert not rep.pell_palindromic
    assert rep.fibonacci_complement
    assert rep.pell_complement


def test_frequency_small_depth():
    counts = last_digit_frequency(2, 1)
    assert dict(counts) == {5: 1, 3: 1, 9: 1}


def test_frequency_depth15():
    counts = last_digit_frequency(15, 2)
    assert all(c % 20 in ALLOWED_MOD20 for c in counts)
    ones = last_digit_frequency(15, 1)
    odd = sum(v for c, v in ones.items() if c % 2 == 1)
    even = sum(v for c, v in ones.items() if c % 2 == 0)
    assert 2.5 <= odd / even <= 3.5


def test_pattern_by_residue_classes():
    buckets = pattern_by_residue(6)
    assert set(buckets) <= ALLOWED_MOD20
    assert (12, 60, 300) in buckets[5]
    assert (3, 15, 75) in buckets[13]
    assert (30, 150, 750) in buckets[1]
    assert (5, 25, 500) in buckets[14]
