import threading

import pytest

from markovtree.errors import (
    InvalidTriplet,
    NotFound,
    NotSingular,
    ResourceLimit,
    RootTriplet,
    SingularTriplet,
)
from markovtree.tree import (
    MarkovList,
    Triplet,
    children,
    enumerate_mod,
    is_markov,
    markov_list,
    parent,
    sibling_number,
    singular_successor,
    tree_rows,
)

from reference import LIST_PREFIX_DEPTH3, MONSTER_REGION


def test_children_known_values():
    assert children(Triplet(1, 5, 2)) == (Triplet(1, 13, 5), Triplet(5, 29, 2))
    assert children(Triplet(1, 13, 5)) == (Triplet(1, 34, 13), Triplet(13, 194, 5))
    assert children(Triplet(5, 29, 2)) == (Triplet(5, 433, 29), Triplet(29, 169, 2))


def test_children_rejects_singular_and_invalid():
    with pytest.raises(SingularTriplet):
        children(Triplet(1, 1, 1))
    with pytest.raises(InvalidTriplet):
        children(Triplet(2, 7, 3))


def test_singular_successor():
    assert singular_successor(Triplet(1, 1, 1)) == Triplet(1, 2, 1)
    assert singular_successor(Triplet(1, 2, 1)) == Triplet(1, 5, 2)
    with pytest.raises(NotSingular):
        singular_successor(Triplet(1, 5, 2))


def test_parent_known_values():
    assert parent(Triplet(1, 13, 5)) == Triplet(1, 5, 2)
    assert parent(Triplet(5, 29, 2)) == Triplet(1, 5, 2)
    assert parent(Triplet(13, 194, 5)) == Triplet(1, 13, 5)
    with pytest.raises(RootTriplet):
        parent(Triplet(1, 5, 2))


def test_parent_child_round_trip():
    for t in list(markov_list(5))[2:]:
        left, right = children(t)
        assert parent(left) == t
        assert parent(right) == t


def test_sibling_number():
    assert sibling_number(Triplet(1, 5, 2)) == 1
    assert sibling_number(Triplet(1, 34, 13)) == 5
    assert sibling_number(Triplet(1, 233, 89)) == 34


def test_sibling_gives_second_solution():
    # the identity is symmetric, so the reordered {x, s, z} solves it too
    for t in list(markov_list(5))[2:]:
        s = sibling_number(t)
        assert 0 < s < t.r
        assert is_markov(t.x, s, t.z)


def test_list_prefix_and_lengths():
    ml = markov_list(3)
    assert [t.members for t in ml] == LIST_PREFIX_DEPTH3
    assert len(markov_list(0)) == 2
    assert len(markov_list(6)) == 2 + 63


def test_identity_holds_everywhere():
    for t in markov_list(6):
        assert is_markov(t.x, t.r, t.z)


def test_positions_and_lookup():
    ml = markov_list(3)
    assert ml.lookup(29) == (Triplet(5, 29, 2), 5)
    assert ml.lookup(1) == (Triplet(1, 1, 1), 1)
    assert ml.lookup(169) == (Triplet(29, 169, 2), 9)
    with pytest.raises(NotFound):
        ml.position_of(7561)


def test_lookup_with_deepening():
    ml = markov_list(1)
    t, pos = ml.lookup(7561, deepen=True)
    assert t.members == (13, 7561, 194)
    assert pos == 12
    with pytest.raises(NotFound):
        ml.lookup(4, deepen=True)  # not a region number


def test_depth_of_position():
    assert [MarkovList.depth_of_position(p) for p in range(1, 10)] == \
        [0, 0, 1, 2, 2, 3, 3, 3, 3]


def test_region_numbers_distinct():
    ml = markov_list(9)
    regions = [t.r for t in ml]
    assert len(regions) == len(set(regions))


def test_node_budget():
    with pytest.raises(ResourceLimit):
        markov_list(8, max_nodes=50)
    with pytest.raises(ResourceLimit):
        list(enumerate_mod(8, 10, max_nodes=50))


def test_digit_budget():
    with pytest.raises(ResourceLimit):
        markov_list(9, max_digits=3)


def test_enumerate_mod_matches_exact():
    for m in (10, 100, 1000):
        exact = [tuple(v % m for v in t.members) for t in markov_list(10)]
        assert list(enumerate_mod(10, m)) == exact


def test_monster_region_value():
    ml = markov_list(11)
    t = list(ml)[2 + 1505]  # 1506th non-singular entry
    assert t.r == MONSTER_REGION


def test_concurrent_deepening_lookups():
    ml = markov_list(1)
    results = []

    def work():
        results.append(ml.lookup(14701, deepen=True))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert len(set(results)) == 1
    assert results[0][0].members == (29, 14701, 169)


def test_tree_rows_shape():
    rows = list(tree_rows(markov_list(1)))
    assert rows[0] == {"position": 1, "depth": 0, "x": 1, "R": 1, "z": 1, "sibling": 2}
    assert rows[2] == {"position": 3, "depth": 1, "x": 1, "R": 5, "z": 2, "sibling": 1}
