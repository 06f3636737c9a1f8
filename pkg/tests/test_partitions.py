import itertools

import pytest

from freemeixner.partitions import (NcPartition, PartitionClass, SizeCapError, all_set_partitions,
                                    catalan, enumerate_partitions, in_class, interval_partition_from_subset,
                                    is_noncrossing, is_noncrossing_by_peeling, outer_blocks, restrict,
                                    rotate_first_to_end)

P = NcPartition.from_blocks


def count(n, cls):
    return sum(1 for _ in enumerate_partitions(range(1, n + 1), cls))


def test_nc_counts_are_catalan():
    for n in range(11):
        assert count(n, PartitionClass.NC) == catalan(n)


def test_small_class_examples():
    assert count(4, PartitionClass.NC) == 14
    assert count(4, PartitionClass.NC0) == 3
    assert count(1, PartitionClass.NC0) == 0
    assert [count(n, PartitionClass.NC0) for n in range(9)] == [1, 0, 1, 1, 3, 6, 15, 36, 91]
    assert [count(n, PartitionClass.NC0PRIME) for n in range(1, 9)] == [0, 1, 1, 2, 4, 9, 21, 51]


@pytest.mark.parametrize("cls", list(PartitionClass))
def test_enumeration_matches_brute_force_filter(cls):
    for n in range(8):
        ground = list(range(1, n + 1))
        fast = list(enumerate_partitions(ground, cls))
        assert len(fast) == len(set(fast))
        slow = {p for p in all_set_partitions(ground) if in_class(p, cls)}
        assert set(fast) == slow, (cls, n)


def test_enumeration_on_arbitrary_ground_set():
    parts = list(enumerate_partitions([2, 5, 9, 11], PartitionClass.NC))
    assert len(parts) == 14
    assert all(p.ground == (2, 5, 9, 11) for p in parts)


def test_output_order_is_deterministic():
    a = [p.blocks for p in enumerate_partitions(range(6))]
    b = [p.blocks for p in enumerate_partitions(range(6))]
    assert a == b
    assert a[0] == ((0, 1, 2, 3, 4, 5),)


def test_cap():
    with pytest.raises(SizeCapError):
        list(enumerate_partitions(range(15)))
    assert sum(1 for _ in enumerate_partitions(range(3), cap=3)) == 5


def test_crossing_examples():
    assert not is_noncrossing(P([[1, 3], [2, 4]]))
    assert is_noncrossing(P([[1, 4], [2, 3]]))
    assert is_noncrossing(P([[1, 2, 3, 4]]))


def test_two_crossing_checks_agree():
    for n in range(8):
        for p in all_set_partitions(range(n)):
            assert is_noncrossing(p) == is_noncrossing_by_peeling(p)


def test_outer_blocks():
    assert outer_blocks(P([[1, 4], [2, 3]])) == [(1, 4)]
    assert outer_blocks(P([[1, 2], [3, 4]])) == [(1, 2), (3, 4)]
    assert outer_blocks(P([[1, 2, 3, 4]])) == [(1, 2, 3, 4)]
    for n in range(1, 8):
        for p in enumerate_partitions(range(1, n + 1), PartitionClass.NCPRIME):
            (b,) = outer_blocks(p)
            assert 1 in b and n in b


def test_prime_and_nc0_intersection():
    for n in range(9):
        g = range(1, n + 1)
        a = set(enumerate_partitions(g, PartitionClass.NC0PRIME))
        b = set(enumerate_partitions(g, PartitionClass.NC0)) & set(enumerate_partitions(g, PartitionClass.NCPRIME))
        assert a == b


def test_interval_partitions():
    assert interval_partition_from_subset({2}, 4) == P([[1, 2], [3, 4]])
    assert interval_partition_from_subset(set(), 3) == P([[1, 2, 3]])
    assert interval_partition_from_subset({1, 2}, 3) == P([[1], [2], [3]])
    with pytest.raises(ValueError):
        interval_partition_from_subset({3}, 3)
    for n in range(1, 8):
        ints = set(enumerate_partitions(range(1, n + 1), PartitionClass.INTERVAL))
        assert len(ints) == 2 ** (n - 1)
        subsets = {interval_partition_from_subset(s, n)
                   for r in range(n) for s in itertools.combinations(range(1, n), r)}
        assert ints == subsets


def test_rotation_is_bijection_on_nc0():
    for n in range(2, 10):
        src = list(enumerate_partitions(range(1, n + 1), PartitionClass.NC0))
        img = [rotate_first_to_end(p) for p in src]
        assert len(set(img)) == len(src)
        target = set(enumerate_partitions(range(2, n + 2), PartitionClass.NC0))
        assert set(img) == target


def test_partition_validation_and_json():
    with pytest.raises(ValueError):
        P([[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        NcPartition((1, 2, 3), ((1, 2),))
    p = P([[3, 1], [2]])
    assert p.blocks == ((1, 3), (2,))
    assert NcPartition.from_json(p.to_json()) == p
    assert str(p) == "({1,3}, {2})"
    assert restrict(P([[1, 4], [2, 3]]), [1, 2, 4]) == P([[1, 4], [2]])
