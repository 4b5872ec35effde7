import pytest

from unimodal_ranks.enumeration import (
    durfee,
    enum_nu,
    enum_u,
    enum_v,
    enum_w,
    enumerate_family,
    overpartitions,
    partitions,
)


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert list(partitions(4, 2)) == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_overpartition_counts():
    # overpartitions of n: 1, 2, 4, 8, 14, 24
    assert [sum(1 for _ in overpartitions(n, n)) for n in range(6)] == [1, 2, 4, 8, 14, 24]


@pytest.mark.parametrize("parts, k", [((), 0), ((3, 2, 2), 2), ((1, 1, 1, 1), 1), ((5, 5, 5, 5), 4)])
def test_durfee(parts, k):
    assert durfee(parts) == k


def test_small_histograms():
    assert enum_u(0).counts == {0: 1}
    assert enum_u(2).counts == {-1: 1, 0: 1, 1: 1}
    assert enum_w(0).counts == {0: 1}
    assert enum_w(2).counts == {0: 1}
    assert enum_v(0).counts == {0: 1}
    assert enum_v(4)[-3] == 1
    assert enum_nu(1).counts == {0: 1}
    # (1, 1bar) and (1bar, 1): one extra part on either side of the peak
    assert enum_nu(2).counts == {-1: 1, 1: 1}
    assert enum_nu(0).total == 0


def test_worked_totals():
    assert enum_u(4).total == 12
    assert enum_w(6).total == 11
    assert enum_v(4).total == 10
    assert enum_nu(5).total == 12


@pytest.mark.parametrize("family", ["U", "W", "V", "NU"])
def test_symmetric_up_to_20(family):
    for n in range(21):
        h = enumerate_family(family, n)
        assert h.is_symmetric(), (family, n)
        assert all(c > 0 for c in h.counts.values())


def test_enumerate_family_bounds():
    with pytest.raises(ValueError):
        enumerate_family("U", 41)
    with pytest.raises(ValueError):
        enumerate_family("X", 3)
    assert enumerate_family("u", 45, max_n=50).total > 0
