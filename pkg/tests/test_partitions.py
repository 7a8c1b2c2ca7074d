import itertools

import pytest

from ghzsep.hilbert import ValidationError
from ghzsep.partitions import Partition, enumerate_partitions, necessary_subsets, tau_of, union_family


def stirling2(n, k, _memo={}):
    """Recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if (n, k) in _memo:
        return _memo[(n, k)]
    if n == k:
        val = 1
    elif k == 0 or k > n:
        val = 0
    else:
        val = k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
    _memo[(n, k)] = val
    return val


def brute_partitions(n, k):
    """Label every site with a block id and keep surjective labelings."""
    seen = set()
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) != k:
            continue
        blocks = frozenset(frozenset(s + 1 for s in range(n) if labels[s] == b) for b in range(k))
        seen.add(blocks)
    return seen


def as_sets(parts):
    return {frozenset(frozenset(b) for b in p.blocks) for p in parts}


def test_n3_k2():
    parts = enumerate_partitions(3, 2)
    assert len(parts) == 3
    assert as_sets(parts) == {
        frozenset({frozenset({1}), frozenset({2, 3})}),
        frozenset({frozenset({2}), frozenset({1, 3})}),
        frozenset({frozenset({3}), frozenset({1, 2})}),
    }
    assert as_sets(parts) == brute_partitions(3, 2)


def test_small_counts():
    assert len(enumerate_partitions(3, 3)) == 1
    assert len(enumerate_partitions(4, 2)) == 7 == stirling2(4, 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_matches_brute_force(n):
    for k in range(2, n + 1):
        assert as_sets(enumerate_partitions(n, k)) == brute_partitions(n, k)


def test_canonical_order_and_parse():
    p = Partition.parse("2,3|1")
    assert p.blocks == ((1,), (2, 3))
    assert str(p) == "1|2,3"
    assert p.k == 2
    with pytest.raises(ValidationError):
        Partition.parse("1|1,2")
    with pytest.raises(ValidationError):
        Partition.parse("1|3", n=3)
    with pytest.raises(ValidationError):
        Partition.parse("1|x")
    with pytest.raises(ValidationError):
        enumerate_partitions(13, 2)


def test_union_family():
    fam = union_family(Partition.parse("1|2,3"))
    assert set(fam) == {frozenset(), frozenset({1}), frozenset({2, 3}), frozenset({1, 2, 3})}
    fam = union_family(Partition.parse("1|2|3"))
    assert len(set(fam)) == 8


@pytest.mark.parametrize("text", ["1|2,3", "1,4|2|3,5", "1|2|3|4"])
def test_union_family_closed_under_complement(text):
    p = Partition.parse(text)
    full = frozenset(range(1, p.n + 1))
    fam = set(union_family(p))
    assert len(fam) == 2**p.k
    assert all(full - a in fam for a in fam)


def test_necessary_subsets():
    assert necessary_subsets(Partition.parse("1|2,3")) == [frozenset({1})]
    assert necessary_subsets(Partition.parse("1|2|3")) == [frozenset({1}), frozenset({2}), frozenset({1, 2})]


def test_tau_examples():
    assert tau_of(Partition.parse("1|2,3")) == {2}
    assert tau_of(Partition.parse("1|2|3")) == {1, 2, 3}
    assert tau_of(Partition.parse("1,2|3")) == {3}


def test_tau_size_exhaustive_small():
    for n in range(2, 7):
        for k in range(2, n + 1):
            for p in enumerate_partitions(n, k):
                assert len(necessary_subsets(p)) == 2 ** (k - 1) - 1
                tau = tau_of(p)
                assert len(tau) == 2 ** (k - 1) - 1
                assert 0 not in tau and max(tau) <= 2 ** (n - 1) - 1
