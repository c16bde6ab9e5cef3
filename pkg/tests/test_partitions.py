import pytest
from hypothesis import given, strategies as st

from qsi.errors import PartitionError
from qsi.partitions import Partition, column_data, conjugate, partitions_of, schur_dim
from oracles import ssyt_count
from strategies import partitions


def test_parse():
    assert Partition.parse("5,2,1") == (5, 2, 1)
    assert Partition.parse("") == ()
    assert Partition.parse("3,0,0") == (3,)


def test_rejects_increasing():
    with pytest.raises(PartitionError, match="not weakly decreasing"):
        Partition.parse("1,2")


@pytest.mark.parametrize("bad", ["a,b", "2,-1", "2,0,1"])
def test_rejects_garbage(bad):
    with pytest.raises(PartitionError):
        Partition.parse(bad)


def test_conjugate_and_columns():
    assert conjugate((5, 2, 1)) == (3, 2, 1, 1, 1)
    assert column_data((5, 2, 1)) == ((1, 2, 3), (3, 1, 1))
    assert column_data((4, 2)) == ((1, 2), (2, 2))
    assert column_data(()) == ((), ())


def test_views():
    p = Partition((3, 1))
    assert p.size == 4 and p.length == 2
    assert p.part(5) == 0
    assert p.stretch(3) == (9, 3)
    assert Partition((3, 2)).contains(p)
    assert not p.contains((2, 2))


def test_partitions_of_counts():
    assert [len(list(partitions_of(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert list(partitions_of(4, max_rows=2)) == [(4,), (3, 1), (2, 2)]
    assert list(partitions_of(4, max_rows=2, max_part=2)) == [(2, 2)]


def test_schur_dim_examples():
    assert schur_dim((1,), 5) == 5
    assert schur_dim((2,), 3) == 6
    assert schur_dim((1, 1), 3) == 3
    assert schur_dim((2, 1), 3) == 8
    assert schur_dim((1, 1, 1, 1), 3) == 0


@given(partitions(max_size=8))
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == p
    assert sum(conjugate(p)) == sum(p)


@given(partitions(max_size=10))
def test_column_bookkeeping(p):
    deltas, counts = column_data(p)
    assert sum(b * d for b, d in zip(counts, deltas)) == sum(p)
    assert list(deltas) == sorted(set(deltas))


@given(partitions(max_size=6, max_rows=3), st.integers(1, 4))
def test_schur_dim_counts_tableaux(p, r):
    assert schur_dim(p, r) == ssyt_count(p, r)
