from math import factorial

import pytest

from snfourier.partitions import (
    enumerate_partitions,
    hook_lengths,
    irrep_dimension,
    standard_tableaux,
    supported_tabloid_shapes,
    tabloid_indices,
    validate_partition,
)

# number of partitions of 1..10
PARTITION_COUNTS = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize("n,count", list(enumerate(PARTITION_COUNTS, start=1)))
def test_partition_counts(n, count):
    assert len(enumerate_partitions(n)) == count


def test_partition_order():
    parts = enumerate_partitions(4)
    assert parts[0] == (4,)
    assert parts == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    # decreasing lexicographic
    assert list(parts) == sorted(parts, reverse=True)


def test_validate_partition_rejects_bad_shapes():
    with pytest.raises(ValueError):
        validate_partition((1, 2))
    with pytest.raises(ValueError):
        validate_partition((3, 0))
    with pytest.raises(ValueError):
        validate_partition(())


def test_hook_lengths_example():
    # shape (3,2): a standard small example
    assert hook_lengths((3, 2)) == [[4, 3, 1], [2, 1]]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_dimension_squares_sum_to_group_order(n):
    assert sum(irrep_dimension(s) ** 2 for s in enumerate_partitions(n)) == factorial(n)


@pytest.mark.parametrize(
    "shape,dim",
    [((4,), 1), ((3, 1), 3), ((2, 2), 2), ((2, 1, 1), 3), ((1, 1, 1, 1), 1), ((3, 2), 5)],
)
def test_known_dimensions(shape, dim):
    assert irrep_dimension(shape) == dim


@pytest.mark.parametrize("shape", [(3, 1), (2, 2), (3, 2), (2, 1, 1), (4, 2)])
def test_tableaux_are_standard(shape):
    n = sum(shape)
    for t in standard_tableaux(shape):
        values = sorted(v for row in t.rows for v in row)
        assert values == list(range(1, n + 1))
        for row in t.rows:
            assert list(row) == sorted(row)
        for c in range(shape[0]):
            col = [row[c] for row in t.rows if len(row) > c]
            assert col == sorted(col)


def test_tableaux_count_matches_dimension():
    for shape in enumerate_partitions(5):
        assert len(standard_tableaux(shape)) == irrep_dimension(shape)


def test_last_letter_order():
    # tableaux sorted by descending-value row positions: the tableau keeping n
    # in the first row comes first
    ts = standard_tableaux((2, 1))
    assert ts[0].rows == ((1, 3), (2,))
    assert ts[1].rows == ((1, 2), (3,))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_tabloid_index_sizes(n):
    sizes = {
        (n,): 1,
        (n - 1, 1): n,
        (n - 2, 1, 1): n * (n - 1),
    }
    if n >= 4:
        sizes[(n - 2, 2)] = n * (n - 1) // 2
    for shape in supported_tabloid_shapes(n):
        assert len(tabloid_indices(shape, n)) == sizes[shape]


def test_tabloid_indices_reject_unsupported():
    with pytest.raises(ValueError):
        tabloid_indices((3, 3), 6)  # not one of the four tabloid families
    with pytest.raises(ValueError):
        tabloid_indices((3, 1), 5)


def test_tabloid_tags():
    pairs = [t.tag for t in tabloid_indices((3, 2), 5)]
    assert all(a < b for a, b in pairs)
    ordered = [t.tag for t in tabloid_indices((3, 1, 1), 5)]
    assert len(ordered) == 20 and (2, 1) in ordered and (1, 2) in ordered
