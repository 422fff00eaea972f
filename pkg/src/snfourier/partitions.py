"""Integer partitions, irrep dimensions, standard Young tableaux and tabloid indices.

Only the four tabloid shapes (n), (n-1,1), (n-2,2), (n-2,1,1) are supported by
``tabloid_indices``; these are the only permutation representations evaluated
anywhere in the library.

Standard tableaux are returned in last-letter order: tableaux are compared by
the row index of n, then of n-1, and so on.  The YOR matrix entries depend on
this ordering, so it is fixed here once and for all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

Partition = tuple[int, ...]


def validate_partition(shape: Partition) -> None:
    if len(shape) == 0 or any(p < 1 for p in shape):
        raise ValueError(f"invalid partition {shape}")
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        raise ValueError(f"partition {shape} is not weakly decreasing")


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in decreasing lexicographic order, (n) first."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def gen(remaining: int, maxpart: int) -> list[Partition]:
        if remaining == 0:
            return [()]
        out = []
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                out.append((first,) + rest)
        return out

    return tuple(gen(n, n))


def hook_lengths(shape: Partition) -> list[list[int]]:
    validate_partition(shape)
    cols = [0] * shape[0]
    for row_len in shape:
        for c in range(row_len):
            cols[c] += 1
    return [
        [(row_len - c) + (cols[c] - r) - 1 for c in range(row_len)]
        for r, row_len in enumerate(shape)
    ]


@lru_cache(maxsize=None)
def irrep_dimension(shape: Partition) -> int:
    """Number of standard tableaux of the shape, by the hook-length formula."""
    n = sum(shape)
    prod = 1
    for row in hook_lengths(shape):
        for h in row:
            prod *= h
    return factorial(n) // prod


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def position_of(self, value: int) -> tuple[int, int]:
        """(row, column) of a value, 0-based."""
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                if v == value:
                    return r, c
        raise ValueError(f"value {value} not in tableau")

    def row_of(self, value: int) -> int:
        return self.position_of(value)[0]


def _fill_tableaux(shape: Partition) -> list[tuple[tuple[int, ...], ...]]:
    """All standard fillings, built by removing the largest entry from a corner."""
    n = sum(shape)
    if n == 1:
        return [((1,),)]
    out = []
    for r in range(len(shape)):
        # n can sit at the end of row r iff the cell is a corner
        if shape[r] >= 1 and (r == len(shape) - 1 or shape[r] > shape[r + 1]):
            sub = list(shape)
            sub[r] -= 1
            if sub[r] == 0:
                sub.pop()
            for rows in _fill_tableaux(tuple(sub)):
                new_rows = [list(row) for row in rows]
                while len(new_rows) <= r:
                    new_rows.append([])
                new_rows[r].append(n)
                out.append(tuple(tuple(row) for row in new_rows))
    return out


@lru_cache(maxsize=None)
def standard_tableaux(shape: Partition) -> tuple[StandardTableau, ...]:
    """All standard tableaux of the shape in last-letter order."""
    validate_partition(shape)
    n = sum(shape)
    tableaux = [StandardTableau(shape, rows) for rows in _fill_tableaux(shape)]

    def key(t: StandardTableau):
        return tuple(t.row_of(v) for v in range(n, 0, -1))

    tableaux.sort(key=key)
    assert len(tableaux) == irrep_dimension(shape)
    return tuple(tableaux)


# ---------------------------------------------------------------------------
# Tabloid indices for the four supported permutation representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TabloidIndex:
    """Lower-row label of a tabloid of one of the four supported shapes.

    tag is () for shape (n), (k,) for (n-1,1) with second-row element k,
    a sorted pair for (n-2,2) and an ordered pair for (n-2,1,1).
    """

    shape: Partition
    tag: tuple[int, ...]


def supported_tabloid_shapes(n: int) -> list[Partition]:
    shapes: list[Partition] = [(n,)]
    if n >= 2:
        shapes.append((n - 1, 1))
    if n >= 4:
        shapes.append((n - 2, 2))
    if n >= 3:
        shapes.append((n - 2, 1, 1))
    return shapes


@lru_cache(maxsize=None)
def tabloid_indices(shape: Partition, n: int) -> tuple[TabloidIndex, ...]:
    """Deterministic index set; sizes 1, n, n(n-1)/2 and n(n-1)."""
    if sum(shape) != n:
        raise ValueError(f"{shape} is not a partition of {n}")
    if shape == (n,):
        return (TabloidIndex(shape, ()),)
    if shape == (n - 1, 1) and n >= 2:
        return tuple(TabloidIndex(shape, (k,)) for k in range(1, n + 1))
    if shape == (n - 2, 2) and n >= 4:
        return tuple(
            TabloidIndex(shape, pair)
            for pair in itertools.combinations(range(1, n + 1), 2)
        )
    if shape == (n - 2, 1, 1) and n >= 3:
        return tuple(
            TabloidIndex(shape, pair)
            for pair in itertools.permutations(range(1, n + 1), 2)
        )
    raise ValueError(f"unsupported tabloid shape {shape} for n={n}")
