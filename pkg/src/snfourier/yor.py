"""Young's Orthogonal Representations and the four permutation representations.

YOR matrices are assembled by factoring a permutation into adjacent
transpositions and multiplying the standard generator matrices, whose entries
are inverse axial distances between standard tableaux.  Generator matrices and
whole-group tables are memoized per (n, shape); the caches are filled once and
then only read, so concurrent use is safe.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .partitions import (
    Partition,
    StandardTableau,
    irrep_dimension,
    standard_tableaux,
    tabloid_indices,
)
from .permutations import (
    Permutation,
    adjacent_factorization,
    enumerate_permutations,
)


def _swap_values(t: StandardTableau, k: int) -> tuple[tuple[int, ...], ...]:
    rows = [list(row) for row in t.rows]
    for row in rows:
        for c, v in enumerate(row):
            if v == k:
                row[c] = k + 1
            elif v == k + 1:
                row[c] = k
    return tuple(tuple(row) for row in rows)


@lru_cache(maxsize=None)
def _generator_matrices(shape: Partition) -> tuple[np.ndarray, ...]:
    """YOR matrices of the adjacent transpositions s_1, ..., s_{n-1}."""
    n = sum(shape)
    tableaux = standard_tableaux(shape)
    pos = {t.rows: i for i, t in enumerate(tableaux)}
    d = len(tableaux)
    mats = []
    for k in range(1, n):
        m = np.zeros((d, d))
        for i, t in enumerate(tableaux):
            r1, c1 = t.position_of(k)
            r2, c2 = t.position_of(k + 1)
            axial = (c2 - r2) - (c1 - r1)
            m[i, i] = 1.0 / axial
            swapped = _swap_values(t, k)
            j = pos.get(swapped)
            if j is not None and j != i:
                m[i, j] = math.sqrt(1.0 - 1.0 / axial**2)
        mats.append(m)
    for m in mats:
        m.setflags(write=False)
    return tuple(mats)


def yor_matrix(shape: Partition, sigma: Permutation) -> np.ndarray:
    """The orthogonal irrep matrix rho_shape(sigma)."""
    if sum(shape) != sigma.n:
        raise ValueError(f"{shape} is not a partition of {sigma.n}")
    gens = _generator_matrices(shape)
    d = irrep_dimension(shape)
    out = np.eye(d)
    for k in adjacent_factorization(sigma):
        out = out @ gens[k - 1]
    return out


@lru_cache(maxsize=None)
def yor_table(n: int, shape: Partition) -> np.ndarray:
    """Array of shape (n!, d, d): rho(sigma) for sigma in lexicographic order."""
    perms = enumerate_permutations(n)
    d = irrep_dimension(shape)
    table = np.empty((len(perms), d, d))
    for s, sigma in enumerate(perms):
        table[s] = yor_matrix(shape, sigma)
    table.setflags(write=False)
    return table


def _maps_tabloid(sigma: Permutation, shape: Partition, i_tag, j_tag) -> bool:
    if shape == (sigma.n,):
        return True
    if len(shape) == 2 and shape[1] == 1:  # (n-1,1): second-row element
        return sigma(i_tag[0]) == j_tag[0]
    if len(shape) == 2 and shape[1] == 2:  # (n-2,2): unordered pair
        return {sigma(i_tag[0]), sigma(i_tag[1])} == set(j_tag)
    # (n-2,1,1): ordered pair
    return sigma(i_tag[0]) == j_tag[0] and sigma(i_tag[1]) == j_tag[1]


def perm_rep_matrix(shape: Partition, sigma: Permutation) -> np.ndarray:
    """The 0/1 permutation-representation matrix tau_shape(sigma) on tabloids."""
    n = sigma.n
    indices = tabloid_indices(shape, n)  # raises on unsupported shapes
    m = np.zeros((len(indices), len(indices)))
    for i, ti in enumerate(indices):
        for j, tj in enumerate(indices):
            if _maps_tabloid(sigma, shape, ti.tag, tj.tag):
                m[i, j] = 1.0
    return m


@lru_cache(maxsize=None)
def perm_rep_table(n: int, shape: Partition) -> np.ndarray:
    """Array of shape (n!, size, size): tau(sigma) in lexicographic order."""
    perms = enumerate_permutations(n)
    size = len(tabloid_indices(shape, n))
    table = np.empty((len(perms), size, size))
    for s, sigma in enumerate(perms):
        table[s] = perm_rep_matrix(shape, sigma)
    table.setflags(write=False)
    return table
