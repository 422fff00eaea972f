"""Deciding whether a ranking can arise from coefficient-sparse functions.

The question "is there a function with zero coefficients on a given set of
partitions whose values decrease strictly along a target ranking?" is a strict
linear feasibility problem F a > 0, where the columns of F correspond to base
functions (inverse transforms of single unit coefficients) and the rows to
consecutive differences along the ranking.  By the theorem of the alternative,
exactly one of the following holds:

* some a with F a > 0 exists (a witness), or
* some v >= 0, v != 0 with F^T v = 0 exists (a certificate of impossibility).

When the nullspace of F^T is one-dimensional the sign pattern of its spanning
vector decides the alternative directly; otherwise a linear program is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy.optimize import linprog

from .fourier import FunctionTable
from .partitions import Partition, enumerate_partitions, irrep_dimension
from .rankings import Ranking, ranking_of
from .yor import yor_table

NULLSPACE_TOL = 1e-10
SIGN_TOL = 1e-9
MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class BaseFunctionSet:
    """Inverse transforms of unit coefficients outside the excluded partitions.

    ``entries[m]`` is the (shape, row, col) of the unit coefficient generating
    column m of ``matrix`` (n! x k).  The constant function from shape (n) is
    always dropped: it cannot affect any ranking.
    """

    n: int
    excluded: frozenset[Partition]
    entries: tuple[tuple[Partition, int, int], ...]
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return len(self.entries)


def base_functions(n: int, excluded: frozenset[Partition] = frozenset()) -> BaseFunctionSet:
    if not 3 <= n <= 5:
        raise ValueError(f"n must be in 3..5, got {n}")
    excluded = frozenset(excluded)
    for shape in excluded:
        if shape not in enumerate_partitions(n):
            raise ValueError(f"{shape} is not a partition of {n}")
    entries: list[tuple[Partition, int, int]] = []
    columns: list[np.ndarray] = []
    for shape in enumerate_partitions(n):
        if shape == (n,) or shape in excluded:
            continue
        d = irrep_dimension(shape)
        table = yor_table(n, shape)
        for i in range(d):
            for j in range(d):
                entries.append((shape, i, j))
                columns.append(d / factorial(n) * table[:, i, j])
    m = np.column_stack(columns)
    m.setflags(write=False)
    return BaseFunctionSet(n=n, excluded=excluded, entries=tuple(entries), matrix=m)


def build_difference_matrix(ranking: Ranking, basis: BaseFunctionSet) -> np.ndarray:
    """(n! - 1) x k matrix of consecutive base-function differences, best first."""
    if ranking.n != basis.n:
        raise ValueError(f"size mismatch: ranking n={ranking.n}, basis n={basis.n}")
    rows = basis.matrix[list(ranking.order)]
    return rows[:-1] - rows[1:]


@dataclass(frozen=True)
class GordanVerdict:
    possible: bool
    nullspace_dim: int
    certified: bool
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None


def _nullspace_of_transpose(f: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of {v : F^T v = 0}."""
    u, sv, _ = np.linalg.svd(f, full_matrices=True)
    rank = int(np.sum(sv > NULLSPACE_TOL * sv[0])) if sv.size and sv[0] > 0 else 0
    return u[:, rank:]


def _witness_lp(f: np.ndarray) -> np.ndarray | None:
    """Maximize the margin t subject to F a >= t, a in [-1, 1]^k, t in [0, 1]."""
    m, k = f.shape
    c = np.zeros(k + 1)
    c[-1] = -1.0
    a_ub = np.hstack([-f, np.ones((m, 1))])
    b_ub = np.zeros(m)
    bounds = [(-1.0, 1.0)] * k + [(0.0, 1.0)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if not res.success:
        return None
    a, t = res.x[:-1], res.x[-1]
    if t <= MARGIN_TOL * max(1.0, float(np.linalg.norm(a))):
        return None
    return a


def _certificate_lp(f: np.ndarray) -> np.ndarray | None:
    """Find v >= 0 with F^T v = 0 and sum(v) = 1."""
    m = f.shape[0]
    a_eq = np.vstack([f.T, np.ones((1, m))])
    b_eq = np.concatenate([np.zeros(f.shape[1]), [1.0]])
    res = linprog(np.zeros(m), A_eq=a_eq, b_eq=b_eq, bounds=[(0.0, None)] * m, method="highs")
    return res.x if res.success else None


def gordan_verdict(
    ranking: Ranking, excluded: frozenset[Partition] = frozenset()
) -> GordanVerdict:
    """Decide whether the ranking is achievable without the excluded coefficients.

    Verdicts for n = 4 with the sign representation excluded are certified;
    other cases are computed the same way but flagged as uncertified.
    """
    n = ranking.n
    basis = base_functions(n, excluded)
    f = build_difference_matrix(ranking, basis)
    nullsp = _nullspace_of_transpose(f)
    dim = nullsp.shape[1]
    certified = n == 4 and frozenset(excluded) == frozenset({(1, 1, 1, 1)})

    if dim == 1:
        v = nullsp[:, 0]
        cut = SIGN_TOL * np.max(np.abs(v))
        has_pos = bool(np.any(v > cut))
        has_neg = bool(np.any(v < -cut))
        if has_pos and has_neg:
            witness = _witness_lp(f)
            return GordanVerdict(True, dim, certified, witness=witness)
        v = np.abs(v)
        return GordanVerdict(False, dim, certified, certificate=v / v.sum())

    witness = _witness_lp(f)
    if witness is not None:
        return GordanVerdict(True, dim, certified, witness=witness)
    certificate = _certificate_lp(f)
    if certificate is None:
        raise RuntimeError("neither a witness nor a certificate could be constructed")
    return GordanVerdict(False, dim, certified, certificate=certificate)


def verify_witness(ranking: Ranking, a: np.ndarray, basis: BaseFunctionSet) -> bool:
    """Check that the witness combination actually reproduces the ranking."""
    f = FunctionTable(n=basis.n, values=basis.matrix @ np.asarray(a, dtype=float))
    try:
        achieved = ranking_of(f, direction="max")
    except ValueError:
        return False
    return achieved.order == ranking.order


def load_ranking_text(text: str) -> Ranking:
    """Parse a ranking file: one permutation per line, best first.

    Lines look like ``[2,3,4,1]`` or ``2 3 4 1``; blank lines are skipped.
    """
    from .permutations import Permutation, index_of

    order = []
    for line in text.splitlines():
        line = line.strip().strip("[]")
        if not line:
            continue
        img = tuple(int(tok) for tok in line.replace(",", " ").split())
        order.append(index_of(Permutation(img)))
    if not order:
        raise ValueError("empty ranking file")
    n = 1
    while factorial(n) < len(order):
        n += 1
    return Ranking(n=n, order=tuple(order))


def verify_certificate(
    ranking: Ranking, v: np.ndarray, basis: BaseFunctionSet, tol: float = 1e-8
) -> bool:
    """Check that v is a valid impossibility certificate: v >= 0, nonzero, F^T v = 0."""
    v = np.asarray(v, dtype=float)
    if np.any(v < -tol) or v.sum() <= tol:
        return False
    f = build_difference_matrix(ranking, basis)
    return bool(np.linalg.norm(f.T @ v) <= tol * max(1.0, float(np.linalg.norm(v))))
