"""Linear-system membership tests: can a value table be realized as LOP or TSP?

Both tests write the objective as M x = v, where x stacks the unknown matrix
entries column r = t + (s - 1) n and row l is the permutation sigma_l in
lexicographic order.  The minimum-norm least-squares solution decides
membership by its residual, and on success recovers an input matrix.

The TSP system has repeated rows (all cyclic shifts of a tour cost the same),
so the table is first checked for consistency over tour classes and then
reduced to one representative row per class before solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .fourier import FunctionTable
from .permutations import Permutation, enumerate_permutations, inverse

RESIDUAL_THRESHOLD = 1e-8
CONSISTENCY_TOL = 1e-10


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    residual: float
    matrix: np.ndarray | None
    reason: str = ""


def _column(s: int, t: int, n: int) -> int:
    """0-based column of the (s, t) matrix entry: r = t + (s - 1) n."""
    return (s - 1) * n + (t - 1)


@lru_cache(maxsize=None)
def build_lop_system(n: int) -> np.ndarray:
    """n! x n^2 matrix; entry 1 iff s precedes t in the ordering sigma_l."""
    perms = enumerate_permutations(n)
    m = np.zeros((factorial(n), n * n))
    for l, sigma in enumerate(perms):
        inv = inverse(sigma)
        for s in range(1, n + 1):
            for t in range(1, n + 1):
                if s != t and inv(s) < inv(t):
                    m[l, _column(s, t, n)] = 1.0
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def build_tsp_system(n: int) -> np.ndarray:
    """n! x n^2 matrix; entry 1 iff t directly follows s on the tour sigma_l."""
    perms = enumerate_permutations(n)
    m = np.zeros((factorial(n), n * n))
    for l, sigma in enumerate(perms):
        inv = inverse(sigma)
        for s in range(1, n + 1):
            for t in range(1, n + 1):
                if s != t and inv(s) % n + 1 == inv(t):
                    m[l, _column(s, t, n)] = 1.0
    m.setflags(write=False)
    return m


def _solve(system: np.ndarray, values: np.ndarray, threshold: float):
    x, _, _, _ = np.linalg.lstsq(system, values, rcond=None)
    residual = float(np.linalg.norm(system @ x - values))
    member = residual <= threshold * max(1.0, float(np.linalg.norm(values)))
    return member, residual, x


def is_lop(f: FunctionTable, threshold: float = RESIDUAL_THRESHOLD) -> MembershipVerdict:
    """Decide whether some matrix A gives f as its linear-ordering objective.

    The system's unknown x_{st} multiplies the indicator "s precedes t", whose
    coefficient in the objective is A[t, s]; hence the transpose on recovery.
    """
    n = f.n
    member, residual, x = _solve(build_lop_system(n), f.values, threshold)
    matrix = x.reshape(n, n).T if member else None
    reason = "" if member else f"least-squares residual {residual:.3e} above threshold"
    return MembershipVerdict(member=member, residual=residual, matrix=matrix, reason=reason)


def tour_representative(sigma: Permutation, symmetric: bool = False) -> Permutation:
    """Lexicographically smallest ordering describing the same closed tour.

    Candidates are the cyclic shifts of sigma's image, plus the shifts of the
    reversed image when travel direction does not matter.
    """
    img = sigma.image
    n = sigma.n
    candidates = [img[i:] + img[:i] for i in range(n)]
    if symmetric:
        rev = img[::-1]
        candidates += [rev[i:] + rev[:i] for i in range(n)]
    return Permutation(min(candidates))


def is_consistent(
    f: FunctionTable, symmetric: bool = False, tol: float = CONSISTENCY_TOL
) -> bool:
    """True iff f is constant on tour classes (cyclic shifts, and reversals
    when symmetric), within an absolute tolerance."""
    perms = enumerate_permutations(f.n)
    seen: dict[tuple[int, ...], float] = {}
    for sigma, v in zip(perms, f.values):
        rep = tour_representative(sigma, symmetric).image
        if rep in seen:
            if abs(v - seen[rep]) > tol:
                return False
        else:
            seen[rep] = v
    return True


def is_tsp(
    f: FunctionTable,
    symmetric: bool = False,
    threshold: float = RESIDUAL_THRESHOLD,
    consistency_tol: float = CONSISTENCY_TOL,
) -> MembershipVerdict:
    """Decide whether some distance matrix gives f as its closed-tour cost.

    Rejects immediately if f distinguishes orderings of the same tour; then
    solves the row-reduced system with one representative per tour class,
    (n-1)! rows, or (n-1)!/2 when direction is ignored.
    """
    n = f.n
    if not is_consistent(f, symmetric, consistency_tol):
        return MembershipVerdict(
            member=False,
            residual=float("inf"),
            matrix=None,
            reason="values differ across orderings of the same tour",
        )
    perms = enumerate_permutations(n)
    keep = np.array(
        [sigma.image == tour_representative(sigma, symmetric).image for sigma in perms]
    )
    system = build_tsp_system(n)[keep]
    if symmetric:
        # solve on unordered edge weights so the recovered matrix is symmetric
        # and prices reversed tours identically
        pairs = [(s, t) for s in range(1, n + 1) for t in range(s + 1, n + 1)]
        folded = np.column_stack(
            [system[:, _column(s, t, n)] + system[:, _column(t, s, n)] for s, t in pairs]
        )
        member, residual, w = _solve(folded, f.values[keep], threshold)
        matrix = None
        if member:
            matrix = np.zeros((n, n))
            for (s, t), v in zip(pairs, w):
                matrix[s - 1, t - 1] = matrix[t - 1, s - 1] = v
    else:
        member, residual, x = _solve(system, f.values[keep], threshold)
        matrix = x.reshape(n, n) if member else None
    reason = "" if member else f"least-squares residual {residual:.3e} above threshold"
    return MembershipVerdict(member=member, residual=residual, matrix=matrix, reason=reason)
