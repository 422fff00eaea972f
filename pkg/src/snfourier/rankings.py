"""Rankings of Sigma_n induced by objective functions, and sampling experiments.

A ranking is the ordering of all n! permutations by objective value, best
first.  Its signature pattern records only the parity of each permutation
along the ranking, as a string like "+--++-".  The main experiment samples
random coefficient matrices at the standard representation of Sigma_3,
inverts them, and tabulates which rankings and patterns occur.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .fourier import FunctionTable
from .permutations import enumerate_permutations, reverse, signature
from .problems import LopInstance, lop_objective, objective_table
from .yor import yor_table

TIE_EPSILON = 1e-12


class TieError(ValueError):
    """Raised when two objective values are too close to order reliably."""


@dataclass(frozen=True)
class Ranking:
    """Permutation indices (lexicographic, 0-based) ordered best first."""

    n: int
    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(factorial(self.n))):
            raise ValueError(f"order is not a permutation of 0..{factorial(self.n) - 1}")


def ranking_of(
    f: FunctionTable, direction: str = "min", tie_epsilon: float = TIE_EPSILON
) -> Ranking:
    """Rank all permutations by f, best first; ties raise TieError."""
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    vals = f.values if direction == "min" else -f.values
    order = np.argsort(vals, kind="stable")
    gaps = np.diff(vals[order])
    if np.any(gaps <= tie_epsilon):
        k = int(np.argmax(gaps <= tie_epsilon))
        raise TieError(
            f"values at ranks {k} and {k + 1} differ by {gaps[k]:.3e} <= {tie_epsilon:.1e}"
        )
    return Ranking(n=f.n, order=tuple(int(i) for i in order))


def _signs(n: int) -> np.ndarray:
    return np.array([signature(p) for p in enumerate_permutations(n)], dtype=int)


def signature_pattern(ranking: Ranking) -> str:
    """Parities along the ranking as a +/- string, best first."""
    signs = _signs(ranking.n)
    return "".join("+" if signs[i] > 0 else "-" for i in ranking.order)


def pattern_of_order(order: np.ndarray, signs: np.ndarray) -> str:
    return "".join("+" if signs[i] > 0 else "-" for i in order)


@dataclass
class Algorithm1Report:
    reps: int
    seed: int
    distinct_rankings: int
    ranking_counts: dict[tuple[int, ...], int]
    pattern_counts: dict[str, int] = field(default_factory=dict)
    tie_count: int = 0

    @property
    def distinct_patterns(self) -> int:
        return len(self.pattern_counts)


def algorithm1_experiment(
    reps: int = 1_000_000, seed: int = 0, batch_size: int = 100_000
) -> Algorithm1Report:
    """Sample rankings of Sigma_3 from random standard-representation coefficients.

    Each draw fills the 2x2 coefficient at (2, 1) with uniform(-1, 1) entries,
    leaves (3) and (1, 1, 1) at zero, inverts, and ranks by increasing value.
    Near-ties (within TIE_EPSILON) are discarded and counted, not stored.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    n = 3
    rng = np.random.default_rng(seed)
    # inversion reduces to an affine map: f = (d / n!) * X @ R^T with the
    # irrep table flattened row-major; the zero coefficients contribute nothing
    r = yor_table(n, (2, 1)).reshape(factorial(n), 4)
    scale = 2.0 / factorial(n)
    signs = _signs(n)
    ranking_counts: dict[tuple[int, ...], int] = {}
    tie_count = 0
    done = 0
    while done < reps:
        m = min(batch_size, reps - done)
        x = rng.uniform(-1.0, 1.0, size=(m, 4))
        vals = scale * (x @ r.T)
        orders = np.argsort(vals, axis=1, kind="stable")
        sorted_vals = np.take_along_axis(vals, orders, axis=1)
        tied = np.any(np.diff(sorted_vals, axis=1) <= TIE_EPSILON, axis=1)
        tie_count += int(tied.sum())
        for row in orders[~tied]:
            key = tuple(int(i) for i in row)
            ranking_counts[key] = ranking_counts.get(key, 0) + 1
        done += m
    pattern_counts: dict[str, int] = {}
    for key, c in ranking_counts.items():
        pat = pattern_of_order(np.array(key), signs)
        pattern_counts[pat] = pattern_counts.get(pat, 0) + c
    return Algorithm1Report(
        reps=reps,
        seed=seed,
        distinct_rankings=len(ranking_counts),
        ranking_counts=ranking_counts,
        pattern_counts=pattern_counts,
        tie_count=tie_count,
    )


def pattern_classes(n: int = 3) -> dict[str, list[tuple[int, ...]]]:
    """All orderings of Sigma_n grouped by signature pattern."""
    import itertools

    signs = _signs(n)
    out: dict[str, list[tuple[int, ...]]] = {}
    for order in itertools.permutations(range(factorial(n))):
        pat = pattern_of_order(np.array(order), signs)
        out.setdefault(pat, []).append(order)
    return out


def pattern_closure_check(report: Algorithm1Report) -> bool:
    """True iff the observed rankings are exactly the union of the full
    pattern classes of the observed patterns (each class has 36 members)."""
    classes = pattern_classes(3)
    expected = set()
    for pat in report.pattern_counts:
        expected.update(classes[pat])
    return set(report.ranking_counts) == expected


def lop_ranking_bound(n: int) -> int:
    """Upper bound 2^(n!/2) * (n!/2)! on the number of LOP rankings, exact integer."""
    if n < 2:
        raise ValueError("n must be >= 2")
    half = factorial(n) // 2
    return 2**half * factorial(half)


def lop_reverse_symmetry_check(inst: LopInstance) -> bool:
    """Verify f(sigma) + f(reverse(sigma)) is constant at the total off-diagonal sum.

    This pairing is what halves the count behind ``lop_ranking_bound``.
    """
    total = float(np.sum(inst.A) - np.trace(inst.A))
    perms = enumerate_permutations(inst.n)
    for sigma in perms:
        paired = lop_objective(inst, sigma) + lop_objective(inst, reverse(sigma))
        if abs(paired - total) > 1e-9 * max(1.0, abs(total)):
            return False
    return True
