"""Problem instances and objective functions: LOP, TSP, QAP and their helpers.

The canonical QAP form for all spectral work is the full double sum
``qap_objective_full``; the upper-triangular variant printed in most problem
statements is kept as a separate evaluator.  For symmetric A and A' the two
are related by full = 2 * triangular + sum_i A[s(i),s(i)] A'[i,i].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial

import numpy as np

from .fourier import FunctionTable
from .permutations import Permutation, enumerate_permutations


def _check_square(m: np.ndarray, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


@dataclass(frozen=True)
class LopInstance:
    A: np.ndarray

    def __post_init__(self):
        a = _check_square(self.A, "A")
        if a.shape[0] < 2:
            raise ValueError("LOP requires n >= 2")
        object.__setattr__(self, "A", a)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class TspInstance:
    D: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        d = _check_square(self.D, "D")
        if self.symmetric and not np.allclose(d, d.T, atol=1e-12, rtol=0.0):
            raise ValueError("instance flagged symmetric but D != D^T")
        object.__setattr__(self, "D", d)

    @property
    def n(self) -> int:
        return self.D.shape[0]


@dataclass(frozen=True)
class QapInstance:
    A: np.ndarray
    Aprime: np.ndarray

    def __post_init__(self):
        a = _check_square(self.A, "A")
        ap = _check_square(self.Aprime, "Aprime")
        if a.shape != ap.shape:
            raise ValueError("distance and flow matrices must have the same size")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "Aprime", ap)

    @property
    def n(self) -> int:
        return self.A.shape[0]


ProblemInstance = LopInstance | TspInstance | QapInstance


def _check_sigma(n: int, sigma: Permutation) -> None:
    if sigma.n != n:
        raise ValueError(f"size mismatch: instance n={n}, permutation n={sigma.n}")


def lop_objective(inst: LopInstance, sigma: Permutation) -> float:
    """Sum of the lower-diagonal elements after reordering by sigma."""
    _check_sigma(inst.n, sigma)
    img = sigma.image
    total = 0.0
    for j in range(inst.n - 1):
        for i in range(j + 1, inst.n):
            total += inst.A[img[i] - 1, img[j] - 1]
    return total


def tsp_objective(inst: TspInstance, sigma: Permutation) -> float:
    """Closed-tour cost of visiting the cities in the order sigma(1..n)."""
    _check_sigma(inst.n, sigma)
    img = sigma.image
    total = inst.D[img[-1] - 1, img[0] - 1]
    for i in range(inst.n - 1):
        total += inst.D[img[i] - 1, img[i + 1] - 1]
    return float(total)


def qap_objective_full(inst: QapInstance, sigma: Permutation) -> float:
    """Full double sum over all index pairs, diagonal included."""
    _check_sigma(inst.n, sigma)
    idx = np.array(sigma.image) - 1
    return float(np.sum(inst.A[np.ix_(idx, idx)] * inst.Aprime))


def qap_objective_triangular(inst: QapInstance, sigma: Permutation) -> float:
    """Upper-triangular double sum (i < j only)."""
    _check_sigma(inst.n, sigma)
    img = sigma.image
    total = 0.0
    for i in range(inst.n - 1):
        for j in range(i + 1, inst.n):
            total += inst.A[img[i] - 1, img[j] - 1] * inst.Aprime[i, j]
    return total


def lop_flow_matrix(n: int) -> np.ndarray:
    """Flow matrix with 1 strictly above the diagonal; specializes QAP to LOP."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return np.triu(np.ones((n, n)), k=1)


def tsp_flow_matrix(n: int) -> np.ndarray:
    """Cyclic-successor flow matrix; specializes QAP to TSP."""
    if n < 2:
        raise ValueError("n must be >= 2")
    m = np.zeros((n, n))
    for i in range(n - 1):
        m[i, i + 1] = 1.0
    m[n - 1, 0] = 1.0
    return m


def graph_function(A: np.ndarray) -> FunctionTable:
    """The table of sigma -> A[sigma(n), sigma(n-1)] over all of Sigma_n."""
    A = _check_square(A, "A")
    n = A.shape[0]
    perms = enumerate_permutations(n)
    values = np.array([A[p.image[-1] - 1, p.image[-2] - 1] for p in perms])
    return FunctionTable(n=n, values=values)


def h_function(n: int) -> FunctionTable:
    """The cyclic-successor indicator translated to zero mean.

    h = graph_function(tsp_flow_matrix(n)) - 1/(n-1); its trivial Fourier
    coefficient vanishes.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    base = graph_function(tsp_flow_matrix(n))
    return FunctionTable(n=n, values=base.values - 1.0 / (n - 1))


def objective_table(inst: ProblemInstance) -> FunctionTable:
    """Objective values of an instance over all of Sigma_n, lexicographic order."""
    perms = enumerate_permutations(inst.n)
    if isinstance(inst, LopInstance):
        values = [lop_objective(inst, p) for p in perms]
    elif isinstance(inst, TspInstance):
        values = [tsp_objective(inst, p) for p in perms]
    else:
        values = [qap_objective_full(inst, p) for p in perms]
    return FunctionTable(n=inst.n, values=np.array(values))


KINDS = ("LOP", "TSP", "symTSP", "QAP")


def random_instance(kind: str, n: int, seed: int) -> ProblemInstance:
    """Random instance with entries i.i.d. uniform on (-1, 1).

    Entries are drawn from a single PCG64 stream seeded with ``seed``, row by
    row (A first, then A' for QAP), so instances are bit-reproducible.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, size=(n, n))
    if kind == "LOP":
        return LopInstance(A=a)
    if kind == "TSP":
        return TspInstance(D=a, symmetric=False)
    if kind == "symTSP":
        sym = np.triu(a) + np.triu(a, k=1).T
        return TspInstance(D=sym, symmetric=True)
    aprime = rng.uniform(-1.0, 1.0, size=(n, n))
    return QapInstance(A=a, Aprime=aprime)


# ---------------------------------------------------------------------------
# instance file formats
# ---------------------------------------------------------------------------

def _parse_block(lines: list[str], n: int) -> np.ndarray:
    rows = [list(map(float, line.split())) for line in lines]
    m = np.array(rows)
    if m.shape != (n, n):
        raise ValueError(f"expected {n}x{n} matrix block, got {m.shape}")
    return m


def load_instance_text(text: str, kind: str) -> ProblemInstance:
    """Plain-text format: first line n, then n rows; QAP has two blank-separated blocks."""
    stripped = [line.strip() for line in text.splitlines()]
    if not stripped or not stripped[0]:
        raise ValueError("empty instance file")
    n = int(stripped[0])
    body = stripped[1:]
    blocks: list[list[str]] = [[]]
    for line in body:
        if line:
            blocks[-1].append(line)
        elif blocks[-1]:
            blocks.append([])
    blocks = [b for b in blocks if b]
    if kind == "QAP":
        if len(blocks) != 2:
            raise ValueError("QAP file must contain two matrix blocks")
        return QapInstance(A=_parse_block(blocks[0], n), Aprime=_parse_block(blocks[1], n))
    if len(blocks) != 1:
        raise ValueError(f"{kind} file must contain one matrix block")
    m = _parse_block(blocks[0], n)
    if kind == "LOP":
        return LopInstance(A=m)
    if kind in ("TSP", "symTSP"):
        return TspInstance(D=m, symmetric=(kind == "symTSP"))
    raise ValueError(f"unknown kind {kind!r}")


def load_instance_json(text: str) -> ProblemInstance:
    data = json.loads(text)
    kind = data["kind"]
    if kind == "QAP":
        return QapInstance(A=np.array(data["A"]), Aprime=np.array(data["Aprime"]))
    if kind == "LOP":
        return LopInstance(A=np.array(data["A"]))
    if kind in ("TSP", "symTSP"):
        return TspInstance(D=np.array(data["A"]), symmetric=(kind == "symTSP"))
    raise ValueError(f"unknown kind {kind!r}")


def load_values_file(text: str) -> FunctionTable:
    """One objective value per line, n! lines in lexicographic permutation order."""
    values = np.array([float(line) for line in text.split()])
    n = 1
    while factorial(n) < values.size:
        n += 1
    if factorial(n) != values.size:
        raise ValueError(f"value count {values.size} is not a factorial")
    return FunctionTable(n=n, values=values)
