"""Forward and inverse Fourier transform over the symmetric group.

The transform is evaluated directly, summing f(sigma) * rho(sigma) over the
whole group; at n <= 6 this is well under a million scalar multiply-adds per
coefficient family, so no fast transform is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .partitions import Partition, enumerate_partitions, irrep_dimension, tabloid_indices
from .yor import perm_rep_table, yor_table

#: relative singular-value cutoff for numeric ranks of coefficient matrices
RANK_TOL = 1e-8


@dataclass(frozen=True)
class FunctionTable:
    """Values of f over all of Sigma_n, ordered lexicographically."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (factorial(self.n),):
            raise ValueError(
                f"expected {factorial(self.n)} values for n={self.n}, got {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("function table contains non-finite values")
        object.__setattr__(self, "values", vals)


@dataclass
class CoefficientFamily:
    """Map partition -> d x d coefficient matrix; missing entries read as zero."""

    n: int
    coeffs: dict[Partition, np.ndarray] = field(default_factory=dict)

    def matrix(self, shape: Partition) -> np.ndarray:
        if shape not in enumerate_partitions(self.n):
            raise KeyError(f"{shape} is not a partition of {self.n}")
        if shape in self.coeffs:
            return self.coeffs[shape]
        d = irrep_dimension(shape)
        return np.zeros((d, d))

    def set(self, shape: Partition, matrix: np.ndarray) -> None:
        d = irrep_dimension(shape)
        m = np.asarray(matrix, dtype=float)
        if m.shape != (d, d):
            raise ValueError(f"coefficient at {shape} must be {d}x{d}, got {m.shape}")
        self.coeffs[shape] = m

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "coeffs": {
                    json.dumps(list(k)): v.tolist() for k, v in self.coeffs.items()
                },
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CoefficientFamily":
        data = json.loads(text)
        fam = cls(n=int(data["n"]))
        for key, mat in data["coeffs"].items():
            fam.set(tuple(json.loads(key)), np.asarray(mat, dtype=float))
        return fam


def ft(f: FunctionTable) -> CoefficientFamily:
    """Fourier coefficients f_hat_lambda = sum_sigma f(sigma) rho_lambda(sigma)."""
    fam = CoefficientFamily(n=f.n)
    for shape in enumerate_partitions(f.n):
        table = yor_table(f.n, shape)
        fam.set(shape, np.einsum("s,sij->ij", f.values, table))
    return fam


def ift(c: CoefficientFamily) -> FunctionTable:
    """Inverse transform: f(sigma) = (1/n!) sum_lambda d_lambda Tr[c_lambdaT rho(sigma)]."""
    n = c.n
    values = np.zeros(factorial(n))
    for shape in enumerate_partitions(n):
        if shape not in c.coeffs:
            continue
        d = irrep_dimension(shape)
        table = yor_table(n, shape)
        values += d * np.einsum("ij,sij->s", c.coeffs[shape], table)
    return FunctionTable(n=n, values=values / factorial(n))


def ft_at_perm_rep(f: FunctionTable, shape: Partition) -> np.ndarray:
    """Transform at the permutation representation tau_shape, by direct summation.

    Rows and columns follow ``tabloid_indices(shape, n)``.
    """
    tabloid_indices(shape, f.n)  # raises for unsupported shapes
    table = perm_rep_table(f.n, shape)
    return np.einsum("s,sij->ij", f.values, table)


def numeric_rank(m: np.ndarray, tol: float = RANK_TOL) -> int:
    """Count of singular values above tol * largest; 0 for a (near-)zero matrix."""
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))
