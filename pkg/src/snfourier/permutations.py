"""Permutations of {1..n}: construction, group operations, enumeration, indexing.

One-line notation with 1-based values is used throughout: a permutation sigma
is stored as the tuple (sigma(1), ..., sigma(n)).  All values are immutable and
every operation is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

MAX_N = 8


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} in one-line notation."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n < 1:
            raise ValueError("permutation must have n >= 1")
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"{self.image} is not a bijection of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __len__(self) -> int:
        return len(self.image)

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Function composition: compose(a, b)(i) = a(b(i))."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} != {b.n}")
    return Permutation(tuple(a.image[v - 1] for v in b.image))


def inverse(sigma: Permutation) -> Permutation:
    img = [0] * sigma.n
    for i, v in enumerate(sigma.image, start=1):
        img[v - 1] = i
    return Permutation(tuple(img))


def signature(sigma: Permutation) -> int:
    """+1 for even permutations, -1 for odd; inversion-count parity."""
    inv = 0
    img = sigma.image
    for i in range(len(img)):
        for j in range(i + 1, len(img)):
            if img[i] > img[j]:
                inv += 1
    return 1 if inv % 2 == 0 else -1


def reverse(sigma: Permutation) -> Permutation:
    """The reversal sigma^r with sigma^r(i) = sigma(n-i+1)."""
    return Permutation(tuple(reversed(sigma.image)))


@lru_cache(maxsize=None)
def enumerate_permutations(n: int) -> tuple[Permutation, ...]:
    """All n! permutations in lexicographic order on one-line images."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def index_of(sigma: Permutation) -> int:
    """0-based position of sigma in enumerate_permutations(sigma.n).

    Computed via the Lehmer code, so no enumeration is required.
    """
    img = sigma.image
    n = len(img)
    idx = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if img[j] < img[i])
        idx += smaller * factorial(n - 1 - i)
    return idx


def from_index(n: int, k: int) -> Permutation:
    """Inverse of index_of: the k-th permutation in lexicographic order."""
    if not 0 <= k < factorial(n):
        raise ValueError(f"index {k} out of range for n={n}")
    remaining = list(range(1, n + 1))
    img = []
    for i in range(n, 0, -1):
        f = factorial(i - 1)
        q, k = divmod(k, f)
        img.append(remaining.pop(q))
    return Permutation(tuple(img))


def adjacent_transposition(n: int, k: int) -> Permutation:
    """The transposition swapping k and k+1, for 1 <= k <= n-1."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"adjacent transposition index {k} out of range for n={n}")
    img = list(range(1, n + 1))
    img[k - 1], img[k] = img[k], img[k - 1]
    return Permutation(tuple(img))


def adjacent_factorization(sigma: Permutation) -> list[int]:
    """Indices k_1, ..., k_m with sigma = s_{k_1} o ... o s_{k_m}.

    Bubble-sorts the one-line image; the factor count is the inversion count.
    """
    img = list(sigma.image)
    n = len(img)
    right_factors = []  # sigma o s_{k_1} o ... = id
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if img[k] > img[k + 1]:
                img[k], img[k + 1] = img[k + 1], img[k]
                right_factors.append(k + 1)
                changed = True
    # sigma = (s_{k_1} o ... o s_{k_m})^{-1} = s_{k_m} o ... o s_{k_1}
    return right_factors[::-1]
