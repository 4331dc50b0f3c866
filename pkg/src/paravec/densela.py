"""Dense LU factorization with partial pivoting.

Basis systems in the dictionary module are small (a few hundred rows at
most), so every dictionary is refactorized from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

SINGULAR_RTOL = 1e-11


@dataclass(frozen=True)
class LuFactorization:
    """Packed factors of ``A[perm] = L @ U``.

    ``lu`` holds the strictly lower part of ``L`` (unit diagonal implied)
    and the upper triangle ``U``. ``perm[k]`` is the original row placed at
    position ``k``.
    """

    lu: np.ndarray
    perm: np.ndarray

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    @property
    def lower(self) -> np.ndarray:
        return np.tril(self.lu, -1) + np.eye(self.n)

    @property
    def upper(self) -> np.ndarray:
        return np.triu(self.lu)

    @property
    def permutation_matrix(self) -> np.ndarray:
        return np.eye(self.n)[self.perm]


def lu_factorize(a) -> LuFactorization:
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"lu_factorize needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    perm = np.arange(n)
    row_norm = np.max(np.abs(a), axis=1) if n else np.zeros(0)
    threshold = SINGULAR_RTOL * (row_norm.max() if n else 0.0)
    if n and row_norm.max() == 0.0:
        raise SingularMatrix("zero matrix")
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= threshold:
            raise SingularMatrix(f"pivot {k} has magnitude {abs(a[p, k]):.3e}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return LuFactorization(a, perm)


def lu_solve(f: LuFactorization, rhs) -> np.ndarray:
    """Solve ``A x = rhs`` for a vector or a matrix of right-hand sides."""
    b = np.asarray(rhs, dtype=float)
    if b.shape[0] != f.n:
        raise DimensionMismatch(f"rhs has {b.shape[0]} rows, factorization has {f.n}")
    y = b[f.perm].copy()
    lu = f.lu
    n = f.n
    for k in range(1, n):
        y[k] -= lu[k, :k] @ y[:k]
    for k in range(n - 1, -1, -1):
        y[k] -= lu[k, k + 1:] @ y[k + 1:]
        y[k] /= lu[k, k]
    return y


def lu_solve_transposed(f: LuFactorization, rhs) -> np.ndarray:
    """Solve ``A^T x = rhs``."""
    b = np.asarray(rhs, dtype=float)
    if b.shape[0] != f.n:
        raise DimensionMismatch(f"rhs has {b.shape[0]} rows, factorization has {f.n}")
    lu = f.lu
    n = f.n
    z = b.copy()
    # U^T z = b
    for k in range(n):
        z[k] -= lu[:k, k] @ z[:k]
        z[k] /= lu[k, k]
    # L^T y = z
    for k in range(n - 2, -1, -1):
        z[k] -= lu[k + 1:, k] @ z[k + 1:]
    x = np.empty_like(z)
    x[f.perm] = z
    return x


def solve(a, rhs) -> np.ndarray:
    return lu_solve(lu_factorize(a), rhs)
