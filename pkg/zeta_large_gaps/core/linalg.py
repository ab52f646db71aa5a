"""
Small dense linear algebra for the generalized eigenproblem.

Gram matrices of the gap functional are badly conditioned in the monomial
basis, so the factorization of the denominator form and the congruence that
symmetrizes the problem are done in exact rationals. Only the final
symmetric matrix is rounded and diagonalized by cyclic Jacobi rotations.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure, NotPositiveDefinite

logger = logging.getLogger(__name__)

RationalMatrix = tuple[tuple[Fraction, ...], ...]


def freeze(rows: Sequence[Sequence[Fraction]]) -> RationalMatrix:
    """Immutable (hashable) copy of a rational matrix."""
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def to_float_array(matrix: RationalMatrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in matrix], dtype=float)


def ldl_decompose(matrix: RationalMatrix) -> tuple[RationalMatrix, tuple[Fraction, ...]]:
    """
    Exact LDL^T factorization of a symmetric rational matrix.

    Args:
        matrix: Symmetric matrix with Fraction entries

    Returns:
        (L, d) with L unit lower triangular and d the diagonal of D

    Raises:
        NotPositiveDefinite: If a pivot is not strictly positive
    """
    n = len(matrix)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag: list[Fraction] = []
    for i in range(n):
        for j in range(i):
            s = matrix[i][j] - sum(
                (lower[i][k] * lower[j][k] * diag[k] for k in range(j)), Fraction(0)
            )
            lower[i][j] = s / diag[j]
        lower[i][i] = Fraction(1)
        pivot = matrix[i][i] - sum(
            (lower[i][k] * lower[i][k] * diag[k] for k in range(i)), Fraction(0)
        )
        if pivot <= 0:
            raise NotPositiveDefinite(
                f"pivot {i} of {n} is {float(pivot):.6e}; the form is not positive definite"
            )
        diag.append(pivot)
    return freeze(lower), tuple(diag)


def unit_lower_inverse(lower: RationalMatrix) -> RationalMatrix:
    """Exact inverse of a unit lower triangular matrix by forward substitution."""
    n = len(lower)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = Fraction(1)
        for i in range(j + 1, n):
            inv[i][j] = -sum((lower[i][k] * inv[k][j] for k in range(j, i)), Fraction(0))
    return freeze(inv)


def congruence(transform: RationalMatrix, matrix: RationalMatrix) -> RationalMatrix:
    """X A X^T in exact arithmetic."""
    n = len(matrix)
    xa = [
        [sum((transform[i][k] * matrix[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]
    return freeze(
        [
            [sum((xa[i][k] * transform[j][k] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
    )


def quadratic_value(matrix: RationalMatrix, vector: Sequence[Fraction]) -> Fraction:
    """v^T A v in exact arithmetic."""
    total = Fraction(0)
    for i, vi in enumerate(vector):
        if not vi:
            continue
        row = matrix[i]
        total += vi * sum((row[j] * vj for j, vj in enumerate(vector) if vj), Fraction(0))
    return total


def off_diagonal_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed from the entries themselves."""
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(
    matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the pairs (p, q), p < q, in row order, so results are
    reproducible bit for bit.

    Args:
        matrix: Real symmetric matrix
        tol: Stop once the off-diagonal Frobenius norm is below tol * max(1, ||A||_F)
        max_sweeps: Sweep limit

    Returns:
        (eigenvalues, eigenvectors) with eigenvalues ascending and eigenvectors as columns

    Raises:
        ConvergenceFailure: If the sweep limit is reached
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    v = np.eye(n)
    target = tol * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while off_diagonal_norm(a) >= target:
        if sweeps >= max_sweeps:
            raise ConvergenceFailure(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off_diagonal_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    logger.debug(f"Jacobi converged after {sweeps} sweeps (n={n})")
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]
