"""Bernoulli signature matrix, sparse contention vector, measurement."""

from dataclasses import dataclass

import numpy as np


def generate_bernoulli_matrix(r: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """r x n matrix of i.i.d. equiprobable +-1 chips (raw, unnormalised)."""
    if r < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    return np.where(rng.random((r, n)) < 0.5, -1.0, 1.0)


def build_vector_analog(gains: np.ndarray, zeta: float):
    """v_i = h_i where h_i >= zeta (inclusive), else 0."""
    if zeta <= 0.0:
        raise ValueError("zeta must be positive")
    gains = np.asarray(gains, dtype=float)
    mask = gains >= zeta
    v = np.where(mask, gains, 0.0)
    return v, np.flatnonzero(mask)


def build_vector_digital(gains: np.ndarray, zeta_lo: float, zeta_hi: float):
    """v_i = 1 where zeta_lo <= h_i < zeta_hi, else 0 (zeta_hi may be inf)."""
    if not 0.0 < zeta_lo < zeta_hi:
        raise ValueError("need 0 < zeta_lo < zeta_hi")
    gains = np.asarray(gains, dtype=float)
    mask = (gains >= zeta_lo) & (gains < zeta_hi)
    return mask.astype(float), np.flatnonzero(mask)


def measure(matrix: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Noiseless measurement y = A v."""
    matrix = np.asarray(matrix, dtype=float)
    v = np.asarray(v, dtype=float)
    if matrix.ndim != 2 or v.shape != (matrix.shape[1],):
        raise ValueError("dimension mismatch between matrix and vector")
    return matrix @ v


@dataclass(frozen=True)
class ContentionInstance:
    """One frame's sensing problem: y = A v with support S."""

    matrix: np.ndarray
    sparse_vector: np.ndarray
    measurement: np.ndarray
    true_support: np.ndarray

    @classmethod
    def analog(cls, matrix, gains, zeta):
        v, sup = build_vector_analog(gains, zeta)
        return cls(matrix, v, measure(matrix, v), sup)

    @classmethod
    def digital(cls, matrix, gains, zeta_lo, zeta_hi):
        v, sup = build_vector_digital(gains, zeta_lo, zeta_hi)
        return cls(matrix, v, measure(matrix, v), sup)
