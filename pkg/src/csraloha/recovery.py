"""Sparse support recovery from y = A v.

Decoders: maximum-correlation (known support size), greedy matching
pursuit with LS re-fit (unknown support size), and a brute-force minimal
l0 search usable only at desk scale as a test oracle.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels

ABS_TOL_FLOOR = 1e-12
REL_TOL = 1e-8


@dataclass(frozen=True)
class RecoveryResult:
    support: np.ndarray
    values: np.ndarray
    exact: bool
    residual: float = field(default=np.nan)

    def __post_init__(self):
        if self.support.shape != self.values.shape:
            raise ValueError("support and values must align")


def default_tol(y: np.ndarray) -> float:
    """Relative decoder tolerance with an absolute floor (noiseless model)."""
    return max(ABS_TOL_FLOOR, REL_TOL * float(np.linalg.norm(y)))


def max_correlation_support(y: np.ndarray, matrix: np.ndarray, s: int) -> np.ndarray:
    """The s column indices maximising |a_j . y|; ties -> lowest index."""
    if s < 1 or s > matrix.shape[1]:
        raise ValueError("need 1 <= s <= n")
    at = np.ascontiguousarray(matrix.T, dtype=float)
    return _kernels.maxcorr_support(at, np.ascontiguousarray(y, dtype=float), s)


def ls_refine(y: np.ndarray, matrix: np.ndarray, support) -> np.ndarray:
    """Least-squares values on the given support: (A_S* A_S)^-1 A_S* y.

    Raises numpy.linalg.LinAlgError when A_S is column-rank deficient.
    """
    sup = np.asarray(sorted(support), dtype=np.int64)
    if sup.size > matrix.shape[0]:
        raise np.linalg.LinAlgError("support larger than measurement count")
    sub = matrix[:, sup]
    values, _, rank, _ = np.linalg.lstsq(sub, y, rcond=None)
    if rank < sup.size:
        raise np.linalg.LinAlgError("rank-deficient support submatrix")
    return values


def greedy_recover(y: np.ndarray, matrix: np.ndarray, s_max: int,
                   tol: float | None = None) -> RecoveryResult:
    """Greedy residual-driven recovery for unknown support size.

    Stops at residual <= tol or after s_max column selections; exact is
    set iff the final residual meets the tolerance.
    """
    if s_max < 1:
        raise ValueError("need s_max >= 1")
    y = np.ascontiguousarray(y, dtype=float)
    if tol is None:
        tol = default_tol(y)
    at = np.ascontiguousarray(matrix.T, dtype=float)
    sup, coef, resid, exact = _kernels.greedy_ls(at, y, s_max, tol)
    order = np.argsort(sup)
    return RecoveryResult(sup[order], coef[order], bool(exact), float(resid))


def brute_force_l0(y: np.ndarray, matrix: np.ndarray, s_max: int,
                   tol: float | None = None) -> RecoveryResult:
    """Exhaustive minimal-l0 search; desk-scale oracle only.

    Scans supports by size then lexicographic order and returns the first
    one whose LS residual meets the tolerance.  Refuses n > 20 or
    s_max > 4 so it cannot be misused at production scale.
    """
    r, n = matrix.shape
    if n > 20 or s_max > 4:
        raise ValueError("brute-force oracle restricted to n <= 20, s_max <= 4")
    y = np.asarray(y, dtype=float)
    if tol is None:
        tol = default_tol(y)
    if np.linalg.norm(y) <= tol:
        return RecoveryResult(np.empty(0, np.int64), np.empty(0), True, float(np.linalg.norm(y)))
    for size in range(1, s_max + 1):
        for sup in combinations(range(n), size):
            sub = matrix[:, sup]
            values, _, rank, _ = np.linalg.lstsq(sub, y, rcond=None)
            if rank < size:
                continue
            resid = float(np.linalg.norm(y - sub @ values))
            if resid <= tol:
                return RecoveryResult(np.asarray(sup, np.int64), values, True, resid)
    return RecoveryResult(np.empty(0, np.int64), np.empty(0), False)
