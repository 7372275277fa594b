"""Small complex linear-algebra kernels used throughout the solvers.

All rate expressions are determinants of "identity plus PSD" matrices; they
are evaluated through Cholesky/eigenvalue factorizations, never by forming
an explicit inverse and taking its determinant.
"""

import logging

import numpy as np

from .exceptions import SingularMatrixError

logger = logging.getLogger(__name__)

# Condition-number threshold above which a ridge of REG_EPS*I is added
# before inverting (high-SNR conditioning guard).
COND_LIMIT = 1e12
REG_EPS = 1e-12


def herm(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def hermitize(a: np.ndarray) -> np.ndarray:
    """Symmetrize a numerically-Hermitian matrix."""
    return 0.5 * (a + a.conj().T)


def cholesky_pd(a: np.ndarray, context: str = "matrix") -> np.ndarray:
    """Cholesky factor of a Hermitian positive-definite matrix."""
    try:
        return np.linalg.cholesky(hermitize(a))
    except np.linalg.LinAlgError as err:
        raise SingularMatrixError(f"{context} is not positive definite") from err


def logdet_pd(a: np.ndarray, context: str = "matrix") -> float:
    """Natural log-determinant of a Hermitian PD matrix via Cholesky."""
    chol = cholesky_pd(a, context)
    return float(2.0 * np.sum(np.log(np.abs(np.diag(chol)))))


def solve_pd(a: np.ndarray, b: np.ndarray, context: str = "matrix") -> np.ndarray:
    """Solve a @ x = b for Hermitian PD a.

    Non-PD input raises; merely ill-conditioned input gets a REG_EPS ridge
    with a logged warning before solving.
    """
    a = hermitize(a)
    if a.shape[0] == 0:
        return np.zeros((0,) + b.shape[1:], dtype=complex)
    cholesky_pd(a, context)
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        logger.warning("%s has condition number %.3g; adding %.0e ridge", context, cond, REG_EPS)
        a = a + REG_EPS * np.eye(a.shape[0])
    return np.linalg.solve(a, b)


def rate_logdet(gram: np.ndarray, signal: np.ndarray, context: str = "noise covariance") -> float:
    """log2|I + signal signal^H gram^{-1}| for Hermitian PD gram.

    Whitened evaluation: with gram = L L^H, the value is sum log2(1 + s_i^2)
    over the singular values s_i of L^{-1} signal, which stays accurate at
    high SNR.
    """
    if gram.shape[0] == 0 or signal.shape[1] == 0:
        return 0.0
    chol = cholesky_pd(gram, context)
    white = np.linalg.solve(chol, signal)
    sv = np.linalg.svd(white, compute_uv=False)
    return float(np.sum(np.log1p(sv**2)) / np.log(2.0))
