"""Achievable-rate expressions and the secrecy rate.

All rates are in bits/s/Hz (base-2 logs). The three determinant forms share
one whitened kernel: log2|I + B B^H G^{-1}| with G the combined noise/
interference covariance after the receive filter.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConstraintViolation
from .linalg import herm, hermitize, logdet_pd, rate_logdet

POWER_TOL = 1e-6
NORM_TOL = 1e-9
FACTOR_TOL = 1e-9


@dataclass(frozen=True)
class LegitimateDesign:
    """Decision variables of the legitimate side.

    v is the N x N_d precoder, z_factor an N x N square root of the
    artificial-noise covariance z_cov = z_factor z_factor^H, u the M x N_d
    combiner and phi the legitimate-RIS phase vector (length L, possibly 0).
    """

    n_d: int
    v: np.ndarray
    z_factor: np.ndarray
    u: np.ndarray
    phi: np.ndarray
    z_cov: np.ndarray = field(default=None)  # derived from z_factor when omitted

    def __post_init__(self):
        if self.z_cov is None:
            object.__setattr__(self, "z_cov", self.z_factor @ herm(self.z_factor))
        n = self.v.shape[0]
        m = self.u.shape[0]
        if self.n_d < 1 or self.n_d > min(m, n):
            raise ConstraintViolation("n_d must satisfy 1 <= n_d <= min(M, N)")
        if self.v.shape != (n, self.n_d) or self.u.shape != (m, self.n_d):
            raise ConstraintViolation("v/u shapes inconsistent with n_d")
        if self.z_factor.shape != (n, n) or self.z_cov.shape != (n, n):
            raise ConstraintViolation("z_factor and z_cov must be N x N")
        if np.linalg.norm(self.u, "fro") > 1.0 + NORM_TOL:
            raise ConstraintViolation("combiner norm ||U||_F exceeds 1")
        if self.phi.size and np.max(np.abs(np.abs(self.phi) - 1.0)) > NORM_TOL:
            raise ConstraintViolation("phi entries must be unit modulus")
        z = self.z_cov
        if np.linalg.norm(z - herm(z), "fro") > FACTOR_TOL * max(1.0, np.linalg.norm(z, "fro")):
            raise ConstraintViolation("z_cov must be Hermitian")
        if z.size and np.min(np.linalg.eigvalsh(hermitize(z))) < -NORM_TOL:
            raise ConstraintViolation("z_cov must be positive semidefinite")
        if np.linalg.norm(z - self.z_factor @ herm(self.z_factor), "fro") > FACTOR_TOL * max(
            1.0, np.linalg.norm(z, "fro")
        ):
            raise ConstraintViolation("z_cov does not match z_factor z_factor^H")

    def transmit_power(self) -> float:
        return float(np.real(np.trace(herm(self.v) @ self.v) + np.trace(self.z_cov)))

    def check_power(self, budget: float) -> None:
        if self.transmit_power() > budget + POWER_TOL:
            raise ConstraintViolation("transmit power exceeds the budget")


@dataclass(frozen=True)
class EavesdropperDesign:
    """Eavesdropper combiner w (K x N_d) and RIS phase vector psi (length Lam)."""

    w: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        if np.linalg.norm(self.w, "fro") > 1.0 + NORM_TOL:
            raise ConstraintViolation("combiner norm ||W||_F exceeds 1")
        if self.psi.size and np.max(np.abs(np.abs(self.psi) - 1.0)) > NORM_TOL:
            raise ConstraintViolation("psi entries must be unit modulus")


def combiner_span(w: np.ndarray, rel_tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the numerically effective column span of a combiner.

    The combined rates depend on a combiner only through its column span, so
    evaluating on this basis extends them continuously to rank-deficient
    combiners (dead streams contribute nothing).
    """
    if w.shape[1] == 0 or not np.any(np.abs(w) > 0):
        return np.zeros((w.shape[0], 0), dtype=complex)
    q, r = np.linalg.qr(w)
    diag = np.abs(np.diag(r))
    keep = diag > rel_tol * np.max(diag)
    return q[:, keep]


def _combined_rate(w: np.ndarray, h_eff: np.ndarray, v: np.ndarray, z_cov: np.ndarray, noise_var: float) -> float:
    """log2|I + W^H H V V^H H^H W (W^H (s2 I + H Z H^H) W)^{-1}|."""
    noise = noise_var * np.eye(h_eff.shape[0], dtype=complex)
    if z_cov.size:
        noise = noise + h_eff @ z_cov @ herm(h_eff)
    gram = herm(w) @ noise @ w
    signal = herm(w) @ h_eff @ v
    return rate_logdet(gram, signal, "filtered noise covariance")


def rate_rx(u: np.ndarray, h_eff: np.ndarray, v: np.ndarray, z_cov: np.ndarray, noise_var: float) -> float:
    """Legitimate-link rate with combiner u over the composite channel h_eff."""
    return _combined_rate(u, h_eff, v, z_cov, noise_var)


def rate_e(w: np.ndarray, h_e_eff: np.ndarray, v: np.ndarray, z_cov: np.ndarray, noise_var: float) -> float:
    """Eavesdropping-link rate; same kernel as rate_rx with (w, h_e_eff)."""
    return _combined_rate(w, h_e_eff, v, z_cov, noise_var)


def rate_e_assumed(w: np.ndarray, h_bar_e: np.ndarray, v_assumed: np.ndarray, noise_var: float) -> float:
    """Rate the eavesdropper believes it achieves over the RIS-only channel.

    log2|I + s^{-2} W^H Hbar V V^H Hbar^H W (W^H W)^{-1}|; invariant to any
    invertible right-scaling of W because the Gram inverse absorbs it.
    """
    gram = noise_var * (herm(w) @ w)
    signal = herm(w) @ h_bar_e @ v_assumed
    return rate_logdet(gram, signal, "combiner Gram matrix")


def rate_e_bs(h_e: np.ndarray, v: np.ndarray, z_cov: np.ndarray, noise_var: float) -> float:
    """Eavesdropper rate as believed by the BS (capacity-achieving combining,
    direct channel only, AN treated as noise)."""
    k = h_e.shape[0]
    gram = noise_var * np.eye(k, dtype=complex)
    if z_cov.size:
        gram = gram + h_e @ z_cov @ herm(h_e)
    return rate_logdet(gram, h_e @ v, "noise-plus-AN covariance")


def rate_e_bs_split(h_e: np.ndarray, z_cov: np.ndarray, v: np.ndarray, noise_var: float) -> tuple[float, float]:
    """The two log-det halves of the BS-believed eavesdropper rate, in nats.

    Returns (r1, r2) with r1 = ln|I + s^{-2} He Z He^H| and
    r2 = ln|I + s^{-2} He (V V^H + Z) He^H|, so rate_e_bs = (r2 - r1)/ln 2.
    """
    k = h_e.shape[0]
    eye = np.eye(k, dtype=complex)
    zz = h_e @ z_cov @ herm(h_e) / noise_var if z_cov.size else 0.0
    vv = h_e @ v @ herm(v) @ herm(h_e) / noise_var
    r1 = logdet_pd(eye + zz, "AN-only covariance")
    r2 = logdet_pd(eye + zz + vv, "signal-plus-AN covariance")
    return r1, r2


def secrecy_rate(r_rx: float, r_e: float) -> float:
    """max{0, r_rx - r_e}."""
    return max(0.0, r_rx - r_e)
