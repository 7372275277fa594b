"""Log-det-to-MSE reformulation: error matrices, auxiliary updates, surrogate.

The secrecy objective R_RX - (believed eavesdropper rate) is rewritten as a
sum of three concave surrogates, each of the form log|S| - tr(S M) + n with
an error matrix M and auxiliary weights (A, S). Maximizing over the
auxiliaries makes the surrogate tight, which is what the alternating solver
exploits. All surrogate terms use natural logs internally; rates reported to
users divide by ln 2 exactly once.
"""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet, effective_legitimate
from .linalg import herm, hermitize, logdet_pd, solve_pd

LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class AuxiliaryState:
    """Auxiliary matrices of the reformulated objective.

    a1, s1 are N_d x N_d; a2 is K x N; s2 is N x N; s3 is K x K.
    The s-matrices must be Hermitian positive definite.
    """

    a1: np.ndarray
    a2: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray


def lemma_f(s: np.ndarray, m: np.ndarray) -> float:
    """log|S| - tr(S M) + n for PD S and PSD M of size n (natural log)."""
    n = s.shape[0]
    value = logdet_pd(s, "auxiliary weight S")
    return float(value - np.real(np.trace(s @ m)) + n)


def mse_m1(a1, u, h_eff, v, z_factor, noise_var) -> np.ndarray:
    """Receive-side error matrix of the legitimate stream estimate."""
    n_d = v.shape[1]
    ua = u @ a1                       # M x N_d
    err = herm(ua) @ h_eff @ v - np.eye(n_d, dtype=complex)
    cov = noise_var * (herm(ua) @ ua)
    hz = herm(ua) @ h_eff @ z_factor  # N_d x N
    return hermitize(err @ herm(err) + cov + hz @ herm(hz))


def mse_m2(a2, h_e, z_factor, noise_var) -> np.ndarray:
    """Error matrix of the eavesdropper's (believed) AN estimate."""
    n = z_factor.shape[0]
    err = herm(a2) @ h_e @ z_factor - np.eye(n, dtype=complex)
    return hermitize(err @ herm(err) + noise_var * (herm(a2) @ a2))


def mse_m3(h_e, v, z_factor, noise_var) -> np.ndarray:
    """I_K + s^{-2} He (V V^H + Z) He^H; always PD (at least identity)."""
    k = h_e.shape[0]
    hv = h_e @ v
    hz = h_e @ z_factor
    return hermitize(
        np.eye(k, dtype=complex) + (hv @ herm(hv) + hz @ herm(hz)) / noise_var
    )


def update_a1(u, h_eff, v, z_factor, noise_var) -> np.ndarray:
    """Optimal first auxiliary: the MMSE estimator of s from the combined RX signal."""
    uh = herm(u) @ h_eff              # N_d x N
    uhv = uh @ v
    uhz = uh @ z_factor
    inner = noise_var * (herm(u) @ u) + uhv @ herm(uhv) + uhz @ herm(uhz)
    return solve_pd(inner, uhv, "combined receive covariance")


def update_a2(h_e, z_factor, noise_var) -> np.ndarray:
    """Optimal second auxiliary: MMSE estimator of the AN seen at E."""
    k = h_e.shape[0]
    hz = h_e @ z_factor
    inner = noise_var * np.eye(k, dtype=complex) + hz @ herm(hz)
    return solve_pd(inner, hz, "AN covariance at E")


def update_s1(v, h_eff, u, z_factor, noise_var) -> np.ndarray:
    """Optimal first weight, equal to the inverse of m1 at the optimal a1."""
    n_d = v.shape[1]
    uh = herm(u) @ h_eff
    uhv = uh @ v
    uhz = uh @ z_factor
    inner = noise_var * (herm(u) @ u) + uhz @ herm(uhz)
    return hermitize(
        np.eye(n_d, dtype=complex)
        + herm(uhv) @ solve_pd(inner, uhv, "combiner-filtered noise covariance")
    )


def update_s2(h_e, z_factor, noise_var) -> np.ndarray:
    """Optimal second weight I_N + s^{-2} Z~^H He^H He Z~."""
    n = z_factor.shape[0]
    hz = h_e @ z_factor
    return hermitize(np.eye(n, dtype=complex) + herm(hz) @ hz / noise_var)


def update_s3(m3: np.ndarray) -> np.ndarray:
    """Optimal third weight: the inverse of m3."""
    return hermitize(solve_pd(m3, np.eye(m3.shape[0], dtype=complex), "m3"))


def surrogate_terms(
    state: AuxiliaryState, design, channels: ChannelSet, noise_var: float
) -> tuple[float, float, float]:
    """The three lemma surrogates (natural log), in objective order."""
    h_eff = effective_legitimate(channels.h, channels.h2, design.phi, channels.h1)
    m1 = mse_m1(state.a1, design.u, h_eff, design.v, design.z_factor, noise_var)
    m2 = mse_m2(state.a2, channels.h_e, design.z_factor, noise_var)
    m3 = mse_m3(channels.h_e, design.v, design.z_factor, noise_var)
    return lemma_f(state.s1, m1), lemma_f(state.s2, m2), lemma_f(state.s3, m3)


def surrogate_objective(
    state: AuxiliaryState, design, channels: ChannelSet, noise_var: float
) -> float:
    """Reformulated secrecy objective in nats.

    With all five auxiliaries at their optimal values this equals
    R_RX(current U) + (AN-masking term) - (believed E rate term), i.e. the
    believed secrecy rate in nats for the current transceiver variables.
    """
    f1, f2, f3 = surrogate_terms(state, design, channels, noise_var)
    return f1 + f2 + f3


def update_auxiliaries(design, channels: ChannelSet, noise_var: float) -> AuxiliaryState:
    """Closed-form refresh of all five auxiliaries at the current design."""
    h_eff = effective_legitimate(channels.h, channels.h2, design.phi, channels.h1)
    a1 = update_a1(design.u, h_eff, design.v, design.z_factor, noise_var)
    a2 = update_a2(channels.h_e, design.z_factor, noise_var)
    s1 = update_s1(design.v, h_eff, design.u, design.z_factor, noise_var)
    s2 = update_s2(channels.h_e, design.z_factor, noise_var)
    s3 = update_s3(mse_m3(channels.h_e, design.v, design.z_factor, noise_var))
    return AuxiliaryState(a1=a1, a2=a2, s1=s1, s2=s2, s3=s3)
