"""Joint eavesdropper design: receive combiner and eavesdropping-RIS phases.

The eavesdropper ignores the artificial noise and the legitimate RIS, assumes
the transmitter zero-forces its direct channel, and therefore optimizes its
believed rate over the cascaded RIS channel only. The combiner step is the
normalized MMSE receiver (optimal for the believed white-noise model, and the
believed rate is invariant to the normalization); the phase step reuses the
unit-modulus conjugate-gradient machinery.
"""

import logging

import numpy as np

from .channel import ChannelSet, cascaded_eavesdrop
from .config import SystemConfig
from .linalg import herm, solve_pd
from .manifold import ManifoldParams, Objective, optimize_phi
from .rates import EavesdropperDesign, combiner_span, rate_e_assumed
from .wmmse import LN2

logger = logging.getLogger(__name__)

AO_REL_TOL = 1e-4
AO_MAX_ITERS = 50
MONOTONE_SLACK = 1e-9


def assumed_zf_precoder(h_e: np.ndarray, n_d: int, power: float) -> np.ndarray:
    """Deterministic null-space precoder the eavesdropper ascribes to the BS.

    Columns are the trailing right singular vectors of h_e (an orthonormal
    basis of its null space, fixed SVD order), each scaled to sqrt(power/n_d).
    The stream count is clamped to the null-space dimension N - K; with no
    null space (N <= K) the assumption is infeasible and a zero precoder is
    returned.
    """
    k, n = h_e.shape
    if n <= k:
        logger.warning("eavesdropper ZF assumption infeasible: N=%d <= K=%d", n, k)
        return np.zeros((n, max(1, n_d)), dtype=complex)
    n_use = min(n_d, n - k) if n_d >= 1 else 1
    _, _, vh = np.linalg.svd(h_e)
    basis = herm(vh)[:, k : k + n_use]
    return np.sqrt(power / n_use) * basis


def update_w(h_bar_e: np.ndarray, v_assumed: np.ndarray, noise_var: float, n_d: int) -> np.ndarray:
    """MMSE combiner for the believed signal model, scaled onto the unit
    Frobenius sphere (the believed rate does not change under the scaling).

    A rank-deficient MMSE solution (dead assumed streams) is replaced by an
    orthonormal basis of its column span, which achieves the same believed
    rate and keeps the combiner Gram matrix invertible.
    """
    k = h_bar_e.shape[0]
    hv = h_bar_e @ v_assumed
    cov = noise_var * np.eye(k, dtype=complex) + hv @ herm(hv)
    w = solve_pd(cov, hv, "believed receive covariance")
    norm = np.linalg.norm(w, "fro")
    if norm == 0.0:
        return np.zeros((k, v_assumed.shape[1]), dtype=complex)
    span = combiner_span(w)
    if span.shape[1] < w.shape[1]:
        return span / np.sqrt(span.shape[1])
    return w / norm


def believed_rate_objective(
    g1: np.ndarray, g2: np.ndarray, w: np.ndarray, v_assumed: np.ndarray, noise_var: float
) -> Objective:
    """Negative believed eavesdropping rate as a function of the RIS phases."""
    wg = herm(w) @ g2                     # N_d x Lam
    gv = g1 @ v_assumed                   # Lam x N_d
    c = herm(w) @ w
    c_inv = np.linalg.inv(c)
    left = (herm(g2) @ w) @ c_inv         # Lam x N_d
    gv_h = herm(gv)                       # N_d x Lam
    n_d = w.shape[1]
    eye = np.eye(n_d, dtype=complex)

    def signal(psi: np.ndarray) -> np.ndarray:
        return (wg * psi[np.newaxis, :]) @ gv

    def value(psi: np.ndarray) -> float:
        b = signal(psi)
        d = eye + (b @ herm(b)) @ c_inv / noise_var
        _, logabs = np.linalg.slogdet(d)
        return -float(logabs) / LN2

    def euclid_grad(psi: np.ndarray) -> np.ndarray:
        b = signal(psi)
        d = eye + (b @ herm(b)) @ c_inv / noise_var
        inner = np.linalg.solve(d, b)
        mat = (left @ inner) / noise_var  # Lam x N_d
        return -np.einsum("kj,jk->k", mat, gv_h) / LN2

    return Objective(value=value, euclid_grad=euclid_grad)


def optimize_psi(
    channels: ChannelSet,
    w: np.ndarray,
    v_assumed: np.ndarray,
    noise_var: float,
    params: ManifoldParams,
    psi0: np.ndarray,
) -> np.ndarray:
    """Phase update for the eavesdropping RIS at a fixed combiner."""
    if psi0.size == 0:
        return psi0
    obj = believed_rate_objective(channels.g1, channels.g2, w, v_assumed, noise_var)
    return optimize_phi(obj, psi0, params)


def design_eavesdropper(
    channels: ChannelSet,
    config: SystemConfig,
    n_d: int,
    params: ManifoldParams = ManifoldParams(),
    trace: list | None = None,
) -> EavesdropperDesign:
    """Alternating combiner/phase design maximizing the believed rate.

    Stops when the relative believed-rate improvement drops below 1e-4 or
    after 50 alternations; the believed rate is non-decreasing along the way.
    """
    lam = config.lambda_ris
    v_assumed = assumed_zf_precoder(channels.h_e, n_d, config.power)
    psi = np.ones(lam, dtype=complex)
    h_bar = cascaded_eavesdrop(channels.g2, psi, channels.g1)
    w = update_w(h_bar, v_assumed, config.noise_var, n_d)
    if lam == 0 or np.linalg.norm(w, "fro") == 0.0:
        return EavesdropperDesign(w=w, psi=psi)

    rate = rate_e_assumed(w, h_bar, v_assumed, config.noise_var)
    if trace is not None:
        trace.append(rate)
    for _ in range(AO_MAX_ITERS):
        psi = optimize_psi(channels, w, v_assumed, config.noise_var, params, psi)
        h_bar = cascaded_eavesdrop(channels.g2, psi, channels.g1)
        w_new = update_w(h_bar, v_assumed, config.noise_var, n_d)
        if np.linalg.norm(w_new, "fro") > 0.0:
            w = w_new
        new_rate = rate_e_assumed(w, h_bar, v_assumed, config.noise_var)
        if new_rate < rate - MONOTONE_SLACK:
            raise RuntimeError("believed eavesdropper rate decreased during alternation")
        if trace is not None:
            trace.append(new_rate)
        if abs(new_rate - rate) <= AO_REL_TOL * max(abs(new_rate), 1e-12):
            rate = new_rate
            break
        rate = new_rate
    return EavesdropperDesign(w=w, psi=psi)
