"""Conjugate-gradient descent over unit-modulus complex vectors.

Minimizes a smooth objective over the product of unit circles (one circle per
RIS element) using tangent-space projections, entrywise-normalization
retraction, vector transport, Polak-Ribiere direction mixing and
Armijo-Goldstein backtracking. Used both for the legitimate RIS phases and
for the eavesdropping RIS phases.

Gradients are taken with respect to the conjugate coordinates; for a real
objective g the derivative along a phase perturbation is
d g / d theta_l = 2 Re{ conj(grad_l) * i * phi_l }.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .channel import effective_legitimate
from .linalg import herm, logdet_pd
from .wmmse import LN2, AuxiliaryState, surrogate_terms


@dataclass(frozen=True)
class ManifoldParams:
    init_step: float = 1.0       # starting step of every line search
    armijo_mu: float = 1e-4      # sufficient-decrease slope fraction
    backtrack_nu: float = 0.5    # step shrink factor per backtrack
    grad_tol: float = 1e-6       # stop when ||riemannian grad||^2 <= grad_tol
    max_iters: int = 500
    max_backtracks: int = 50

    def __post_init__(self):
        if self.init_step <= 0 or self.grad_tol <= 0:
            raise ValueError("init_step and grad_tol must be positive")
        if not (0 < self.armijo_mu < 1 and 0 < self.backtrack_nu < 1):
            raise ValueError("armijo_mu and backtrack_nu must lie in (0, 1)")
        if self.max_iters < 1 or self.max_backtracks < 1:
            raise ValueError("iteration caps must be positive")


@dataclass(frozen=True)
class Objective:
    """Scalar objective and its conjugate-coordinate Euclidean gradient."""

    value: Callable[[np.ndarray], float]
    euclid_grad: Callable[[np.ndarray], np.ndarray]


def retract_unit(v: np.ndarray) -> np.ndarray:
    """Entrywise projection back onto the unit circles: v_l / |v_l|."""
    mag = np.abs(v)
    if np.any(mag == 0):
        raise ValueError("cannot retract a vector with zero entries")
    return v / mag


def riemannian_grad(euclid: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Project the Euclidean gradient onto the tangent space at phi."""
    return euclid - np.real(euclid * np.conj(phi)) * phi


def transport(r: np.ndarray, phi_new: np.ndarray) -> np.ndarray:
    """Carry a tangent vector to the tangent space at phi_new."""
    return r - np.real(r * np.conj(phi_new)) * phi_new


def polak_ribiere(grad_new: np.ndarray, grad_old: np.ndarray, phi_new: np.ndarray) -> float:
    """Direction-mixing coefficient; 0 when the previous gradient vanished."""
    denom = float(np.real(np.vdot(grad_old, grad_old)))
    if denom == 0.0:
        return 0.0
    diff = grad_new - transport(grad_old, phi_new)
    return float(np.real(np.vdot(grad_new, diff)) / denom)


def armijo_search(
    obj: Objective,
    phi: np.ndarray,
    q: np.ndarray,
    params: ManifoldParams,
    rgrad: np.ndarray | None = None,
    value0: float | None = None,
):
    """Backtracking line search along direction q with retraction inside the test.

    Returns (tau, phi_next); tau = 0 signals stagnation (no step satisfied the
    sufficient-decrease condition within the backtracking budget).
    """
    if rgrad is None:
        rgrad = riemannian_grad(obj.euclid_grad(phi), phi)
    if value0 is None:
        value0 = obj.value(phi)
    slope = float(np.real(np.vdot(rgrad, q)))
    for omega in range(params.max_backtracks):
        tau = params.init_step * params.backtrack_nu**omega
        cand = phi + tau * q
        if np.any(np.abs(cand) == 0):
            continue
        cand = retract_unit(cand)
        if obj.value(cand) - value0 <= params.armijo_mu * tau * slope:
            return tau, cand
    return 0.0, phi


def optimize_phi(
    obj: Objective,
    phi0: np.ndarray,
    params: ManifoldParams = ManifoldParams(),
    trace: list | None = None,
) -> np.ndarray:
    """Conjugate-gradient minimization from the feasible start phi0.

    Every accepted step satisfies the Armijo decrease, so the objective is
    non-increasing along the iterates; the best iterate is returned even if
    the search stagnates.
    """
    phi = phi0
    value = obj.value(phi)
    grad = riemannian_grad(obj.euclid_grad(phi), phi)
    best_phi, best_value = phi, value
    q = -grad
    for iteration in range(params.max_iters):
        grad_sq = float(np.real(np.vdot(grad, grad)))
        if trace is not None:
            trace.append({"iteration": iteration, "value": value, "grad_sq": grad_sq})
        if grad_sq <= params.grad_tol:
            break
        tau, phi_next = armijo_search(obj, phi, q, params, rgrad=grad, value0=value)
        if tau == 0.0:
            break
        grad_next = riemannian_grad(obj.euclid_grad(phi_next), phi_next)
        zeta = polak_ribiere(grad_next, grad, phi_next)
        if zeta < 0.0:
            zeta = 0.0
        q = -grad_next + zeta * transport(q, phi_next)
        if float(np.real(np.vdot(grad_next, q))) >= 0.0:
            q = -grad_next
        phi, grad = phi_next, grad_next
        value = obj.value(phi)
        if value < best_value:
            best_phi, best_value = phi, value
    return best_phi


def secrecy_phi_objective(
    design, channels, state: AuxiliaryState, noise_var: float
) -> Objective:
    """Negative reformulated secrecy objective as a function of the legitimate
    RIS phases, in bits (transceiver variables and auxiliaries held fixed).

    Only the legitimate-rate surrogate depends on the phases; the two
    eavesdropper terms enter as constants so that the value agrees with the
    full surrogate.
    """
    h, h1, h2 = channels.h, channels.h1, channels.h2
    u, v, z_factor, s1 = design.u, design.v, design.z_factor, state.s1
    n_d = v.shape[1]

    t_mat = u @ state.a1                                   # M x N_d
    c1 = herm(t_mat) @ h                                   # N_d x N
    c2 = herm(t_mat) @ h2                                  # N_d x L
    q_cov = v @ herm(v) + z_factor @ herm(z_factor)        # N x N
    a_left = herm(h2) @ t_mat @ s1                         # L x N_d
    h1_h = herm(h1)                                        # N x L

    # phi-independent pieces of the full surrogate (natural log).
    _, f2, f3 = surrogate_terms(state, design, channels, noise_var)
    const = -logdet_pd(s1, "s1") - n_d - f2 - f3
    trace_const = float(
        np.real(np.trace(s1)) + noise_var * np.real(np.trace(s1 @ herm(t_mat) @ t_mat))
    )

    def x_of(phi: np.ndarray) -> np.ndarray:
        if phi.size == 0:
            return c1
        return c1 + (c2 * phi[np.newaxis, :]) @ h1

    def value(phi: np.ndarray) -> float:
        x = x_of(phi)
        xq = x @ q_cov
        quad = np.real(np.einsum("ij,jl,il->", s1, xq, np.conj(x)))
        cross = -2.0 * np.real(np.einsum("ij,jk,ki->", x, v, s1))
        return (quad + cross + trace_const + const) / LN2

    def euclid_grad(phi: np.ndarray) -> np.ndarray:
        x = x_of(phi)
        b_right = (x @ q_cov - herm(v)) @ h1_h             # N_d x L
        return np.einsum("lj,jl->l", a_left, b_right) / LN2

    return Objective(value=value, euclid_grad=euclid_grad)


def euclid_grad_secrecy_phi(design, channels, state: AuxiliaryState, noise_var: float) -> np.ndarray:
    """Conjugate-coordinate gradient of the negative secrecy surrogate at the
    design's current phases. Zero whenever either RIS hop is absent or zero."""
    return secrecy_phi_objective(design, channels, state, noise_var).euclid_grad(design.phi)
