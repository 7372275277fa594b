"""Closed-form-plus-bisection block updates for the combiner and precoder/AN.

The combiner solves the Sylvester-type system E U F + kappa U = J, which
diagonalizes through the eigendecompositions of E (M x M, PD) and F
(N_d x N_d, PSD): with E = Qe Le Qe^H and F = Qf Lf Qf^H, the solution is
U = Qe [ (Qe^H J Qf) / (Le_i Lf_j + kappa) ] Qf^H. The Lagrange multipliers
kappa and lambda come from monotone scalar equations solved by bracketed
bisection.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, SingularMatrixError
from .linalg import herm, hermitize

BISECT_TOL = 1e-8
MAX_BRACKET_DOUBLINGS = 200
MAX_BISECT_STEPS = 200
ZERO_MATRIX_TOL = 1e-14


@dataclass(frozen=True)
class CombinerSubproblem:
    """Data of the combiner system E U F + kappa U = J."""

    e_mat: np.ndarray  # M x M Hermitian PD
    f_mat: np.ndarray  # N_d x N_d Hermitian PSD
    j_mat: np.ndarray  # M x N_d


@dataclass(frozen=True)
class PrecoderSubproblem:
    """Data of the joint precoder/AN stationarity system."""

    gram_k: np.ndarray  # N x N PSD: Heff^H U A1 S1 A1^H U^H Heff
    r_v1: np.ndarray    # N x N PSD
    r_v2: np.ndarray    # N x N_d
    r_z1: np.ndarray    # N x N PSD
    r_z2: np.ndarray    # N x N


def _quadratic_sum(weights: np.ndarray, eigenvalues: np.ndarray, shift: float) -> float:
    """sum_i weights_i / (eigenvalues_i + shift)^2 with +inf on exact zeros."""
    denom = (eigenvalues + shift) ** 2
    mask = denom > 0
    if np.any(~mask & (weights > ZERO_MATRIX_TOL)):
        return np.inf
    return float(np.sum(weights[mask] / denom[mask]))


def _bisect_multiplier(lhs, target: float, what: str, tol: float = BISECT_TOL) -> float:
    """Root of the decreasing function lhs(x) = target over x >= 0.

    Stops when |lhs(x) - target| <= tol. Returns 0 when the constraint is
    already slack at x = 0 (lhs(0) <= target).
    """
    if lhs(0.0) <= target:
        return 0.0
    hi = 1.0
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if lhs(hi) < target:
            break
        hi *= 2.0
    else:
        raise ConvergenceError(f"could not bracket the {what} multiplier")
    lo = 0.0
    for _ in range(MAX_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        val = lhs(mid)
        if abs(val - target) <= tol:
            return mid
        if val > target:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"{what} multiplier bisection did not reach tolerance {tol:g}")


def combiner_eigensystem(sub: CombinerSubproblem):
    """Eigendecompose E and F; returns (Qe, Le, Qf, Lf, J~ = Qe^H J Qf)."""
    le, qe = np.linalg.eigh(hermitize(sub.e_mat))
    if np.min(le) <= 0:
        raise SingularMatrixError("combiner system matrix E must be positive definite")
    lf, qf = np.linalg.eigh(hermitize(sub.f_mat))
    j_tilde = herm(qe) @ sub.j_mat @ qf
    return qe, le, qf, lf, j_tilde


def kappa_equation_lhs(sub: CombinerSubproblem, kappa: float) -> float:
    """Left side of the multiplier equation: ||U(kappa)||_F^2.

    Equals sum_p q_p / (xi_p + kappa)^2 where xi_p are the eigenvalues of
    F^T (x) E and q_p the squared projections of vec(J) on its eigenvectors.
    """
    _, le, _, lf, j_tilde = combiner_eigensystem(sub)
    xi = (lf[np.newaxis, :] * le[:, np.newaxis]).ravel()
    weights = (np.abs(j_tilde) ** 2).ravel()
    return _quadratic_sum(weights, xi, kappa)


def solve_kappa(sub: CombinerSubproblem, n_d: int, tol: float = BISECT_TOL, target: float | None = None) -> float:
    """Multiplier for the combiner update; by default targets 1/n_d as in the
    stated multiplier equation.

    Note: complementary slackness for the Frobenius constraint ||U||_F^2 <= 1
    requires target 1.0; the combiner update passes that explicitly.
    """
    if target is None:
        target = 1.0 / n_d
    _, le, _, lf, j_tilde = combiner_eigensystem(sub)
    xi = (lf[np.newaxis, :] * le[:, np.newaxis]).ravel()
    weights = (np.abs(j_tilde) ** 2).ravel()

    def lhs(kappa):
        return _quadratic_sum(weights, xi, kappa)

    return _bisect_multiplier(lhs, target, "combiner", tol)


def update_u(h_eff, v, z_factor, a1, s1, noise_var, n_d) -> np.ndarray:
    """Combiner update: solve E U F + kappa* U = J with ||U||_F <= 1.

    kappa* > 0 makes the norm constraint active (||U||_F = 1); a slack
    constraint yields kappa* = 0.
    """
    m = h_eff.shape[0]
    hv = h_eff @ v
    hz = h_eff @ z_factor
    e_mat = hermitize(noise_var * np.eye(m, dtype=complex) + hv @ herm(hv) + hz @ herm(hz))
    f_mat = hermitize(a1 @ s1 @ herm(a1))
    j_mat = hv @ s1 @ herm(a1)
    sub = CombinerSubproblem(e_mat=e_mat, f_mat=f_mat, j_mat=j_mat)

    if np.linalg.norm(f_mat, "fro") <= ZERO_MATRIX_TOL:
        # Degenerate weights: the system collapses to kappa U = J.
        if np.linalg.norm(j_mat, "fro") <= ZERO_MATRIX_TOL:
            return np.zeros((m, n_d), dtype=complex)
        left, _, _ = np.linalg.svd(j_mat)
        u = left[:, :n_d].astype(complex)
        return u / np.linalg.norm(u, "fro")

    qe, le, qf, lf, j_tilde = combiner_eigensystem(sub)
    xi = lf[np.newaxis, :] * le[:, np.newaxis]
    weights = np.abs(j_tilde) ** 2

    def lhs(kappa):
        return _quadratic_sum(weights.ravel(), xi.ravel(), kappa)

    # Tight tolerance so the active-constraint norm lands within the design
    # feasibility slack (|| U ||_F <= 1 + 1e-9).
    kappa = _bisect_multiplier(lhs, 1.0, "combiner", tol=1e-12)
    denom = xi + kappa
    coeff = np.where(denom > 0, j_tilde / np.where(denom > 0, denom, 1.0), 0.0)
    return qe @ coeff @ herm(qf)


def precoder_subproblem(h_eff, h_e, u, state, noise_var) -> PrecoderSubproblem:
    """Assemble the stationarity data for the precoder/AN update."""
    ua = u @ state.a1
    hu = herm(h_eff) @ ua                     # N x N_d
    gram_k = hermitize(hu @ state.s1 @ herm(hu))
    hs3h = hermitize(herm(h_e) @ state.s3 @ h_e / noise_var)
    ha2 = herm(h_e) @ state.a2                # N x N
    r_v1 = hermitize(gram_k + hs3h)
    r_v2 = hu @ state.s1
    r_z1 = hermitize(gram_k + ha2 @ state.s2 @ herm(ha2) + hs3h)
    r_z2 = ha2 @ state.s2
    return PrecoderSubproblem(gram_k=gram_k, r_v1=r_v1, r_v2=r_v2, r_z1=r_z1, r_z2=r_z2)


def power_at_lambda(sub: PrecoderSubproblem, lam: float) -> float:
    """Transmit power tr(V V^H) + tr(Z~ Z~^H) produced by multiplier lam."""
    lv, pv = np.linalg.eigh(hermitize(sub.r_v1))
    lz, pz = np.linalg.eigh(hermitize(sub.r_z1))
    wv = np.sum(np.abs(herm(pv) @ sub.r_v2) ** 2, axis=1)
    wz = np.sum(np.abs(herm(pz) @ sub.r_z2) ** 2, axis=1)
    return _quadratic_sum(wv, lv, lam) + _quadratic_sum(wz, lz, lam)


def solve_lambda(sub: PrecoderSubproblem, power: float, tol: float = BISECT_TOL) -> float:
    """Multiplier matching the power budget: power_at_lambda(lam*) = power,
    or 0 when the unconstrained solution is already within budget."""
    lv, pv = np.linalg.eigh(hermitize(sub.r_v1))
    lz, pz = np.linalg.eigh(hermitize(sub.r_z1))
    wv = np.sum(np.abs(herm(pv) @ sub.r_v2) ** 2, axis=1)
    wz = np.sum(np.abs(herm(pz) @ sub.r_z2) ** 2, axis=1)

    def lhs(lam):
        return _quadratic_sum(wv, lv, lam) + _quadratic_sum(wz, lz, lam)

    return _bisect_multiplier(lhs, power, "power", tol * power)


def _shifted_solve(eigvals, eigvecs, rhs, shift):
    """(shift I + A)^{-1} rhs for A = eigvecs diag(eigvals) eigvecs^H,
    dropping exactly-null directions with no right-hand-side component."""
    proj = herm(eigvecs) @ rhs
    denom = eigvals + shift
    safe = np.abs(denom) > 0
    coeff = np.where(safe[:, np.newaxis], proj / np.where(safe, denom, 1.0)[:, np.newaxis], 0.0)
    return eigvecs @ coeff


def update_v_z(h_eff, h_e, u, state, noise_var, power) -> tuple[np.ndarray, np.ndarray]:
    """Joint precoder/AN-factor update under the total power budget."""
    sub = precoder_subproblem(h_eff, h_e, u, state, noise_var)
    if power <= 0 or (
        np.linalg.norm(sub.r_v2, "fro") <= ZERO_MATRIX_TOL
        and np.linalg.norm(sub.r_z2, "fro") <= ZERO_MATRIX_TOL
    ):
        n = sub.r_v1.shape[0]
        return np.zeros((n, sub.r_v2.shape[1]), dtype=complex), np.zeros((n, n), dtype=complex)
    # Tight tolerance keeps the realized power within the absolute design
    # feasibility slack even for large budgets.
    lam = solve_lambda(sub, power, tol=1e-10)
    lv, pv = np.linalg.eigh(hermitize(sub.r_v1))
    lz, pz = np.linalg.eigh(hermitize(sub.r_z1))
    v = _shifted_solve(lv, pv, sub.r_v2, lam)
    z_factor = _shifted_solve(lz, pz, sub.r_z2, lam)
    return v, z_factor
