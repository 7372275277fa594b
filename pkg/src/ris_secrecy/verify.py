"""Fast runtime property checks exposed through the ``verify`` CLI command.

Each check re-derives an invariant of the optimization machinery on freshly
seeded random instances and prints one PASS/FAIL line. These mirror the fast
half of the acceptance suite so an installed package can self-test without
the test tree.
"""

import numpy as np

from .channel import sample_channels
from .config import Geometry, SystemConfig
from .driver import AoParams, ao_inner, init_design
from .linalg import herm, logdet_pd
from .manifold import ManifoldParams, secrecy_phi_objective
from .rates import rate_e_bs, rate_e_bs_split, rate_rx
from .wmmse import LN2, lemma_f, surrogate_objective, update_auxiliaries


def _random_pd(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a @ herm(a) + n * np.eye(n)


def check_lemma_tightness(seed=0) -> bool:
    """f(M^{-1}, M) equals log|M^{-1}| for random PD matrices."""
    rng = np.random.default_rng(seed)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        m = _random_pd(rng, n)
        target = -logdet_pd(m)
        if abs(lemma_f(np.linalg.inv(m), m) - target) > 1e-10:
            return False
    return True


def check_surrogate_tightness(seed=1) -> bool:
    """After auxiliary updates the surrogate equals the rate combination."""
    cfg = SystemConfig(n_bs=4, m_rx=2, k_e=2, l_ris=3, lambda_ris=0, power=4.0)
    for trial in range(10):
        channels = sample_channels(cfg, Geometry(), seed * 1000 + trial)
        design = init_design(channels, cfg, 2, trial)
        state = update_auxiliaries(design, channels, cfg.noise_var)
        surrogate = surrogate_objective(state, design, channels, cfg.noise_var)
        from .channel import effective_legitimate

        h_eff = effective_legitimate(channels.h, channels.h2, design.phi, channels.h1)
        r_rx = rate_rx(design.u, h_eff, design.v, design.z_cov, cfg.noise_var) * LN2
        r1, r2 = rate_e_bs_split(channels.h_e, design.z_cov, design.v, cfg.noise_var)
        if abs(surrogate - (r_rx + r1 - r2)) > 1e-8:
            return False
    return True


def check_rate_decomposition(seed=2) -> bool:
    """rate_e_bs equals the difference of its two log-det halves."""
    rng = np.random.default_rng(seed)
    for _ in range(10):
        h_e = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
        v = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        zf = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        z = zf @ herm(zf)
        r1, r2 = rate_e_bs_split(h_e, z, v, 1.0)
        if abs(rate_e_bs(h_e, v, z, 1.0) - (r2 - r1) / LN2) > 1e-9:
            return False
    return True


def check_gradient(seed=3) -> bool:
    """Analytic phase gradient matches central finite differences."""
    cfg = SystemConfig(n_bs=4, m_rx=2, k_e=2, l_ris=4, lambda_ris=0, power=4.0)
    for trial in range(5):
        channels = sample_channels(cfg, Geometry(), seed * 777 + trial)
        design = init_design(channels, cfg, 2, trial)
        state = update_auxiliaries(design, channels, cfg.noise_var)
        obj = secrecy_phi_objective(design, channels, state, cfg.noise_var)
        phi = design.phi
        grad = obj.euclid_grad(phi)
        h = 1e-6
        analytic = 2.0 * np.real(np.conj(grad) * 1j * phi)
        numeric = np.empty_like(analytic)
        theta = np.angle(phi)
        for idx in range(phi.size):
            up, dn = theta.copy(), theta.copy()
            up[idx] += h
            dn[idx] -= h
            numeric[idx] = (obj.value(np.exp(1j * up)) - obj.value(np.exp(1j * dn))) / (2 * h)
        if np.linalg.norm(analytic - numeric) > 1e-5 * max(1.0, np.linalg.norm(numeric)):
            return False
    return True


def check_ao_monotone(seed=4) -> bool:
    """Surrogate sequence is non-decreasing on small random instances."""
    cfg = SystemConfig(n_bs=4, m_rx=2, k_e=2, l_ris=4, lambda_ris=4, power=10.0)
    params = AoParams(max_inner_iters=15, manifold=ManifoldParams(max_iters=40))
    for trial in range(5):
        channels = sample_channels(cfg, Geometry(), seed * 999 + trial)
        init = init_design(channels, cfg, 2, trial)
        _, trace = ao_inner(channels, cfg, 2, init, params)
        diffs = np.diff(np.asarray(trace.surrogate))
        if trace.surrogate and np.any(diffs < -1e-9):
            return False
    return True


CHECKS = (
    ("lemma tightness", check_lemma_tightness),
    ("surrogate tightness", check_surrogate_tightness),
    ("rate decomposition", check_rate_decomposition),
    ("phase gradient vs finite differences", check_gradient),
    ("alternating optimization monotonicity", check_ao_monotone),
)


def run_all(out=print) -> bool:
    ok = True
    for name, fn in CHECKS:
        passed = fn()
        ok = ok and passed
        out(f"{'PASS' if passed else 'FAIL'}  {name}")
    return ok
