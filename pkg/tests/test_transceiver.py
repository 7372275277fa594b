import numpy as np
import pytest

from ris_secrecy.channel import effective_legitimate, sample_channels
from ris_secrecy.config import Geometry, SystemConfig
from ris_secrecy.driver import init_design
from ris_secrecy.linalg import herm, hermitize
from ris_secrecy.rates import LegitimateDesign
from ris_secrecy.transceiver import (
    CombinerSubproblem,
    PrecoderSubproblem,
    kappa_equation_lhs,
    power_at_lambda,
    precoder_subproblem,
    solve_kappa,
    solve_lambda,
    update_u,
    update_v_z,
)
from ris_secrecy.wmmse import surrogate_objective, update_auxiliaries


def _random(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _random_pd(rng, n, floor=0.5):
    a = _random(rng, n, n)
    return a @ herm(a) + floor * np.eye(n)


def _random_psd(rng, n, rank=None):
    a = _random(rng, n, rank or n)
    return a @ herm(a)


def _combiner_instance(rng, m, n_d):
    return CombinerSubproblem(
        e_mat=_random_pd(rng, m),
        f_mat=_random_psd(rng, n_d),
        j_mat=_random(rng, m, n_d),
    )


def _kappa_weights(sub):
    le, qe = np.linalg.eigh(hermitize(sub.e_mat))
    lf, qf = np.linalg.eigh(hermitize(sub.f_mat))
    j_tilde = herm(qe) @ sub.j_mat @ qf
    xi = (lf[np.newaxis, :] * le[:, np.newaxis]).ravel()
    return np.abs(j_tilde.ravel()) ** 2, xi


def _grid_root(weights, eigs, target, hi):
    """Vectorized dense 1-D grid-search oracle for sum w/(eig+x)^2 = target."""
    grid = np.linspace(0.0, hi, 2_000_001)
    vals = np.sum(weights[:, None] / (eigs[:, None] + grid[None, :]) ** 2, axis=0)
    coarse = grid[int(np.argmin(np.abs(vals - target)))]
    span = hi / 1_000_000
    fine = np.linspace(max(0.0, coarse - span), coarse + span, 200_001)
    vals = np.sum(weights[:, None] / (eigs[:, None] + fine[None, :]) ** 2, axis=0)
    return fine[int(np.argmin(np.abs(vals - target)))]


class TestSolveKappa:
    def test_single_term_closed_form(self):
        # 4 / (1 + kappa)^2 = 1 -> kappa = 1
        sub = CombinerSubproblem(
            e_mat=np.array([[1.0 + 0j]]),
            f_mat=np.array([[1.0 + 0j]]),
            j_mat=np.array([[2.0 + 0j]]),
        )
        assert solve_kappa(sub, 1, tol=1e-10) == pytest.approx(1.0, abs=1e-8)

    def test_zero_rhs_gives_inactive_constraint(self):
        rng = np.random.default_rng(0)
        sub = CombinerSubproblem(
            e_mat=_random_pd(rng, 3),
            f_mat=_random_psd(rng, 2),
            j_mat=np.zeros((3, 2), dtype=complex),
        )
        assert solve_kappa(sub, 2) == 0.0

    def test_matches_grid_search_oracle(self):
        rng = np.random.default_rng(1)
        checked = 0
        while checked < 20:
            sub = _combiner_instance(rng, 2, 2)
            n_d = 2
            target = 1.0 / n_d
            if kappa_equation_lhs(sub, 0.0) <= target:
                continue
            root = solve_kappa(sub, n_d, tol=1e-12)
            weights, xi = _kappa_weights(sub)
            oracle = _grid_root(weights, xi, target, hi=max(4.0 * root, 1.0))
            assert root == pytest.approx(oracle, abs=1e-6 * max(1.0, oracle))
            checked += 1

    def test_lhs_strictly_decreasing(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            sub = _combiner_instance(rng, 3, 2)
            grid = np.linspace(0.0, 50.0, 101)
            vals = [kappa_equation_lhs(sub, x) for x in grid]
            assert all(b < a for a, b in zip(vals, vals[1:]))


class TestUpdateU:
    def test_scalar_inactive_constraint(self):
        # E = 2, F = sqrt(2), J = 2: unconstrained u = 1/sqrt(2), |u| < 1,
        # so the multiplier vanishes (hand-solved 1-D KKT system).
        u = update_u(
            h_eff=np.array([[1.0 + 0j]]),
            v=np.array([[np.sqrt(2.0) + 0j]]),
            z_factor=np.array([[0.0 + 0j]]),
            a1=np.array([[1.0 + 0j]]),
            s1=np.array([[np.sqrt(2.0) + 0j]]),
            noise_var=0.0,
            n_d=1,
        )
        assert u[0, 0] == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-8)

    def test_scalar_boundary_case(self):
        # h = v = 1, a1 = 0.5, s1 = 4, sigma2 = 1 gives E = 2, F = 1, J = 2:
        # the system 2u + kappa*u = 2 with |u| <= 1 has the boundary solution
        # u = 1 at kappa = 0 (hand-solved 1-D KKT system).
        u = update_u(
            h_eff=np.array([[1.0 + 0j]]),
            v=np.array([[1.0 + 0j]]),
            z_factor=np.array([[0.0 + 0j]]),
            a1=np.array([[0.5 + 0j]]),
            s1=np.array([[4.0 + 0j]]),
            noise_var=1.0,
            n_d=1,
        )
        assert abs(u[0, 0]) == pytest.approx(1.0, abs=1e-6)

    def test_zero_rhs_gives_zero_combiner(self):
        rng = np.random.default_rng(3)
        h = _random(rng, 3, 4)
        zf = _random(rng, 4, 4)
        u = update_u(h, np.zeros((4, 2), dtype=complex), zf, np.zeros((2, 2), dtype=complex),
                     np.eye(2, dtype=complex), 1.0, 2)
        assert np.all(u == 0)

    def test_residual_and_norm_on_random_instances(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            m, n_d, n = 4, 2, 5
            h = _random(rng, m, n)
            v = _random(rng, n, n_d)
            zf = _random(rng, n, n)
            a1 = _random(rng, n_d, n_d)
            s1 = _random_pd(rng, n_d)
            sigma2 = 1.0
            u = update_u(h, v, zf, a1, s1, sigma2, n_d)

            hv = h @ v
            hz = h @ zf
            e_mat = sigma2 * np.eye(m) + hv @ herm(hv) + hz @ herm(hz)
            f_mat = a1 @ s1 @ herm(a1)
            j_mat = hv @ s1 @ herm(a1)
            norm = np.linalg.norm(u, "fro")
            assert norm <= 1.0 + 1e-9
            # the implied multiplier comes from least squares on kappa*U = J - EUF
            gap = j_mat - e_mat @ u @ f_mat
            kappa = float(np.real(np.vdot(u, gap)) / max(np.real(np.vdot(u, u)), 1e-300))
            assert kappa >= -1e-8
            resid = np.linalg.norm(e_mat @ u @ f_mat + kappa * u - j_mat, "fro")
            assert resid < 1e-8
            if kappa > 1e-6:
                # complementary slackness: active norm constraint
                assert norm == pytest.approx(1.0, abs=1e-6)

    def test_vec_kron_identity(self):
        # vec(E U F) = (F^T kron E) vec(U), the basis of the combiner solve
        rng = np.random.default_rng(5)
        for _ in range(5):
            e = _random(rng, 3, 3)
            u = _random(rng, 3, 2)
            f = _random(rng, 2, 2)
            lhs = (e @ u @ f).ravel(order="F")
            rhs = np.kron(f.T, e) @ u.ravel(order="F")
            assert np.linalg.norm(lhs - rhs) < 1e-12


class TestSolveLambda:
    def test_scalar_closed_form(self):
        # 4 / (1 + lam)^2 = 1 -> lam = 1
        sub = PrecoderSubproblem(
            gram_k=np.array([[1.0 + 0j]]),
            r_v1=np.array([[1.0 + 0j]]),
            r_v2=np.array([[2.0 + 0j]]),
            r_z1=np.array([[1.0 + 0j]]),
            r_z2=np.array([[0.0 + 0j]]),
        )
        assert solve_lambda(sub, 1.0, tol=1e-12) == pytest.approx(1.0, abs=1e-8)

    def test_zero_rhs_gives_zero_multiplier(self):
        rng = np.random.default_rng(6)
        sub = PrecoderSubproblem(
            gram_k=_random_psd(rng, 3),
            r_v1=_random_pd(rng, 3),
            r_v2=np.zeros((3, 2), dtype=complex),
            r_z1=_random_pd(rng, 3),
            r_z2=np.zeros((3, 3), dtype=complex),
        )
        assert solve_lambda(sub, 5.0) == 0.0

    def test_matches_grid_search_oracle(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 20:
            n = 3
            sub = PrecoderSubproblem(
                gram_k=_random_psd(rng, n),
                r_v1=_random_pd(rng, n),
                r_v2=_random(rng, n, 2),
                r_z1=_random_pd(rng, n),
                r_z2=_random(rng, n, n),
            )
            power = 1.0
            if power_at_lambda(sub, 0.0) <= power:
                continue
            root = solve_lambda(sub, power, tol=1e-12)
            lv, pv = np.linalg.eigh(hermitize(sub.r_v1))
            lz, pz = np.linalg.eigh(hermitize(sub.r_z1))
            weights = np.concatenate(
                [
                    np.sum(np.abs(herm(pv) @ sub.r_v2) ** 2, axis=1),
                    np.sum(np.abs(herm(pz) @ sub.r_z2) ** 2, axis=1),
                ]
            )
            eigs = np.concatenate([lv, lz])
            oracle = _grid_root(weights, eigs, power, hi=max(4.0 * root, 1.0))
            assert root == pytest.approx(oracle, abs=1e-6 * max(1.0, oracle))
            checked += 1


class TestUpdateVZ:
    CFG = SystemConfig(n_bs=4, m_rx=2, k_e=2, l_ris=3, lambda_ris=0, power=5.0)

    def _instance(self, seed):
        channels = sample_channels(self.CFG, Geometry(), seed)
        design = init_design(channels, self.CFG, 2, seed)
        state = update_auxiliaries(design, channels, 1.0)
        h_eff = effective_legitimate(channels.h, channels.h2, design.phi, channels.h1)
        return channels, design, state, h_eff

    def test_zero_rhs_gives_zero_solution(self):
        from ris_secrecy.wmmse import AuxiliaryState

        channels, design, state, h_eff = self._instance(0)
        zero_state = AuxiliaryState(
            a1=np.zeros_like(state.a1),
            a2=np.zeros_like(state.a2),
            s1=state.s1,
            s2=state.s2,
            s3=state.s3,
        )
        v, zf = update_v_z(h_eff, channels.h_e, design.u, zero_state, 1.0, 5.0)
        assert np.all(v == 0) and np.all(zf == 0)

    def test_scalar_hand_solved_kkt(self):
        # R_V1 = 1, R_V2 = 2, no AN term, P = 1: lam* = 1, V = 1, power = 1
        one = np.array([[1.0 + 0j]])
        sub = PrecoderSubproblem(
            gram_k=one, r_v1=one, r_v2=np.array([[2.0 + 0j]]),
            r_z1=one, r_z2=np.array([[0.0 + 0j]]),
        )
        lam = solve_lambda(sub, 1.0, tol=1e-12)
        assert lam == pytest.approx(1.0, abs=1e-8)
        v = np.array([[2.0 + 0j]]) / (lam + 1.0)
        assert abs(v[0, 0]) == pytest.approx(1.0, abs=1e-8)

    def test_power_feasibility_on_random_instances(self):
        for seed in range(50):
            channels, design, state, h_eff = self._instance(seed)
            power = self.CFG.power
            v, zf = update_v_z(h_eff, channels.h_e, design.u, state, 1.0, power)
            total = float(np.linalg.norm(v, "fro") ** 2 + np.linalg.norm(zf, "fro") ** 2)
            assert total <= power + 1e-4 * power
            sub = precoder_subproblem(h_eff, channels.h_e, design.u, state, 1.0)
            if power_at_lambda(sub, 0.0) > power:
                # active budget: equality within tolerance
                assert total == pytest.approx(power, rel=1e-4)

    def test_combiner_and_precoder_updates_are_coordinate_ascent(self):
        for seed in range(20):
            channels, design, state, h_eff = self._instance(100 + seed)
            base = surrogate_objective(state, design, channels, 1.0)
            u_new = update_u(h_eff, design.v, design.z_factor, state.a1, state.s1, 1.0, 2)
            improved = LegitimateDesign(
                n_d=2, v=design.v, z_factor=design.z_factor, u=u_new, phi=design.phi
            )
            after_u = surrogate_objective(state, improved, channels, 1.0)
            assert after_u >= base - 1e-9

            v_new, zf_new = update_v_z(h_eff, channels.h_e, u_new, state, 1.0, self.CFG.power)
            final = LegitimateDesign(n_d=2, v=v_new, z_factor=zf_new, u=u_new, phi=design.phi)
            after_vz = surrogate_objective(state, final, channels, 1.0)
            assert after_vz >= after_u - 1e-9
