"""Outer alternating optimization of the legitimate secrecy design.

One inner pass cycles, in order: effective channel, auxiliary matrices,
combiner, precoder/AN pair, RIS phases. The reformulated objective is
non-decreasing across passes because every block update is an exact
coordinate maximizer (the phase step is a monotone descent on its negative).
The outer search tries every stream count and keeps the best believed
secrecy rate, breaking ties toward fewer streams.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSet, effective_legitimate
from .config import SystemConfig
from .linalg import herm
from .manifold import ManifoldParams, optimize_phi, secrecy_phi_objective
from .rates import LegitimateDesign, combiner_span, rate_e_bs, rate_rx
from .transceiver import update_u, update_v_z
from .wmmse import surrogate_objective, update_auxiliaries


@dataclass(frozen=True)
class AoParams:
    rel_tol: float = 1e-4
    max_inner_iters: int = 100
    manifold: ManifoldParams = field(default_factory=ManifoldParams)
    nd_range: tuple[int, int] | None = None  # inclusive; None = [1, min(M, N)]

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.max_inner_iters < 1:
            raise ValueError("max_inner_iters must be positive")


@dataclass
class AoTrace:
    """Per-pass history for one stream-count candidate."""

    n_d: int
    iterations: list[int] = field(default_factory=list)
    surrogate: list[float] = field(default_factory=list)       # nats
    believed_secrecy: list[float] = field(default_factory=list)  # bits
    power_residual: list[float] = field(default_factory=list)
    unit_modulus_residual: list[float] = field(default_factory=list)
    combiner_norm: list[float] = field(default_factory=list)

    def append(self, p, surrogate, secrecy, power_res, phase_res, u_norm):
        self.iterations.append(p)
        self.surrogate.append(surrogate)
        self.believed_secrecy.append(secrecy)
        self.power_residual.append(power_res)
        self.unit_modulus_residual.append(phase_res)
        self.combiner_norm.append(u_norm)


def write_trace_csv(traces: list[AoTrace], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["n_d", "iteration", "surrogate", "believed_secrecy",
             "power_residual", "unit_modulus_residual", "combiner_norm"]
        )
        for tr in traces:
            for i, p in enumerate(tr.iterations):
                writer.writerow(
                    [tr.n_d, p, repr(tr.surrogate[i]), repr(tr.believed_secrecy[i]),
                     repr(tr.power_residual[i]), repr(tr.unit_modulus_residual[i]),
                     repr(tr.combiner_norm[i])]
                )


def init_design(channels: ChannelSet, config: SystemConfig, n_d: int, seed: int) -> LegitimateDesign:
    """Feasible starting point.

    Phases are i.i.d. uniform; the precoder takes the dominant right singular
    vectors of the initial effective channel with half the budget split
    equally across streams; the AN factor is random Gaussian scaled to the
    other half; the combiner takes the dominant left singular vectors scaled
    to unit Frobenius norm. Phases and AN factor come from independent
    substreams so the draw is unaffected by the RIS size.
    """
    phi_seq, z_seq = np.random.SeedSequence(seed).spawn(2)
    l = channels.h1.shape[0]
    phi = np.exp(1j * np.random.default_rng(phi_seq).uniform(0.0, 2.0 * np.pi, size=l))
    h_eff = effective_legitimate(channels.h, channels.h2, phi, channels.h1)
    left, _, vh = np.linalg.svd(h_eff)
    v = herm(vh)[:, :n_d] * np.sqrt(config.power / (2.0 * n_d))
    u = left[:, :n_d] / np.sqrt(n_d)
    z_rng = np.random.default_rng(z_seq)
    z_factor = z_rng.standard_normal((config.n_bs, config.n_bs)) + 1j * z_rng.standard_normal(
        (config.n_bs, config.n_bs)
    )
    z_norm = np.linalg.norm(z_factor, "fro")
    z_factor = z_factor * np.sqrt(config.power / 2.0) / z_norm
    return LegitimateDesign(n_d=n_d, v=v, z_factor=z_factor, u=u, phi=phi)


def _believed_secrecy(design: LegitimateDesign, channels: ChannelSet, noise_var: float) -> float:
    h_eff = effective_legitimate(channels.h, channels.h2, design.phi, channels.h1)
    # rate through the effective column span: robust to dead streams
    span = combiner_span(design.u)
    r_rx = rate_rx(span, h_eff, design.v, design.z_cov, noise_var) if span.shape[1] else 0.0
    r_e_hat = rate_e_bs(channels.h_e, design.v, design.z_cov, noise_var)
    return r_rx - r_e_hat


def _residuals(design: LegitimateDesign, config: SystemConfig):
    power_res = design.transmit_power() - config.power
    phase_res = float(np.max(np.abs(np.abs(design.phi) - 1.0))) if design.phi.size else 0.0
    return power_res, phase_res, float(np.linalg.norm(design.u, "fro"))


def ao_inner(
    channels: ChannelSet,
    config: SystemConfig,
    n_d: int,
    init: LegitimateDesign,
    params: AoParams = AoParams(),
    optimize_phases: bool = True,
) -> tuple[LegitimateDesign, AoTrace]:
    """Run the block-coordinate passes for a fixed stream count."""
    sigma2 = config.noise_var
    design = init
    trace = AoTrace(n_d=n_d)
    prev_secrecy = _believed_secrecy(design, channels, sigma2)
    phi = design.phi
    u, v, z_factor = design.u, design.v, design.z_factor

    for p in range(1, params.max_inner_iters + 1):
        h_eff = effective_legitimate(channels.h, channels.h2, phi, channels.h1)
        state = update_auxiliaries(
            LegitimateDesign(n_d=n_d, v=v, z_factor=z_factor, u=u, phi=phi), channels, sigma2
        )
        u_new = update_u(h_eff, v, z_factor, state.a1, state.s1, sigma2, n_d)
        if combiner_span(u_new).shape[1] < n_d:
            # Stream collapse: this stream count is effectively lower-rank.
            # Keep the last consistent design; smaller candidates cover it.
            secrecy = _believed_secrecy(design, channels, sigma2)
            surrogate = surrogate_objective(state, design, channels, sigma2)
            power_res, phase_res, u_norm = _residuals(design, config)
            trace.append(p, surrogate, secrecy, power_res, phase_res, u_norm)
            break
        u = u_new
        v, z_factor = update_v_z(h_eff, channels.h_e, u, state, sigma2, config.power)
        design = LegitimateDesign(n_d=n_d, v=v, z_factor=z_factor, u=u, phi=phi)
        if optimize_phases and phi.size:
            obj = secrecy_phi_objective(design, channels, state, sigma2)
            phi = optimize_phi(obj, phi, params.manifold)
            design = LegitimateDesign(n_d=n_d, v=v, z_factor=z_factor, u=u, phi=phi)

        secrecy = _believed_secrecy(design, channels, sigma2)
        surrogate = surrogate_objective(state, design, channels, sigma2)
        power_res, phase_res, u_norm = _residuals(design, config)
        trace.append(p, surrogate, secrecy, power_res, phase_res, u_norm)

        if secrecy == 0.0:
            converged = abs(secrecy - prev_secrecy) <= params.rel_tol
        else:
            converged = abs((secrecy - prev_secrecy) / secrecy) <= params.rel_tol
        prev_secrecy = secrecy
        if converged:
            break
    return design, trace


def solve_op_l_traced(
    channels: ChannelSet,
    config: SystemConfig,
    params: AoParams = AoParams(),
    seed: int = 0,
    optimize_phases: bool = True,
) -> tuple[LegitimateDesign, float, list[AoTrace]]:
    """Exhaustive stream-count search; returns (best design, its believed
    secrecy rate, per-candidate traces)."""
    lo, hi = params.nd_range or (1, min(config.m_rx, config.n_bs))
    lo = max(1, lo)
    hi = min(hi, min(config.m_rx, config.n_bs))
    best = None
    traces = []
    for m in range(lo, hi + 1):
        init = init_design(channels, config, m, seed)
        design, trace = ao_inner(channels, config, m, init, params, optimize_phases)
        traces.append(trace)
        secrecy = _believed_secrecy(design, channels, config.noise_var)
        if best is None or secrecy > best[1]:
            best = (design, secrecy)
    return best[0], best[1], traces


def solve_op_l(
    channels: ChannelSet, config: SystemConfig, params: AoParams = AoParams(), seed: int = 0
) -> LegitimateDesign:
    """Full legitimate design with the RIS phase block active."""
    design, _, _ = solve_op_l_traced(channels, config, params, seed, optimize_phases=True)
    return design


def strip_legit_ris(channels: ChannelSet) -> ChannelSet:
    """Drop the legitimate-RIS links, leaving the direct channel only."""
    m, n = channels.h.shape
    return ChannelSet(
        h=channels.h,
        h1=np.zeros((0, n), dtype=complex),
        h2=np.zeros((m, 0), dtype=complex),
        h_e=channels.h_e,
        g1=channels.g1,
        g2=channels.g2,
    )


def solve_no_ris(
    channels: ChannelSet, config: SystemConfig, params: AoParams = AoParams(), seed: int = 0
) -> LegitimateDesign:
    """Variant without a legitimate RIS.

    The RIS links are removed so the effective channel is the direct one
    throughout, and the design carries an empty phase vector.
    """
    design, _, _ = solve_op_l_traced(
        strip_legit_ris(channels), config, params, seed, optimize_phases=False
    )
    return design
