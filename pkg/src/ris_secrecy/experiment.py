"""Monte Carlo sweeps of the secrecy design over a transmit-SNR grid.

One trial = sample channels, run the legitimate design (with or without the
legitimate RIS), run the eavesdropper design for the selected stream count,
then score both links under the true signal model (both RIS contributions
included). Trials are seeded as SeedSequence(master_seed, spawn_key=(snr
index, trial index)) with one child each for channel sampling and design
initialization, so results are reproducible and order-independent.
"""

import csv
import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np

logger = logging.getLogger(__name__)

from .channel import ChannelSet, effective_eavesdrop, effective_legitimate, sample_channels
from .config import Geometry, SystemConfig
from .driver import AoParams, solve_op_l_traced, strip_legit_ris
from .eavesdropper import design_eavesdropper
from .manifold import ManifoldParams
from .rates import (
    EavesdropperDesign,
    LegitimateDesign,
    combiner_span,
    rate_e,
    rate_rx,
    secrecy_rate,
)

SCENARIOS = ("with_legit_ris", "no_legit_ris")

CSV_COLUMNS = (
    "snr_db",
    "trial_index",
    "rate_rx",
    "rate_e",
    "secrecy",
    "nd_selected",
    "inner_iters",
    "wall_time_s",
)


def default_sweep_params() -> AoParams:
    """Solver profile for Monte Carlo sweeps.

    Identical to the solver defaults except for a tighter per-pass cap on the
    phase conjugate-gradient searches; the phases are re-polished on every
    alternating pass anyway, so a large cap only burns time on the first pass.
    """
    return AoParams(manifold=ManifoldParams(max_iters=60))


@dataclass(frozen=True)
class SweepSpec:
    snr_grid_db: tuple[float, ...]
    trials: int
    scenario: str
    config: SystemConfig
    geometry: Geometry = field(default_factory=Geometry)
    master_seed: int = 0
    ao_params: AoParams = field(default_factory=default_sweep_params)

    def __post_init__(self):
        object.__setattr__(self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db))
        if not self.snr_grid_db:
            raise ValueError("snr_grid_db must be non-empty")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario must be one of {SCENARIOS}")


@dataclass(frozen=True)
class TrialResult:
    snr_db: float
    trial_index: int
    rate_rx: float
    rate_e: float
    secrecy: float
    nd_selected: int
    inner_iters: int
    wall_time_s: float


def trial_seeds(master_seed: int, snr_index: int, trial_index: int) -> tuple[int, int]:
    """(channel seed, init seed) for one trial; stable across platforms."""
    children = np.random.SeedSequence(
        master_seed, spawn_key=(snr_index, trial_index)
    ).spawn(2)
    return tuple(int(c.generate_state(1, np.uint64)[0]) for c in children)


def evaluate_true_rates(
    channels: ChannelSet,
    legit: LegitimateDesign,
    eaves: EavesdropperDesign,
    noise_var: float,
) -> tuple[float, float, float]:
    """Score both links under the actual signal model (both RISs active)."""
    h_eff = effective_legitimate(channels.h, channels.h2, legit.phi, channels.h1)
    u_span = combiner_span(legit.u)
    r_rx = rate_rx(u_span, h_eff, legit.v, legit.z_cov, noise_var) if u_span.shape[1] else 0.0
    w_span = combiner_span(eaves.w)
    if w_span.shape[1] == 0:
        r_e = 0.0
    else:
        h_eff_e = effective_eavesdrop(channels.h_e, channels.g2, eaves.psi, channels.g1)
        r_e = rate_e(w_span, h_eff_e, legit.v, legit.z_cov, noise_var)
    return r_rx, r_e, secrecy_rate(r_rx, r_e)


def run_trial(spec: SweepSpec, snr_db: float, trial_index: int) -> TrialResult:
    """One Monte Carlo realization at one grid point."""
    snr_index = spec.snr_grid_db.index(snr_db)
    start = time.perf_counter()
    power = spec.config.noise_var * 10.0 ** (snr_db / 10.0)
    config = replace(spec.config, power=power)
    channel_seed, init_seed = trial_seeds(spec.master_seed, snr_index, trial_index)
    channels = sample_channels(config, spec.geometry, channel_seed)

    solve_channels = channels
    optimize_phases = spec.scenario == "with_legit_ris"
    if not optimize_phases:
        solve_channels = strip_legit_ris(channels)
    legit, _, traces = solve_op_l_traced(
        solve_channels, config, spec.ao_params, init_seed, optimize_phases=optimize_phases
    )
    eaves = design_eavesdropper(channels, config, legit.n_d, spec.ao_params.manifold)

    score_channels = channels if optimize_phases else solve_channels
    r_rx, r_e, secrecy = evaluate_true_rates(score_channels, legit, eaves, config.noise_var)
    selected = next(tr for tr in traces if tr.n_d == legit.n_d)
    return TrialResult(
        snr_db=snr_db,
        trial_index=trial_index,
        rate_rx=r_rx,
        rate_e=r_e,
        secrecy=secrecy,
        nd_selected=legit.n_d,
        inner_iters=len(selected.iterations),
        wall_time_s=time.perf_counter() - start,
    )


def aggregate(results: list[TrialResult], failures: dict[float, int] | None = None) -> list[dict]:
    """Per-SNR means over successful trials (plus failure counts)."""
    by_snr: dict[float, list[TrialResult]] = {}
    for res in results:
        by_snr.setdefault(res.snr_db, []).append(res)
    table = []
    for snr in sorted(by_snr):
        rows = by_snr[snr]
        table.append(
            {
                "snr_db": snr,
                "trials": len(rows),
                "failed": (failures or {}).get(snr, 0),
                "mean_rate_rx": float(np.mean([r.rate_rx for r in rows])),
                "mean_rate_e": float(np.mean([r.rate_e for r in rows])),
                "mean_secrecy": float(np.mean([r.secrecy for r in rows])),
            }
        )
    return table


def run_sweep(spec: SweepSpec, progress=None) -> tuple[list[TrialResult], list[dict]]:
    """All trials over the grid; failed trials are excluded from the means
    and counted in the aggregate's ``failed`` column."""
    results: list[TrialResult] = []
    failures: dict[float, int] = {snr: 0 for snr in spec.snr_grid_db}
    for snr_db in spec.snr_grid_db:
        for trial in range(spec.trials):
            try:
                results.append(run_trial(spec, snr_db, trial))
            except Exception:  # noqa: BLE001 - a lost trial must not kill the sweep
                failures[snr_db] += 1
            if progress is not None:
                progress(snr_db, trial)
    total_failed = sum(failures.values())
    total = len(spec.snr_grid_db) * spec.trials
    if total_failed > 0.01 * total:
        logger.warning("flagged run: %d of %d trials failed (>1%%)", total_failed, total)
    return results, aggregate(results, failures)


def write_csv(results: list[TrialResult], path) -> None:
    """Trial-level CSV with a fixed column order; floats keep full precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for res in results:
            writer.writerow(
                [
                    repr(float(res.snr_db)),
                    res.trial_index,
                    repr(res.rate_rx),
                    repr(res.rate_e),
                    repr(res.secrecy),
                    res.nd_selected,
                    res.inner_iters,
                    repr(res.wall_time_s),
                ]
            )


def read_csv(path) -> list[TrialResult]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [
            TrialResult(
                snr_db=float(row["snr_db"]),
                trial_index=int(row["trial_index"]),
                rate_rx=float(row["rate_rx"]),
                rate_e=float(row["rate_e"]),
                secrecy=float(row["secrecy"]),
                nd_selected=int(row["nd_selected"]),
                inner_iters=int(row["inner_iters"]),
                wall_time_s=float(row["wall_time_s"]),
            )
            for row in reader
        ]
