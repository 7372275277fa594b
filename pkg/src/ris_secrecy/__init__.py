"""RIS-empowered MIMO physical-layer security toolkit.

Joint design of precoding, artificial noise, linear combining and passive
RIS beamforming for a legitimate MIMO link under an RIS-aided eavesdropper,
plus a Monte Carlo harness for secrecy-rate experiments.
"""

from .config import SystemConfig, Geometry, node_positions, link_distances, pathloss_gain
from .channel import ChannelSet, sample_channels, effective_legitimate, effective_eavesdrop, cascaded_eavesdrop
from .rates import (
    LegitimateDesign,
    EavesdropperDesign,
    rate_rx,
    rate_e,
    rate_e_assumed,
    rate_e_bs,
    secrecy_rate,
)
from .wmmse import AuxiliaryState, surrogate_objective
from .manifold import ManifoldParams, Objective, optimize_phi
from .eavesdropper import design_eavesdropper
from .driver import AoParams, AoTrace, solve_op_l, solve_no_ris
from .experiment import SweepSpec, TrialResult, run_trial, run_sweep, write_csv

__all__ = [
    "SystemConfig",
    "Geometry",
    "node_positions",
    "link_distances",
    "pathloss_gain",
    "ChannelSet",
    "sample_channels",
    "effective_legitimate",
    "effective_eavesdrop",
    "cascaded_eavesdrop",
    "LegitimateDesign",
    "EavesdropperDesign",
    "rate_rx",
    "rate_e",
    "rate_e_assumed",
    "rate_e_bs",
    "secrecy_rate",
    "AuxiliaryState",
    "surrogate_objective",
    "ManifoldParams",
    "Objective",
    "optimize_phi",
    "design_eavesdropper",
    "AoParams",
    "AoTrace",
    "solve_op_l",
    "solve_no_ris",
    "SweepSpec",
    "TrialResult",
    "run_trial",
    "run_sweep",
    "write_csv",
]

__version__ = "0.1.0"
