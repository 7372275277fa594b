"""Rayleigh channel sampling with pathloss and RIS-composed effective channels.

Seeding scheme: ``sample_channels`` derives one independent PCG64 sub-stream
per link from ``numpy.random.SeedSequence(seed).spawn(6)``, in the fixed link
order (h, h1, h2, h_e, g1, g2). Draws for one link therefore do not depend on
the sizes of the other links, and the same seed always yields bit-identical
matrices.
"""

from dataclasses import dataclass

import numpy as np

from .config import LINKS, SystemConfig, Geometry, link_distances, pathloss_gain
from .exceptions import ConstraintViolation

UNIT_MODULUS_TOL = 1e-9


@dataclass(frozen=True)
class ChannelSet:
    """One fading realization of the six links.

    Shapes: h (M,N), h1 (L,N), h2 (M,L), h_e (K,N), g1 (Lam,N), g2 (K,Lam).
    A missing RIS (L=0 or Lam=0) yields empty matrices for its links.
    """

    h: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    h_e: np.ndarray
    g1: np.ndarray
    g2: np.ndarray

    def __post_init__(self):
        m, n = self.h.shape
        k = self.h_e.shape[0]
        l = self.h1.shape[0]
        lam = self.g1.shape[0]
        expected = {
            "h": (m, n),
            "h1": (l, n),
            "h2": (m, l),
            "h_e": (k, n),
            "g1": (lam, n),
            "g2": (k, lam),
        }
        for name, shape in expected.items():
            mat = getattr(self, name)
            if mat.shape != shape:
                raise ValueError(f"channel {name} has shape {mat.shape}, expected {shape}")
            if mat.size and not np.all(np.isfinite(mat)):
                raise ValueError(f"channel {name} contains non-finite entries")


def _complex_gaussian(rng: np.random.Generator, rows: int, cols: int, gain: float) -> np.ndarray:
    scale = np.sqrt(gain / 2.0)
    return scale * (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols)))


def sample_channels(config: SystemConfig, geometry: Geometry, seed: int) -> ChannelSet:
    """Draw one i.i.d. Rayleigh realization of all links.

    Entry variance on each link equals its pathloss gain (d/d_ref)^(-exponent)
    with the default reference distance of 1 m.
    """
    dists = link_distances(geometry)
    gains = [
        pathloss_gain(dists[link] / config.ref_distance, config.pathloss_exp)
        for link in LINKS
    ]
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(len(LINKS))]

    n, m, k = config.n_bs, config.m_rx, config.k_e
    l, lam = config.l_ris, config.lambda_ris
    shapes = [(m, n), (l, n), (m, l), (k, n), (lam, n), (k, lam)]
    mats = [
        _complex_gaussian(rng, rows, cols, gain)
        for rng, (rows, cols), gain in zip(streams, shapes, gains)
    ]
    return ChannelSet(*mats)


def _check_unit_modulus(vec: np.ndarray, name: str) -> None:
    if vec.size and np.max(np.abs(np.abs(vec) - 1.0)) > UNIT_MODULUS_TOL:
        raise ConstraintViolation(f"{name} must have unit-modulus entries")


def effective_legitimate(h: np.ndarray, h2: np.ndarray, phi: np.ndarray, h1: np.ndarray) -> np.ndarray:
    """Composite BS-to-RX channel h + h2 diag(phi) h1."""
    if phi.size == 0:
        return h
    _check_unit_modulus(phi, "phi")
    return h + (h2 * phi[np.newaxis, :]) @ h1


def cascaded_eavesdrop(g2: np.ndarray, psi: np.ndarray, g1: np.ndarray) -> np.ndarray:
    """RIS-only BS-to-E path g2 diag(psi) g1 (zero matrix when there is no RIS)."""
    if psi.size == 0:
        return np.zeros((g2.shape[0], g1.shape[1]), dtype=complex)
    _check_unit_modulus(psi, "psi")
    return (g2 * psi[np.newaxis, :]) @ g1


def effective_eavesdrop(h_e: np.ndarray, g2: np.ndarray, psi: np.ndarray, g1: np.ndarray) -> np.ndarray:
    """Composite BS-to-E channel h_e + g2 diag(psi) g1."""
    if psi.size == 0:
        return h_e
    return h_e + cascaded_eavesdrop(g2, psi, g1)


def save_channels(path, channels: ChannelSet) -> None:
    """Binary dump of one realization (shapes are stored in the format)."""
    np.savez(
        path,
        h=channels.h,
        h1=channels.h1,
        h2=channels.h2,
        h_e=channels.h_e,
        g1=channels.g1,
        g2=channels.g2,
    )


def load_channels(path) -> ChannelSet:
    with np.load(path) as data:
        return ChannelSet(
            h=data["h"],
            h1=data["h1"],
            h2=data["h2"],
            h_e=data["h_e"],
            g1=data["g1"],
            g2=data["g2"],
        )
