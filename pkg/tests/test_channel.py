import numpy as np
import pytest

from ris_secrecy.channel import (
    ChannelSet,
    cascaded_eavesdrop,
    effective_eavesdrop,
    effective_legitimate,
    load_channels,
    sample_channels,
    save_channels,
)
from ris_secrecy.config import Geometry, SystemConfig
from ris_secrecy.exceptions import ConstraintViolation

CFG = SystemConfig(n_bs=4, m_rx=2, k_e=3, l_ris=5, lambda_ris=6, power=1.0)
GEO = Geometry()


def test_same_seed_gives_bit_identical_channels():
    a = sample_channels(CFG, GEO, 1234)
    b = sample_channels(CFG, GEO, 1234)
    for name in ("h", "h1", "h2", "h_e", "g1", "g2"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    c = sample_channels(CFG, GEO, 1235)
    assert not np.array_equal(a.h, c.h)


def test_no_ris_yields_empty_link_matrices():
    cfg = SystemConfig(n_bs=4, m_rx=2, k_e=2, l_ris=0, lambda_ris=0, power=1.0)
    ch = sample_channels(cfg, GEO, 0)
    assert ch.h1.shape == (0, 4)
    assert ch.h2.shape == (2, 0)
    assert ch.g1.shape == (0, 4)
    assert ch.g2.shape == (2, 0)


def test_entry_variance_matches_pathloss_gain():
    # d(BS, RX) = 10, exponent 2 -> per-entry variance 0.01. Monte Carlo
    # estimate over 1e5 entries must land in a 3-sigma band around it.
    cfg = SystemConfig(n_bs=100, m_rx=100, k_e=100, l_ris=0, lambda_ris=0, power=1.0)
    entries = np.concatenate(
        [sample_channels(cfg, GEO, seed).h.ravel() for seed in range(10)]
    )
    assert entries.size == 100_000
    var = np.mean(np.abs(entries) ** 2)
    assert 0.0097 <= var <= 0.0103


def test_effective_legitimate_identity_phase_and_scalar_case():
    ch = sample_channels(CFG, GEO, 7)
    ones = np.ones(CFG.l_ris, dtype=complex)
    expected = ch.h + ch.h2 @ ch.h1
    assert np.allclose(effective_legitimate(ch.h, ch.h2, ones, ch.h1), expected)

    h = np.array([[1.0 + 0j]])
    h2 = np.array([[2.0 + 0j]])
    h1 = np.array([[3.0 + 0j]])
    out = effective_legitimate(h, h2, np.array([1j]), h1)
    assert out[0, 0] == pytest.approx(1 + 6j)


def test_effective_legitimate_without_ris_returns_direct_channel():
    cfg = SystemConfig(n_bs=4, m_rx=2, k_e=2, l_ris=0, lambda_ris=0, power=1.0)
    ch = sample_channels(cfg, GEO, 3)
    out = effective_legitimate(ch.h, ch.h2, np.zeros(0, dtype=complex), ch.h1)
    assert out is ch.h


def test_unit_modulus_enforced():
    ch = sample_channels(CFG, GEO, 7)
    bad = np.ones(CFG.l_ris, dtype=complex)
    bad[0] = 0.5
    with pytest.raises(ConstraintViolation):
        effective_legitimate(ch.h, ch.h2, bad, ch.h1)
    with pytest.raises(ConstraintViolation):
        cascaded_eavesdrop(ch.g2, 2.0 * np.ones(CFG.lambda_ris, dtype=complex), ch.g1)


def test_effective_eavesdrop_examples_and_consistency():
    h_e = np.array([[1.0 + 0j]])
    g2 = np.array([[1.0 + 0j]])
    g1 = np.array([[1.0 + 0j]])
    assert effective_eavesdrop(h_e, g2, np.array([-1.0 + 0j]), g1)[0, 0] == 0

    ch = sample_channels(CFG, GEO, 11)
    rng = np.random.default_rng(0)
    psi = np.exp(1j * rng.uniform(0, 2 * np.pi, CFG.lambda_ris))
    total = effective_eavesdrop(ch.h_e, ch.g2, psi, ch.g1)
    assert np.allclose(total, ch.h_e + cascaded_eavesdrop(ch.g2, psi, ch.g1), atol=1e-15)


def test_cascaded_eavesdrop_examples():
    eye = np.eye(3, dtype=complex)
    out = cascaded_eavesdrop(eye, np.ones(3, dtype=complex), eye)
    assert np.allclose(out, eye)
    # no eavesdropping RIS -> zero matrix
    zero = cascaded_eavesdrop(np.zeros((3, 0)), np.zeros(0, dtype=complex), np.zeros((0, 4)))
    assert zero.shape == (3, 4)
    assert np.all(zero == 0)
    scalar = cascaded_eavesdrop(
        np.array([[2.0 + 0j]]), np.array([np.exp(1j * np.pi / 2)]), np.array([[3.0 + 0j]])
    )
    assert scalar[0, 0] == pytest.approx(6j)


def test_effective_channel_linear_in_second_hop():
    ch = sample_channels(CFG, GEO, 5)
    phi = np.exp(1j * np.random.default_rng(1).uniform(0, 2 * np.pi, CFG.l_ris))
    base = effective_legitimate(ch.h, ch.h2, phi, ch.h1) - ch.h
    scaled = effective_legitimate(ch.h, 2.5 * ch.h2, phi, ch.h1) - ch.h
    assert np.allclose(scaled, 2.5 * base, atol=1e-13)


def test_channel_dump_roundtrip(tmp_path):
    ch = sample_channels(CFG, GEO, 99)
    path = tmp_path / "realization.npz"
    save_channels(path, ch)
    loaded = load_channels(path)
    for name in ("h", "h1", "h2", "h_e", "g1", "g2"):
        assert np.array_equal(getattr(ch, name), getattr(loaded, name))


def test_channelset_shape_validation():
    with pytest.raises(ValueError):
        ChannelSet(
            h=np.zeros((2, 4), dtype=complex),
            h1=np.zeros((3, 5), dtype=complex),  # wrong N
            h2=np.zeros((2, 3), dtype=complex),
            h_e=np.zeros((3, 4), dtype=complex),
            g1=np.zeros((0, 4), dtype=complex),
            g2=np.zeros((3, 0), dtype=complex),
        )
