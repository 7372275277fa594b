"""System parameters, planar node placement and distance-based pathloss.

The default scenario places the base station at the origin, the legitimate
receiver, the eavesdropper and the legitimate RIS on a circle of radius 10 m
(angles 45/85/20 degrees), and anchors the eavesdropping RIS at the midpoint
of the RX-E segment. Pathloss for a link of length d is the power gain
d^(-exponent); channel entries are scaled by its square root so that the
per-entry power equals the gain.
"""

import json
import math
from dataclasses import dataclass, field, asdict

# Node identifiers used in position/distance tables.
BS = "bs"
RX = "rx"
EVE = "eve"
RIS_LEGIT = "ris_legit"
RIS_EAVES = "ris_eaves"

# Link identifiers, one per channel matrix.
LINKS = (
    (BS, RX),
    (BS, RIS_LEGIT),
    (RIS_LEGIT, RX),
    (BS, EVE),
    (BS, RIS_EAVES),
    (RIS_EAVES, EVE),
)


@dataclass(frozen=True)
class SystemConfig:
    """Antenna/element counts and radio parameters (linear units)."""

    n_bs: int = 8           # BS antennas
    m_rx: int = 4           # legitimate RX antennas
    k_e: int = 4            # eavesdropper antennas, must be >= m_rx
    l_ris: int = 0          # legitimate RIS elements (0 = no legitimate RIS)
    lambda_ris: int = 0     # eavesdropping RIS elements
    power: float = 10.0     # total transmit power budget
    noise_var: float = 1.0  # per-antenna AWGN variance
    pathloss_exp: float = 2.0
    ref_distance: float = 1.0  # pathloss reference distance in meters

    def __post_init__(self):
        for name in ("n_bs", "m_rx", "k_e"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        for name in ("l_ris", "lambda_ris"):
            if int(getattr(self, name)) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.k_e < self.m_rx:
            raise ValueError("k_e must be at least m_rx")
        # The power budget may be zero (degenerate no-transmission case),
        # but never negative.
        if self.power < 0:
            raise ValueError("power must be non-negative")
        if self.noise_var <= 0:
            raise ValueError("noise_var must be positive")
        if self.pathloss_exp < 0:
            raise ValueError("pathloss_exp must be non-negative")
        if self.ref_distance <= 0:
            raise ValueError("ref_distance must be positive")


@dataclass(frozen=True)
class Geometry:
    """Planar placement: all nodes but the BS sit on a circle around it."""

    radius: float = 10.0
    angle_rx: float = 45.0
    angle_e: float = 85.0
    angle_ris_legit: float = 20.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        for name in ("angle_rx", "angle_e", "angle_ris_legit"):
            val = getattr(self, name)
            if not 0.0 <= val < 360.0:
                raise ValueError(f"{name} must lie in [0, 360) degrees")

    @property
    def eaves_ris_anchor(self) -> tuple[float, float]:
        """Midpoint of the RX-E segment, where the eavesdropping RIS sits."""
        rx = _on_circle(self.radius, self.angle_rx)
        ev = _on_circle(self.radius, self.angle_e)
        return ((rx[0] + ev[0]) / 2.0, (rx[1] + ev[1]) / 2.0)


def _on_circle(radius: float, angle_deg: float) -> tuple[float, float]:
    theta = math.radians(angle_deg)
    return (radius * math.cos(theta), radius * math.sin(theta))


def node_positions(geometry: Geometry) -> dict[str, tuple[float, float]]:
    """2-D coordinates (meters) of all five nodes; the BS is at the origin."""
    return {
        BS: (0.0, 0.0),
        RX: _on_circle(geometry.radius, geometry.angle_rx),
        EVE: _on_circle(geometry.radius, geometry.angle_e),
        RIS_LEGIT: _on_circle(geometry.radius, geometry.angle_ris_legit),
        RIS_EAVES: geometry.eaves_ris_anchor,
    }


def pathloss_gain(distance: float, exponent: float) -> float:
    """Distance-dependent power gain distance^(-exponent)."""
    if distance <= 0:
        raise ValueError("pathloss distance must be positive (co-located nodes unsupported)")
    return float(distance ** (-exponent))


def link_distances(geometry: Geometry) -> dict[tuple[str, str], float]:
    """Euclidean length of each of the six channel links."""
    pos = node_positions(geometry)
    table = {}
    for a, b in LINKS:
        (xa, ya), (xb, yb) = pos[a], pos[b]
        d = math.hypot(xa - xb, ya - yb)
        if d <= 0:
            raise ValueError(f"nodes {a} and {b} are co-located")
        table[(a, b)] = d
    return table


@dataclass(frozen=True)
class Scenario:
    """A full simulation scenario: system parameters plus placement."""

    config: SystemConfig = field(default_factory=SystemConfig)
    geometry: Geometry = field(default_factory=Geometry)


def scenario_to_json(scenario: Scenario) -> str:
    return json.dumps(
        {"config": asdict(scenario.config), "geometry": asdict(scenario.geometry)},
        indent=2,
    )


def scenario_from_json(text: str) -> Scenario:
    """Parse a scenario file; missing keys fall back to the defaults above."""
    raw = json.loads(text)
    cfg = SystemConfig(**raw.get("config", {}))
    geo = Geometry(**raw.get("geometry", {}))
    return Scenario(config=cfg, geometry=geo)


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return scenario_from_json(fh.read())
