"""Polarization measurements on a photon pair.

Three analyzer configurations are modelled by their efficiency matrices
``eps``; the probability of the filtered outcome is ``Tr(eps rho)``.

* type I: two independent single-photon analyzers, ``eps = rho_n1 x rho_n2``;
* type II: a two-photon analyzer whose efficiency matrix is itself a pure
  two-photon state;
* type III: one analyzer on photon 1, ``eps = rho_n x I``. Photon 2 is left
  in a conditional state whose entropy may be lower ("cooling") or higher
  ("heating") than before.

Probabilities are always evaluated as matrix traces. The scalar formulas are
exposed alongside as ``*_formula`` for cross-checking.
"""

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from twophoton import qlinalg, states
from twophoton.entropy import single_photon_entropy
from twophoton.errors import DegenerateMeasurementError, DomainError

log = logging.getLogger(__name__)

UNIT_TOL = 1e-12
PURE_TOL = 1e-9
DENOM_TOL = 1e-12
THERMAL_TOL = 1e-9


def unit_vector(n):
    """Validate a unit 3-vector and return it as a read-only array."""
    v = np.array(n, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise DomainError(f"analyzer direction must be a finite 3-vector, got {n!r}")
    if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise DomainError(f"analyzer direction must be a unit vector, |n| = {np.linalg.norm(v):.15g}")
    v.flags.writeable = False
    return v


def axial(n3):
    """Unit vector ``(sqrt(1 - n3^2), 0, n3)``.

    For the five-parameter family only ``n1^2 + n2^2`` matters when
    ``z11^2 == z22^2``, so this is the canonical analyzer for a given ``n3``.
    """
    if not -1.0 <= n3 <= 1.0:
        raise DomainError(f"n3 must lie in [-1, 1], got {n3}")
    return unit_vector([math.sqrt(1.0 - n3 * n3), 0.0, n3])


def stokes_matrix(n):
    """Single-analyzer efficiency matrix ``(I + n . sigma) / 2``."""
    return 0.5 * (qlinalg.I2 + sum(v * qlinalg.pauli(i + 1) for i, v in enumerate(n)))


@dataclass(frozen=True)
class AnalyzerI:
    n1: np.ndarray
    n2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n1", unit_vector(self.n1))
        object.__setattr__(self, "n2", unit_vector(self.n2))

    def efficiency(self):
        return qlinalg.kron(stokes_matrix(self.n1), stokes_matrix(self.n2))


@dataclass(frozen=True)
class AnalyzerII:
    """Two-photon analyzer; ``filter`` must describe a pure physical state."""

    filter: states.TwoPhotonParams

    def __post_init__(self):
        pur = states.purity(self.filter)
        if abs(pur) > PURE_TOL:
            raise DomainError(f"type II filter must be a pure state (purity {pur:.3g})")
        if not states.is_physical(self.filter):
            raise DomainError("type II filter parameters are not a physical state")

    def efficiency(self):
        return states.build_density(self.filter)


@dataclass(frozen=True)
class AnalyzerIII:
    n: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", unit_vector(self.n))

    def efficiency(self):
        return qlinalg.kron(stokes_matrix(self.n), qlinalg.I2)


class Thermal(str, enum.Enum):
    COOLING = "cooling"
    HEATING = "heating"
    NEUTRAL = "neutral"


def thermal_verdict(delta):
    if delta < -THERMAL_TOL:
        return Thermal.COOLING
    if delta > THERMAL_TOL:
        return Thermal.HEATING
    return Thermal.NEUTRAL


@dataclass(frozen=True)
class MeasurementOutcome:
    """Result of a single-analyzer measurement on photon 1.

    ``delta_vs_single`` compares the post-measurement entropy of photon 2 with
    its entropy before the measurement.
    """

    probability: float
    post_state_2: np.ndarray
    post_entropy_2: float
    delta_vs_single: float
    thermal: Thermal


def _require_physical(p):
    lam = states.spectrum(p)
    if lam[-1] < -qlinalg.CLAMP_TOL:
        raise DomainError(f"state is unphysical (eigenvalue {lam[-1]:.3g})")
    return states.build_density(p)


def _trace_prob(eps, rho):
    return float(np.trace(eps @ rho).real)


def prob_type_I(p, a):
    """Probability that both analyzers of ``a`` transmit."""
    w = _trace_prob(a.efficiency(), _require_physical(p))
    if w >= 1.0 - 1e-12:
        log.info("type I probability reached the boundary value %.15g", w)
    return w


def prob_type_I_formula(p, a):
    return 0.25 * (1.0 + a.n1 @ p.xi1 + a.n2 @ p.xi2 + a.n1 @ p.zeta @ a.n2)


def prob_type_II(p, a):
    """Probability that the two-photon filter ``a`` transmits."""
    return _trace_prob(a.efficiency(), _require_physical(p))


def prob_type_II_formula(p, a):
    f = a.filter
    return 0.25 * (1.0 + f.xi1 @ p.xi1 + f.xi2 @ p.xi2 + np.sum(f.zeta * p.zeta))


def post_stokes_formula(p, n):
    """Stokes vector of photon 2 conditioned on photon 1 passing analyzer ``n``."""
    denom = 1.0 + n @ p.xi1
    if denom <= DENOM_TOL:
        raise DegenerateMeasurementError(
            f"1 + n.xi1 = {denom:.3g}: photon 1 is pure and antipodal to the analyzer"
        )
    return (p.xi2 + n @ p.zeta) / denom


def conditional_matrix(p, a):
    """Unnormalised reduced matrix ``Tr_1(eps_III rho)`` of photon 2."""
    return qlinalg.partial_trace(a.efficiency() @ states.build_density(p), 1)


def reduce_type_III(p, a):
    """Measure photon 1 with analyzer ``a`` and describe what is left of photon 2.

    Raises:
        DomainError: if ``p`` is unphysical.
        DegenerateMeasurementError: if the outcome has vanishing probability.
    """
    rho = _require_physical(p)
    xi_post = post_stokes_formula(p, a.n)
    prob = _trace_prob(a.efficiency(), rho)
    mag = float(np.linalg.norm(xi_post))
    if mag > 1.0 + 1e-9:
        raise DomainError(f"post-measurement Stokes magnitude {mag:.12g} exceeds 1")
    s_post = single_photon_entropy(min(mag, 1.0))
    s_before = single_photon_entropy(min(float(np.linalg.norm(p.xi2)), 1.0))
    delta = s_post - s_before
    return MeasurementOutcome(prob, xi_post, s_post, delta, thermal_verdict(delta))


def magnitude_five(s, n):
    """Post-measurement Stokes magnitude of photon 2 for a five-parameter state."""
    n = np.asarray(n, dtype=float)
    denom = 1.0 + n[2] * s.xi3_1
    if denom <= DENOM_TOL:
        raise DegenerateMeasurementError(f"1 + n3 xi3_1 = {denom:.3g}")
    num = math.sqrt(
        (n[0] * s.z11) ** 2 + (n[1] * s.z22) ** 2 + (s.xi3_2 + n[2] * s.z33) ** 2
    )
    return num / denom


def post_measurement_entropy(s, n):
    mag = magnitude_five(s, n)
    if mag > 1.0 + 1e-9:
        raise DomainError(f"post-measurement Stokes magnitude {mag:.12g} exceeds 1")
    return single_photon_entropy(min(mag, 1.0))
