"""Von Neumann, conditional and mutual entropies of two-photon states.

All entropies are in nats. ``0 ln 0`` is taken as zero through an explicit
branch at arguments below ``ZERO_TOL``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from twophoton import qlinalg, states
from twophoton.errors import DomainError

LN2 = math.log(2.0)
S_MAX = 2.0 * LN2
ZERO_TOL = 1e-15
# Conditional entropies within this band of zero classify as a boundary.
CLASSIFY_TOL = 1e-9
_RANGE_TOL = 1e-9


def xlogx(x):
    """``x ln x`` with ``0 ln 0 = 0``."""
    if x <= ZERO_TOL:
        return 0.0
    return x * math.log(x)


def _unit_interval(x, what):
    if not -_RANGE_TOL <= x <= 1.0 + _RANGE_TOL:
        raise DomainError(f"{what} must lie in [0, 1], got {x}")
    return min(max(x, 0.0), 1.0)


def single_photon_entropy(xi_mag):
    """Entropy of one photon whose Stokes vector has magnitude ``xi_mag``.

    Decreases monotonically from ``ln 2`` (unpolarized) to 0 (pure).
    """
    xi = _unit_interval(xi_mag, "Stokes magnitude")
    return LN2 - 0.5 * (xlogx(1.0 - xi) + xlogx(1.0 + xi))


def binary_entropy(x):
    x = _unit_interval(x, "binary entropy argument")
    return -xlogx(x) - xlogx(1.0 - x)


def entropy_from_spectrum(lams):
    """``-sum l ln l`` over a four-element spectrum.

    Entries in ``[-1e-10, 0)`` are clamped to zero.

    Raises:
        DomainError: if an entry is below -1e-10 or above 1, or the entries
            do not sum to one within 1e-9.
    """
    lams = np.asarray(lams, dtype=float)
    if lams.shape != (4,):
        raise DomainError(f"expected four eigenvalues, got shape {lams.shape}")
    if np.any(lams < -qlinalg.CLAMP_TOL) or np.any(lams > 1.0 + _RANGE_TOL):
        raise DomainError(f"eigenvalues outside [-1e-10, 1]: {lams}")
    if abs(lams.sum() - 1.0) > 1e-9:
        raise DomainError(f"eigenvalues sum to {lams.sum():.12g}, not 1")
    return -sum(xlogx(max(v, 0.0)) for v in lams)


def joint_entropy(p):
    """Entropy of the full two-photon state from its numeric spectrum."""
    return entropy_from_spectrum(states.spectrum(p))


def entropy_five_closed(s):
    """Closed-form joint entropy of a five-parameter state.

    With ``a = 1 + nu z33 +/- x_nu`` the spectrum is ``a / 4``, so the entropy
    is ``2 ln 2 - (1/4) sum a ln a``.
    """
    lam = s.eigenvalues()
    if lam[-1] < -1e-12:
        raise DomainError(f"five-parameter state has a negative eigenvalue {lam[-1]:.3g}")
    total = 0.0
    for nu in (1.0, -1.0):
        base = 1.0 + nu * s.z33
        x = s.x(nu)
        total += xlogx(base + x) + xlogx(base - x)
    return S_MAX - 0.25 * total


def entropy_model_a(zeta, zeta33):
    states.model_a(zeta, zeta33)
    b = 1.0 + zeta33
    return (
        S_MAX
        - 0.5 * xlogx(1.0 - zeta33)
        - 0.25 * (xlogx(b + 2.0 * zeta) + xlogx(b - 2.0 * zeta))
    )


def entropy_model_b(xi3_1, xi3_2):
    """Depends on the two Stokes parameters only through their sum."""
    states.model_b(xi3_1, xi3_2)
    return binary_entropy((xi3_1 + xi3_2) / 2.0)


def entropy_model_c(xi, zeta):
    states.model_c(xi, zeta)
    x_plus = 2.0 * math.hypot(xi, zeta)
    return S_MAX - 0.25 * (xlogx(2.0 + x_plus) + xlogx(2.0 - x_plus))


class Classification(str, enum.Enum):
    EXOTIC = "exotic"
    NON_EXOTIC = "non_exotic"
    BOUNDARY = "boundary"


def classify(s_cond_1g2, s_cond_2g1):
    """Exotic when either conditional entropy is negative beyond 1e-9."""
    m = min(s_cond_1g2, s_cond_2g1)
    if m < -CLASSIFY_TOL:
        return Classification.EXOTIC
    if m <= CLASSIFY_TOL:
        return Classification.BOUNDARY
    return Classification.NON_EXOTIC


@dataclass(frozen=True)
class EntropyReport:
    s_joint: float
    s1: float
    s2: float
    s_cond_1g2: float
    s_cond_2g1: float
    mutual: float
    classification: Classification

    def araki_lieb_ok(self, tol=1e-9):
        return abs(self.s1 - self.s2) - tol <= self.s_joint <= self.s1 + self.s2 + tol


def entropy_report(p):
    """Joint, single-photon, conditional and mutual entropies of ``p``.

    Raises:
        DomainError: if the state has a negative eigenvalue.
    """
    lam = states.spectrum(p)
    if lam[-1] < -qlinalg.CLAMP_TOL:
        raise DomainError(f"state is unphysical (eigenvalue {lam[-1]:.3g})")
    s = entropy_from_spectrum(lam)
    s1 = single_photon_entropy(float(np.linalg.norm(p.xi1)))
    s2 = single_photon_entropy(float(np.linalg.norm(p.xi2)))
    c12 = s - s2
    c21 = s - s1
    return EntropyReport(
        s_joint=s,
        s1=s1,
        s2=s2,
        s_cond_1g2=c12,
        s_cond_2g1=c21,
        mutual=s1 + s2 - s,
        classification=classify(c12, c21),
    )
