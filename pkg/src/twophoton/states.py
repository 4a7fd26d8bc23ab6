"""Two-photon polarization states.

A general state is fixed by 15 real numbers: the Stokes vectors ``xi1`` and
``xi2`` of the two photons and the 3x3 correlation matrix ``zeta``::

    rho = 1/4 (I x I + xi1 . sigma x I + I x xi2 . sigma
               + sum_ij zeta_ij sigma_i x sigma_j)

The five-parameter family keeps only ``xi1[2]``, ``xi2[2]`` and the diagonal
of ``zeta``. Its spectrum is available in closed form, which makes it the
workhorse for the entropy and measurement studies; models A, B and C are
one- and two-parameter slices of it.

Physicality is decided by the spectrum of the built matrix. The scalar
inequalities on the parameters are necessary conditions only and are
reported as named diagnostics by :func:`validate`.
"""

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from twophoton import qlinalg
from twophoton.errors import DomainError, StateFileError

log = logging.getLogger(__name__)

# Slack on inequality boundaries, so exact boundary states validate cleanly.
BOUND_TOL = 1e-9
SPECTRUM_TOL = qlinalg.CLAMP_TOL

# sigma_0 = I followed by the three Pauli matrices.
_SIGMA = np.stack([qlinalg.I2] + [qlinalg.pauli(i) for i in (1, 2, 3)])
# _BASIS[a, b] = sigma_a (x) sigma_b
_BASIS = np.einsum("art,bsu->abrstu", _SIGMA, _SIGMA).reshape(4, 4, 4, 4)


@dataclass(frozen=True, eq=False)
class TwoPhotonParams:
    """The 15 real parameters of a two-photon polarization state.

    Arrays are copied and frozen on construction. Stokes vectors must have
    magnitude at most one and every ``zeta_ij`` must satisfy
    ``|zeta_ij| <= 2``; joint physicality is checked by :func:`validate`.
    """

    xi1: np.ndarray
    xi2: np.ndarray
    zeta: np.ndarray

    def __post_init__(self):
        xi1 = _frozen(self.xi1, (3,), "xi1")
        xi2 = _frozen(self.xi2, (3,), "xi2")
        zeta = _frozen(self.zeta, (3, 3), "zeta")
        for name, v in (("xi1", xi1), ("xi2", xi2)):
            if np.linalg.norm(v) > 1.0 + BOUND_TOL:
                raise DomainError(f"|{name}| = {np.linalg.norm(v):.6g} exceeds 1")
        if np.max(np.abs(zeta)) > 2.0:
            raise DomainError("correlation entries must satisfy |zeta_ij| <= 2")
        object.__setattr__(self, "xi1", xi1)
        object.__setattr__(self, "xi2", xi2)
        object.__setattr__(self, "zeta", zeta)

    @classmethod
    def zeros(cls):
        """The completely unpolarized, uncorrelated state."""
        return cls(np.zeros(3), np.zeros(3), np.zeros((3, 3)))

    @classmethod
    def product(cls, xi1, xi2):
        """Uncorrelated state with ``zeta_ij = xi1_i * xi2_j``."""
        xi1 = np.asarray(xi1, dtype=float)
        xi2 = np.asarray(xi2, dtype=float)
        return cls(xi1, xi2, np.outer(xi1, xi2))

    @classmethod
    def from_density(cls, rho):
        """Read the parameters off a 4x4 density matrix (``Tr rho = 1``)."""
        t = correlation_tensor_of(rho)
        return cls(t[1:, 0], t[0, 1:], t[1:, 1:])

    @classmethod
    def from_dict(cls, d):
        keys = set(d)
        expected = {"xi1", "xi2", "zeta"}
        if keys != expected:
            extra = sorted(keys - expected)
            missing = sorted(expected - keys)
            raise StateFileError(f"state keys mismatch: unknown {extra}, missing {missing}")
        return cls(d["xi1"], d["xi2"], d["zeta"])

    def to_dict(self):
        return {
            "xi1": self.xi1.tolist(),
            "xi2": self.xi2.tolist(),
            "zeta": self.zeta.tolist(),
        }

    def tensor(self):
        """4x4 real array ``T`` with ``rho = 1/4 sum_ab T_ab sigma_a x sigma_b``."""
        t = np.empty((4, 4))
        t[0, 0] = 1.0
        t[1:, 0] = self.xi1
        t[0, 1:] = self.xi2
        t[1:, 1:] = self.zeta
        return t

    def is_five_param(self):
        """True when only ``xi1[2]``, ``xi2[2]`` and diag(zeta) are non-zero."""
        off = self.zeta - np.diag(np.diag(self.zeta))
        return not (self.xi1[:2].any() or self.xi2[:2].any() or off.any())

    def to_five(self):
        if not self.is_five_param():
            raise DomainError("state is not in the five-parameter family")
        z = np.diag(self.zeta)
        return FiveParamState(self.xi1[2], self.xi2[2], z[0], z[1], z[2])

    def __eq__(self, other):
        if not isinstance(other, TwoPhotonParams):
            return NotImplemented
        return (
            np.array_equal(self.xi1, other.xi1)
            and np.array_equal(self.xi2, other.xi2)
            and np.array_equal(self.zeta, other.zeta)
        )

    __hash__ = None


def _frozen(v, shape, name):
    try:
        a = np.array(v, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name}: not an array of real numbers") from exc
    if a.shape != shape:
        raise DomainError(f"{name}: expected shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name}: non-finite entries")
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class FiveParamState:
    """Parameters ``(xi3_1, xi3_2, z11, z22, z33)`` of the five-parameter family.

    The container itself accepts any real numbers; use :func:`validate` or the
    ``model_*`` constructors for checked states.
    """

    xi3_1: float
    xi3_2: float
    z11: float
    z22: float
    z33: float

    def x(self, sign):
        """``x_nu`` for ``sign = +1`` or ``-1``."""
        return math.hypot(self.xi3_1 + sign * self.xi3_2, self.z11 - sign * self.z22)

    @property
    def x_plus(self):
        return self.x(+1)

    @property
    def x_minus(self):
        return self.x(-1)

    @property
    def q(self):
        return self.xi3_1 * self.xi3_2 - self.z33 - self.z11 * self.z22

    @property
    def purity(self):
        return 3.0 - self.xi3_1**2 - self.xi3_2**2 - self.z11**2 - self.z22**2 - self.z33**2

    def eigenvalues(self):
        """Closed-form spectrum, sorted descending (not clamped)."""
        xp, xm = self.x_plus, self.x_minus
        lam = [
            (1 + self.z33 + xp) / 4,
            (1 + self.z33 - xp) / 4,
            (1 - self.z33 + xm) / 4,
            (1 - self.z33 - xm) / 4,
        ]
        return np.array(sorted(lam, reverse=True))

    def to_params(self):
        return embed_five(self)


def embed_five(s):
    """Embed a five-parameter state into the full 15-parameter description."""
    return TwoPhotonParams(
        [0.0, 0.0, s.xi3_1],
        [0.0, 0.0, s.xi3_2],
        np.diag([s.z11, s.z22, s.z33]),
    )


def model_a(zeta, zeta33):
    """Pure two-photon correlations: ``z11 = -z22 = zeta``, unpolarized photons.

    Requires ``-1 <= zeta33 <= 1`` and ``|zeta| <= (1 + zeta33) / 2``.
    """
    if not -1.0 - BOUND_TOL <= zeta33 <= 1.0 + BOUND_TOL:
        raise DomainError(f"model A needs -1 <= zeta33 <= 1, got {zeta33}")
    bound = (1.0 + zeta33) / 2.0
    if abs(zeta) > bound + BOUND_TOL:
        raise DomainError(f"model A needs |zeta| <= (1 + zeta33)/2 = {bound:.6g}, got {zeta}")
    return FiveParamState(0.0, 0.0, float(zeta), -float(zeta), float(zeta33))


def model_b(xi3_1, xi3_2):
    """Two zero eigenvalues: correlations fixed by the two Stokes parameters."""
    for name, v in (("xi3_1", xi3_1), ("xi3_2", xi3_2)):
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"model B needs 0 <= {name} <= 1, got {v}")
    z = math.sqrt((1.0 - xi3_1) * (1.0 - xi3_2))
    return FiveParamState(float(xi3_1), float(xi3_2), z, z, xi3_1 + xi3_2 - 1.0)


def model_c(xi, zeta):
    """Equal Stokes parameters ``xi``, ``z11 = -z22 = zeta`` and ``z33 = 1``.

    Requires ``0 <= xi <= 1`` and ``x_plus = 2 sqrt(xi^2 + zeta^2) <= 2``.
    """
    if not 0.0 <= xi <= 1.0:
        raise DomainError(f"model C needs 0 <= xi <= 1, got {xi}")
    x_plus = 2.0 * math.hypot(xi, zeta)
    if x_plus > 2.0 + BOUND_TOL:
        raise DomainError(f"model C needs 2 sqrt(xi^2 + zeta^2) <= 2, got {x_plus:.6g}")
    return FiveParamState(float(xi), float(xi), float(zeta), -float(zeta), 1.0)


def correlation_tensor_of(rho):
    """``T_ab = Tr(rho sigma_a x sigma_b)``; works on single or stacked matrices."""
    rho = np.asarray(rho, dtype=np.complex128)
    return np.einsum("abij,...ji->...ab", _BASIS, rho).real


def density_from_tensor(t):
    """Inverse of :func:`correlation_tensor_of`; accepts ``(..., 4, 4)`` tensors."""
    return 0.25 * np.einsum("...ab,abij->...ij", np.asarray(t, dtype=float), _BASIS)


def build_density(p):
    """4x4 density matrix of a 15-parameter state (no validation)."""
    return density_from_tensor(p.tensor())


def spectrum(p):
    """Descending eigenvalues of the built density matrix."""
    return qlinalg.eig_hermitian4(build_density(p))


def is_physical(p):
    return bool(spectrum(p)[-1] >= -SPECTRUM_TOL)


def reduced_stokes(p, which):
    """Stokes vector of photon ``which``; equals the partial-trace Stokes vector."""
    if which == 1:
        return p.xi1.copy()
    if which == 2:
        return p.xi2.copy()
    raise DomainError(f"photon index must be 1 or 2, got {which!r}")


def reduced_density(p, which):
    """2x2 Stokes matrix ``(I + xi . sigma) / 2`` of one photon."""
    xi = reduced_stokes(p, which)
    return 0.5 * np.einsum("a,aij->ij", np.r_[1.0, xi], _SIGMA)


def purity(p):
    """Distance from a pure state: ``3 - |xi1|^2 - |xi2|^2 - sum zeta_ij^2``.

    Zero exactly for pure states, three for the completely unpolarized one.
    """
    return 3.0 - p.xi1 @ p.xi1 - p.xi2 @ p.xi2 - np.sum(p.zeta**2)


def quartic_coefficients(p):
    """Coefficients ``(c2, c1, c0)`` of ``l^4 - l^3 + c2 l^2 - c1 l + c0``.

    ``c0`` is the determinant of the built matrix; the other two come from
    the parameters directly, so comparing against the elementary symmetric
    polynomials of the numeric spectrum is a genuine cross-check.
    """
    pur = purity(p)
    c2 = pur / 8.0
    c1 = (pur - 2.0 * (1.0 - p.xi1 @ p.zeta @ p.xi2 + np.linalg.det(p.zeta))) / 16.0
    c0 = qlinalg.det(build_density(p)).real
    return c2, c1, c0


def is_product_correlation(p, tol=1e-12):
    """True when ``zeta_ij = xi1_i xi2_j`` for all ``i, j`` within ``tol``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    return bool(np.max(np.abs(p.zeta - np.outer(p.xi1, p.xi2))) <= tol)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Check:
    name: str
    lower: float | None
    upper: float | None
    observed: float
    passed: bool

    def line(self):
        lo = "-inf" if self.lower is None else f"{self.lower:.9g}"
        hi = "+inf" if self.upper is None else f"{self.upper:.9g}"
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name:<24} [{lo}, {hi}]  observed {self.observed:.9g}  {verdict}"


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`.

    ``physical`` follows the spectrum alone; ``checks`` holds every named
    diagnostic, and ``findings`` records disagreements between the scalar
    sufficient conditions and the spectrum.
    """

    checks: list[Check]
    spectrum: np.ndarray
    findings: list[str] = field(default_factory=list)

    @property
    def physical(self):
        return self.check("spectrum_nonnegative").passed

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def names(self):
        return [c.name for c in self.checks]


def _window(name, lo, hi, x):
    ok = (lo is None or x >= lo - BOUND_TOL) and (hi is None or x <= hi + BOUND_TOL)
    return Check(name, lo, hi, float(x), bool(ok))


def validate(p):
    """Run every physicality diagnostic on ``p``; failures are reported, not raised."""
    checks = []
    for i in range(3):
        for j in range(3):
            a, b = p.xi1[i], p.xi2[j]
            checks.append(
                _window(f"pair_bound[{i + 1},{j + 1}]", abs(a + b) - 1, abs(a - b) + 1, p.zeta[i, j])
            )
    total = p.xi1 @ p.xi1 + p.xi2 @ p.xi2 + np.sum(p.zeta**2)
    checks.append(_window("norm_budget", None, 3.0, total))

    lam = spectrum(p)
    checks.append(
        Check("spectrum_nonnegative", -SPECTRUM_TOL, None, float(lam[-1]), bool(lam[-1] >= -SPECTRUM_TOL))
    )

    findings = []
    if p.is_five_param():
        s = p.to_five()
        checks.extend(_five_checks(s))
        checks.extend(_model_checks(s))
        sufficient = all(c.passed for c in checks if c.name in ("purity_floor", "q_window"))
        physical = lam[-1] >= -SPECTRUM_TOL
        if physical and not sufficient:
            findings.append(
                "purity_floor/q_window fail on a state with non-negative spectrum "
                f"(p={s.purity:.9g}, q={s.q:.9g}, z33={s.z33:.9g})"
            )
        elif not physical and sufficient:
            findings.append("purity_floor/q_window pass but the spectrum has a negative eigenvalue")
        for f in findings:
            log.info("validation finding: %s", f)
    return ValidationReport(checks, lam, findings)


def _five_checks(s):
    half_p = s.purity / 2.0 + s.z33**2
    return [
        _window("zeta11_range", -1.0, 1.0, s.z11),
        _window("zeta22_range", -1.0, 1.0, s.z22),
        _window("zeta33_window", abs(s.xi3_1 + s.xi3_2) - 1, abs(s.xi3_1 - s.xi3_2) + 1, s.z33),
        _window("stokes3_1_range", -1.0, 1.0, s.xi3_1),
        _window("stokes3_2_range", -1.0, 1.0, s.xi3_2),
        _window(
            "five_norm_budget",
            None,
            3.0,
            s.xi3_1**2 + s.xi3_2**2 + s.z11**2 + s.z22**2 + s.z33**2,
        ),
        _window("zeta33_range", -1.0, 1.0, s.z33),
        _window("x_plus_window", -1.0 - s.z33, 1.0 + s.z33, s.x_plus),
        _window("x_minus_window", -1.0 + s.z33, 1.0 - s.z33, s.x_minus),
        _window("purity_floor", 1.0, None, half_p),
        _window("q_window", None, half_p - 1.0, abs(s.q)),
    ]


def _model_checks(s):
    out = []
    if s.xi3_1 == 0.0 and s.xi3_2 == 0.0 and s.z11 == -s.z22:
        out.append(_window("model_a_zeta33_range", -1.0, 1.0, s.z33))
        bound = (1.0 + s.z33) / 2.0
        out.append(_window("model_a_zeta_bound", -bound, bound, s.z11))
    if s.xi3_1 == s.xi3_2 and s.z11 == -s.z22 and s.z33 == 1.0:
        out.append(_window("model_c_xi_range", 0.0, 1.0, s.xi3_1))
        out.append(_window("model_c_x_plus_bound", None, 2.0, s.x_plus))
    return out


# --------------------------------------------------------------------------
# state files


def loads_state(text):
    """Parse the state JSON format into :class:`TwoPhotonParams`."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise StateFileError("state must be a JSON object")
    try:
        return TwoPhotonParams.from_dict(d)
    except DomainError as exc:
        if "expected shape" in str(exc) or "not an array" in str(exc) or "non-finite" in str(exc):
            raise StateFileError(str(exc)) from exc
        raise


def load_state(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    return loads_state(text)


def dumps_state(p):
    return json.dumps(p.to_dict()) + "\n"
