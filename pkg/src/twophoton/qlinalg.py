"""Exact-size complex linear algebra for one- and two-photon polarization.

Matrices are plain ``numpy`` complex arrays: 2x2 for a single photon and 4x4
for the pair. Photon 1 is the slow (block) index of a 4x4 matrix, so
``kron(a, b)`` places ``a`` on photon 1 and ``b`` on photon 2.

The Hermitian eigenvalue solver is a cyclic Jacobi iteration. A compiled
kernel is used when available; otherwise a pure-Python kernel with the same
contract is selected at import. ``BACKEND`` names the active one.
"""

import numpy as np

from twophoton.errors import DomainError, PreconditionError

try:
    from twophoton._jacobi import eigvalsh4 as _eigvalsh4
    from twophoton._jacobi import eigvalsh4_batch as _eigvalsh4_batch

    BACKEND = "cython"
except ImportError:  # pragma: no cover - exercised only without the extension
    from twophoton._jacobi_py import eigvalsh4 as _eigvalsh4
    from twophoton._jacobi_py import eigvalsh4_batch as _eigvalsh4_batch

    BACKEND = "python"

HERMITIAN_TOL = 1e-12
# Eigenvalues in [-CLAMP_TOL, 0) are treated as round-off and set to 0.
CLAMP_TOL = 1e-10

I2 = np.eye(2, dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)
for _m in _PAULI:
    _m.flags.writeable = False
I2.flags.writeable = False
I4.flags.writeable = False


def pauli(i):
    """Return the Pauli matrix sigma_i for ``i`` in 1..3 (sigma_3 diagonal)."""
    if i not in (1, 2, 3):
        raise DomainError(f"Pauli index must be 1, 2 or 3, got {i!r}")
    return _PAULI[i - 1].copy()


def kron(a, b):
    """Kronecker product with ``(kron(a, b))[2r+s, 2t+u] = a[r, t] * b[s, u]``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return np.einsum("rt,su->rstu", a, b).reshape(4, 4)


def trace(m):
    return complex(np.trace(m))


def partial_trace(m, which):
    """Trace out photon ``which`` (1 or 2) of a 4x4 matrix.

    Returns the 2x2 matrix of the remaining photon.
    """
    t = np.asarray(m, dtype=np.complex128).reshape(2, 2, 2, 2)
    if which == 1:
        return np.einsum("rsru->su", t)
    if which == 2:
        return np.einsum("rsts->rt", t)
    raise DomainError(f"subsystem must be 1 or 2, got {which!r}")


def det(m):
    return complex(np.linalg.det(np.asarray(m, dtype=np.complex128)))


def stokes_vector(m2):
    """Stokes components ``Tr(m2 sigma_i) / Tr(m2)`` of a 2x2 matrix."""
    m2 = np.asarray(m2, dtype=np.complex128)
    norm = np.trace(m2).real
    return np.array([np.trace(m2 @ s).real for s in _PAULI]) / norm


def hermitian_defect(m):
    m = np.asarray(m, dtype=np.complex128)
    return float(np.max(np.abs(m - m.conj().T)))


def _finish(vals):
    vals = np.sort(vals)[..., ::-1].copy()
    vals[(vals < 0.0) & (vals >= -CLAMP_TOL)] = 0.0
    return vals


def eig_hermitian4(m):
    """Eigenvalues of a Hermitian 4x4 matrix, sorted descending.

    Values in ``[-1e-10, 0)`` are clamped to zero; anything more negative is
    returned unchanged so callers can flag an unphysical state.

    Raises:
        PreconditionError: if ``m`` is not 4x4 or not Hermitian to 1e-12.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (4, 4):
        raise PreconditionError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise PreconditionError("matrix has non-finite entries")
    defect = hermitian_defect(m)
    if defect > HERMITIAN_TOL:
        raise PreconditionError(f"matrix is not Hermitian (defect {defect:.3g})")
    return _finish(_eigvalsh4(m))


def eig_hermitian4_batch(ms):
    """Vectorised :func:`eig_hermitian4` over a stack of shape ``(n, 4, 4)``."""
    ms = np.asarray(ms, dtype=np.complex128)
    if ms.ndim != 3 or ms.shape[1:] != (4, 4):
        raise PreconditionError(f"expected an (n, 4, 4) stack, got {ms.shape}")
    defect = np.max(np.abs(ms - np.conj(np.swapaxes(ms, 1, 2))), initial=0.0)
    if defect > HERMITIAN_TOL:
        raise PreconditionError(f"stack is not Hermitian (defect {defect:.3g})")
    return _finish(_eigvalsh4_batch(ms))


def elementary_symmetric(vals):
    """``(e1, e2, e3, e4)`` of four numbers, for Vieta cross-checks."""
    l1, l2, l3, l4 = vals
    e1 = l1 + l2 + l3 + l4
    e2 = l1 * l2 + l1 * l3 + l1 * l4 + l2 * l3 + l2 * l4 + l3 * l4
    e3 = l1 * l2 * l3 + l1 * l2 * l4 + l1 * l3 * l4 + l2 * l3 * l4
    e4 = l1 * l2 * l3 * l4
    return e1, e2, e3, e4
