"""Random state generators shared by the tests.

Validity here is decided with ``numpy.linalg.eigvalsh``, independently of the
package's own Jacobi solver.
"""

import numpy as np

from twophoton import states

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def random_density(rng, rank=None):
    """Ginibre-distributed 4x4 density matrix of the given (or random) rank."""
    if rank is None:
        rank = int(rng.integers(1, 5))
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def params_from_rho(rho):
    """Parameters via explicit traces, without going through the package."""
    i2 = np.eye(2)
    xi1 = [np.trace(rho @ np.kron(s, i2)).real for s in PAULI]
    xi2 = [np.trace(rho @ np.kron(i2, s)).real for s in PAULI]
    zeta = [[np.trace(rho @ np.kron(a, b)).real for b in PAULI] for a in PAULI]
    return states.TwoPhotonParams(xi1, xi2, zeta)


def random_params(rng, n):
    return [params_from_rho(random_density(rng)) for _ in range(n)]


_FIVE_OPS = np.array(
    [
        np.kron(PAULI[2], np.eye(2)),
        np.kron(np.eye(2), PAULI[2]),
        np.kron(PAULI[0], PAULI[0]),
        np.kron(PAULI[1], PAULI[1]),
        np.kron(PAULI[2], PAULI[2]),
    ]
)


def _five_matrices(rows):
    return 0.25 * (np.eye(4) + np.einsum("nk,kij->nij", rows, _FIVE_OPS))


def random_five(rng, n, boundary_fraction=0.1):
    """Valid five-parameter states: box rejection sampling plus model slices.

    A share of the samples comes from models A, B and C so that rank-deficient
    spectra (exact zero eigenvalues) are well represented.
    """
    out = []
    n_boundary = int(n * boundary_fraction)
    while len(out) < n - n_boundary:
        box = rng.uniform(-1, 1, size=(4096, 5))
        mats = _five_matrices(box)
        ok = np.linalg.eigvalsh(mats)[:, 0] >= 0.0
        for row in box[ok][: n - n_boundary - len(out)]:
            out.append(states.FiveParamState(*map(float, row)))
    for k in range(n_boundary):
        kind = k % 3
        if kind == 0:
            z33 = rng.uniform(-1, 1)
            out.append(states.model_a(rng.uniform(-1, 1) * (1 + z33) / 2, z33))
        elif kind == 1:
            out.append(states.model_b(rng.uniform(0, 1), rng.uniform(0, 1)))
        else:
            xi = rng.uniform(0, 1)
            zmax = np.sqrt(max(1 - xi * xi, 0.0))
            out.append(states.model_c(xi, rng.uniform(-1, 1) * zmax))
    return out


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_params_batch(rng, n):
    """Many Ginibre states at once; parameters taken by explicit traces."""
    ranks = rng.integers(1, 5, size=n)
    g = rng.normal(size=(n, 4, 4)) + 1j * rng.normal(size=(n, 4, 4))
    g[np.arange(4)[None, :] >= ranks[:, None]] = 0.0  # zero the unused columns
    g = np.swapaxes(g, 1, 2)
    rho = g @ np.conj(np.swapaxes(g, 1, 2))
    rho /= np.trace(rho, axis1=1, axis2=2).real[:, None, None]
    i2 = np.eye(2)
    basis = [i2, *PAULI]
    ops = np.array([[np.kron(a, b) for b in basis] for a in basis])
    t = np.einsum("nij,abji->nab", rho, ops).real
    return [states.TwoPhotonParams(row[1:, 0], row[0, 1:], row[1:, 1:]) for row in t]
