"""Pure-Python cyclic Jacobi eigenvalue kernel for 4x4 Hermitian matrices.

Fallback for the compiled ``_jacobi`` extension; both expose the same two
functions and must agree to round-off.
"""

import math

import numpy as np

MAX_SWEEPS = 50
# Relative off-diagonal threshold at which iteration stops.
REL_TOL = 1e-17


def _eig4(a):
    """Diagonalise ``a`` (list of 4 lists of complex) in place; return diag."""
    frob2 = 0.0
    for i in range(4):
        for j in range(4):
            v = a[i][j]
            frob2 += v.real * v.real + v.imag * v.imag
    stop = (REL_TOL * REL_TOL) * frob2

    for _ in range(MAX_SWEEPS):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 4):
                v = a[p][q]
                off += v.real * v.real + v.imag * v.imag
        if off <= stop or off == 0.0:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                apq = a[p][q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                g = apq / mag
                gc = g.conjugate()
                theta = (a[q][q].real - a[p][p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                a[p][p] = complex(a[p][p].real - t * mag, 0.0)
                a[q][q] = complex(a[q][q].real + t * mag, 0.0)
                a[p][q] = 0j
                a[q][p] = 0j
                for r in range(4):
                    if r == p or r == q:
                        continue
                    arp = a[r][p]
                    arq = a[r][q] * gc
                    nrp = c * arp - s * arq
                    nrq = c * arq + s * arp
                    a[r][p] = nrp
                    a[r][q] = nrq
                    a[p][r] = nrp.conjugate()
                    a[q][r] = nrq.conjugate()
    return [a[i][i].real for i in range(4)]


def eigvalsh4(m):
    """Eigenvalues (unsorted) of one Hermitian 4x4 matrix.

    The input is symmetrised as ``(m + m^H) / 2`` before iterating.
    """
    m = np.asarray(m, dtype=np.complex128)
    h = 0.5 * (m + m.conj().T)
    a = [[complex(h[i, j]) for j in range(4)] for i in range(4)]
    return np.array(_eig4(a))


def eigvalsh4_batch(ms):
    """Eigenvalues (unsorted) for a stack of shape ``(n, 4, 4)``."""
    ms = np.asarray(ms, dtype=np.complex128)
    out = np.empty((ms.shape[0], 4))
    for k in range(ms.shape[0]):
        out[k] = eigvalsh4(ms[k])
    return out
