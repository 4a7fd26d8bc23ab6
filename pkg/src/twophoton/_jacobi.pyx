# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigenvalue kernel for 4x4 Hermitian matrices.

Same contract as ``twophoton._jacobi_py``; matrices are stored as separate
real and imaginary 4x4 blocks.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef int MAX_SWEEPS = 50
cdef double REL_TOL = 1e-17


cdef void _eig4(double re[4][4], double im[4][4], double* out) noexcept nogil:
    cdef int i, j, p, q, r, sweep
    cdef double frob2 = 0.0, stop, off
    cdef double mag, gr, gi, theta, t, c, s
    cdef double rp_r, rp_i, rq_r, rq_i, tr, ti, nrp_r, nrp_i, nrq_r, nrq_i

    for i in range(4):
        for j in range(4):
            frob2 += re[i][j] * re[i][j] + im[i][j] * im[i][j]
    stop = REL_TOL * REL_TOL * frob2

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 4):
                off += re[p][q] * re[p][q] + im[p][q] * im[p][q]
        if off <= stop or off == 0.0:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                mag = sqrt(re[p][q] * re[p][q] + im[p][q] * im[p][q])
                if mag < 1e-300:
                    continue
                gr = re[p][q] / mag
                gi = im[p][q] / mag
                theta = (re[q][q] - re[p][p]) / (2.0 * mag)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                re[p][p] -= t * mag
                re[q][q] += t * mag
                im[p][p] = 0.0
                im[q][q] = 0.0
                re[p][q] = 0.0
                im[p][q] = 0.0
                re[q][p] = 0.0
                im[q][p] = 0.0
                for r in range(4):
                    if r == p or r == q:
                        continue
                    rp_r = re[r][p]
                    rp_i = im[r][p]
                    # a[r][q] * conj(g)
                    tr = re[r][q]
                    ti = im[r][q]
                    rq_r = tr * gr + ti * gi
                    rq_i = ti * gr - tr * gi
                    nrp_r = c * rp_r - s * rq_r
                    nrp_i = c * rp_i - s * rq_i
                    nrq_r = c * rq_r + s * rp_r
                    nrq_i = c * rq_i + s * rp_i
                    re[r][p] = nrp_r
                    im[r][p] = nrp_i
                    re[r][q] = nrq_r
                    im[r][q] = nrq_i
                    re[p][r] = nrp_r
                    im[p][r] = -nrp_i
                    re[q][r] = nrq_r
                    im[q][r] = -nrq_i
    for i in range(4):
        out[i] = re[i][i]


cdef void _load(const double complex[:, :] m, double re[4][4], double im[4][4]) noexcept nogil:
    cdef int i, j
    for i in range(4):
        for j in range(4):
            re[i][j] = 0.5 * (m[i, j].real + m[j, i].real)
            im[i][j] = 0.5 * (m[i, j].imag - m[j, i].imag)


def eigvalsh4(m):
    """Eigenvalues (unsorted) of one Hermitian 4x4 matrix."""
    cdef const double complex[:, :] mv = np.ascontiguousarray(m, dtype=np.complex128)
    if mv.shape[0] != 4 or mv.shape[1] != 4:
        raise ValueError("expected a 4x4 matrix")
    cdef double re[4][4]
    cdef double im[4][4]
    out = np.empty(4)
    cdef double[::1] ov = out
    _load(mv, re, im)
    _eig4(re, im, &ov[0])
    return out


def eigvalsh4_batch(ms):
    """Eigenvalues (unsorted) for a stack of shape ``(n, 4, 4)``."""
    cdef const double complex[:, :, :] mv = np.ascontiguousarray(ms, dtype=np.complex128)
    if mv.shape[1] != 4 or mv.shape[2] != 4:
        raise ValueError("expected an (n, 4, 4) stack")
    cdef Py_ssize_t n = mv.shape[0], k
    out = np.empty((n, 4))
    cdef double[:, ::1] ov = out
    cdef double re[4][4]
    cdef double im[4][4]
    with nogil:
        for k in range(n):
            _load(mv[k], re, im)
            _eig4(re, im, &ov[k, 0])
    return out
