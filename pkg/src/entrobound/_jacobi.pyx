# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi sweep for complex Hermitian matrices.

Mirrors ``_jacobi_py.jacobi_eigh`` rotation for rotation; see that module
for the rotation formulas.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


cdef double _offdiag(double complex[:, ::1] a, Py_ssize_t n) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    cdef double complex z
    for i in range(n):
        for j in range(n):
            if i != j:
                z = a[i, j]
                s += z.real * z.real + z.imag * z.imag
    return sqrt(s)


def jacobi_eigh(a_in, double tol, long max_rotations):
    """Return ``(eigenvalues, eigenvectors, rotations, off_norm)``; unsorted."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a_arr = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef double complex apq, ph, cph, x, y
    cdef double r, tau, t, c, s, app, aqq, fro, off
    cdef long rotations = 0

    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
    fro = sqrt(fro)
    off = _offdiag(a, n)
    with nogil:
        while off > tol * fro:
            if rotations >= max_rotations:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                    if r <= 1e-300:
                        continue
                    ph = apq / r
                    cph = ph.conjugate()
                    app = a[p, p].real
                    aqq = a[q, q].real
                    tau = (aqq - app) / (2.0 * r)
                    if fabs(tau) > 1e150:
                        t = 0.5 / tau
                    elif tau >= 0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    # columns: A <- A U
                    for k in range(n):
                        x = a[k, p]
                        y = a[k, q]
                        a[k, p] = c * x - s * cph * y
                        a[k, q] = s * ph * x + c * y
                    # rows: A <- U^H A
                    for k in range(n):
                        x = a[p, k]
                        y = a[q, k]
                        a[p, k] = c * x - s * ph * y
                        a[q, k] = s * cph * x + c * y
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real
                    for k in range(n):
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - s * cph * y
                        v[k, q] = s * ph * x + c * y
                    rotations += 1
            off = _offdiag(a, n)
    w = np.real(np.diagonal(a_arr)).copy()
    return w, v_arr, rotations, off
