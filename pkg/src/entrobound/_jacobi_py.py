"""Pure numpy cyclic Jacobi sweep for complex Hermitian matrices.

Each rotation acts on the plane ``(p, q)`` with the unitary

    U = [[c, s e^{i phi}], [-s e^{-i phi}, c]],   a_pq = |a_pq| e^{i phi}

where ``t = tan(theta)`` is the smaller root of ``t^2 + 2 tau t - 1 = 0``,
``tau = (a_qq - a_pp) / (2 |a_pq|)``, ``c = 1/sqrt(1 + t^2)``, ``s = t c``.
``A <- U^H A U`` zeroes ``a_pq``. Sweeps visit ``p < q`` in row-major order.
"""

from __future__ import annotations

import math

import numpy as np


def _offdiag(a: np.ndarray) -> float:
    mask = ~np.eye(a.shape[0], dtype=bool)
    return math.sqrt(float(np.sum(np.abs(a[mask]) ** 2)))


def jacobi_eigh(a_in, tol: float, max_rotations: int):
    """Return ``(eigenvalues, eigenvectors, rotations, off_norm)``; unsorted."""
    a = np.array(a_in, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = float(np.linalg.norm(a))
    off = _offdiag(a)
    rotations = 0
    while off > tol * fro and rotations < max_rotations:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                ph = apq / r
                cph = ph.conjugate()
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                x, y = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * x - s * cph * y
                a[:, q] = s * ph * x + c * y
                x, y = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * x - s * ph * y
                a[q, :] = s * cph * x + c * y
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                x, y = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * x - s * cph * y
                v[:, q] = s * ph * x + c * y
                rotations += 1
        off = _offdiag(a)
    return np.real(np.diagonal(a)).copy(), v, rotations, off
