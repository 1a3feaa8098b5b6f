"""Hermitian eigendecomposition backed by a cyclic Jacobi sweep.

The compiled kernel (``entrobound._jacobi``) is used when it was built;
otherwise, or when ``ENTROBOUND_PURE=1`` is set, the numpy implementation in
``_jacobi_py`` runs instead. Both produce the same rotations in the same
order. ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

import numpy as np

from . import _jacobi_py
from .errors import NumericalError

OFFDIAG_TOL = 1e-14

if os.environ.get("ENTROBOUND_PURE", "") not in ("", "0"):
    _kernel = _jacobi_py.jacobi_eigh
    BACKEND = "python"
else:
    try:
        from ._jacobi import jacobi_eigh as _kernel

        BACKEND = "cython"
    except ImportError:  # extension not built
        _kernel = _jacobi_py.jacobi_eigh
        BACKEND = "python"


def kernels() -> dict:
    """Available backends by name, for benchmarks and cross-checks."""
    out = {"python": _jacobi_py.jacobi_eigh}
    try:
        from ._jacobi import jacobi_eigh

        out["cython"] = jacobi_eigh
    except ImportError:
        pass
    return out


def jacobi_eigh(a, tol: float = OFFDIAG_TOL, max_rotations: int | None = None, kernel=None):
    """Eigenvalues (nonincreasing) and orthonormal eigenvectors of Hermitian ``a``.

    Raises :class:`NumericalError` when ``max_rotations`` (default
    ``100 d**2``) is exhausted before the off-diagonal Frobenius mass drops
    below ``tol * ||a||_F``.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise ValueError("expected a square matrix")
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)
    cap = 100 * n * n if max_rotations is None else max_rotations
    w, v, _, off = (kernel or _kernel)(a, tol, cap)
    fro = float(np.linalg.norm(a))
    if off > tol * fro:
        raise NumericalError(f"Jacobi sweep did not converge within {cap} rotations (off-diagonal mass {off:.3e})", off)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(a) -> np.ndarray:
    return jacobi_eigh(a)[0]
