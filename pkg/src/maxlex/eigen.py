"""Cyclic Jacobi eigensolver for dense complex Hermitian matrices."""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceFailure, NotHermitian

HERMITIAN_TOL = 1e-12


def check_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``h`` as a complex array, symmetrized, after checking it is Hermitian."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise NotHermitian("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    dev = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if dev > tol * scale:
        raise NotHermitian(f"max |H - H^dagger| = {dev:.3e} exceeds {tol:g}")
    return (h + h.conj().T) / 2


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(h, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (decreasing) and eigenvectors (columns) of a Hermitian matrix.

    Sweeps over all pivots (p, q) in row order, each time applying the 2x2
    unitary that first turns ``a[p, q]`` real and then zeroes it with a real
    rotation. Stops once the off-diagonal Frobenius norm is below
    ``tol * max(1, ||h||_F)``.
    """
    a = check_hermitian(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n <= 1:
        return a.diagonal().real.copy(), v
    limit = tol * max(1.0, float(np.linalg.norm(a)))
    skip = limit / n
    for _ in range(max_sweeps):
        if _off_norm(a) < limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                c = a[p, q]
                r = abs(c)
                if r < skip:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                phase = c / r
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                cs = 1.0 / math.sqrt(1.0 + t * t)
                sn = t * cs
                g00, g01 = cs, sn
                g10, g11 = -sn * phase.conjugate(), cs * phase.conjugate()

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = col_p * g00 + col_q * g10
                a[:, q] = col_p * g01 + col_q * g11
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = row_p * g00 + row_q * g10.conjugate()
                a[q, :] = row_p * g01 + row_q * g11.conjugate()
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r

                col_p, col_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = col_p * g00 + col_q * g10
                v[:, q] = col_p * g01 + col_q * g11
    else:
        if _off_norm(a) >= limit:
            raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = a.diagonal().real
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eigvals_decreasing(h, tol: float = 1e-12) -> np.ndarray:
    return jacobi_eigh(h, tol=tol)[0]
