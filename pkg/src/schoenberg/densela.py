"""Dense complex linear algebra for the differentiator matrix.

The map z -> Q diag(z) Q, with Q the rank-(n-1) projector onto the
mean-zero subspace, carries the critical points of prod (z - z_j) in its
spectrum alongside one structural zero eigenvalue.  This module builds that
matrix and provides the spectral quantities the certificates consume:
eigenvalues, singular values, Schatten norms and vector l^p norms.

Eigenvalues come from LAPACK (Hessenberg reduction followed by shifted QR);
singular values from a one-sided Jacobi iteration written here, preferred at
these sizes for its high relative accuracy on graded spectra.
"""

from __future__ import annotations

import numpy as np

from .polyzero import CriticalSet, ZeroConfig

_JACOBI_SWEEPS = 30
_JACOBI_TOL = 4e-16
_PRESCALE_RANGE = (1e-6, 1e6)


class ConvergenceError(ArithmeticError):
    """A matrix decomposition failed to converge."""


def centering_projector(n: int) -> np.ndarray:
    """The centering projector with entries delta_ij - 1/n.

    An orthogonal projection of rank n-1: it annihilates the all-ones vector
    and fixes its complement.
    """
    if n <= 1:
        raise ValueError(f"projector order must be at least 2, got {n}")
    return np.eye(n) - np.full((n, n), 1.0 / n)


def differentiator(cfg: ZeroConfig) -> np.ndarray:
    """The matrix Q diag(z) Q, evaluated entrywise.

    Multiplying out gives A_ij = delta_ij z_i - (z_i + z_j)/n + (sum z)/n^2,
    which is cheaper and rounds less than two matrix products.  Centering of
    the zeros is not required to build the matrix.
    """
    return _differentiator(cfg.as_array())


def _differentiator(z: np.ndarray) -> np.ndarray:
    n = z.size
    a = np.diag(z).astype(complex)
    a -= (z[:, None] + z[None, :]) / n
    a += z.sum() / n**2
    return a


def _check_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real) & np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def _prescale(m: np.ndarray) -> tuple[np.ndarray, float]:
    """Rescale by a power of two when the spectrum would leave [1e-6, 1e6].

    Powers of two are exact in binary floating point, so the inverse scaling
    afterwards perturbs nothing.
    """
    estimate = float(np.linalg.norm(m))  # Frobenius: within sqrt(n) of sigma_1
    if estimate == 0.0:
        return m, 1.0
    lo, hi = _PRESCALE_RANGE
    if lo <= estimate <= hi:
        return m, 1.0
    factor = 2.0 ** -np.round(np.log2(estimate))
    return m * factor, factor


def _sort_spectrum(values: np.ndarray) -> np.ndarray:
    """Nonincreasing modulus, ties by principal argument then original index."""
    order = np.lexsort((np.arange(values.size), np.angle(values), -np.abs(values)))
    return values[order]


def eigenvalues(m: np.ndarray) -> np.ndarray:
    """All n eigenvalues, sorted by nonincreasing modulus.

    Ties in modulus break by principal argument (ascending), then by input
    index, so reports are reproducible.
    """
    m = _check_square(m)
    scaled, factor = _prescale(m)
    try:
        values = np.linalg.eigvals(scaled)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    return _sort_spectrum(values / factor)


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values by one-sided Jacobi, nonincreasing.

    Cyclic sweeps orthogonalize column pairs with a complex plane rotation:
    the pair's 2x2 Gram matrix is phase-folded to a real symmetric one and
    annihilated by a classic Jacobi rotation.  Column norms are maintained
    incrementally and refreshed each sweep.  Converges when every normalized
    off-diagonal Gram entry is below a few eps.
    """
    m = _check_square(m)
    n = m.shape[0]
    a, factor = _prescale(m)
    a = a.copy()
    for _ in range(_JACOBI_SWEEPS):
        norms2 = (np.abs(a) ** 2).sum(axis=0)
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                nii, njj = norms2[i], norms2[j]
                if nii == 0.0 or njj == 0.0:
                    continue
                gij = complex(np.vdot(a[:, i], a[:, j]))
                g = abs(gij)
                denom = np.sqrt(nii) * np.sqrt(njj)  # split to dodge underflow
                if g <= _JACOBI_TOL * denom:
                    continue
                off = max(off, g / denom)
                tau = (njj - nii) / (2.0 * g)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                phase = gij / g
                col_i = c * a[:, i] - s * np.conj(phase) * a[:, j]
                col_j = s * phase * a[:, i] + c * a[:, j]
                a[:, i] = col_i
                a[:, j] = col_j
                # rounding can push a collapsing column fractionally negative
                norms2[i] = max(nii - t * g, 0.0)
                norms2[j] = max(njj + t * g, 0.0)
        if off <= _JACOBI_TOL:
            break
    else:
        raise ConvergenceError(
            f"one-sided Jacobi did not converge in {_JACOBI_SWEEPS} sweeps"
        )
    sigma = np.sqrt((np.abs(a) ** 2).sum(axis=0)) / factor
    return np.sort(sigma)[::-1]


def lp_norm(v, p: float) -> float:
    """The l^p norm of a complex vector; p = inf gives the max modulus."""
    _check_order(p)
    mods = np.abs(np.asarray(v, dtype=complex))
    if mods.size == 0:
        return 0.0
    if np.isinf(p):
        return float(mods.max())
    if p == 1:
        return float(mods.sum())
    if p == 2:
        return float(np.sqrt((mods**2).sum()))
    top = mods.max()
    if top == 0.0:
        return 0.0
    # factor out the peak so large p does not underflow intermediate powers
    return float(top * ((mods / top) ** p).sum() ** (1.0 / p))


def schatten_norm(m: np.ndarray, p: float) -> float:
    """The Schatten p-norm: the l^p norm of the singular values.

    p = 2 reduces to the Frobenius norm and is computed directly from the
    entries, which is both faster and exact to a few ulps; every other order
    goes through the Jacobi singular values.
    """
    _check_order(p)
    m = _check_square(m)
    if p == 2:
        return float(np.linalg.norm(m))
    return lp_norm(singular_values(m), p)


def _check_order(p: float) -> None:
    if not (p >= 1.0 or np.isinf(p)):
        raise ValueError(f"norm order must satisfy p >= 1, got {p}")


def critical_points_spectral(cfg: ZeroConfig) -> CriticalSet:
    """Critical points as the spectrum of Q diag(z) Q minus its structural zero.

    The dropped eigenvalue is the one of smallest modulus (the last in sort
    order).  When the polynomial itself has a vanishing critical point the
    choice is interchangeable with it, and every downstream quantity built
    from moduli is unaffected.
    """
    values = eigenvalues(_differentiator(cfg.as_array()))
    return CriticalSet(tuple(values[:-1]))
