"""Polynomials given by their zeros: construction, differentiation, root-finding.

This is the "direct" route to critical points: expand p(z) = prod (z - z_j),
differentiate, and solve p'(w) = 0 with a simultaneous Aberth-Ehrlich
iteration.  The companion-matrix route lives in ``densela`` and is kept
deliberately independent of this one so the two can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

TOL_CENTER = 1e-12
TOL_ROOT = 1e-13
MAX_ITERS = 200

_EPS = float(np.finfo(float).eps)
_POLISH_ITERS = 12


class RootFindingError(ArithmeticError):
    """Aberth iteration did not reach the residual gate.

    Carries the best iterate seen and its worst scaled residual so a caller
    can inspect (or accept) the partial result.
    """

    def __init__(self, message: str, best: np.ndarray, residual: float):
        super().__init__(message)
        self.best = best
        self.residual = residual


@dataclass(frozen=True)
class ZeroConfig:
    """A multiset of n >= 2 complex zeros, optionally certified as centered.

    ``centered`` asserts |sum z_j| <= TOL_CENTER * max(1, max |z_j|); the
    constructor enforces it.
    """

    zeros: tuple[complex, ...]
    centered: bool = False

    def __post_init__(self):
        zeros = tuple(complex(z) for z in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        if len(zeros) < 2:
            raise ValueError(f"need at least 2 zeros, got {len(zeros)}")
        arr = np.asarray(zeros)
        if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
            raise ValueError("zeros must be finite")
        if self.centered:
            bound = TOL_CENTER * max(1.0, float(np.abs(arr).max()))
            if abs(arr.sum()) > bound:
                raise ValueError(
                    f"centered flag set but |sum z_j| = {abs(arr.sum()):.3e} "
                    f"exceeds {bound:.3e}"
                )

    @property
    def n(self) -> int:
        return len(self.zeros)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.zeros, dtype=complex)


@dataclass(frozen=True)
class Polynomial:
    """Monic polynomial stored as coefficients in descending powers."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        if coeffs[0] != 1:
            raise ValueError(f"leading coefficient must be exactly 1, got {coeffs[0]}")
        arr = np.asarray(coeffs)
        if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
            raise ValueError("coefficients must be finite")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def __call__(self, z: complex) -> complex:
        value = 0j
        for c in self.coeffs:
            value = value * z + c
        return value


@dataclass(frozen=True)
class CriticalSet:
    """The n-1 critical points (zeros of p') of a degree-n polynomial."""

    points: tuple[complex, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(complex(w) for w in self.points))

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)


def from_roots(cfg: ZeroConfig) -> Polynomial:
    """Expand prod (z - z_j) by balanced pairwise products of linear factors.

    Pairing the factors tournament-style keeps intermediate coefficient
    growth (and hence rounding) lower than a left-to-right product when the
    roots are clustered.
    """
    factors = [np.array([1.0 + 0j, -z]) for z in cfg.zeros]
    while len(factors) > 1:
        paired = [
            np.convolve(factors[i], factors[i + 1])
            for i in range(0, len(factors) - 1, 2)
        ]
        if len(factors) % 2:
            paired.append(factors[-1])
        factors = paired
    return Polynomial(tuple(factors[0]))


def derivative(poly: Polynomial) -> Polynomial:
    """Monic form of p'/n; roots are those of p', degree drops by one."""
    n = poly.degree
    if n < 1:
        raise ValueError("cannot differentiate a constant")
    if n == 1:
        raise ValueError("derivative of a degree-1 polynomial is constant")
    coeffs = poly.as_array()[:-1] * (np.arange(n, 0, -1) / n)
    return Polynomial(tuple(coeffs))


def roots(poly: Polynomial) -> np.ndarray:
    """All roots of a monic polynomial, with multiplicity.

    Aberth-Ehrlich simultaneous iteration in two phases:

    1. plain double precision on the rescaled polynomial until every iterate
       is backward stable relative to the running Horner majorant th(x) =
       sum |b_k| |x|^k (or, for cancellation-free inputs such as z^m, small
       against the coefficient scale);
    2. a short polishing phase re-evaluating p(x) in 80-bit arithmetic, which
       pushes simple roots to the conditioning floor and tightens symmetric
       functions of clustered ones.

    The returned points satisfy |p(x)| <= TOL_ROOT * max(scale, th(x)) on the
    conditioned polynomial, where scale is its largest coefficient magnitude.
    Multiple roots come back as a cluster of radius roughly eps^(1/m); they
    are returned as found, without rounding.
    """
    c = poly.as_array()
    m = poly.degree
    if m == 1:
        return np.array([-c[1]])

    # Rescale z = s*u so the u-roots are O(1).  The max of the binomially
    # damped magnitudes (|a_k| / C(m,k))^(1/k) is a lower bound for the
    # largest root, the raw max an upper estimate; their geometric mean keeps
    # the scaled roots from being crushed toward zero either way.
    mags = np.abs(c[1:])
    ks = np.arange(1, m + 1)
    binom = np.array([comb(m, int(k)) for k in ks], dtype=float)
    with np.errstate(divide="ignore"):
        s_hi = float(np.max(mags ** (1.0 / ks), initial=0.0))
        s_lo = float(np.max((mags / binom) ** (1.0 / ks), initial=0.0))
    s = max(1.0, float(np.sqrt(s_hi * s_lo)))
    b = c / s ** np.arange(m + 1)
    scale = max(1.0, float(np.abs(b).max()))

    radius = 1.0 + float(np.abs(b[1:]).max(initial=0.0))
    x = radius * np.exp(1j * (2.0 * np.pi * np.arange(m) / m + 0.4))

    best_x, best_rho = x.copy(), np.inf
    for _ in range(MAX_ITERS):
        p, dp, th = _horner_all(b, x)
        ap = np.abs(p)
        rho = float((ap / np.maximum(scale, th)).max())
        if rho < best_rho:
            best_rho, best_x = rho, x.copy()
        backward_ok = ap <= 4 * m * _EPS * th
        # |p| ~ th means no cancellation is possible (e.g. a multiple root at
        # the origin); there an absolute test at the coefficient scale is the
        # correct notion of converged.
        flat_ok = (ap <= 64 * _EPS * scale) & (ap >= 0.25 * th)
        if np.all(backward_ok | flat_ok):
            best_x = x
            break
        x = _aberth_step(x, p, dp)
    x = best_x

    for _ in range(_POLISH_ITERS):
        p = _horner_extended(b, x)
        _, dp, _ = _horner_all(b, x)
        x_new = _aberth_step(x, p, dp)
        step = np.abs(x_new - x)
        x = x_new
        if np.all(step <= 4 * _EPS * (1.0 + np.abs(x))):
            break

    p = _horner_extended(b, x)
    _, _, th = _horner_all(b, x)
    gate = np.abs(p) / np.maximum(scale, th)
    worst = float(gate.max())
    if worst > TOL_ROOT:
        raise RootFindingError(
            f"root iteration stalled at residual {worst:.3e} (> {TOL_ROOT})",
            best=x * s,
            residual=worst,
        )
    return x * s


def _horner_all(b: np.ndarray, x: np.ndarray):
    """p(x), p'(x) and the rounding majorant th(x) = sum |b_k||x|^k."""
    ax = np.abs(x)
    p = np.full(x.shape, b[0])
    dp = np.zeros_like(x)
    th = np.full(x.shape, abs(b[0]))
    for k in range(1, b.size):
        dp = dp * x + p
        p = p * x + b[k]
        th = th * ax + abs(b[k])
    return p, dp, th


def _horner_extended(b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """p(x) evaluated in 80-bit extended precision, rounded back to complex128."""
    bx = b.astype(np.complex256)
    xx = x.astype(np.complex256)
    p = np.full(x.shape, bx[0], dtype=np.complex256)
    for k in range(1, b.size):
        p = p * xx + bx[k]
    return p.astype(complex)


def _aberth_step(x: np.ndarray, p: np.ndarray, dp: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, np.inf)
        repulsion = (1.0 / diff).sum(axis=1)
    denom = 1.0 - w * repulsion
    denom = np.where(np.abs(denom) < 1e-300, 1.0, denom)
    return x - w / denom


def critical_points_direct(cfg: ZeroConfig) -> CriticalSet:
    """Critical points as the roots of p' where p = prod (z - z_j)."""
    return CriticalSet(tuple(roots(derivative(from_roots(cfg)))))


def centroid(cfg: ZeroConfig) -> complex:
    """Mean of the zeros, (1/n) sum z_j."""
    return complex(cfg.as_array().sum() / cfg.n)


def center(cfg: ZeroConfig) -> ZeroConfig:
    """Shift every zero by -centroid so the result is certifiably centered.

    One extra refinement pass absorbs the rounding of the first shift; the
    result carries centered=True and passes the ZeroConfig invariant.
    """
    arr = cfg.as_array()
    for _ in range(2):
        mean = arr.sum() / arr.size
        if mean == 0:
            break
        arr = arr - mean
    return ZeroConfig(tuple(arr), centered=True)
