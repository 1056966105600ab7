"""Extremal families and derivative-free search for near-equality configurations.

Two explicit families attain the order-p bounds: n/2 zeros at each of +1/-1
(for p >= 2, n even) and n-2 zeros at the origin plus one at each of +1/-1
(for 1 <= p <= 2).  The searches here parametrize the centered subspace by
the first n-1 zeros (the last is minus their sum, so the constraint is exact
by construction) and maximize either the certificate ratio or the
Schatten-to-l^p quotient of the differentiator map with restarted
Nelder-Mead.  Eigenvalues cross at multiplicity changes, so the objective is
continuous but not smooth; a simplex method is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import densela
from .certs import opnorm_constant, schoenberg_constant
from .polyzero import ZeroConfig, center

_NM_REFLECT = 1.0
_NM_EXPAND = 2.0
_NM_CONTRACT = 0.5
_NM_SHRINK = 0.5
_NM_RESTART_DIAMETER = 1e-10
_NM_INIT_SCALE = 0.3


@dataclass(frozen=True)
class SharpnessResult:
    """Outcome of one ratio-maximization run."""

    n: int
    p: float
    best_config: ZeroConfig
    best_ratio: float
    evaluations: int
    restarts: int
    seed: int


def extremal_high(n: int) -> ZeroConfig:
    """n/2 zeros at +1 and at -1; the equality family for orders p >= 2."""
    if n < 4 or n % 2 != 0:
        raise ValueError(f"the +-1 family needs an even n >= 4, got {n}")
    zeros = (1.0 + 0j,) * (n // 2) + (-1.0 + 0j,) * (n // 2)
    return ZeroConfig(zeros, centered=True)


def extremal_low(n: int) -> ZeroConfig:
    """n-2 zeros at the origin plus +-1; the equality family for 1 <= p <= 2."""
    if n < 3:
        raise ValueError(f"the origin family needs n >= 3, got {n}")
    zeros = (0j,) * (n - 2) + (1.0 + 0j, -1.0 + 0j)
    return ZeroConfig(zeros, centered=True)


def ratio(cfg: ZeroConfig, p: float) -> float:
    """sum |w_k|^p divided by C(n,p) sum |z_j|^p, in [0, 1] when the bound holds."""
    if cfg.n == 2:
        raise ValueError("n = 2 is degenerate: the bound's right side vanishes")
    if not cfg.centered:
        raise ValueError("ratio requires a centered configuration")
    p = float(p)
    z = cfg.as_array()
    denom = schoenberg_constant(cfg.n, p) * densela.lp_norm(z, p) ** p
    if denom == 0.0:
        raise ValueError("all zeros vanish; the ratio is undefined")
    w = np.abs(densela.critical_points_spectral(cfg).as_array())
    return float(densela.lp_norm(w, p) ** p / denom)


def _zeros_from_coords(x: np.ndarray) -> np.ndarray:
    """Map 2(n-1) real coordinates to n centered zeros (last = -sum of rest)."""
    half = x.size // 2
    head = x[:half] + 1j * x[half:]
    return np.concatenate([head, [-head.sum()]])


def _coords_from_zeros(z: np.ndarray) -> np.ndarray:
    head = z[:-1]
    return np.concatenate([head.real, head.imag])


def _config_from_coords(x: np.ndarray) -> ZeroConfig:
    return center(ZeroConfig(tuple(_zeros_from_coords(x))))


def _nelder_mead(objective, x0: np.ndarray, budget: int) -> tuple[np.ndarray, float, int]:
    """Minimize with standard simplex moves until the evaluation budget is spent.

    Returns (best point, best value, evaluations used).  Collapses of the
    simplex below the restart diameter end the run early and the remaining
    budget flows back to the caller for another restart.
    """
    dim = x0.size
    pts = [x0]
    for i in range(dim):
        step = np.zeros(dim)
        step[i] = _NM_INIT_SCALE
        pts.append(x0 + step)
    used = 0

    def f(x):
        nonlocal used
        used += 1
        return objective(x)

    values = [f(x) for x in pts]
    while used < budget:
        order = np.argsort(values, kind="stable")
        pts = [pts[i] for i in order]
        values = [values[i] for i in order]
        spread = max(np.linalg.norm(p - pts[0]) for p in pts[1:])
        if spread < _NM_RESTART_DIAMETER:
            break
        centroid = np.mean(pts[:-1], axis=0)
        reflected = centroid + _NM_REFLECT * (centroid - pts[-1])
        fr = f(reflected)
        if values[0] <= fr < values[-2]:
            pts[-1], values[-1] = reflected, fr
            continue
        if fr < values[0]:
            expanded = centroid + _NM_EXPAND * (reflected - centroid)
            fe = f(expanded)
            if fe < fr:
                pts[-1], values[-1] = expanded, fe
            else:
                pts[-1], values[-1] = reflected, fr
            continue
        contracted = centroid + _NM_CONTRACT * (pts[-1] - centroid)
        fc = f(contracted)
        if fc < values[-1]:
            pts[-1], values[-1] = contracted, fc
            continue
        pts = [pts[0]] + [pts[0] + _NM_SHRINK * (p - pts[0]) for p in pts[1:]]
        values = [values[0]] + [f(p) for p in pts[1:]]
    best = int(np.argmin(values))
    return pts[best], values[best], used


def _random_start(n: int, rng) -> np.ndarray:
    z = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
    full = np.concatenate([z, [-z.sum()]])
    full = full / np.abs(full).max()  # scale-invariant objective; keep it O(1)
    return _coords_from_zeros(full)


def maximize_ratio(n: int, p: float, budget: int, seed: int) -> SharpnessResult:
    """Search the centered configurations for the largest order-p ratio.

    Nelder-Mead over 2(n-1) real coordinates with random restarts until the
    evaluation budget is spent.  Deterministic in (n, p, budget, seed).  A
    best ratio beyond 1 + 1e-9 would contradict the order-p bound and is
    surfaced as-is for the caller to report, never clipped.
    """
    p = float(p)
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    if budget < 1:
        raise ValueError("budget must be positive")
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), n)))

    def objective(x: np.ndarray) -> float:
        z = _zeros_from_coords(x)
        top = np.abs(z).max()
        if top == 0.0 or not np.isfinite(top):
            return 0.0
        zc = z - z.sum() / z.size
        w = np.abs(densela.eigenvalues(densela._differentiator(zc))[:-1])
        denom = schoenberg_constant(n, p) * densela.lp_norm(zc, p) ** p
        if denom == 0.0:
            return 0.0
        return -(densela.lp_norm(w, p) ** p) / denom

    spent = 0
    restarts = 0
    best_x, best_value = None, np.inf
    while spent < budget:
        x0 = _random_start(n, rng)
        x, value, used = _nelder_mead(objective, x0, budget - spent)
        spent += used
        restarts += 1
        if value < best_value:
            best_x, best_value = x, value
    best_config = _config_from_coords(best_x)
    return SharpnessResult(
        n=n,
        p=p,
        best_config=best_config,
        best_ratio=ratio(best_config, p),
        evaluations=spent,
        restarts=restarts,
        seed=int(seed),
    )


def opnorm_lower_bound(
    n: int, p: float, budget: int = 2000, seed: int = 0
) -> tuple[float, float]:
    """Largest observed ||T(z)||_Sp / ||z||_p against the closed-form bound.

    T is the differentiator map restricted to centered z.  The search seeds
    both extremal families (where the quotient attains the bound in the
    matching p-range) plus random restarts, and returns
    (estimate, c(n, p)) with c(n, p) = ((n-2)/n)^min(1/p, 1/2).
    """
    p = float(p)
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    if budget < 1:
        raise ValueError("budget must be positive")
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), n, 1)))

    def quotient(z: np.ndarray) -> float:
        norm_z = densela.lp_norm(z, p)
        if norm_z == 0.0:
            return 0.0
        return densela.schatten_norm(densela._differentiator(z), p) / norm_z

    def objective(x: np.ndarray) -> float:
        z = _zeros_from_coords(x)
        top = np.abs(z).max()
        if top == 0.0 or not np.isfinite(top):
            return 0.0
        return -quotient(z - z.sum() / z.size)

    seeds = [_coords_from_zeros(extremal_low(n).as_array())]
    if n >= 4 and n % 2 == 0:
        seeds.append(_coords_from_zeros(extremal_high(n).as_array()))
    estimate = max(quotient(_zeros_from_coords(x)) for x in seeds)

    spent = 0
    while spent < budget:
        x0 = seeds.pop() if seeds else _random_start(n, rng)
        x, value, used = _nelder_mead(objective, x0, budget - spent)
        spent += used
        estimate = max(estimate, -value)
    return float(estimate), opnorm_constant(n, p)
