"""Elementary symmetric functions and weak log-majorization checks."""

from __future__ import annotations

import numpy as np

from . import polyzero

MAJORIZATION_REL_TOL = 1e-9

# entries this far below a sequence's leading value are the floating-point
# shadow of an exact zero (rank-deficient inputs) and short-circuit as such
RANK_REL_TOL = 1e-12


def esf(values, k: int):
    """The k-th elementary symmetric function e_k of the given values.

    Computed by the incremental product recurrence (building the
    coefficients of prod (1 + v_j t) one factor at a time), over entries
    sorted by descending modulus to bound intermediate growth.  e_0 = 1.
    Returns a float for real input, complex otherwise.
    """
    arr = np.asarray(values)
    if not (0 <= k <= arr.size):
        raise ValueError(f"k must lie in [0, {arr.size}], got {k}")
    is_real = not np.iscomplexobj(arr)
    ordered = sorted(arr.tolist(), key=abs, reverse=True)
    e = np.zeros(k + 1, dtype=float if is_real else complex)
    e[0] = 1.0
    for i, v in enumerate(ordered):
        for j in range(min(i + 1, k), 0, -1):
            e[j] += v * e[j - 1]
    return float(e[k]) if is_real else complex(e[k])


def weak_log_majorization(a, b) -> bool:
    """Whether every prefix product of a is bounded by the same prefix of b.

    Both sequences must be nonincreasing and nonnegative, of equal length.
    Products are compared in log space with relative slack
    MAJORIZATION_REL_TOL; a zero entering a prefix makes that product 0,
    which satisfies any comparison, so zeros short-circuit instead of
    producing -inf arithmetic.  Entries below RANK_REL_TOL of the leading
    value are treated as the zeros they represent, so rank-deficient inputs
    whose trailing singular values are pure rounding noise compare sanely.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("sequences must be 1-d and of equal length")
    for name, seq in (("a", a), ("b", b)):
        if np.any(seq < 0) or not np.all(np.isfinite(seq)):
            raise ValueError(f"sequence {name} must be nonnegative and finite")
        if np.any(np.diff(seq) > 0):
            raise ValueError(f"sequence {name} must be nonincreasing")
    slack = np.log1p(MAJORIZATION_REL_TOL)
    floor_a = RANK_REL_TOL * (a[0] if a.size else 0.0)
    floor_b = RANK_REL_TOL * (b[0] if b.size else 0.0)
    log_a = 0.0
    log_b = 0.0
    for ak, bk in zip(a, b):
        if ak <= floor_a:
            return True  # every longer prefix of a is 0 as well
        log_a += np.log(ak)
        if bk <= floor_b:
            return False  # positive prefix of a against a zero prefix of b
        log_b += np.log(bk)
        if log_a > log_b + slack:
            return False
    return True


def critical_esf_identity_error(moduli) -> float:
    """Worst relative defect in e_k(critical points) = ((n-k)/n) e_k(moduli).

    For a polynomial with nonnegative real roots the identity is exact, so
    any residual measures the root-finding path: the polynomial is expanded
    from the moduli, its derivative solved by the Aberth iteration, and the
    elementary symmetric functions of those computed critical points compared
    against the closed form, for every k = 1 .. n-1.  Errors are relative to
    max(1, e_k(moduli)).
    """
    arr = np.asarray(moduli, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("need at least two nonnegative moduli")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("moduli must be nonnegative and finite")
    n = arr.size
    cfg = polyzero.ZeroConfig(tuple(complex(v) for v in arr))
    xi = polyzero.roots(polyzero.derivative(polyzero.from_roots(cfg)))
    worst = 0.0
    for k in range(1, n):
        target = (n - k) / n * esf(arr, k)
        observed = esf(xi, k)
        err = abs(observed - target) / max(1.0, abs(target))
        worst = max(worst, err)
    return worst
