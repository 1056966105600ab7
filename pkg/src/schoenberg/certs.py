"""Every inequality between zeros and critical points as a numeric certificate.

A certificate records both sides of one evaluated inequality together with
slack, ratio and a pass flag under an explicit tolerance policy:

    holds  <=>  lhs <= rhs + max(ABS_TOL, REL_TOL * max(|lhs|, |rhs|))

Equality statements (the Schatten-2 identity) demand both directions.  All
inequalities here concern a degree-n polynomial with zeros z_j and critical
points w_k; "centered" means sum z_j = 0.

The batch evaluator reuses one eigendecomposition of the differentiator
matrix and one singular value decomposition each of it and of its
absolute-zeros counterpart; every certificate family reads off those three
spectra, so a full audit costs three decompositions per configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import densela, symfun
from .polyzero import ZeroConfig, critical_points_direct

ABS_TOL = 1e-12
REL_TOL = 1e-9


@dataclass(frozen=True)
class Certificate:
    """One evaluated inequality: name, sides, slack, ratio and verdict.

    ``p`` is None for parameter-free statements; ``ratio`` is None when the
    right-hand side is not positive (degenerate cases such as n = 2).
    """

    name: str
    n: int
    p: float | None
    lhs: float
    rhs: float
    slack: float
    ratio: float | None
    holds: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "p": self.p,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "ratio": self.ratio,
            "holds": self.holds,
        }

    @staticmethod
    def from_dict(data: dict) -> "Certificate":
        return Certificate(
            name=str(data["name"]),
            n=int(data["n"]),
            p=None if data["p"] is None else float(data["p"]),
            lhs=float(data["lhs"]),
            rhs=float(data["rhs"]),
            slack=float(data["slack"]),
            ratio=None if data["ratio"] is None else float(data["ratio"]),
            holds=bool(data["holds"]),
        )


def _certify(
    name: str,
    n: int,
    p: float | None,
    lhs: float,
    rhs: float,
    equality: bool = False,
    abs_tol: float = ABS_TOL,
    rel_tol: float = REL_TOL,
) -> Certificate:
    lhs = float(lhs)
    rhs = float(rhs)
    tol = max(abs_tol, rel_tol * max(abs(lhs), abs(rhs)))
    if equality:
        holds = abs(lhs - rhs) <= tol
    else:
        holds = lhs <= rhs + tol
    return Certificate(
        name=name,
        n=n,
        p=p,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        ratio=(lhs / rhs) if rhs > 0 else None,
        holds=holds,
    )


def _require_centered(cfg: ZeroConfig, what: str) -> None:
    if not cfg.centered:
        raise ValueError(f"{what} requires a centered configuration (sum z_j = 0)")


def _check_order(p: float) -> float:
    p = float(p)
    if p < 1:
        raise ValueError(f"order must satisfy p >= 1, got {p}")
    return p


def schoenberg_constant(n: int, p: float) -> float:
    """C(n, p): (n-2)/n for p >= 2 and ((n-2)/n)^(p/2) for 1 <= p <= 2.

    The two branches agree at p = 2, where the bound is the classical
    quadratic Schoenberg inequality.
    """
    _check_order(p)
    base = (n - 2) / n
    return base if p >= 2 else base ** (p / 2.0)


def opnorm_constant(n: int, p: float) -> float:
    """c(n, p) = ((n-2)/n)^min(1/p, 1/2), the operator-norm bound for the
    differentiator map from the centered l^p space into the Schatten p-class."""
    _check_order(p)
    return float(((n - 2) / n) ** min(1.0 / p, 0.5))


class _Spectra:
    """The three spectra every certificate family reads from.

    Computed lazily so single-certificate calls only pay for what they use.
    """

    def __init__(self, cfg: ZeroConfig):
        self.cfg = cfg
        self.z = cfg.as_array()
        self._matrix = None
        self._eigen = None
        self._sigma = None
        self._sigma_abs = None

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = densela.differentiator(self.cfg)
        return self._matrix

    @property
    def eigen_moduli(self) -> np.ndarray:
        if self._eigen is None:
            self._eigen = densela.eigenvalues(self.matrix)
        return np.abs(self._eigen)

    @property
    def critical_moduli(self) -> np.ndarray:
        """|w_k| via the spectral route (sorted eigenvalues minus the
        structural zero)."""
        return self.eigen_moduli[:-1]

    @property
    def sigma(self) -> np.ndarray:
        if self._sigma is None:
            self._sigma = densela.singular_values(self.matrix)
        return self._sigma

    @property
    def sigma_abs(self) -> np.ndarray:
        """Singular values of the differentiator built from |z_j|."""
        if self._sigma_abs is None:
            cfg_abs = ZeroConfig(tuple(np.abs(self.z).astype(complex)))
            self._sigma_abs = densela.singular_values(densela.differentiator(cfg_abs))
        return self._sigma_abs


def schoenberg_order_p(
    cfg: ZeroConfig, p: float, constant_scale: float = 1.0
) -> Certificate:
    """Order-p Schoenberg certificate: sum |w_k|^p <= C(n,p) sum |z_j|^p.

    Requires the centroid condition.  ``constant_scale`` multiplies C(n, p)
    and exists purely as a fault-injection hook for audit self-tests; leave
    it at 1.0 for the actual inequality.
    """
    p = _check_order(p)
    _require_centered(cfg, "the order-p Schoenberg certificate")
    return _schoenberg(_Spectra(cfg), p, constant_scale)


def _schoenberg(sp: _Spectra, p: float, constant_scale: float = 1.0) -> Certificate:
    lhs = densela.lp_norm(sp.critical_moduli, p) ** p
    rhs = (
        constant_scale
        * schoenberg_constant(sp.cfg.n, p)
        * densela.lp_norm(sp.z, p) ** p
    )
    return _certify("schoenberg", sp.cfg.n, p, lhs, rhs)


def quartic_bounds(cfg: ZeroConfig) -> tuple[Certificate, Certificate, Certificate]:
    """The two quartic bounds and their dominance, for centered zeros.

    dBS:  sum|w|^4 <= ((n-4)/n) sum|z|^4 + (2/n^2) (sum|z|^2)^2
    KT:   sum|w|^4 <= ((n-4)/n) sum|z|^4 + (1/n^2) (sum|z|^2)^2
                                         + (1/n^2) |sum z^2|^2
    dominance: the KT right side never exceeds the dBS right side, because
    |sum z^2| <= sum |z|^2.  The signed factor (n-4)/n is kept as written
    for n < 4.
    """
    _require_centered(cfg, "the quartic certificates")
    return _quartic(_Spectra(cfg))


def _quartic(sp: _Spectra) -> tuple[Certificate, Certificate, Certificate]:
    n = sp.cfg.n
    w = sp.critical_moduli
    lhs = float((w**4).sum())
    pow4 = densela.lp_norm(sp.z, 4) ** 4
    pow2 = densela.lp_norm(sp.z, 2) ** 2
    sum_sq = abs((sp.z**2).sum()) ** 2
    rhs_dbs = (n - 4) / n * pow4 + 2.0 / n**2 * pow2**2
    rhs_kt = (n - 4) / n * pow4 + (pow2**2 + sum_sq) / n**2
    return (
        _certify("quartic_dbs", n, None, lhs, rhs_dbs),
        _certify("quartic_kt", n, None, lhs, rhs_kt),
        _certify("quartic_dominance", n, None, rhs_kt, rhs_dbs),
    )


def pereira_bound(cfg: ZeroConfig, p: float) -> Certificate:
    """Pereira's certificate: sum |w_k|^p <= ((n-1)/n) sum |z_j|^p.

    Holds with no centroid condition.  Centered configurations use the
    spectral route to the critical points; others fall back to direct
    root-finding.
    """
    p = _check_order(p)
    if cfg.centered:
        return _pereira(_Spectra(cfg), p)
    w = np.abs(critical_points_direct(cfg).as_array())
    lhs = densela.lp_norm(w, p) ** p
    rhs = (cfg.n - 1) / cfg.n * densela.lp_norm(cfg.as_array(), p) ** p
    return _certify("pereira", cfg.n, p, lhs, rhs)


def _pereira(sp: _Spectra, p: float) -> Certificate:
    lhs = densela.lp_norm(sp.critical_moduli, p) ** p
    rhs = (sp.cfg.n - 1) / sp.cfg.n * densela.lp_norm(sp.z, p) ** p
    return _certify("pereira", sp.cfg.n, p, lhs, rhs)


def weyl_check(m: np.ndarray, p: float) -> Certificate:
    """Weyl majorization certificate: sum |lambda_i|^p <= sum sigma_i^p."""
    p = _check_order(p)
    lam = densela.eigenvalues(m)
    sig = densela.singular_values(m)
    return _weyl(np.abs(lam), sig, p)


def _weyl(lam_moduli: np.ndarray, sigma: np.ndarray, p: float) -> Certificate:
    lhs = densela.lp_norm(lam_moduli, p) ** p
    rhs = densela.lp_norm(sigma, p) ** p
    return _certify("weyl", lam_moduli.size, p, lhs, rhs)


def endpoint_checks(
    cfg: ZeroConfig,
) -> tuple[Certificate, Certificate, Certificate]:
    """The three endpoint certificates for A = Q diag(z) Q, centered z.

    S-infinity: ||A|| <= max |z_j|            (contraction by the projector)
    S2 identity: ||A||_S2^2 = ((n-2)/n) ||z||_2^2   (both directions)
    S1:          ||A||_S1 <= sqrt((n-2)/n) ||z||_1
    """
    _require_centered(cfg, "the endpoint certificates")
    return _endpoint(_Spectra(cfg))


def _endpoint(sp: _Spectra) -> tuple[Certificate, Certificate, Certificate]:
    n = sp.cfg.n
    sinf = _certify(
        "endpoint_sinf",
        n,
        None,
        float(sp.sigma[0]) if n else 0.0,
        densela.lp_norm(sp.z, np.inf),
    )
    s2 = _certify(
        "endpoint_s2",
        n,
        None,
        densela.schatten_norm(sp.matrix, 2) ** 2,
        (n - 2) / n * densela.lp_norm(sp.z, 2) ** 2,
        equality=True,
    )
    s1 = _certify(
        "endpoint_s1",
        n,
        None,
        float(sp.sigma.sum()),
        np.sqrt((n - 2) / n) * densela.lp_norm(sp.z, 1),
    )
    return s1, s2, sinf


def esf_bounds(cfg: ZeroConfig) -> list[Certificate]:
    """Per-k certificates e_k(sigma_1..sigma_{n-1}) <= ((n-k)/n) e_k(|z|).

    The sigma are the singular values of the differentiator matrix, top n-1
    of them (the smallest is structurally zero).  No centroid condition.
    """
    return _esf(_Spectra(cfg))


def _esf(sp: _Spectra) -> list[Certificate]:
    n = sp.cfg.n
    sigma = sp.sigma[: n - 1]
    moduli = np.abs(sp.z)
    out = []
    for k in range(1, n):
        lhs = symfun.esf(sigma, k)
        rhs = (n - k) / n * symfun.esf(moduli, k)
        out.append(_certify(f"esf_k{k}", n, None, lhs, rhs))
    return out


def sv_product_check(x: np.ndarray, d) -> list[Certificate]:
    """Prefix-product certificates for sigma(X* D X) against sigma(X* |D| X).

    One certificate per k = 1..n comparing the k-fold products of the two
    singular value sequences, judged with the weak log-majorization slack
    (zeros short-circuit in log space).
    """
    x = np.asarray(x, dtype=complex)
    d = np.asarray(d, dtype=complex).ravel()
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"X must be square, got shape {x.shape}")
    n = x.shape[0]
    if d.size != n:
        raise ValueError(f"diagonal length {d.size} does not match order {n}")
    xh = x.conj().T
    sig_d = densela.singular_values(xh @ np.diag(d) @ x)
    sig_abs = densela.singular_values(xh @ np.diag(np.abs(d).astype(complex)) @ x)
    return _sv_product(sig_d, sig_abs)


def _sv_product(sig_d: np.ndarray, sig_abs: np.ndarray) -> list[Certificate]:
    n = sig_d.size
    floor_abs = symfun.RANK_REL_TOL * (sig_abs[0] if n else 0.0)
    out = []
    for k in range(1, n + 1):
        lhs = float(np.prod(sig_d[:k]))
        rhs = float(np.prod(sig_abs[:k]))
        holds = _prefix_product_holds(sig_d, sig_abs, k)
        # once the prefix of the right side crosses the rank floor it is the
        # shadow of an exact zero and the quotient is meaningless
        rhs_is_noise = bool(np.any(sig_abs[:k] <= floor_abs))
        out.append(
            Certificate(
                name=f"sv_product_k{k}",
                n=n,
                p=None,
                lhs=lhs,
                rhs=rhs,
                slack=rhs - lhs,
                ratio=(lhs / rhs) if rhs > 0 and not rhs_is_noise else None,
                holds=holds,
            )
        )
    return out


def _prefix_product_holds(a: np.ndarray, b: np.ndarray, k: int) -> bool:
    """prod a[:k] <= prod b[:k] with log-space slack and zero short-circuit.

    Entries below RANK_REL_TOL of their sequence's leading value count as the
    exact zeros they shadow (both sides are rank deficient at X = Q).
    """
    floor_a = symfun.RANK_REL_TOL * a[0]
    floor_b = symfun.RANK_REL_TOL * b[0]
    if np.any(a[:k] <= floor_a):
        return True
    if np.any(b[:k] <= floor_b):
        return False
    return float(np.log(a[:k]).sum()) <= float(np.log(b[:k]).sum()) + np.log1p(
        symfun.MAJORIZATION_REL_TOL
    )


def check_all(
    cfg: ZeroConfig,
    p_list,
    constant_scale: float = 1.0,
    abs_tol: float = ABS_TOL,
    rel_tol: float = REL_TOL,
) -> list[Certificate]:
    """Evaluate every certificate that applies to one centered configuration.

    Order-parametrized families (Schoenberg, Pereira, Weyl on the
    differentiator matrix) run once per entry of ``p_list``; the
    parameter-free ones (quartic pair and dominance, the three endpoint
    checks, the per-k elementary symmetric bounds, and the singular value
    product lemma instantiated at X = Q, D = diag(z)) run once.  Results come
    back sorted by (name, p) so reports are deterministic.
    """
    _require_centered(cfg, "check_all")
    orders = sorted({float(p) for p in p_list})
    if not orders:
        raise ValueError("p_list must not be empty")
    for p in orders:
        _check_order(p)
    sp = _Spectra(cfg)
    certs: list[Certificate] = []
    certs.extend(_endpoint(sp))
    certs.extend(_esf(sp))
    certs.extend(_quartic(sp))
    for p in orders:
        certs.append(_schoenberg(sp, p, constant_scale))
        certs.append(_pereira(sp, p))
        certs.append(_weyl(sp.eigen_moduli, sp.sigma, p))
    # the product lemma at X = Q reuses sigma(A) and sigma over |z|
    certs.extend(_sv_product(sp.sigma, sp.sigma_abs))
    if abs_tol != ABS_TOL or rel_tol != REL_TOL:
        # re-judge under the caller's tolerances; the singular value product
        # certificates keep their log-space verdict, which has its own slack
        certs = [
            c
            if c.name.startswith("sv_product")
            else _certify(
                c.name,
                c.n,
                c.p,
                c.lhs,
                c.rhs,
                equality=(c.name == "endpoint_s2"),
                abs_tol=abs_tol,
                rel_tol=rel_tol,
            )
            for c in certs
        ]
    return sorted(certs, key=lambda c: (c.name, c.p if c.p is not None else -1.0))
