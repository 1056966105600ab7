"""Randomized audits: seeded configuration sampling, batch certificate runs,
p-sweeps and report files.

Reports are written with every float rendered to 17 significant digits, which
round-trips IEEE-754 doubles exactly, so identical audit specs produce
byte-identical JSON.  Wall time is tracked on the in-memory report but never
serialized for that reason.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from . import certs
from .polyzero import ZeroConfig, center

DISTRIBUTIONS = ("disk", "gaussian", "real", "clustered", "roots_of_unity_perturbed")

DEFAULT_P_GRID = (1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0)
DEFAULT_N_VALUES = (3, 4, 5, 6, 7, 8)


@dataclass(frozen=True)
class AuditSpec:
    """What to sample and which orders to certify."""

    n_values: tuple[int, ...] = DEFAULT_N_VALUES
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    distributions: tuple[str, ...] = DISTRIBUTIONS
    samples_per_cell: int = 200
    seed: int = 0
    tolerances: tuple[float, float] = (certs.ABS_TOL, certs.REL_TOL)

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        object.__setattr__(self, "distributions", tuple(self.distributions))
        if not self.n_values or min(self.n_values) < 2:
            raise ValueError("n_values must be nonempty with every n >= 2")
        if not self.p_grid or min(self.p_grid) < 1:
            raise ValueError("p_grid must be nonempty with every p >= 1")
        for dist in self.distributions:
            if dist not in DISTRIBUTIONS:
                raise ValueError(f"unknown distribution {dist!r}")
        if self.samples_per_cell < 1:
            raise ValueError("samples_per_cell must be positive")

    def to_dict(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "p_grid": list(self.p_grid),
            "distributions": list(self.distributions),
            "samples_per_cell": self.samples_per_cell,
            "seed": self.seed,
            "tolerances": list(self.tolerances),
        }

    @staticmethod
    def from_dict(data: dict) -> "AuditSpec":
        known = {}
        for key in (
            "n_values",
            "p_grid",
            "distributions",
            "samples_per_cell",
            "seed",
            "tolerances",
        ):
            if key in data:
                known[key] = data[key]
        if "tolerances" in known:
            known["tolerances"] = tuple(known["tolerances"])
        return AuditSpec(**known)


@dataclass
class CertStats:
    """Aggregate over one certificate key within an audit."""

    total: int = 0
    passed: int = 0
    max_ratio: float | None = None
    argmax_zeros: list[list[float]] | None = None


@dataclass
class AuditReport:
    """Everything a finished audit produced; re-checkable from stored zeros."""

    spec: AuditSpec
    sabotage: bool
    per_certificate: dict[str, CertStats] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)
    wall_time_s: float = 0.0  # in-memory only, never serialized

    @property
    def total(self) -> int:
        return sum(s.total for s in self.per_certificate.values())

    @property
    def passed(self) -> int:
        return sum(s.passed for s in self.per_certificate.values())


def _zeros_to_pairs(z: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in z]


def _pairs_to_config(pairs) -> ZeroConfig:
    return center(ZeroConfig(tuple(complex(re, im) for re, im in pairs)))


def sample_config(n: int, dist: str, seed: int) -> ZeroConfig:
    """Draw n zeros from a named distribution and center them.

    disk: uniform on the unit disk; gaussian: standard complex normal;
    real: standard normal on the real axis; clustered: two blobs at +-1 with
    spread 0.1; roots_of_unity_perturbed: the n-th roots of unity plus
    complex Gaussian noise of scale 0.05.  Deterministic in (n, dist, seed).
    """
    if dist not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {dist!r}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(
        np.random.SeedSequence((int(seed), int(n), DISTRIBUTIONS.index(dist)))
    )
    if dist == "disk":
        radius = np.sqrt(rng.uniform(0.0, 1.0, n))
        angle = rng.uniform(0.0, 2.0 * np.pi, n)
        z = radius * np.exp(1j * angle)
    elif dist == "gaussian":
        z = _complex_normal(rng, n)
    elif dist == "real":
        z = rng.standard_normal(n).astype(complex)
    elif dist == "clustered":
        blob = rng.choice([-1.0, 1.0], size=n)
        z = blob + 0.1 * _complex_normal(rng, n)
    else:  # roots_of_unity_perturbed
        z = np.exp(2j * np.pi * np.arange(n) / n) + 0.05 * _complex_normal(rng, n)
    return center(ZeroConfig(tuple(z)))


def _complex_normal(rng, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def _sample_seed(master: int, cell: int, index: int) -> int:
    """Counter-style per-sample seed: independent of iteration order."""
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=(cell, index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _certificate_key(cert: certs.Certificate) -> str:
    if cert.p is None:
        return cert.name
    return f"{cert.name}[p={format_float(cert.p)}]"


def run_audit(spec: AuditSpec, sabotage: bool = False) -> AuditReport:
    """Evaluate check_all over every sampled cell of the spec.

    ``sabotage`` halves the order-p Schoenberg constant, which must flood the
    report with violations; it exists so tests can prove the detection
    machinery works.  Per-sample numeric failures are recorded under
    ``errors`` and never abort the audit.  Deterministic in the spec.
    """
    report = AuditReport(spec=spec, sabotage=sabotage)
    abs_tol, rel_tol = spec.tolerances
    start = time.perf_counter()
    cell = 0
    for n in spec.n_values:
        for dist in spec.distributions:
            for index in range(spec.samples_per_cell):
                cfg = sample_config(n, dist, _sample_seed(spec.seed, cell, index))
                pairs = _zeros_to_pairs(cfg.as_array())
                try:
                    results = certs.check_all(
                        cfg,
                        spec.p_grid,
                        constant_scale=0.5 if sabotage else 1.0,
                        abs_tol=abs_tol,
                        rel_tol=rel_tol,
                    )
                except ArithmeticError as exc:
                    report.errors.append(
                        {"n": n, "distribution": dist, "zeros": pairs,
                         "error": f"{type(exc).__name__}: {exc}"}
                    )
                    continue
                for cert in results:
                    key = _certificate_key(cert)
                    stats = report.per_certificate.setdefault(key, CertStats())
                    stats.total += 1
                    if cert.holds:
                        stats.passed += 1
                    else:
                        report.violations.append(
                            {"certificate": cert.to_dict(), "n": n,
                             "distribution": dist, "zeros": pairs}
                        )
                    if cert.ratio is not None and (
                        stats.max_ratio is None or cert.ratio > stats.max_ratio
                    ):
                        stats.max_ratio = cert.ratio
                        stats.argmax_zeros = pairs
            cell += 1
    report.wall_time_s = time.perf_counter() - start
    return report


def re_evaluate_violation(entry: dict, spec: AuditSpec) -> certs.Certificate:
    """Re-run the single certificate stored in a violation entry."""
    cfg = _pairs_to_config(entry["zeros"])
    stored = certs.Certificate.from_dict(entry["certificate"])
    p_list = [stored.p] if stored.p is not None else [2.0]
    abs_tol, rel_tol = spec.tolerances
    for cert in certs.check_all(cfg, p_list, abs_tol=abs_tol, rel_tol=rel_tol):
        if cert.name == stored.name and cert.p == stored.p:
            return cert
    raise KeyError(f"certificate {stored.name} not reproduced")


@dataclass(frozen=True)
class SweepRow:
    p: float
    lhs: float
    rhs: float
    ratio: float | None


def sweep_p(cfg: ZeroConfig, grid) -> list[SweepRow]:
    """The order-p Schoenberg certificate evaluated across a grid of orders."""
    rows = []
    for p in sorted(float(p) for p in grid):
        cert = certs.schoenberg_order_p(cfg, p)
        rows.append(SweepRow(p=p, lhs=cert.lhs, rhs=cert.rhs, ratio=cert.ratio))
    return rows


# --- report rendering ------------------------------------------------------

CSV_COLUMNS = ("name", "n", "p", "lhs", "rhs", "slack", "ratio", "holds")


def format_float(value: float) -> str:
    """IEEE-754 double rendered with 17 significant digits (exact round trip)."""
    return format(float(value), ".17g")


def _render_json(obj, out: list[str]) -> None:
    if isinstance(obj, dict):
        out.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(f'"{key}": ')
            _render_json(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, val in enumerate(obj):
            if i:
                out.append(", ")
            _render_json(val, out)
        out.append("]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    elif obj is None:
        out.append("null")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    else:
        raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def dumps_report(obj) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    out: list[str] = []
    _render_json(obj, out)
    return "".join(out) + "\n"


def _report_to_dict(report: AuditReport) -> dict:
    per_cert = {}
    for key in sorted(report.per_certificate):
        stats = report.per_certificate[key]
        per_cert[key] = {
            "total": stats.total,
            "passed": stats.passed,
            "max_ratio": stats.max_ratio,
            "argmax_zeros": stats.argmax_zeros,
        }
    return {
        "spec": report.spec.to_dict(),
        "sabotage": report.sabotage,
        "total": report.total,
        "passed": report.passed,
        "per_certificate": per_cert,
        "violations": report.violations,
        "errors": report.errors,
    }


def _certificates_of(report) -> list[certs.Certificate]:
    if isinstance(report, AuditReport):
        return [
            certs.Certificate.from_dict(entry["certificate"])
            for entry in report.violations
        ]
    return list(report)


def emit_report(report, path, format: str = "json") -> None:
    """Write an audit report or a batch of certificates to disk.

    JSON embeds each certificate verbatim in its wire schema inside one
    top-level object.  CSV emits one certificate per row with the fixed
    column set; for an audit report the rows are its violations (an empty
    audit yields just the header).
    """
    if format not in ("json", "csv"):
        raise ValueError(f"format must be 'json' or 'csv', got {format!r}")
    if format == "json":
        if isinstance(report, AuditReport):
            payload = _report_to_dict(report)
        else:
            payload = {"certificates": [c.to_dict() for c in report]}
        text = dumps_report(payload)
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for cert in _certificates_of(report):
            writer.writerow(
                [
                    cert.name,
                    cert.n,
                    "" if cert.p is None else format_float(cert.p),
                    format_float(cert.lhs),
                    format_float(cert.rhs),
                    format_float(cert.slack),
                    "" if cert.ratio is None else format_float(cert.ratio),
                    str(cert.holds).lower(),
                ]
            )
        text = buffer.getvalue()
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
