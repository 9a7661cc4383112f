"""Machine-readable certificates: every claimed property of a constructed
graph (girth, nontrivial spectral radius, localized eigenpairs, scarring
witnesses) recorded with enough data to be re-checked from the graph alone,
plus the verifier that does the re-checking."""

from __future__ import annotations

import datetime
import json
import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, girth, is_regular
from .pairing import _floor_log
from .qe import scarring_witness
from .scars import ScarredGraph, localized_eigenvector
from .spectral import extreme_eigenvalues, spectral_threshold
from .trees import radial_spectrum

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"
SUPPORT_EPS = 1e-12


def girth_bound(d: int, r: int) -> int:
    """floor(2 log_{2d-1}((d+1) d^(r-1))), the girth the gluing promises."""
    n = (d + 1) * d ** (r - 1)
    return _floor_log(2 * d - 1, n * n)


def girth_required(d: int, r: int) -> int:
    """2 floor(log_{2d-1}(n-1)) + 2: the hard lower bound glue() enforces."""
    n = (d + 1) * d ** (r - 1)
    return 2 * _floor_log(2 * d - 1, n - 1) + 2


@dataclass
class LocalizedRecord:
    site_id: int
    eigenvalue: float
    support: list                 # vertex ids with |nu| > SUPPORT_EPS
    values: list                  # nu on the support, same order
    residual_inf: float
    residual_two: float
    witness_value: float          # <nu, a nu> for a = 1_S - |S|/M
    support_in_site: bool
    interior_eigenvalue: bool     # |lambda| < 2 sqrt(d)


@dataclass
class Certificate:
    d: int
    r: int
    k: int
    m: int
    M: int
    seed: int
    seeds_used: list
    girth: int
    girth_bound: int
    girth_required: int
    lambda_max_nontrivial: float
    spectral_threshold: float          # (3/sqrt 2) sqrt d
    proposition_threshold: float       # (3d-1)/sqrt(2d-1)
    effective_alpha: float
    spectral_method: str
    localized: list
    sites: list                        # per-site vertex bookkeeping
    checks: dict
    schema_version: int = SCHEMA_VERSION
    tool_version: str = TOOL_VERSION
    created_utc: str = ""              # excluded from determinism comparisons

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        recs = [vars(rec).copy() for rec in self.localized]
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "created_utc": self.created_utc,
            "d": self.d, "r": self.r, "k": self.k, "m": self.m, "M": self.M,
            "seed": self.seed, "seeds_used": self.seeds_used,
            "girth": self.girth, "girth_bound": self.girth_bound,
            "girth_required": self.girth_required,
            "lambda_max_nontrivial": self.lambda_max_nontrivial,
            "spectral_threshold": self.spectral_threshold,
            "proposition_threshold": self.proposition_threshold,
            "effective_alpha": self.effective_alpha,
            "spectral_method": self.spectral_method,
            "localized": recs,
            "sites": self.sites,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        recs = [LocalizedRecord(**r) for r in data["localized"]]
        kw = {k: v for k, v in data.items() if k != "localized"}
        return cls(localized=recs, **kw)

    @classmethod
    def load(cls, path) -> "Certificate":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _site_dict(site) -> dict:
    return {
        "root": int(site.root),
        "t1_levels": [lv.tolist() for lv in site.t1_levels],
        "leaves": site.leaves.tolist(),
        "partners": site.partners.tolist(),
        "removed_matching": site.removed_matching.tolist(),
        "t2_levels": [lv.tolist() for lv in site.t2_levels],
        "t3_levels": [lv.tolist() for lv in site.t3_levels],
    }


def build_certificate(sg: ScarredGraph, residual_tol: float = 1e-10,
                      seed: int = 0, timestamp: bool = True) -> Certificate:
    """Measure every certified quantity of a scarred graph; failures are
    recorded in the checks map, never raised."""
    g = sg.graph
    d, r, k = sg.d, sg.r, len(sg.sites)
    M, m = g.n, sg.base_size
    gv = sg.girth if sg.girth is not None else girth(g)
    gv = int(gv) if gv != math.inf else -1
    summary = extreme_eigenvalues(g, seed=seed)
    thm, prop = spectral_threshold(d)

    localized = []
    checks = {
        "regular": is_regular(g) == d + 1,
        "vertex_count": M == m + sum(len(s.v1) + len(s.v2) for s in sg.sites)
        if k else M == m,
    }
    if k:
        spec = radial_spectrum(d, r - 1)
        for sid, site in enumerate(sg.sites):
            allowed = set(int(v) for v in np.concatenate([site.v1, site.v2]))
            for lam in spec.eigenvalues:
                nu = localized_eigenvector(sg, sid, float(lam),
                                           residual_tol=math.inf)
                res = g.csr() @ nu - float(lam) * nu
                support = np.nonzero(np.abs(nu) > SUPPORT_EPS)[0]
                wit = scarring_witness(nu, support, M)
                localized.append(LocalizedRecord(
                    sid, float(lam), support.tolist(),
                    nu[support].tolist(),
                    float(np.abs(res).max()), float(np.linalg.norm(res)),
                    wit.value,
                    all(int(v) in allowed for v in support),
                    abs(float(lam)) < 2.0 * math.sqrt(d)))
        checks["localized_residuals"] = all(
            rec.residual_inf <= residual_tol for rec in localized)
        checks["localized_supports"] = all(
            rec.support_in_site for rec in localized)
        checks["localized_interior"] = all(
            rec.interior_eigenvalue for rec in localized)
        checks["localized_count"] = len(localized) == k * r
        checks["girth_at_least_bound"] = gv >= girth_bound(d, r)
        checks["girth_at_least_required"] = gv >= girth_required(d, r)
    checks["spectral_within_threshold"] = summary.lambda2_abs <= thm

    created = datetime.datetime.now(datetime.timezone.utc).isoformat() \
        if timestamp else ""
    alpha = r * math.log(d) / math.log(m) if m > 1 else 0.0
    return Certificate(
        d=d, r=r, k=k, m=m, M=M, seed=sg.seed, seeds_used=list(sg.seeds_used),
        girth=gv, girth_bound=girth_bound(d, r) if k else 0,
        girth_required=girth_required(d, r) if k else 0,
        lambda_max_nontrivial=summary.lambda2_abs,
        spectral_threshold=thm, proposition_threshold=prop,
        effective_alpha=alpha, spectral_method=summary.method,
        localized=localized, sites=[_site_dict(s) for s in sg.sites],
        checks=checks, created_utc=created)


@dataclass
class VerificationItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    items: list
    passed: bool

    def summary(self) -> str:
        lines = [f"[{'PASS' if it.ok else 'FAIL'}] {it.name}"
                 + (f": {it.detail}" if it.detail else "")
                 for it in self.items]
        lines.append("verification " + ("PASSED" if self.passed else "FAILED"))
        return "\n".join(lines)


def verify_certificate(g: Graph, cert: Certificate,
                       spectral_tol: float = 1e-7) -> VerificationReport:
    """Recompute every certified quantity from the graph and diff it against
    the certificate; each mismatch is itemized."""
    items = []

    def check(name, ok, detail=""):
        items.append(VerificationItem(name, bool(ok), detail))

    check("vertex_count", g.n == cert.M, f"graph {g.n} vs certificate {cert.M}")
    deg = is_regular(g)
    check("regularity", deg == cert.d + 1, f"degree {deg}")
    if g.n == cert.M:
        gv = girth(g)
        gv = int(gv) if gv != math.inf else -1
        check("girth", gv == cert.girth, f"measured {gv} vs {cert.girth}")
        check("girth_bound_consistent",
              cert.girth_bound == girth_bound(cert.d, cert.r)
              if cert.k else cert.girth_bound == 0)
        summary = extreme_eigenvalues(g, seed=0)
        check("lambda_max_nontrivial",
              abs(summary.lambda2_abs - cert.lambda_max_nontrivial)
              <= spectral_tol,
              f"measured {summary.lambda2_abs!r} vs {cert.lambda_max_nontrivial!r}")
        thm, prop = spectral_threshold(cert.d)
        check("spectral_threshold", abs(thm - cert.spectral_threshold) < 1e-12)
        check("proposition_threshold",
              abs(prop - cert.proposition_threshold) < 1e-12)
        for i, rec in enumerate(cert.localized):
            nu = np.zeros(g.n)
            nu[np.array(rec.support, dtype=np.int64)] = rec.values
            norm = np.linalg.norm(nu)
            res = g.csr() @ nu - rec.eigenvalue * nu
            rinf = float(np.abs(res).max())
            ok = (abs(norm - 1.0) <= 1e-9
                  and rinf <= max(2 * rec.residual_inf, 1e-10))
            wit = float(np.sum(nu[np.array(rec.support, np.int64)] ** 2)
                        - len(rec.support) / g.n)
            ok = ok and abs(wit - rec.witness_value) <= 1e-12
            check(f"localized_{i}", ok,
                  f"lambda={rec.eigenvalue!r} residual={rinf:.2e}")
    passed = all(it.ok for it in items)
    return VerificationReport(items, passed)
