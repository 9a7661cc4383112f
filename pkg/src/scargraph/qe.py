"""Localization statistics: scarring witnesses, the eigenbasis
quantum-ergodicity average, minimal support for a given mass, and the
explicit support lower bound implied by girth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scars import ScarSite


@dataclass
class ScarWitness:
    """<psi, a psi> for a = 1_S - |S|/M, the mean-zero indicator of S."""
    support: np.ndarray
    value: float
    mass: float                 # squared l2 mass of psi on S
    sup_norm_ok: bool           # the test function satisfies |a| <= 1


def scarring_witness(psi, S, M: int | None = None) -> ScarWitness:
    psi = np.asarray(psi, dtype=float)
    if M is None:
        M = len(psi)
    if len(psi) != M:
        raise ValueError("psi must live on all M vertices")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"psi must be a unit vector, got norm {norm}")
    S = np.asarray(sorted(int(v) for v in S), dtype=np.int64)
    mass = float(np.sum(psi[S] ** 2))
    frac = len(S) / M
    value = mass - frac
    sup_ok = max(abs(1.0 - frac), frac) <= 1.0 + 1e-12
    return ScarWitness(S, value, mass, sup_ok)


def qe_average(basis, a, orth_tol: float = 1e-8) -> float:
    """(1/M) sum_i <psi_i, a psi_i>^2 over an orthonormal eigenbasis, for a
    mean-zero test function with sup norm at most 1.

    ``basis`` holds the vectors as columns.  Diagnostic only: needs the full
    basis, so it is restricted to graphs small enough to diagonalize.
    """
    basis = np.asarray(basis, dtype=float)
    a = np.asarray(a, dtype=float)
    M = len(a)
    if basis.shape != (M, M):
        raise ValueError("basis must be a full M x M column matrix")
    if abs(a.sum()) > 1e-9 * max(1.0, M):
        raise ValueError("test function must have zero mean")
    if np.abs(a).max() > 1.0 + 1e-12:
        raise ValueError("test function must have sup norm at most 1")
    if M <= 1024:
        gram = basis.T @ basis
        err = np.abs(gram - np.eye(M)).max()
    else:
        rng = np.random.default_rng(0)
        cols = rng.choice(M, size=64, replace=False)
        gram = basis[:, cols].T @ basis[:, cols]
        err = np.abs(gram - np.eye(len(cols))).max()
    if err > orth_tol:
        raise ValueError(f"basis is not orthonormal within {orth_tol}: {err}")
    vals = a @ (basis ** 2)
    return float(np.mean(vals ** 2))


def min_support_for_mass(v, eps: float):
    """Size (and members) of the smallest vertex set carrying squared mass
    at least eps; the greedy prefix of coordinates sorted by |v| descending
    is optimal."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    v = np.asarray(v, dtype=float)
    w = v ** 2
    order = np.argsort(-w, kind="stable")
    csum = np.cumsum(w[order])
    k = int(np.searchsorted(csum, eps - 1e-12)) + 1
    k = min(k, len(v))
    return k, order[:k]


@dataclass
class LocalizationBounds:
    """Support lower bounds for an eigenvector carrying mass eps.

    ``gs_bound`` is the fully explicit eps * d^(eps*girth/4) / (2 d^2).
    The older bound has an unspecified constant; only its exponent is
    evaluated, as ``bl_exponent`` with shape constant * eps^2 * d^exponent.
    """
    gs_bound: float
    bl_exponent: float
    bl_term: float               # eps^2 * d^bl_exponent, constant unknown


def localization_bounds(d: int, girth_value: float, eps: float) -> LocalizationBounds:
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    gs = eps * d ** (eps * girth_value / 4.0) / (2.0 * d * d)
    expo = 2.0 ** (-7) * eps * eps * girth_value
    return LocalizationBounds(gs, expo, eps * eps * d ** expo)


@dataclass
class PartialLocalization:
    levels_used: int
    support: np.ndarray
    mass: float
    level_masses: np.ndarray     # per interior level of the carved tree


def partial_localization(nu, site: ScarSite, eps: float) -> PartialLocalization:
    """Mass of a localized eigenvector on the top floor(eps*r) levels of the
    carved tree; floor(eps*r) = 0 degenerates to the empty set."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    nu = np.asarray(nu, dtype=float)
    level_masses = np.array([float(np.sum(nu[lv] ** 2)) for lv in site.t1_levels])
    t = math.floor(eps * site.r)
    if t == 0:
        return PartialLocalization(0, np.zeros(0, dtype=np.int64), 0.0,
                                   level_masses)
    support = np.concatenate(site.t1_levels[:t])
    return PartialLocalization(t, support, float(np.sum(nu[support] ** 2)),
                               level_masses)
