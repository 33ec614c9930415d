"""Finite-size scaling fits and the Delta <-> alpha <-> R <-> K dictionary."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError, FitError, NeelViolation

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalingFit:
    """Coefficients of S(L) = a L + b log L + c."""

    a: float
    b: float
    c: float
    stderr_a: float
    stderr_b: float
    stderr_c: float
    rss: float
    points: tuple

    def predict(self, L):
        L = np.asarray(L, dtype=float)
        return self.a * L + self.b * np.log(L) + self.c

    @property
    def coefficients(self):
        return np.array([self.a, self.b, self.c])

    @property
    def stderr(self):
        return np.array([self.stderr_a, self.stderr_b, self.stderr_c])


def design_matrix(L):
    L = np.asarray(L, dtype=float)
    return np.column_stack([L, np.log(L), np.ones_like(L)])


def fit_scaling(points):
    """Unweighted least squares of (L, S) pairs against a L + b log L + c.

    Solved through a QR factorization of the design matrix; standard errors
    use the unbiased residual variance rss / (n - 3).
    """
    pts = tuple((float(L), float(S)) for L, S in points)
    if not pts:
        raise FitError("no points to fit")
    L = np.array([p[0] for p in pts])
    S = np.array([p[1] for p in pts])
    if np.any(L <= 0):
        raise FitError("sizes must be positive")
    if len(np.unique(L)) < 3:
        raise FitError(f"need at least 3 distinct sizes, got {len(np.unique(L))}")

    X = design_matrix(L)
    Q, R = scipy.linalg.qr(X, mode="economic")
    coef = scipy.linalg.solve_triangular(R, Q.T @ S)
    resid = S - X @ coef
    rss = float(resid @ resid)
    dof = len(S) - 3
    if dof > 0:
        Rinv = scipy.linalg.solve_triangular(R, np.eye(3))
        cov = rss / dof * (Rinv @ Rinv.T)
        err = np.sqrt(np.diag(cov))
    else:
        log.warning("exactly determined fit: standard errors undefined")
        err = np.full(3, np.nan)
    return ScalingFit(*coef, *err, rss, pts)


# ---------------------------------------------------------------------------
# Delta, alpha, R, K


def alpha_from_delta(delta):
    """alpha in [0, 1/2] with Delta = -cos(2 pi alpha)."""
    delta = np.asarray(delta, dtype=float)
    if np.any((delta < -1) | (delta > 1)):
        raise DomainError(f"delta must lie in [-1, 1], got {delta}")
    out = np.arccos(-delta) / (2 * np.pi)
    return float(out) if out.ndim == 0 else out


def delta_from_alpha(alpha):
    alpha = np.asarray(alpha, dtype=float)
    if np.any((alpha < 0) | (alpha > 0.5)):
        raise DomainError(f"alpha must lie in [0, 1/2], got {alpha}")
    out = -np.cos(2 * np.pi * alpha)
    return float(out) if out.ndim == 0 else out


def radius_squared_from_delta(delta):
    delta = np.asarray(delta, dtype=float)
    if np.any((delta < -1) | (delta > 1)):
        raise DomainError(f"delta must lie in [-1, 1], got {delta}")
    r2 = 1 / (2 * np.pi) - np.arccos(delta) / (2 * np.pi**2)
    # Delta = -1 cancels exactly; clip the rounding residue
    r2 = np.maximum(r2, 0.0)
    return float(r2) if r2.ndim == 0 else r2


def radius_from_delta(delta):
    """Compactification radius of the free boson at anisotropy Delta."""
    return np.sqrt(radius_squared_from_delta(delta))


def luttinger_from_radius(R):
    """K = 1 / (4 pi R^2); infinite at R = 0 (Delta = -1, not critical)."""
    R = np.asarray(R, dtype=float)
    with np.errstate(divide="ignore"):
        K = 1 / (4 * np.pi * R**2)
    return float(K) if K.ndim == 0 else K


# ---------------------------------------------------------------------------
# b(Delta)


def default_delta_grid(n=20):
    """n equally spaced anisotropies in (-1, 1], the last one at Delta = 1."""
    # rounded so that the grid prints as -0.9, -0.8, ...
    return np.round(-1 + 2 * np.arange(1, n + 1) / n, 12)


@dataclass
class CurvePoint:
    delta: float
    b: float = np.nan
    stderr_b: float = np.nan
    alpha_theory: float = np.nan
    fit: ScalingFit = None
    error: str = ""


def entropies(delta, L_list, source="ed", tol=None):
    """S_inf(L) for odd sizes from exact diagonalization or from the ansatz."""
    if source == "ed":
        from .xxz import RESIDUAL_TOL, entropy_scan

        rows = entropy_scan(delta, L_list, tol=RESIDUAL_TOL if tol is None else tol)
        bad = [r for r in rows if r.error]
        if bad:
            raise RuntimeError("; ".join(r.error for r in bad))
        return np.array([r.s_inf for r in rows])
    if source == "imps":
        from .imps import imps_min_entropy

        alpha = alpha_from_delta(delta)
        return np.array([imps_min_entropy(alpha, L) for L in L_list])
    raise ValueError(f"unknown source {source!r}")


def is_critical(delta):
    return -1 < delta <= 1


def curve_point(delta, L_list, S):
    """Fit one anisotropy's S_inf(L) values into a CurvePoint."""
    delta = float(delta)
    if not is_critical(delta):
        return CurvePoint(delta, error="non-critical")
    fit = fit_scaling(zip(L_list, S))
    return CurvePoint(delta, fit.b, fit.stderr_b, alpha_from_delta(delta), fit)


def b_curve(delta_grid, L_list, source="ed", tol=None):
    """Fitted log coefficient b for each anisotropy on the grid.

    Points outside the critical range (-1, 1] and points whose solve fails
    are returned with ``error`` set; the scan continues.
    """
    L_list = [int(L) for L in L_list]
    if any(L % 2 == 0 for L in L_list):
        raise DomainError("b(Delta) fits use odd sizes only")
    out = []
    for delta in delta_grid:
        delta = float(delta)
        if not is_critical(delta):
            out.append(CurvePoint(delta, error="non-critical"))
            continue
        try:
            out.append(curve_point(delta, L_list, entropies(delta, L_list, source, tol)))
        except (RuntimeError, FitError, NeelViolation) as exc:
            log.warning("delta=%g (%s) failed: %s", delta, source, exc)
            out.append(CurvePoint(delta, alpha_theory=alpha_from_delta(delta), error=str(exc)))
    return out
