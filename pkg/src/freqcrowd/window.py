"""Analytic fixed-window yield model and its size-extrapolation.

A lattice survives when every one of its N qubits lands within a frequency
window of half-width delta_f around its set point, so under independent
Gaussian scatter sigma_f the survival probability is
``Phi(delta_f / sigma_f) ** N`` with Phi the standard normal CDF.  (The
cumulative normal is used directly; an un-normalised Gaussian integral
would exceed 1 and cannot be a probability.)

The effective window of a simulated lattice is recovered by least-squares
against its Monte Carlo yield curve, and windows of several lattice sizes
extrapolate linearly in log N.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import norm

from .errors import ParameterError, SingularFitError, UnfittableError


def window_yield(delta_f_mhz: float, sigma_f_mhz, n_qubits: int):
    """Survival fraction Phi(delta_f/sigma_f)**N; sigma 0 gives exactly 1."""
    if delta_f_mhz <= 0.0:
        raise ParameterError("delta_f must be positive")
    if n_qubits < 1:
        raise ParameterError("n_qubits must be >= 1")
    sig = np.asarray(sigma_f_mhz, dtype=float)
    if np.any(sig < 0.0):
        raise ParameterError("sigma_f must be >= 0")
    with np.errstate(divide="ignore"):
        ratio = np.where(sig > 0.0, delta_f_mhz / np.where(sig > 0.0, sig, 1.0), np.inf)
    out = np.where(np.isinf(ratio), 1.0, norm.cdf(ratio) ** n_qubits)
    return float(out) if np.isscalar(sigma_f_mhz) else out


@dataclass(frozen=True)
class WindowFit:
    delta_f_mhz: float
    n_qubits: int
    n_points_used: int
    rms_residual: float  # in yield units


def fit_window(yield_curve, n_qubits: int) -> WindowFit:
    """Fit the window half-width to a Monte Carlo yield curve.

    Args:
        yield_curve: iterable of (sigma_f_mhz, yield) pairs.
        n_qubits: lattice size N in the model.

    Points with yield exactly 0 or 1 carry no usable information (they sit
    on the sampling floor/ceiling) and are dropped; at least three informative
    points are required.
    """
    pts = [(float(s), float(y)) for s, y in yield_curve]
    use = [(s, y) for s, y in pts if 0.0 < y < 1.0 and s > 0.0]
    if len(use) < 3:
        raise UnfittableError(f"need >= 3 points with yield strictly inside (0, 1), have {len(use)}")
    sig = np.array([s for s, _ in use])
    obs = np.array([y for _, y in use])

    def sse(df):
        return float(np.sum((norm.cdf(df / sig) ** n_qubits - obs) ** 2))

    # The SSE basin is narrow relative to any safe bracket, so seed the
    # bounded search from a coarse log-spaced scan.
    grid = np.geomspace(0.1, 500.0, 200)
    seed = float(grid[int(np.argmin([sse(g) for g in grid]))])
    res = minimize_scalar(sse, bounds=(seed / 2.0, seed * 2.0), method="bounded",
                          options={"xatol": 1e-4})
    df = float(res.x)
    rms = float(np.sqrt(sse(df) / len(use)))
    return WindowFit(delta_f_mhz=df, n_qubits=int(n_qubits), n_points_used=len(use), rms_residual=rms)


@dataclass(frozen=True)
class WindowTrend:
    """Window size versus lattice size: delta_f = coeff_a + coeff_b_ln * ln(N)."""

    coeff_a: float
    coeff_b_ln: float
    rms_residual_mhz: float
    n_points: int

    @property
    def coeff_b_log10(self) -> float:
        return self.coeff_b_ln * np.log(10.0)


def fit_trend(n_qubits_values, delta_f_values) -> WindowTrend:
    """Least-squares line through (ln N, delta_f) pairs."""
    n = np.asarray(n_qubits_values, dtype=float)
    df = np.asarray(delta_f_values, dtype=float)
    if n.shape != df.shape or n.ndim != 1 or n.size < 2:
        raise ParameterError("need matching 1-d arrays with at least two points")
    if np.any(n < 1):
        raise ParameterError("qubit counts must be >= 1")
    x = np.log(n)
    sxx = float(np.sum((x - x.mean()) ** 2))
    if sxx == 0.0:
        raise SingularFitError("all lattice sizes identical; trend slope not identifiable")
    b = float(np.sum((x - x.mean()) * (df - df.mean())) / sxx)
    a = float(df.mean() - b * x.mean())
    rms = float(np.sqrt(np.mean((a + b * x - df) ** 2)))
    return WindowTrend(coeff_a=a, coeff_b_ln=b, rms_residual_mhz=rms, n_points=int(n.size))


def predict_delta_f(trend: WindowTrend, n_qubits) -> float:
    n = np.asarray(n_qubits, dtype=float)
    if np.any(n < 1):
        raise ParameterError("n_qubits must be >= 1")
    out = trend.coeff_a + trend.coeff_b_ln * np.log(n)
    return float(out) if np.isscalar(n_qubits) else out


def required_sigma(delta_f_mhz: float, n_qubits: int, target_yield: float) -> float:
    """Scatter level at which the window model hits a wanted yield.

    Inverts ``window_yield`` in sigma by bisection.  The model's large-sigma
    limit is 0.5**N, so the target must lie strictly between that and 1.
    The bracket is narrowed far below 0.01 MHz so that a round trip through
    ``window_yield`` reproduces the target to ~1e-12.
    """
    if delta_f_mhz <= 0.0:
        raise ParameterError("delta_f must be positive")
    if n_qubits < 1:
        raise ParameterError("n_qubits must be >= 1")
    if not (0.0 < target_yield < 1.0):
        raise ParameterError("target_yield must be inside (0, 1)")
    floor = 0.5 ** n_qubits
    if target_yield <= floor:
        raise ParameterError(f"target_yield {target_yield} at or below the large-sigma limit {floor:g}")
    lo, hi = 0.0, float(delta_f_mhz)
    while window_yield(delta_f_mhz, hi, n_qubits) > target_yield:
        hi *= 2.0
        if hi > 1e9:
            raise ParameterError("target_yield unreachable")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if window_yield(delta_f_mhz, mid, n_qubits) > target_yield:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9:
            break
    return 0.5 * (lo + hi)
