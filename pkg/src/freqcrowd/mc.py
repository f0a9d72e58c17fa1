"""Monte Carlo yield statistics under Gaussian frequency scatter.

The sampling contract: the standard-normal deviate applied to qubit q in
trial t under master seed s depends only on (s, t, q).  Each trial owns a
counter-based generator (Philox keyed by the seed, counter set to the trial
index) and qubit q takes position q of that trial's draw.  Results are
therefore independent of batching, threading, and of which sigma/spacing
values are evaluated — a single deviate matrix can be reused across a whole
sweep, since a trial's frequencies are just set_points + sigma * z.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .collision import DEFAULT_RULES, CollisionIndex, CollisionRules, build_index, count_collisions_batch
from .errors import ParameterError
from .lattice import FrequencyPattern, Lattice, set_points_mhz

DEFAULT_SPACING_GRID_MHZ = tuple(float(s) for s in range(30, 151, 5))
DEFAULT_SIGMA_GRID_MHZ = (
    0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0, 22.0, 24.0,
    26.0, 28.0, 30.0, 32.0, 36.0, 40.0, 44.0, 50.0, 60.0, 70.0, 100.0, 132.3, 150.0,
)

_CHUNK = 256  # trials per work unit; fixed so threading cannot reorder arithmetic


def gaussian_deviates(master_seed: int, n_trials: int, n_qubits: int) -> np.ndarray:
    """Deviate matrix z[t, q] under the (seed, trial, qubit) contract."""
    if n_trials <= 0 or n_qubits <= 0:
        raise ParameterError("n_trials and n_qubits must be positive")
    z = np.empty((n_trials, n_qubits))
    for t in range(n_trials):
        gen = np.random.Generator(np.random.Philox(key=master_seed, counter=[0, 0, 0, t]))
        z[t] = gen.standard_normal(n_qubits)
    return z


@dataclass(frozen=True)
class SweepPoint:
    """Collision statistics of one (sigma, spacing) operating point."""

    family: str
    distance: int
    n_qubits: int
    sigma_mhz: float
    spacing_mhz: float
    trials: int
    master_seed: int
    yield_fraction: float
    mean_collisions: float
    per_type_means: tuple  # 7 floats, types 1..7


def _count_all(index: CollisionIndex, freqs: np.ndarray, rules: CollisionRules,
               threads: int) -> np.ndarray:
    n = freqs.shape[0]
    if threads <= 1 or n <= _CHUNK:
        return count_collisions_batch(index, freqs, rules)
    spans = [(lo, min(lo + _CHUNK, n)) for lo in range(0, n, _CHUNK)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        blocks = list(pool.map(lambda s: count_collisions_batch(index, freqs[s[0]:s[1]], rules), spans))
    return np.concatenate(blocks, axis=0)


def run_point(lattice: Lattice, pattern: FrequencyPattern, sigma_mhz: float, trials: int,
              master_seed: int = 0, *, rules: CollisionRules = DEFAULT_RULES,
              index: CollisionIndex | None = None, deviates: np.ndarray | None = None,
              threads: int = 1) -> SweepPoint:
    """Monte Carlo statistics at one scatter level and pattern spacing.

    ``deviates`` may carry a prebuilt matrix from :func:`gaussian_deviates`
    with at least ``trials`` rows; the first ``trials`` rows are used.
    """
    if sigma_mhz < 0.0:
        raise ParameterError("sigma must be >= 0")
    if trials <= 0:
        raise ParameterError("trials must be positive")
    idx = index if index is not None else build_index(lattice)
    sp = set_points_mhz(lattice, pattern)
    if deviates is None:
        z = gaussian_deviates(master_seed, trials, lattice.n_qubits)
    else:
        if deviates.shape[0] < trials or deviates.shape[1] != lattice.n_qubits:
            raise ParameterError("deviate matrix too small for requested trials")
        z = deviates[:trials]
    counts = _count_all(idx, sp[None, :] + sigma_mhz * z, rules, threads)
    totals = counts.sum(axis=1)
    return SweepPoint(
        family=lattice.family,
        distance=lattice.distance,
        n_qubits=lattice.n_qubits,
        sigma_mhz=float(sigma_mhz),
        spacing_mhz=float(pattern.spacing_mhz),
        trials=int(trials),
        master_seed=int(master_seed),
        yield_fraction=float(np.mean(totals == 0)),
        mean_collisions=float(np.mean(totals)),
        per_type_means=tuple(float(m) for m in counts.mean(axis=0)),
    )


def optimize_spacing(lattice: Lattice, pattern: FrequencyPattern, sigma_mhz: float, trials: int,
                     master_seed: int = 0, *, spacing_grid=DEFAULT_SPACING_GRID_MHZ,
                     rules: CollisionRules = DEFAULT_RULES, index: CollisionIndex | None = None,
                     deviates: np.ndarray | None = None, threads: int = 1) -> SweepPoint:
    """Pick the pattern spacing minimising mean collisions over a grid.

    Ties go to the higher yield, then to the smaller spacing, so at zero
    scatter this returns the smallest collision-free spacing in the grid.
    """
    grid = [float(s) for s in spacing_grid]
    if not grid:
        raise ParameterError("spacing grid is empty")
    idx = index if index is not None else build_index(lattice)
    if deviates is None:
        deviates = gaussian_deviates(master_seed, trials, lattice.n_qubits)
    best = None
    for s in grid:
        pt = run_point(lattice, pattern.with_spacing(s), sigma_mhz, trials, master_seed,
                       rules=rules, index=idx, deviates=deviates, threads=threads)
        key = (pt.mean_collisions, -pt.yield_fraction, s)
        if best is None or key < best[0]:
            best = (key, pt)
    return best[1]


class TrialsPolicy:
    """How many trials to spend at each sweep point."""

    def base_trials(self, distance: int, sigma_mhz: float) -> int:
        raise NotImplementedError

    def boost_trials(self, distance: int, sigma_mhz: float, observed_yield: float) -> int:
        """Trials for a re-run after the pilot, or 0 to keep the pilot."""
        return 0

    def max_trials(self, distance: int) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class FixedTrials(TrialsPolicy):
    n: int = 1000

    def base_trials(self, distance, sigma_mhz):
        return self.n

    def max_trials(self, distance):
        return self.n


@dataclass(frozen=True)
class AdaptiveTrials(TrialsPolicy):
    """Pilot at ``base`` trials, re-run at ``boost`` when the observed yield
    falls below a per-distance threshold (rare-survivor resolution).

    With ``economy_large`` set, distance >= 7 devices run a cheap protocol
    instead: 100 trials below 16 MHz scatter, else a 40-trial pilot that is
    re-run at 100 only when yield still exceeds 50%.
    """

    base: int = 1000
    boost: int = 4000
    low_yield_thresholds: tuple = ((3, 0.002), (5, 0.01), (7, 0.01))
    economy_large: bool = False

    def _threshold(self, distance: int) -> float:
        for d, thr in self.low_yield_thresholds:
            if d == distance:
                return thr
        return 0.0

    def base_trials(self, distance, sigma_mhz):
        if self.economy_large and distance >= 7:
            return 100 if sigma_mhz < 16.0 else 40
        return self.base

    def boost_trials(self, distance, sigma_mhz, observed_yield):
        if self.economy_large and distance >= 7:
            if sigma_mhz >= 16.0 and observed_yield > 0.5:
                return 100
            return 0
        if observed_yield < self._threshold(distance):
            return self.boost
        return 0

    def max_trials(self, distance):
        if self.economy_large and distance >= 7:
            return 100
        return max(self.base, self.boost)


def sweep_sigma(lattice: Lattice, pattern: FrequencyPattern, sigma_grid=DEFAULT_SIGMA_GRID_MHZ,
                trials_policy: TrialsPolicy | None = None, master_seed: int = 0, *,
                optimize: bool = True, spacing_grid=DEFAULT_SPACING_GRID_MHZ,
                rules: CollisionRules = DEFAULT_RULES, threads: int = 1) -> list:
    """Sweep the scatter level, optionally re-optimising the spacing per point.

    The spacing search runs at the policy's base trial count; only the chosen
    operating point is re-measured when the policy asks for more trials.
    """
    policy = trials_policy if trials_policy is not None else AdaptiveTrials()
    idx = build_index(lattice)
    z = gaussian_deviates(master_seed, policy.max_trials(lattice.distance), lattice.n_qubits)
    points = []
    for sigma in sigma_grid:
        sigma = float(sigma)
        n0 = policy.base_trials(lattice.distance, sigma)
        if optimize:
            pt = optimize_spacing(lattice, pattern, sigma, n0, master_seed,
                                  spacing_grid=spacing_grid, rules=rules, index=idx,
                                  deviates=z, threads=threads)
        else:
            pt = run_point(lattice, pattern, sigma, n0, master_seed,
                           rules=rules, index=idx, deviates=z, threads=threads)
        n1 = policy.boost_trials(lattice.distance, sigma, pt.yield_fraction)
        if n1 > n0:
            pt = run_point(lattice, pattern.with_spacing(pt.spacing_mhz), sigma, n1, master_seed,
                           rules=rules, index=idx, deviates=z, threads=threads)
        points.append(pt)
    return points
