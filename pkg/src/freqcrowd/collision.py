"""Frequency-collision conditions for cross-resonance gate lattices.

Seven numbered collision types are counted on a lattice dressed with
per-qubit 01 transition frequencies (MHz).  Writing a = anharmonicity
(negative), f12 = f01 + a and f02 = 2*f01 + a, with c -> t a directed
control->target gate edge, {c, t} also an undirected neighbour pair, and
(i, j, k) a spectator triple (i, k distinct neighbours of j, j controlling
at least one of them):

1. neighbours degenerate:        |f01_c - f01_t| < 17
2. control two-photon on target: |f02_c - 2*f01_t| < 4
3. neighbour hits 12 transition: |f01_c - f12_t| < 30 or |f01_t - f12_c| < 30
4. target outside control band:  f01_t <= f12_c   (see note below)
5. spectators degenerate:        |f01_i - f01_k| < 17
6. spectator hits 12 transition: |f01_i - f12_k| < 25 or |f12_i - f01_k| < 25
7. two-photon via spectator sum: |f02_j - (f01_i + f01_k)| < 17

Types 3 and 6 count once per pair/triple even if both orderings violate.
All windows are strict (open) inequalities.

Note on type 4: the gate wants the target 01 frequency inside the open
interval (f12_c, f01_c).  Falling off the *low* side (control-target
detuning exceeding |a|) is what this rule counts by default; the high side
(target above the control) degrades the gate more gently and can be added
with ``include_cr_upper_violation=True``, which makes the rule the full
"outside the open interval" test.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParameterError
from .lattice import Lattice, next_nearest_triples

DEFAULT_ANHARMONICITY_MHZ = -330.0

TYPE_IDS = (1, 2, 3, 4, 5, 6, 7)


@dataclass(frozen=True)
class CollisionRules:
    """Collision windows in MHz.  Defaults follow the standard
    fixed-frequency transmon gate error budget."""

    anharmonicity_mhz: float = DEFAULT_ANHARMONICITY_MHZ
    nn_degenerate_mhz: float = 17.0
    two_photon_mhz: float = 4.0
    nn_excited_mhz: float = 30.0
    spectator_degenerate_mhz: float = 17.0
    spectator_excited_mhz: float = 25.0
    spectator_two_photon_mhz: float = 17.0
    include_cr_upper_violation: bool = False

    def validate(self) -> None:
        if self.anharmonicity_mhz >= 0.0:
            raise ParameterError("anharmonicity must be negative (MHz)")
        for name in (
            "nn_degenerate_mhz",
            "two_photon_mhz",
            "nn_excited_mhz",
            "spectator_degenerate_mhz",
            "spectator_excited_mhz",
            "spectator_two_photon_mhz",
        ):
            if getattr(self, name) <= 0.0:
                raise ParameterError(f"{name} must be positive")


DEFAULT_RULES = CollisionRules()


@dataclass(frozen=True)
class CollisionIndex:
    """Precomputed integer index arrays for fast vectorised counting."""

    n_qubits: int
    edge_control: np.ndarray
    edge_target: np.ndarray
    tri_i: np.ndarray
    tri_j: np.ndarray
    tri_k: np.ndarray


def build_index(lattice: Lattice) -> CollisionIndex:
    edges = np.array(lattice.edges, dtype=np.intp).reshape(-1, 2)
    triples = np.array(next_nearest_triples(lattice), dtype=np.intp).reshape(-1, 3)
    return CollisionIndex(
        n_qubits=lattice.n_qubits,
        edge_control=edges[:, 0].copy(),
        edge_target=edges[:, 1].copy(),
        tri_i=triples[:, 0].copy(),
        tri_j=triples[:, 1].copy(),
        tri_k=triples[:, 2].copy(),
    )


def count_collisions_batch(index: CollisionIndex, f01_mhz: np.ndarray,
                           rules: CollisionRules = DEFAULT_RULES) -> np.ndarray:
    """Count collisions for a batch of frequency assignments.

    Args:
        index: precomputed arrays from :func:`build_index`.
        f01_mhz: array [n_batches, n_qubits] (a single 1-d assignment is
            promoted to one batch).
        rules: collision windows.

    Returns:
        int64 array [n_batches, 7]; column m holds the count of type m+1.
    """
    rules.validate()
    f = np.asarray(f01_mhz, dtype=float)
    if f.ndim == 1:
        f = f[None, :]
    if f.ndim != 2 or f.shape[1] != index.n_qubits:
        raise InputError(f"frequencies must have {index.n_qubits} columns")
    if not np.all(np.isfinite(f)):
        raise InputError("frequencies must be finite")

    a = rules.anharmonicity_mhz
    out = np.zeros((f.shape[0], 7), dtype=np.int64)

    fc = f[:, index.edge_control]
    ft = f[:, index.edge_target]
    d = fc - ft
    out[:, 0] = (np.abs(d) < rules.nn_degenerate_mhz).sum(axis=1)
    out[:, 1] = (np.abs(2.0 * d + a) < rules.two_photon_mhz).sum(axis=1)
    out[:, 2] = ((np.abs(d - a) < rules.nn_excited_mhz)
                 | (np.abs(d + a) < rules.nn_excited_mhz)).sum(axis=1)
    low = d >= -a
    if rules.include_cr_upper_violation:
        low |= d <= 0.0
    out[:, 3] = low.sum(axis=1)

    fi = f[:, index.tri_i]
    fj = f[:, index.tri_j]
    fk = f[:, index.tri_k]
    dik = fi - fk
    out[:, 4] = (np.abs(dik) < rules.spectator_degenerate_mhz).sum(axis=1)
    out[:, 5] = ((np.abs(dik - a) < rules.spectator_excited_mhz)
                 | (np.abs(dik + a) < rules.spectator_excited_mhz)).sum(axis=1)
    out[:, 6] = (np.abs(2.0 * fj + a - fi - fk) < rules.spectator_two_photon_mhz).sum(axis=1)
    return out


@dataclass(frozen=True)
class CollisionReport:
    per_type: dict     # {1: count, ..., 7: count}
    total: int
    instances: tuple | None = None  # (type, nodes...) when collected


def count_collisions(lattice: Lattice, f01_mhz, rules: CollisionRules = DEFAULT_RULES,
                     *, collect: bool = False, index: CollisionIndex | None = None) -> CollisionReport:
    """Count all seven collision types for one frequency assignment.

    Args:
        lattice: the device graph.
        f01_mhz: per-qubit 01 frequencies, MHz, indexed by node id.
        rules: collision windows.
        collect: also list each offending edge/triple as (type, nodes...).
        index: optional prebuilt :class:`CollisionIndex` to reuse.

    Returns:
        CollisionReport with per-type counts and their sum.
    """
    idx = index if index is not None else build_index(lattice)
    f = np.asarray(f01_mhz, dtype=float)
    if f.shape != (idx.n_qubits,):
        raise InputError(f"expected {idx.n_qubits} frequencies, got shape {f.shape}")
    counts = count_collisions_batch(idx, f, rules)[0]
    per_type = {t: int(counts[t - 1]) for t in TYPE_IDS}
    instances = tuple(_collect_instances(idx, f, rules)) if collect else None
    return CollisionReport(per_type=per_type, total=int(counts.sum()), instances=instances)


def _collect_instances(idx: CollisionIndex, f: np.ndarray, rules: CollisionRules):
    a = rules.anharmonicity_mhz
    for c, t in zip(idx.edge_control, idx.edge_target):
        fc, ft = f[c], f[t]
        if abs(fc - ft) < rules.nn_degenerate_mhz:
            yield (1, int(c), int(t))
        if abs(2.0 * fc + a - 2.0 * ft) < rules.two_photon_mhz:
            yield (2, int(c), int(t))
        if abs(fc - (ft + a)) < rules.nn_excited_mhz or abs(ft - (fc + a)) < rules.nn_excited_mhz:
            yield (3, int(c), int(t))
        if ft <= fc + a or (rules.include_cr_upper_violation and ft >= fc):
            yield (4, int(c), int(t))
    for i, j, k in zip(idx.tri_i, idx.tri_j, idx.tri_k):
        fi, fj, fk = f[i], f[j], f[k]
        if abs(fi - fk) < rules.spectator_degenerate_mhz:
            yield (5, int(i), int(j), int(k))
        if abs(fi - (fk + a)) < rules.spectator_excited_mhz or abs(fk - (fi + a)) < rules.spectator_excited_mhz:
            yield (6, int(i), int(j), int(k))
        if abs(2.0 * fj + a - fi - fk) < rules.spectator_two_photon_mhz:
            yield (7, int(i), int(j), int(k))
