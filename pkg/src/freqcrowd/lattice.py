"""Qubit lattice builders and frequency-pattern assignment.

Three device families are supported, each parametrised by an odd code
distance d >= 3:

* ``square``        — data qubits on a d x d grid plus the interleaved
                      checkerboard of check qubits between them
                      (2*d**2 - 1 qubits, max degree 4).
* ``heavy_square``  — the square grid with every coupling graph edge
                      subdivided by a two-neighbour coupler, plus paired
                      boundary couplers (3*d**2 - 2 qubits, max degree 4).
* ``heavy_hexagon`` — rows of qubits joined by sparse vertical connectors
                      ((5*d**2 + 2*d - 5)/2 qubits, max degree 3).

Edges are directed control -> target for the cross-resonance gate.  In the
heavy families every control sits on a degree-<=2 vertex; in the square
family the check qubits drive their data neighbours.

Frequency patterns assign each qubit one of a small set of evenly spaced
set points: five for the square family, three for the heavy families.  The
assignments are chosen so a perfectly fabricated device (zero scatter) has
no frequency collisions at the default 70 MHz spacing.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .errors import InputError, ParameterError

FAMILIES = ("square", "heavy_square", "heavy_hexagon")

DEFAULT_BASE_GHZ = 5.0
DEFAULT_SPACING_MHZ = 70.0


@dataclass(frozen=True)
class QubitNode:
    node_id: int
    x: float
    y: float
    code_role: str      # "data" | "ancilla" | "flag"
    gate_role: str      # "control" | "target"
    pattern_index: int  # 1-based frequency set-point index


@dataclass(frozen=True)
class Lattice:
    family: str
    distance: int
    nodes: tuple
    edges: tuple  # directed (control_id, target_id)

    @property
    def n_qubits(self) -> int:
        return len(self.nodes)

    @property
    def pattern_size(self) -> int:
        return 5 if self.family == "square" else 3

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_qubits, dtype=int)
        for c, t in self.edges:
            deg[c] += 1
            deg[t] += 1
        return deg

    def neighbors(self) -> list:
        adj: list = [[] for _ in range(self.n_qubits)]
        for c, t in self.edges:
            adj[c].append(t)
            adj[t].append(c)
        return [sorted(a) for a in adj]


def canonical_family(family: str) -> str:
    """Accept dash or underscore spellings; return the canonical name."""
    name = str(family).strip().lower().replace("-", "_")
    if name not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return name


def expected_node_count(family: str, distance: int) -> int:
    d = distance
    family = canonical_family(family)
    if family == "square":
        return 2 * d * d - 1
    if family == "heavy_square":
        return 3 * d * d - 2
    if family == "heavy_hexagon":
        return (5 * d * d + 2 * d - 5) // 2
    raise ParameterError(f"unknown family {family!r}")


def _validate_distance(distance: int) -> None:
    if distance < 3 or distance % 2 == 0:
        raise ParameterError(f"distance must be an odd integer >= 3, got {distance}")


def build_lattice(family: str, distance: int) -> Lattice:
    """Construct a lattice; deterministic node ids in scan order."""
    _validate_distance(distance)
    family = canonical_family(family)
    if family == "square":
        lat = _build_square(distance)
    elif family == "heavy_square":
        lat = _build_heavy_square(distance)
    else:
        lat = _build_heavy_hexagon(distance)
    assert lat.n_qubits == expected_node_count(family, distance)
    return lat


# ---------------------------------------------------------------- square

def _square_check_kind(x: int, y: int, d: int) -> str | None:
    """Which check-qubit class (if any) occupies even-even grid point (x, y).

    Interior columns carry one class on alternating plaquettes, interior rows
    the other; together they tile the d x d data grid with d**2 - 1 checks.
    """
    hi = 2 * d
    if x % 2 or y % 2:
        return None
    if 2 <= x <= hi - 2 and ((x % 4 == 2 and y % 4 == 0) or (x % 4 == 0 and y % 4 == 2)):
        return "a"
    if 2 <= y <= hi - 2 and ((x % 4 == 0 and y % 4 == 0) or (x % 4 == 2 and y % 4 == 2)):
        return "b"
    return None


def _build_square(d: int) -> Lattice:
    hi = 2 * d
    nodes = []
    id_at = {}
    for y in range(hi + 1):
        for x in range(hi + 1):
            if x % 2 == 1 and y % 2 == 1:
                col, row = (x - 1) // 2, (y - 1) // 2
                idx = ((3, 2), (1, 4))[row % 2][col % 2]  # 2x2 tile holds all four
                node = QubitNode(len(nodes), x, y, "data", "target", idx)
            elif _square_check_kind(x, y, d):
                node = QubitNode(len(nodes), x, y, "ancilla", "control", 5)
            else:
                continue
            id_at[(x, y)] = node.node_id
            nodes.append(node)
    edges = []
    for node in nodes:
        if node.code_role != "ancilla":
            continue
        for dx in (-1, 1):
            for dy in (-1, 1):
                tgt = id_at.get((node.x + dx, node.y + dy))
                if tgt is not None:
                    edges.append((node.node_id, tgt))
    return Lattice("square", d, tuple(nodes), tuple(sorted(edges)))


# ---------------------------------------------------------- heavy square

def _build_heavy_square(d: int) -> Lattice:
    nodes = []
    couple = []  # (coupler position, code_role, [data grid coords it joins])
    data_id = {}

    def add(x, y, code_role, gate_role, idx):
        nodes.append(QubitNode(len(nodes), x, y, code_role, gate_role, idx))
        return len(nodes) - 1

    for i in range(d):          # data rows, with couplers interleaved in scan order
        for j in range(d):
            data_id[(i, j)] = add(2 * j, 2 * i, "data", "target", 1 + (i + j) % 2)
            if j < d - 1:
                couple.append(((2 * j + 1, 2 * i), "flag", [(i, j), (i, j + 1)]))
        if i < d - 1:
            for j in range(d):
                couple.append(((2 * j, 2 * i + 1), "ancilla", [(i, j), (i + 1, j)]))
    # paired boundary couplers, alternating like the interleaved check pattern:
    # top pairs start one column in, bottom pairs at the corner, and likewise
    # (rotated) on the left/right sides.
    for j in range(1, d - 1, 2):
        couple.append(((2 * j + 1, -1), "ancilla", [(0, j), (0, j + 1)]))
    for j in range(0, d - 2, 2):
        couple.append(((2 * j + 1, 2 * d - 1), "ancilla", [(d - 1, j), (d - 1, j + 1)]))
    for i in range(0, d - 2, 2):
        couple.append(((-1, 2 * i + 1), "ancilla", [(i, 0), (i + 1, 0)]))
    for i in range(1, d - 1, 2):
        couple.append(((2 * d - 1, 2 * i + 1), "ancilla", [(i, d - 1), (i + 1, d - 1)]))

    edges = []
    for (x, y), role, joins in couple:
        cid = add(x, y, role, "control", 3)
        for ij in joins:
            edges.append((cid, data_id[ij]))
    return Lattice("heavy_square", d, tuple(nodes), tuple(sorted(edges)))


# --------------------------------------------------------- heavy hexagon

def _hex_row_cols(r: int, d: int) -> range:
    if r == 0:
        return range(0, 2 * d)
    if r == d - 1:
        return range(1, 2 * d + 1)
    return range(0, 2 * d + 1)


def _build_heavy_hexagon(d: int) -> Lattice:
    nodes = []
    id_at = {}

    def add(x, y, code_role, gate_role, idx):
        node = QubitNode(len(nodes), x, y, code_role, gate_role, idx)
        id_at[(x, y)] = node.node_id
        nodes.append(node)

    edges = []
    for r in range(d):
        cols = _hex_row_cols(r, d)
        for c in cols:
            if c % 2 == 0:
                add(c, 2 * r, "data" if r == 0 else "flag", "target", 1 + (r + c // 2) % 2)
            else:
                add(c, 2 * r, "flag" if r == 0 else "data", "control", 3)
        for c in cols:
            if c + 1 in cols:  # row-internal edge; the odd-column qubit drives
                lo, hi = id_at[(c, 2 * r)], id_at[(c + 1, 2 * r)]
                edges.append((hi, lo) if c % 2 == 0 else (lo, hi))
        if r > 0:  # connectors bridging the gap just closed, alternating offset
            above = _hex_row_cols(r - 1, d)
            for c in range(0 if (r - 1) % 2 == 0 else 2, 2 * d + 1, 4):
                if c in cols and c in above:
                    add(c, 2 * r - 1, "ancilla", "control", 3)
                    cid = id_at[(c, 2 * r - 1)]
                    edges.append((cid, id_at[(c, 2 * r - 2)]))
                    edges.append((cid, id_at[(c, 2 * r)]))
    return Lattice("heavy_hexagon", d, tuple(nodes), tuple(sorted(edges)))


# ------------------------------------------------------------- patterns

@dataclass(frozen=True)
class FrequencyPattern:
    """Evenly spaced frequency set points, lowest at the base frequency."""

    base_ghz: float = DEFAULT_BASE_GHZ
    spacing_mhz: float = DEFAULT_SPACING_MHZ

    def with_spacing(self, spacing_mhz: float) -> "FrequencyPattern":
        return replace(self, spacing_mhz=spacing_mhz)

    def set_point_mhz(self, index: int) -> float:
        return self.base_ghz * 1e3 + (index - 1) * self.spacing_mhz


def set_points_mhz(lattice: Lattice, pattern: FrequencyPattern) -> np.ndarray:
    """Per-qubit frequency set points in MHz, indexed by node id."""
    if pattern.spacing_mhz < 0.0 or pattern.base_ghz <= 0.0:
        raise ParameterError("pattern needs base > 0 and spacing >= 0")
    idx = np.array([n.pattern_index for n in lattice.nodes], dtype=float)
    return pattern.base_ghz * 1e3 + (idx - 1.0) * pattern.spacing_mhz


def next_nearest_triples(lattice: Lattice) -> tuple:
    """Spectator triples (i, j, k): i and k are distinct neighbours of j and
    j is the gate control of at least one of them.  Returned with i < k,
    sorted, each triple once."""
    adj = lattice.neighbors()
    drives = set(lattice.edges)
    triples = []
    for j in range(lattice.n_qubits):
        nb = adj[j]
        for a in range(len(nb)):
            for b in range(a + 1, len(nb)):
                i, k = nb[a], nb[b]
                if (j, i) in drives or (j, k) in drives:
                    triples.append((i, j, k))
    return tuple(sorted(triples))


def connected_components(lattice: Lattice) -> int:
    adj = lattice.neighbors()
    seen = [False] * lattice.n_qubits
    n_comp = 0
    for start in range(lattice.n_qubits):
        if seen[start]:
            continue
        n_comp += 1
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return n_comp


def lattice_summary(lattice: Lattice) -> dict:
    """Counts and structural facts used by the CLI table and sanity tests."""
    deg = lattice.degrees()
    roles: dict = {}
    for n in lattice.nodes:
        roles[n.code_role] = roles.get(n.code_role, 0) + 1
    control_degrees = [int(deg[n.node_id]) for n in lattice.nodes if n.gate_role == "control"]
    return {
        "family": lattice.family,
        "distance": lattice.distance,
        "n_qubits": lattice.n_qubits,
        "n_edges": len(lattice.edges),
        "n_triples": len(next_nearest_triples(lattice)),
        "max_degree": int(deg.max()),
        "min_degree": int(deg.min()),
        "code_roles": roles,
        "max_control_degree": max(control_degrees) if control_degrees else 0,
        "pattern_size": lattice.pattern_size,
        "connected": connected_components(lattice) == 1,
    }


# --------------------------------------------------------- serialization

def to_json_dict(lattice: Lattice) -> dict:
    return {
        "family": lattice.family,
        "distance": lattice.distance,
        "nodes": [
            {
                "id": n.node_id,
                "position": [n.x, n.y],
                "code_role": n.code_role,
                "gate_role": n.gate_role,
                "pattern_index": n.pattern_index,
            }
            for n in lattice.nodes
        ],
        "edges": [[c, t] for c, t in lattice.edges],
    }


def from_json_dict(payload: dict) -> Lattice:
    try:
        nodes = tuple(
            QubitNode(
                int(rec["id"]),
                float(rec["position"][0]),
                float(rec["position"][1]),
                str(rec["code_role"]),
                str(rec["gate_role"]),
                int(rec["pattern_index"]),
            )
            for rec in payload["nodes"]
        )
        edges = tuple((int(c), int(t)) for c, t in payload["edges"])
        lat = Lattice(str(payload["family"]), int(payload["distance"]), nodes, edges)
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed lattice payload: {exc}") from exc
    ids = [n.node_id for n in lat.nodes]
    if ids != list(range(len(ids))):
        raise InputError("node ids must be dense and ordered 0..n-1")
    for c, t in lat.edges:
        if not (0 <= c < lat.n_qubits and 0 <= t < lat.n_qubits):
            raise InputError(f"edge ({c}, {t}) references unknown node")
    return lat


def to_dot(lattice: Lattice) -> str:
    """Graphviz digraph; node positions pinned so neato-style tools draw the layout."""
    shape = {"data": "circle", "ancilla": "box", "flag": "diamond"}
    lines = [f'digraph "{lattice.family}_d{lattice.distance}" {{']
    for n in lattice.nodes:
        lines.append(
            f'  q{n.node_id} [label="{n.node_id}:{n.pattern_index}", shape={shape[n.code_role]}, '
            f'pos="{n.x},{-n.y}!"];'
        )
    for c, t in lattice.edges:
        lines.append(f"  q{c} -> q{t};")
    lines.append("}")
    return "\n".join(lines) + "\n"
