"""Communication topology constructors and the topology spectrum.

Agents in a swarm exchange personal-best information only along the
edges of an explicit undirected graph.  This module builds those
graphs: classic baseline families (complete, star, ring, torus grid,
preferential attachment, Bernoulli random, rewired ring lattice) and a
three-segment parameterized family that walks from the complete graph
to the star, from the star to the ring, and from the ring back to the
complete graph in small structural steps.

Graphs are immutable wrappers around a boolean adjacency matrix.
Every constructor validates its arguments and raises ``ValueError``
with a specific message on bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

__all__ = [
    "Graph",
    "make_complete",
    "make_star",
    "make_ring",
    "make_core_periphery",
    "make_ring_core_star",
    "make_multi_ring",
    "make_von_neumann",
    "make_scale_free",
    "make_random",
    "make_small_world",
    "TopologySpec",
    "TOPOLOGY_KINDS",
    "RANDOMIZED_KINDS",
    "KIND_FIELDS",
    "build_topology",
    "SPECTRUM_SEGMENTS",
    "SpectrumPoint",
    "spectrum_points",
    "build_spectrum",
    "edge_list_text",
    "parse_edge_list",
    "write_edge_list",
    "read_edge_list",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """An undirected, unweighted graph over agent indices ``0..n-1``.

    Parameters
    ----------
    adjacency : numpy.ndarray
        Square boolean matrix.  Must be symmetric with a zero
        diagonal.  The stored copy is made read-only.
    """

    adjacency: np.ndarray

    def __post_init__(self) -> None:
        adj = np.array(self.adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise ValueError("graph needs at least one node")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        """Build a graph from an iterable of ``(i, j)`` pairs."""
        if node_count < 1:
            raise ValueError("graph needs at least one node")
        adj = np.zeros((node_count, node_count), dtype=bool)
        for i, j in edges:
            if not (0 <= i < node_count and 0 <= j < node_count):
                raise ValueError(f"edge ({i}, {j}) out of range for {node_count} nodes")
            if i == j:
                raise ValueError(f"self-loop ({i}, {j}) is not allowed")
            adj[i, j] = adj[j, i] = True
        return cls(adj)

    @property
    def node_count(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2

    def degrees(self) -> np.ndarray:
        """Degree of every node, as an int array."""
        return self.adjacency.sum(axis=1).astype(np.int64)

    def neighbors(self, node: int) -> np.ndarray:
        """Indices adjacent to ``node``, ascending."""
        if not 0 <= node < self.node_count:
            raise ValueError(f"node {node} out of range")
        return np.flatnonzero(self.adjacency[node])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(i, j)`` with ``i < j``, lexicographically sorted."""
        iu, ju = np.nonzero(np.triu(self.adjacency, k=1))
        return list(zip(iu.tolist(), ju.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, edges={self.edge_count})"


# ---------------------------------------------------------------------------
# deterministic families


def make_complete(node_count: int) -> Graph:
    """Every pair of distinct nodes is connected.

    Parameters
    ----------
    node_count : int
        Number of nodes, at least 1.
    """
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    adj = np.ones((node_count, node_count), dtype=bool)
    np.fill_diagonal(adj, False)
    return Graph(adj)


def make_star(node_count: int) -> Graph:
    """Node 0 is the hub; every other node connects only to it."""
    if node_count < 2:
        raise ValueError("a star needs at least 2 nodes")
    return Graph.from_edges(node_count, ((0, k) for k in range(1, node_count)))


def make_ring(node_count: int) -> Graph:
    """Single cycle 0-1-...-(n-1)-0."""
    if node_count < 3:
        raise ValueError("a ring needs at least 3 nodes")
    return Graph.from_edges(
        node_count, ((k, (k + 1) % node_count) for k in range(node_count))
    )


def make_core_periphery(node_count: int, core_size: int) -> Graph:
    """Fully connected core plus single-edge periphery nodes.

    Nodes ``0..core_size-1`` form a complete subgraph.  Each remaining
    node ``k`` attaches by one edge to core node ``(k - core_size) %
    core_size``, so periphery attachments cycle round-robin through
    the core.  ``core_size == node_count`` gives the complete graph;
    ``core_size == 1`` gives the star.

    Parameters
    ----------
    node_count : int
        Total number of nodes.
    core_size : int
        Number of core nodes, between 1 and ``node_count``.
    """
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if not 1 <= core_size <= node_count:
        raise ValueError(
            f"core_size must be in [1, {node_count}], got {core_size}"
        )
    edges = [(i, j) for i in range(core_size) for j in range(i + 1, core_size)]
    for k in range(core_size, node_count):
        target = (k - core_size) % core_size
        edges.append((target, k))
    return Graph.from_edges(node_count, edges)


def make_ring_core_star(node_count: int, hub_count: int) -> Graph:
    """Hubs on a ring, leaves distributed round-robin across the hubs.

    Nodes ``0..hub_count-1`` form a cycle (a single edge when there
    are exactly two hubs, no core edges for one hub).  Each remaining
    node ``k`` attaches to hub ``(k - hub_count) % hub_count``.
    ``hub_count == 1`` gives the star; ``hub_count == node_count``
    gives the ring.

    Parameters
    ----------
    node_count : int
        Total number of nodes.
    hub_count : int
        Number of ring hubs, between 1 and ``node_count``.
    """
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if not 1 <= hub_count <= node_count:
        raise ValueError(
            f"hub_count must be in [1, {node_count}], got {hub_count}"
        )
    edges: list[tuple[int, int]] = []
    if hub_count >= 3:
        edges.extend((k, (k + 1) % hub_count) for k in range(hub_count))
    elif hub_count == 2:
        edges.append((0, 1))
    for k in range(hub_count, node_count):
        edges.append(((k - hub_count) % hub_count, k))
    return Graph.from_edges(node_count, edges)


def make_multi_ring(node_count: int, ring_levels: int) -> Graph:
    """Circulant graph: each node links to its ``ring_levels`` nearest
    neighbors on both sides of the cycle.

    ``ring_levels == 1`` is the plain ring; ``ring_levels ==
    node_count // 2`` is the complete graph.

    Parameters
    ----------
    node_count : int
        Number of nodes, at least 3.
    ring_levels : int
        Neighborhood radius along the cycle, between 1 and
        ``node_count // 2``.
    """
    if node_count < 3:
        raise ValueError("a multi-ring needs at least 3 nodes")
    if not 1 <= ring_levels <= node_count // 2:
        raise ValueError(
            f"ring_levels must be in [1, {node_count // 2}], got {ring_levels}"
        )
    edges = set()
    for d in range(1, ring_levels + 1):
        for k in range(node_count):
            j = (k + d) % node_count
            edges.add((min(k, j), max(k, j)))
    return Graph.from_edges(node_count, sorted(edges))


def make_von_neumann(rows: int, cols: int) -> Graph:
    """4-regular torus grid: wrap-around up/down/left/right neighbors.

    Node ``r * cols + c`` sits at grid cell ``(r, c)``.

    Parameters
    ----------
    rows, cols : int
        Grid dimensions, each at least 3 so that wrap-around edges
        stay distinct.
    """
    if rows < 3 or cols < 3:
        raise ValueError("torus grid needs rows >= 3 and cols >= 3")
    edges = []
    for r in range(rows):
        for c in range(cols):
            here = r * cols + c
            right = r * cols + (c + 1) % cols
            down = ((r + 1) % rows) * cols + c
            edges.append((min(here, right), max(here, right)))
            edges.append((min(here, down), max(here, down)))
    return Graph.from_edges(rows * cols, edges)


# ---------------------------------------------------------------------------
# randomized families


def _as_rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def make_scale_free(node_count: int, attach_count: int, rng=None) -> Graph:
    """Preferential-attachment graph.

    Starts from ``attach_count`` isolated seed nodes; every subsequent
    node attaches to ``attach_count`` distinct existing nodes chosen
    with probability proportional to current degree (the first
    arrival connects to all seeds).  Produces exactly
    ``attach_count * (node_count - attach_count)`` edges.

    Parameters
    ----------
    node_count : int
        Total number of nodes.
    attach_count : int
        Edges added per arriving node, in ``[1, node_count - 1]``.
    rng : int, numpy.random.Generator, or None
        Randomness source; an int is used as a seed.
    """
    if node_count < 2:
        raise ValueError("node_count must be >= 2")
    if not 1 <= attach_count < node_count:
        raise ValueError(
            f"attach_count must be in [1, {node_count - 1}], got {attach_count}"
        )
    rng = _as_rng(rng)
    adj = np.zeros((node_count, node_count), dtype=bool)
    # flat endpoint list: picking uniformly from it is degree-weighted
    endpoint_pool: list[int] = []
    targets = list(range(attach_count))
    for newcomer in range(attach_count, node_count):
        for t in targets:
            adj[newcomer, t] = adj[t, newcomer] = True
        endpoint_pool.extend(targets)
        endpoint_pool.extend([newcomer] * attach_count)
        if newcomer == node_count - 1:
            break
        chosen: list[int] = []
        while len(chosen) < attach_count:
            pick = endpoint_pool[int(rng.integers(len(endpoint_pool)))]
            if pick not in chosen:
                chosen.append(pick)
        targets = chosen
    return Graph(adj)


def make_random(node_count: int, edge_prob: float, rng=None) -> Graph:
    """Bernoulli random graph: each pair is an edge with ``edge_prob``.

    May be disconnected; downstream metrics account for that.

    Parameters
    ----------
    node_count : int
        Number of nodes, at least 1.
    edge_prob : float
        Per-pair edge probability in ``[0, 1]``.
    rng : int, numpy.random.Generator, or None
        Randomness source; an int is used as a seed.
    """
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must be in [0, 1], got {edge_prob}")
    rng = _as_rng(rng)
    adj = np.zeros((node_count, node_count), dtype=bool)
    iu, ju = np.triu_indices(node_count, k=1)
    mask = rng.random(iu.size) < edge_prob
    adj[iu[mask], ju[mask]] = True
    return Graph(adj | adj.T)


def make_small_world(node_count: int, degree: int, rewire_prob: float, rng=None) -> Graph:
    """Rewired ring lattice.

    Starts from the multi-ring with ``degree // 2`` levels; each
    lattice edge ``(i, i+d)``, walked level by level, has its far
    endpoint rewired to a uniformly random non-neighbor with
    probability ``rewire_prob``.  The edge count never changes.

    Parameters
    ----------
    node_count : int
        Number of nodes, at least 3.
    degree : int
        Even lattice degree in ``[2, node_count - 1]``.
    rewire_prob : float
        Per-edge rewiring probability in ``[0, 1]``.
    rng : int, numpy.random.Generator, or None
        Randomness source; an int is used as a seed.
    """
    if node_count < 3:
        raise ValueError("node_count must be >= 3")
    if degree % 2 != 0:
        raise ValueError(f"degree must be even, got {degree}")
    if not 2 <= degree < node_count:
        raise ValueError(
            f"degree must be in [2, {node_count - 1}], got {degree}"
        )
    if not 0.0 <= rewire_prob <= 1.0:
        raise ValueError(f"rewire_prob must be in [0, 1], got {rewire_prob}")
    rng = _as_rng(rng)
    adj = np.array(make_multi_ring(node_count, degree // 2).adjacency)
    for d in range(1, degree // 2 + 1):
        for i in range(node_count):
            if rng.random() >= rewire_prob:
                continue
            # a node adjacent to everything has nowhere to rewire
            if adj[i].sum() >= node_count - 1:
                continue
            j = (i + d) % node_count
            while True:
                k = int(rng.integers(node_count))
                if k != i and not adj[i, k]:
                    break
            adj[i, j] = adj[j, i] = False
            adj[i, k] = adj[k, i] = True
    return Graph(adj)


# ---------------------------------------------------------------------------
# declarative specs

TOPOLOGY_KINDS = (
    "complete",
    "star",
    "ring",
    "core-periphery",
    "ring-core-star",
    "multi-ring",
    "von-neumann",
    "scale-free",
    "random",
    "small-world",
)

RANDOMIZED_KINDS = ("scale-free", "random", "small-world")

# fields each kind requires beyond node_count (von-neumann replaces
# node_count with the grid shape)
KIND_FIELDS = {
    "complete": (),
    "star": (),
    "ring": (),
    "core-periphery": ("core_size",),
    "ring-core-star": ("hub_count",),
    "multi-ring": ("ring_levels",),
    "von-neumann": ("rows", "cols"),
    "scale-free": ("attach_count", "seed"),
    "random": ("edge_prob", "seed"),
    "small-world": ("degree", "rewire_prob", "seed"),
}


@dataclass(frozen=True)
class TopologySpec:
    """Declarative description of one topology, buildable and hashable.

    Only the fields that apply to ``kind`` may be set; the rest must
    stay ``None``.  Randomized kinds require an explicit ``seed`` so
    experiment plans stay reproducible.
    """

    kind: str
    node_count: int | None = None
    seed: int | None = None
    core_size: int | None = None
    hub_count: int | None = None
    ring_levels: int | None = None
    rows: int | None = None
    cols: int | None = None
    attach_count: int | None = None
    edge_prob: float | None = None
    degree: int | None = None
    rewire_prob: float | None = None
    label: str | None = None

    def validate(self) -> None:
        if self.kind not in TOPOLOGY_KINDS:
            raise ValueError(
                f"unknown topology kind {self.kind!r}; expected one of {TOPOLOGY_KINDS}"
            )
        needed = set(KIND_FIELDS[self.kind])
        if self.kind == "von-neumann":
            if self.node_count is not None:
                raise ValueError("von-neumann takes rows/cols, not node_count")
        elif self.node_count is None:
            raise ValueError(f"{self.kind} requires node_count")
        param_fields = (
            "core_size", "hub_count", "ring_levels", "rows", "cols",
            "attach_count", "edge_prob", "degree", "rewire_prob", "seed",
        )
        for name in param_fields:
            value = getattr(self, name)
            if name in needed and value is None:
                raise ValueError(f"{self.kind} requires {name}")
            if name not in needed and value is not None:
                raise ValueError(f"{self.kind} does not take {name}")

    def topology_id(self) -> str:
        """Stable identifier used in file names and result tables."""
        if self.label is not None:
            return self.label
        self.validate()
        parts = [self.kind]
        if self.kind == "von-neumann":
            parts.append(f"{self.rows}x{self.cols}")
        else:
            parts.append(f"n{self.node_count}")
        short = {
            "core_size": "c", "hub_count": "h", "ring_levels": "r",
            "attach_count": "m", "edge_prob": "p", "degree": "k",
            "rewire_prob": "p", "seed": "s",
        }
        for name in KIND_FIELDS[self.kind]:
            if name in ("rows", "cols"):
                continue
            value = getattr(self, name)
            if isinstance(value, float):
                parts.append(f"{short[name]}{value:g}")
            else:
                parts.append(f"{short[name]}{value}")
        return "-".join(parts)


def build_topology(spec: TopologySpec) -> Graph:
    """Construct the graph a :class:`TopologySpec` describes."""
    spec.validate()
    kind = spec.kind
    if kind == "complete":
        return make_complete(spec.node_count)
    if kind == "star":
        return make_star(spec.node_count)
    if kind == "ring":
        return make_ring(spec.node_count)
    if kind == "core-periphery":
        return make_core_periphery(spec.node_count, spec.core_size)
    if kind == "ring-core-star":
        return make_ring_core_star(spec.node_count, spec.hub_count)
    if kind == "multi-ring":
        return make_multi_ring(spec.node_count, spec.ring_levels)
    if kind == "von-neumann":
        return make_von_neumann(spec.rows, spec.cols)
    if kind == "scale-free":
        return make_scale_free(spec.node_count, spec.attach_count, spec.seed)
    if kind == "random":
        return make_random(spec.node_count, spec.edge_prob, spec.seed)
    if kind == "small-world":
        return make_small_world(
            spec.node_count, spec.degree, spec.rewire_prob, spec.seed
        )
    raise AssertionError(f"unhandled kind {kind!r}")


# ---------------------------------------------------------------------------
# the spectrum: complete -> star -> ring -> complete

SPECTRUM_SEGMENTS = ("complete-to-star", "star-to-ring", "ring-to-complete")


@dataclass(frozen=True)
class SpectrumPoint:
    """One position along the three-segment topology spectrum."""

    position: int
    segment: str
    step: int
    spec: TopologySpec


def _integer_samples(start: int, stop: int, count: int) -> list[int]:
    # evenly spaced integers, both endpoints included
    return [int(v) for v in np.rint(np.linspace(start, stop, count))]


def spectrum_points(node_count: int, per_segment: int) -> list[SpectrumPoint]:
    """Parameter schedule for the full three-segment spectrum.

    Segment 1 shrinks a fully connected core from ``node_count`` to 1
    (complete to star).  Segment 2 grows the number of ring hubs from
    1 to ``node_count`` (star to ring).  Segment 3 raises the
    multi-ring level from 1 to ``node_count // 2`` (ring to
    complete).  Each segment contributes ``per_segment`` graphs with
    its control parameter sampled on an endpoint-inclusive even grid,
    so the corner topologies appear at positions 0, ``per_segment``,
    ``2 * per_segment`` and the final position.

    Parameters
    ----------
    node_count : int
        Nodes in every graph, at least 3.
    per_segment : int
        Graphs per segment, at least 2.
    """
    if node_count < 3:
        raise ValueError("spectrum needs node_count >= 3")
    if per_segment < 2:
        raise ValueError("per_segment must be >= 2")
    n = node_count
    schedules = (
        ("complete-to-star", "core-periphery", "core_size",
         _integer_samples(n, 1, per_segment)),
        ("star-to-ring", "ring-core-star", "hub_count",
         _integer_samples(1, n, per_segment)),
        ("ring-to-complete", "multi-ring", "ring_levels",
         _integer_samples(1, n // 2, per_segment)),
    )
    points = []
    position = 0
    for segment, kind, field_name, values in schedules:
        for step, value in enumerate(values):
            spec = TopologySpec(
                kind=kind,
                node_count=n,
                label=f"s{position:03d}-{kind}-{value}",
                **{field_name: value},
            )
            points.append(SpectrumPoint(position, segment, step, spec))
            position += 1
    return points


def build_spectrum(node_count: int, per_segment: int) -> list[Graph]:
    """Materialize every graph along the spectrum, in order."""
    return [build_topology(p.spec) for p in spectrum_points(node_count, per_segment)]


# ---------------------------------------------------------------------------
# edge-list files


def edge_list_text(graph: Graph) -> str:
    """Serialize a graph to the plain edge-list format.

    First line is ``n <node_count>``; each following line is one edge
    ``i j`` with ``i < j``, sorted.  Byte-stable for equal graphs.
    """
    lines = [f"n {graph.node_count}"]
    lines.extend(f"{i} {j}" for i, j in graph.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format back into a graph.

    Raises ``ValueError`` naming the offending line on malformed
    input, out-of-range nodes, or duplicate edges.
    """
    node_count = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if node_count is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(
                    f"line {lineno}: expected header 'n <count>', got {raw!r}"
                )
            try:
                node_count = int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad node count {parts[1]!r}") from None
            if node_count < 1:
                raise ValueError(f"line {lineno}: node count must be >= 1")
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'i j', got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer endpoint in {raw!r}") from None
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise ValueError(f"line {lineno}: edge ({i}, {j}) out of range")
        if i >= j:
            raise ValueError(f"line {lineno}: edges must satisfy i < j, got ({i}, {j})")
        if (i, j) in seen:
            raise ValueError(f"line {lineno}: duplicate edge ({i}, {j})")
        seen.add((i, j))
        edges.append((i, j))
    if node_count is None:
        raise ValueError("empty edge-list text")
    return Graph.from_edges(node_count, edges)


def write_edge_list(graph: Graph, path) -> None:
    """Write :func:`edge_list_text` output to ``path``."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(edge_list_text(graph))


def read_edge_list(path) -> Graph:
    """Read a graph from an edge-list file."""
    with open(path, "r", encoding="ascii") as fh:
        return parse_edge_list(fh.read())
