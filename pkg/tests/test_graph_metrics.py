"""Shortest paths, spectra, and the derived graph statistics.

The geodesic oracle is a plain Floyd-Warshall reimplementation; the
spectral constants for the 5-node complete/star/ring graphs are known
closed forms.
"""

import numpy as np
import pytest

from swarmtopo.graph_metrics import (
    GraphMetrics,
    average_geodesic,
    clustering_coefficient,
    compute_metrics,
    graph_spectrum,
    is_connected,
    natural_connectivity,
    shortest_path_matrix,
    small_world_ness,
)
from swarmtopo.topology import (
    Graph,
    build_spectrum,
    make_complete,
    make_multi_ring,
    make_random,
    make_ring,
    make_small_world,
    make_star,
    make_von_neumann,
)


def _floyd_warshall(graph: Graph) -> np.ndarray:
    """Independent all-pairs oracle: triple loop over an int table."""
    n = graph.node_count
    inf = n + 1  # longer than any simple path
    dist = np.full((n, n), inf, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    for i, j in graph.edges():
        dist[i, j] = dist[j, i] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                through = dist[i, k] + dist[k, j]
                if through < dist[i, j]:
                    dist[i, j] = through
    dist[dist >= inf] = -1
    return dist


def _two_components() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])


class TestShortestPaths:
    def test_matches_floyd_warshall_on_spectrum(self):
        for g in build_spectrum(12, 4):
            assert np.array_equal(shortest_path_matrix(g), _floyd_warshall(g))

    def test_matches_floyd_warshall_on_random(self):
        for seed in range(6):
            g = make_random(11, 0.25, rng=seed)
            assert np.array_equal(shortest_path_matrix(g), _floyd_warshall(g))

    def test_unreachable_marked(self):
        d = shortest_path_matrix(_two_components())
        assert d[0, 3] == -1 and d[0, 1] == 1 and d[0, 2] == 2

    def test_average_geodesic_pinned(self):
        assert average_geodesic(make_complete(100)) == 1.0
        assert abs(average_geodesic(make_star(100)) - 1.98) < 1e-9
        assert abs(average_geodesic(make_ring(100)) - 2500 / 99) < 1e-9

    def test_average_geodesic_disconnected(self):
        assert average_geodesic(_two_components()) is None

    def test_average_geodesic_rejects_single_node(self):
        with pytest.raises(ValueError):
            average_geodesic(make_complete(1))

    def test_is_connected(self):
        assert is_connected(make_ring(9))
        assert not is_connected(_two_components())


class TestSpectra:
    def test_complete_star_ring_eigenvalues(self):
        golden = 2 * np.cos(2 * np.pi / 5)  # 0.618...
        cases = [
            (make_complete(5), [4, -1, -1, -1, -1]),
            (make_star(5), [2, 0, 0, 0, -2]),
            (make_ring(5), [2, golden, golden, -golden - 1, -golden - 1]),
        ]
        for graph, expected in cases:
            spectrum = graph_spectrum(graph)
            assert np.allclose(spectrum, expected, atol=0.01)
            assert (np.diff(spectrum) <= 1e-9).all()  # descending

    def test_spectrum_sums_to_zero(self):
        for seed in range(4):
            g = make_random(15, 0.3, rng=seed)
            assert abs(graph_spectrum(g).sum()) < 1e-9

    def test_natural_connectivity_pinned(self):
        assert abs(natural_connectivity(make_complete(5)) - 2.417157) < 1e-6
        assert abs(natural_connectivity(make_star(5)) - 0.744258) < 1e-6
        assert abs(natural_connectivity(make_ring(5)) - 0.832577) < 1e-6

    def test_natural_connectivity_definition(self):
        # log of the mean exponentiated eigenvalue, computed naively
        g = make_von_neumann(4, 5)
        lam = np.linalg.eigvalsh(g.adjacency.astype(float))
        naive = float(np.log(np.exp(lam).mean()))
        assert abs(natural_connectivity(g) - naive) < 1e-12

    def test_natural_connectivity_overflow_safe(self):
        # complete graph eigenvalue n-1 overflows exp() beyond ~710
        value = natural_connectivity(make_complete(800))
        assert np.isfinite(value)
        assert abs(value - (799 - np.log(800))) < 1e-6


class TestClustering:
    def test_pinned_values(self):
        assert clustering_coefficient(make_complete(8)) == 1.0
        assert clustering_coefficient(make_ring(8)) == 0.0
        assert clustering_coefficient(make_star(8)) == 0.0
        assert abs(clustering_coefficient(make_multi_ring(10, 2)) - 0.5) < 1e-12

    def test_degree_one_nodes_count_zero(self):
        # path graph: ends have degree 1, middle has no triangle
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert clustering_coefficient(g) == 0.0

    def test_single_triangle(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        # nodes 0,1: C=1; node 2: 1 of 3 pairs; node 3: degree 1 -> 0
        expected = (1 + 1 + 1 / 3 + 0) / 4
        assert abs(clustering_coefficient(g) - expected) < 1e-12


class TestSmallWorldNess:
    def test_disconnected_is_none(self):
        assert small_world_ness(_two_components(), rng=0) is None

    def test_triangle_free_lattice_is_none(self):
        # ring baseline has zero clustering, so omega is undefined
        assert small_world_ness(make_ring(20), rng=0) is None

    def test_small_world_graph_near_zero(self):
        g = make_small_world(100, 10, 0.1, rng=3)
        omega = small_world_ness(g, rng=0)
        assert omega is not None
        assert abs(omega) < 0.5

    def test_deterministic_given_seed(self):
        g = make_small_world(60, 6, 0.2, rng=5)
        assert small_world_ness(g, rng=11) == small_world_ness(g, rng=11)


class TestComputeMetrics:
    def test_bundle_fields(self):
        g = make_small_world(50, 6, 0.1, rng=1)
        m = compute_metrics(g, rng=0)
        assert isinstance(m, GraphMetrics)
        assert m.node_count == 50
        assert m.edge_count == 150
        assert m.connected == is_connected(g)
        assert m.average_path_length == average_geodesic(g)
        assert m.natural_connectivity == natural_connectivity(g)
        assert m.clustering_coefficient == clustering_coefficient(g)

    def test_disconnected_bundle(self):
        m = compute_metrics(_two_components(), rng=0)
        assert not m.connected
        assert m.average_path_length is None
        assert m.small_world_ness is None
        assert np.isfinite(m.natural_connectivity)
