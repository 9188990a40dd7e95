"""
Walking the topology spectrum
=============================

The spectrum is a closed loop of deterministic graphs: a complete graph
is thinned into a star, the star's core grows until only a ring is
left, and stacking ring levels densifies the ring back into a complete
graph.  This script builds a small spectrum and watches the two graph
metrics move along it: average geodesic distance (efficiency) and
natural connectivity (robustness).
"""

from swarmtopo import average_geodesic, build_spectrum, natural_connectivity

NODE_COUNT = 30
PER_SEGMENT = 15

graphs = build_spectrum(NODE_COUNT, per_segment=PER_SEGMENT)
print(f"{len(graphs)} graphs on {NODE_COUNT} nodes, {PER_SEGMENT} per segment")
print()
print(f"{'index':>5}  {'edges':>5}  {'L':>6}  {'nat.conn':>8}")

for index, graph in enumerate(graphs):
    if index % 3:
        continue
    length = average_geodesic(graph)
    robustness = natural_connectivity(graph)
    print(f"{index:>5}  {len(graph.edges()):>5}  {length:>6.3f}  {robustness:>8.3f}")

# The three segments leave distinct fingerprints: thinning the complete
# graph drops robustness fast while paths stay short; growing the core
# stretches paths at roughly constant robustness; adding ring levels
# pulls both back toward the complete corner.
third = len(graphs) // 3
for name, start in (("complete-to-star", 0), ("star-to-ring", third), ("ring-to-complete", 2 * third)):
    segment = graphs[start : start + third]
    first, last = segment[0], segment[-1]
    print()
    print(
        f"{name}: L {average_geodesic(first):.2f} -> {average_geodesic(last):.2f}, "
        f"nat.conn {natural_connectivity(first):.2f} -> {natural_connectivity(last):.2f}"
    )
