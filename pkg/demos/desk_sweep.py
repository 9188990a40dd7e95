"""
A desk-scale sweep, end to end
==============================

Five reference topologies race on the four-dimensional Shekel
landscape, calm and hostile, a few repetitions each.  The full
pipeline runs: plan text -> seeded cells -> aggregated rows -> CSV and
an SVG scatter against average path length.  Swarms are shrunk to 50
agents so the whole thing takes seconds; trends survive the shrinking
even though the absolute numbers move around.
"""

from pathlib import Path

from swarmtopo import (
    PlotSpec,
    parse_plan,
    render_results_svg,
    results_to_csv,
    run_plan,
)

PLAN = """\
version = 1
base_seed = 11
repetitions = 5
max_iters = 600
objectives = shekel
death_fractions = 0, 0.30
topology = complete n=50
topology = star n=50
topology = ring n=50
topology = multi-ring n=50 ring_levels=5
topology = small-world n=50 degree=6 rewire_prob=0.1 seed=3
"""

rows = run_plan(parse_plan(PLAN))

print(f"{'topology':<27} {'death':>5}  {'gsr':>4}  {'gs_time':>7}  {'winners':>7}")
for row in rows:
    gs_time = "--" if row.gs_time is None else f"{row.gs_time:7.1f}"
    print(
        f"{row.topology_id:<27} {row.death_fraction:>5.0%}  "
        f"{row.gsr:>4.2f}  {gs_time:>7}  {row.winners_mean:>7.1f}"
    )

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)

csv_path = out_dir / "desk_sweep.csv"
csv_path.write_text(results_to_csv(rows), encoding="ascii")

plot = PlotSpec(
    x_axis="avg-path-length",
    y_axes=("gsr", "gs-time"),
    title="Shekel, 50 agents, 5 repetitions",
)
svg_path = out_dir / "desk_sweep.svg"
svg_path.write_text(render_results_svg(rows, plot), encoding="utf-8")

print()
print(f"wrote {csv_path}")
print(f"wrote {svg_path}")
