"""Seeded experiment harness.

A plan is a Cartesian product of (topology, objective, death
fraction) cells.  Each cell runs a fixed number of repetitions whose
seeds derive deterministically from the base seed and the cell
identity, so any cell can be reproduced in isolation and execution
order never matters.

Per-cell aggregates follow the four performance measures: global
success ratio (fraction of runs where every alive agent qualifies),
global success time (mean convergence iteration over converged runs
only), mean winner count (qualifying agents at run end, dead ones
included), and a weighted efficiency/robustness trade-off.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
import numpy as np

from .engine import SwarmConfig, SwarmState, run
from .graph_metrics import average_geodesic, natural_connectivity
from .objectives import ObjectiveSpec
from .topology import TopologySpec, build_topology

__all__ = [
    "MODE_POSITION_RADIUS",
    "MODE_VALUE_GAP",
    "SUCCESS_MODES",
    "SuccessCriterion",
    "default_tolerance",
    "qualification_mask",
    "success_predicate",
    "count_winners",
    "is_global_success",
    "death_fraction_to_prob",
    "trade_off",
    "ExperimentPlan",
    "AggregateMetrics",
    "derive_seed",
    "run_cell",
    "run_plan",
    "RESULTS_COLUMNS",
    "results_to_csv",
    "parse_results_csv",
    "results_to_json",
]

MODE_POSITION_RADIUS = "position-radius"
MODE_VALUE_GAP = "value-gap"
SUCCESS_MODES = (MODE_POSITION_RADIUS, MODE_VALUE_GAP)


def default_tolerance(objective: ObjectiveSpec) -> float:
    """Success radius when none is given: 0.5% of the box diagonal."""
    return 0.005 * objective.range_diagonal()


@dataclass(frozen=True)
class SuccessCriterion:
    """What counts as having reached the optimum.

    ``position-radius`` accepts bests within Euclidean ``tolerance``
    of the optimum location; ``value-gap`` accepts bests whose
    objective value is within ``tolerance`` of the optimum value.  A
    ``None`` tolerance resolves per objective via
    :func:`default_tolerance`.
    """

    mode: str = MODE_POSITION_RADIUS
    tolerance: float | None = None

    def __post_init__(self) -> None:
        if self.mode not in SUCCESS_MODES:
            raise ValueError(
                f"unknown success mode {self.mode!r}; expected one of {SUCCESS_MODES}"
            )
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")

    def resolved_tolerance(self, objective: ObjectiveSpec) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return default_tolerance(objective)


def qualification_mask(
    criterion: SuccessCriterion,
    objective: ObjectiveSpec,
    best_positions: np.ndarray,
    best_scores: np.ndarray,
) -> np.ndarray:
    """Boolean per-agent mask: does this best satisfy the criterion?

    Boundary is inclusive in both modes.
    """
    eps = criterion.resolved_tolerance(objective)
    if criterion.mode == MODE_POSITION_RADIUS:
        gaps = best_positions - objective.optimum_location[None, :]
        return np.sqrt((gaps * gaps).sum(axis=1)) <= eps
    values = best_scores if objective.direction == "max" else -best_scores
    return np.abs(values - objective.optimum_value) <= eps


def success_predicate(criterion: SuccessCriterion, objective: ObjectiveSpec):
    """Bind criterion and objective into the engine's success callback."""

    def predicate(best_positions: np.ndarray, best_scores: np.ndarray) -> np.ndarray:
        return qualification_mask(criterion, objective, best_positions, best_scores)

    return predicate


def count_winners(
    swarm: SwarmState, objective: ObjectiveSpec, criterion: SuccessCriterion
) -> int:
    """Agents whose bests qualify, alive or dead."""
    return int(
        np.count_nonzero(
            qualification_mask(criterion, objective, swarm.best_positions, swarm.best_scores)
        )
    )


def is_global_success(
    swarm: SwarmState, objective: ObjectiveSpec, criterion: SuccessCriterion
) -> bool:
    """True iff every alive agent qualifies; false with no alive agents."""
    if not swarm.alive.any():
        return False
    mask = qualification_mask(
        criterion, objective, swarm.best_positions, swarm.best_scores
    )
    return bool(mask[swarm.alive].all())


def death_fraction_to_prob(death_fraction: float, t: int) -> float:
    """Per-iteration death probability hitting a target expected loss
    fraction by iteration ``t``: p = 1 - (1 - F_d)^(1/t)."""
    if not 0.0 <= death_fraction < 1.0:
        raise ValueError(
            f"death_fraction must be in [0, 1), got {death_fraction}"
        )
    if t < 1:
        raise ValueError("t must be >= 1")
    return 1.0 - (1.0 - death_fraction) ** (1.0 / t)


def trade_off(
    winners_mean: float,
    gs_time: float | None,
    winners_max: float,
    gs_time_max: float,
    alpha: float,
) -> float | None:
    """alpha-weighted normalized winners minus normalized time.

    Absent (None) when ``gs_time`` is absent.  Normalizers must be
    positive.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if not winners_max > 0:
        raise ValueError("winners_max must be > 0")
    if not gs_time_max > 0:
        raise ValueError("gs_time_max must be > 0")
    if gs_time is None:
        return None
    return alpha * (winners_mean / winners_max) - (1.0 - alpha) * (gs_time / gs_time_max)


@dataclass(frozen=True)
class ExperimentPlan:
    """Declarative description of a full sweep.

    Death fractions convert to per-iteration probabilities at the
    fixed ``death_horizon`` (expected loss reached at that iteration).
    """

    topologies: tuple[TopologySpec, ...]
    objectives: tuple[ObjectiveSpec, ...]
    death_fractions: tuple[float, ...]
    base_seed: int
    repetitions: int = 50
    success: SuccessCriterion = SuccessCriterion()
    alpha: float = 0.7
    death_horizon: int = 500
    max_iters: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "topologies", tuple(self.topologies))
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(
            self, "death_fractions", tuple(float(f) for f in self.death_fractions)
        )
        if not self.topologies:
            raise ValueError("plan needs at least one topology")
        if not self.objectives:
            raise ValueError("plan needs at least one objective")
        if not self.death_fractions:
            raise ValueError("plan needs at least one death fraction")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.death_horizon < 1:
            raise ValueError("death_horizon must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        for fraction in self.death_fractions:
            if not 0.0 <= fraction < 1.0:
                raise ValueError(
                    f"death fractions must be in [0, 1), got {fraction}"
                )
        for spec in self.topologies:
            spec.validate()
        ids = [spec.topology_id() for spec in self.topologies]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate topology ids in plan: {dupes}")
        names = [obj.name for obj in self.objectives]
        if len(set(names)) != len(names):
            raise ValueError("duplicate objectives in plan")


@dataclass(frozen=True)
class AggregateMetrics:
    """One results row: a cell's identity and its aggregates."""

    topology_id: str
    topology_kind: str
    objective: str
    death_fraction: float
    repetitions: int
    gsr: float
    gs_time: float | None
    winners_mean: float
    trade_off: float | None
    avg_path_length: float | None
    natural_connectivity: float


def derive_seed(
    base_seed: int,
    topology_id: str,
    objective_name: str,
    death_fraction: float,
    repetition: int,
) -> int:
    """Stable per-run seed from the cell identity.

    Hashed with blake2b because the interpreter's own hash() is
    salted per process.
    """
    key = f"{base_seed}|{topology_id}|{objective_name}|{death_fraction!r}|{repetition}"
    digest = hashlib.blake2b(key.encode("ascii"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def run_cell(
    plan: ExperimentPlan,
    topology: TopologySpec,
    objective: ObjectiveSpec,
    death_fraction: float,
    graph_stats: tuple[float | None, float] | None = None,
    trace_hook=None,
) -> AggregateMetrics:
    """Execute one cell's repetitions and aggregate them.

    ``trade_off`` is left absent here; only :func:`run_plan` knows
    the normalizing maxima across sibling cells.  ``graph_stats`` can
    carry precomputed (path length, natural connectivity) to avoid
    recomputing per death fraction.  ``trace_hook(repetition,
    trace)`` receives per-iteration records when set.
    """
    graph = build_topology(topology)
    death_prob = death_fraction_to_prob(death_fraction, plan.death_horizon)
    predicate = success_predicate(plan.success, objective)
    topology_id = topology.topology_id()
    convergence_iters: list[int] = []
    winner_counts: list[int] = []
    for repetition in range(plan.repetitions):
        config = SwarmConfig(
            n_agents=graph.node_count,
            max_iters=plan.max_iters,
            death_prob=death_prob,
            seed=derive_seed(
                plan.base_seed, topology_id, objective.name, death_fraction, repetition
            ),
        )
        result = run(
            config, graph, objective, predicate, record_trace=trace_hook is not None
        )
        if result.converged:
            convergence_iters.append(result.convergence_iteration)
        winner_counts.append(result.winners)
        if trace_hook is not None:
            trace_hook(repetition, result.trace)
    if graph_stats is None:
        graph_stats = (average_geodesic(graph), natural_connectivity(graph))
    gsr = len(convergence_iters) / plan.repetitions
    return AggregateMetrics(
        topology_id=topology_id,
        topology_kind=topology.kind,
        objective=objective.name,
        death_fraction=death_fraction,
        repetitions=plan.repetitions,
        gsr=gsr,
        gs_time=float(np.mean(convergence_iters)) if convergence_iters else None,
        winners_mean=float(np.mean(winner_counts)),
        trade_off=None,
        avg_path_length=graph_stats[0],
        natural_connectivity=graph_stats[1],
    )


def _cell_job(args):
    index, plan, t_idx, o_idx, fraction, stats = args
    row = run_cell(
        plan,
        plan.topologies[t_idx],
        plan.objectives[o_idx],
        fraction,
        graph_stats=stats,
    )
    return index, row


def _fill_trade_offs(
    plan: ExperimentPlan, rows: list[AggregateMetrics]
) -> list[AggregateMetrics]:
    # normalizers live within one (objective, death fraction) slice
    filled = []
    for row in rows:
        siblings = [
            r
            for r in rows
            if r.objective == row.objective and r.death_fraction == row.death_fraction
        ]
        winners_max = max(r.winners_mean for r in siblings)
        times = [r.gs_time for r in siblings if r.gs_time is not None]
        gs_time_max = max(times) if times else None
        if row.gs_time is None or winners_max <= 0 or not gs_time_max:
            filled.append(row)
            continue
        value = trade_off(
            row.winners_mean, row.gs_time, winners_max, gs_time_max, plan.alpha
        )
        filled.append(replace(row, trade_off=value))
    return filled


def run_plan(
    plan: ExperimentPlan, workers: int = 1, trace_hook_factory=None
) -> list[AggregateMetrics]:
    """Run every cell and return rows in canonical order.

    Rows are sorted by (topology_id, objective, death_fraction), so
    the output is byte-stable no matter how the plan lists its cells
    or how workers schedule them.  With ``workers > 1`` cells execute
    in a process pool.  ``trace_hook_factory(topology_id,
    objective_name, death_fraction)`` may return a per-repetition
    trace consumer; tracing forces the serial path.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if trace_hook_factory is not None and workers > 1:
        raise ValueError("tracing requires workers=1")
    stats_by_topology = {}
    for spec in plan.topologies:
        graph = build_topology(spec)
        stats_by_topology[spec.topology_id()] = (
            average_geodesic(graph) if graph.node_count >= 2 else None,
            natural_connectivity(graph),
        )
    cells = []
    for index, ((t_idx, topo), (o_idx, obj), fraction) in enumerate(
        product(
            enumerate(plan.topologies), enumerate(plan.objectives), plan.death_fractions
        )
    ):
        cells.append(
            (index, plan, t_idx, o_idx, fraction, stats_by_topology[topo.topology_id()])
        )
    if workers == 1 or len(cells) == 1:
        if trace_hook_factory is None:
            indexed = [_cell_job(cell) for cell in cells]
        else:
            indexed = []
            for index, _, t_idx, o_idx, fraction, stats in cells:
                topo = plan.topologies[t_idx]
                obj = plan.objectives[o_idx]
                hook = trace_hook_factory(topo.topology_id(), obj.name, fraction)
                row = run_cell(
                    plan, topo, obj, fraction, graph_stats=stats, trace_hook=hook
                )
                indexed.append((index, row))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            indexed = list(pool.map(_cell_job, cells))
    rows = [row for _, row in sorted(indexed, key=lambda pair: pair[0])]
    rows = _fill_trade_offs(plan, rows)
    rows.sort(key=lambda row: (row.topology_id, row.objective, row.death_fraction))
    return rows


# ---------------------------------------------------------------------------
# results serialization

RESULTS_COLUMNS = (
    "topology_id",
    "topology_kind",
    "objective",
    "death_fraction",
    "repetitions",
    "gsr",
    "gs_time",
    "winners_mean",
    "trade_off",
    "L",
    "natural_connectivity",
)

_ABSENT = "--"


def _format_value(value) -> str:
    if value is None:
        return _ABSENT
    if isinstance(value, float):
        return repr(value)
    return str(value)


def results_to_csv(rows: list[AggregateMetrics]) -> str:
    """Render rows as CSV, byte-stable for equal inputs.

    Absent values (no converged run, disconnected graph) appear as
    ``--``.  Floats use shortest round-trip formatting.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RESULTS_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.topology_id,
                row.topology_kind,
                row.objective,
                _format_value(row.death_fraction),
                str(row.repetitions),
                _format_value(row.gsr),
                _format_value(row.gs_time),
                _format_value(row.winners_mean),
                _format_value(row.trade_off),
                _format_value(row.avg_path_length),
                _format_value(row.natural_connectivity),
            ]
        )
    return buffer.getvalue()


def _parse_optional_float(text: str) -> float | None:
    return None if text == _ABSENT or text == "" else float(text)


def parse_results_csv(text: str) -> list[AggregateMetrics]:
    """Inverse of :func:`results_to_csv`."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty results CSV") from None
    if tuple(header) != RESULTS_COLUMNS:
        raise ValueError(
            f"unexpected results header {header!r}; expected {list(RESULTS_COLUMNS)}"
        )
    rows = []
    for record in reader:
        if not record:
            continue
        if len(record) != len(RESULTS_COLUMNS):
            raise ValueError(f"malformed results row: {record!r}")
        rows.append(
            AggregateMetrics(
                topology_id=record[0],
                topology_kind=record[1],
                objective=record[2],
                death_fraction=float(record[3]),
                repetitions=int(record[4]),
                gsr=float(record[5]),
                gs_time=_parse_optional_float(record[6]),
                winners_mean=float(record[7]),
                trade_off=_parse_optional_float(record[8]),
                avg_path_length=_parse_optional_float(record[9]),
                natural_connectivity=_parse_optional_float(record[10]),
            )
        )
    return rows


def results_to_json(rows: list[AggregateMetrics]) -> str:
    """JSON mirror of the CSV: same fields, nulls for absent values."""
    payload = {
        "results": [
            {
                "topology_id": row.topology_id,
                "topology_kind": row.topology_kind,
                "objective": row.objective,
                "death_fraction": row.death_fraction,
                "repetitions": row.repetitions,
                "gsr": row.gsr,
                "gs_time": row.gs_time,
                "winners_mean": row.winners_mean,
                "trade_off": row.trade_off,
                "L": row.avg_path_length,
                "natural_connectivity": row.natural_connectivity,
            }
            for row in rows
        ]
    }
    return json.dumps(payload, indent=2) + "\n"
