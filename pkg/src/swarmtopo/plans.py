"""Plan files: a line-oriented key=value format for experiment plans.

Example::

    version = 1
    base_seed = 42
    repetitions = 50
    objectives = shekel
    death_fractions = 0, 0.15, 0.30
    topology = small-world n=100 degree=10 rewire_prob=0.1 seed=7
    topology = spectrum n=100 per_segment=80

Scalar keys appear once; ``topology`` repeats, one graph per line (a
``spectrum`` line expands to its full graph family).  Blank lines and
``#`` comments are ignored.  Unknown keys and missing required keys
are rejected by name.
"""

from __future__ import annotations

from .harness import ExperimentPlan, SuccessCriterion
from .objectives import default_spec
from .topology import KIND_FIELDS, TOPOLOGY_KINDS, TopologySpec, spectrum_points

__all__ = [
    "PLAN_VERSION",
    "parse_topology_line",
    "parse_plan",
    "plan_to_text",
    "BUILTIN_PLAN_NAMES",
    "builtin_plan_text",
]

PLAN_VERSION = 1

_INT_FIELDS = {
    "n", "seed", "core_size", "hub_count", "ring_levels",
    "rows", "cols", "attach_count", "degree", "per_segment",
}
_FLOAT_FIELDS = {"edge_prob", "rewire_prob"}

_SCALAR_KEYS = {
    "version", "base_seed", "repetitions", "alpha", "death_horizon",
    "max_iters", "success_mode", "success_tolerance",
    "objectives", "death_fractions",
}
_REQUIRED_KEYS = ("version", "base_seed", "objectives", "death_fractions")


def _parse_params(parts: list[str], context: str) -> dict:
    params = {}
    for part in parts:
        if "=" not in part:
            raise ValueError(f"{context}: expected key=value, got {part!r}")
        key, _, raw = part.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key in params:
            raise ValueError(f"{context}: duplicate parameter {key!r}")
        if key in _INT_FIELDS:
            try:
                params[key] = int(raw)
            except ValueError:
                raise ValueError(f"{context}: {key} must be an integer, got {raw!r}") from None
        elif key in _FLOAT_FIELDS:
            try:
                params[key] = float(raw)
            except ValueError:
                raise ValueError(f"{context}: {key} must be a number, got {raw!r}") from None
        else:
            raise ValueError(f"{context}: unknown parameter {key!r}")
    return params


def parse_topology_line(text: str) -> list[TopologySpec]:
    """Parse one ``topology`` value into specs.

    ``<kind> key=value ...`` yields one spec; kind ``spectrum`` (keys
    ``n`` and ``per_segment``) expands into the whole family.
    """
    parts = text.split()
    if not parts:
        raise ValueError("empty topology line")
    kind = parts[0]
    params = _parse_params(parts[1:], f"topology {kind!r}")
    if kind == "spectrum":
        extras = set(params) - {"n", "per_segment"}
        if extras:
            raise ValueError(f"topology 'spectrum': unknown parameter {sorted(extras)}")
        if "n" not in params or "per_segment" not in params:
            raise ValueError("topology 'spectrum' requires n and per_segment")
        return [p.spec for p in spectrum_points(params["n"], params["per_segment"])]
    if kind not in TOPOLOGY_KINDS:
        raise ValueError(
            f"unknown topology kind {kind!r}; expected one of {TOPOLOGY_KINDS + ('spectrum',)}"
        )
    node_count = params.pop("n", None)
    spec = TopologySpec(kind=kind, node_count=node_count, **params)
    spec.validate()
    return [spec]


def parse_plan(text: str) -> ExperimentPlan:
    """Parse plan text into a validated :class:`ExperimentPlan`."""
    scalars: dict[str, str] = {}
    topology_lines: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "topology":
            topology_lines.append(value)
            continue
        if key not in _SCALAR_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in scalars:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ValueError(f"line {lineno}: empty value for {key!r}")
        scalars[key] = value
    missing = [k for k in _REQUIRED_KEYS if k not in scalars]
    if missing:
        raise ValueError(f"plan is missing required keys: {missing}")
    if not topology_lines:
        raise ValueError("plan is missing required keys: ['topology']")

    def _int(key: str, default: int | None = None) -> int:
        if key not in scalars:
            return default
        try:
            return int(scalars[key])
        except ValueError:
            raise ValueError(f"{key} must be an integer, got {scalars[key]!r}") from None

    def _float(key: str, default: float) -> float:
        if key not in scalars:
            return default
        try:
            return float(scalars[key])
        except ValueError:
            raise ValueError(f"{key} must be a number, got {scalars[key]!r}") from None

    version = _int("version")
    if version != PLAN_VERSION:
        raise ValueError(f"unsupported plan version {version}; expected {PLAN_VERSION}")

    topologies: list[TopologySpec] = []
    for line in topology_lines:
        topologies.extend(parse_topology_line(line))

    objectives = []
    for name in (part.strip() for part in scalars["objectives"].split(",")):
        if not name:
            raise ValueError("objectives: empty entry")
        objectives.append(default_spec(name))

    fractions = []
    for part in (p.strip() for p in scalars["death_fractions"].split(",")):
        if not part:
            raise ValueError("death_fractions: empty entry")
        try:
            fractions.append(float(part))
        except ValueError:
            raise ValueError(f"death_fractions: not a number: {part!r}") from None

    tolerance_raw = scalars.get("success_tolerance", "default")
    if tolerance_raw == "default":
        tolerance = None
    else:
        try:
            tolerance = float(tolerance_raw)
        except ValueError:
            raise ValueError(
                f"success_tolerance must be a number or 'default', got {tolerance_raw!r}"
            ) from None
    success = SuccessCriterion(
        mode=scalars.get("success_mode", "position-radius"), tolerance=tolerance
    )

    return ExperimentPlan(
        topologies=tuple(topologies),
        objectives=tuple(objectives),
        death_fractions=tuple(fractions),
        base_seed=_int("base_seed"),
        repetitions=_int("repetitions", 50),
        success=success,
        alpha=_float("alpha", 0.7),
        death_horizon=_int("death_horizon", 500),
        max_iters=_int("max_iters", 1000),
    )


def _topology_line(spec: TopologySpec) -> str:
    parts = [spec.kind]
    if spec.node_count is not None:
        parts.append(f"n={spec.node_count}")
    for name in KIND_FIELDS[spec.kind]:
        value = getattr(spec, name)
        if isinstance(value, float):
            parts.append(f"{name}={value:g}")
        else:
            parts.append(f"{name}={value}")
    return " ".join(parts)


def plan_to_text(plan: ExperimentPlan) -> str:
    """Serialize a plan back to the file format.

    Spectrum expansions are written out graph by graph, so parsing
    the output reproduces the plan exactly (labels aside).
    """
    lines = [
        f"version = {PLAN_VERSION}",
        f"base_seed = {plan.base_seed}",
        f"repetitions = {plan.repetitions}",
        f"alpha = {plan.alpha:g}",
        f"death_horizon = {plan.death_horizon}",
        f"max_iters = {plan.max_iters}",
        f"success_mode = {plan.success.mode}",
        "success_tolerance = "
        + ("default" if plan.success.tolerance is None else repr(plan.success.tolerance)),
        "objectives = " + ", ".join(obj.name for obj in plan.objectives),
        "death_fractions = " + ", ".join(repr(f) for f in plan.death_fractions),
    ]
    lines.extend(f"topology = {_topology_line(spec)}" for spec in plan.topologies)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in sweeps

_SPECTRUM_PLAN = """\
# Full spectrum sweep: 240 graphs, 4-D Shekel, three hostility levels.
version = 1
base_seed = 42
repetitions = 50
objectives = shekel
death_fractions = 0, 0.15, 0.30
topology = spectrum n=100 per_segment=80
"""

_REFERENCE_PLAN = """\
# Nine reference topologies, four minimization objectives, three
# hostility levels.
version = 1
base_seed = 42
repetitions = 50
objectives = ackley, griewank, schwefel, rastrigin
death_fractions = 0, 0.15, 0.30
topology = complete n=100
topology = star n=100
topology = ring n=100
topology = ring-core-star n=100 hub_count=8
topology = multi-ring n=100 ring_levels=9
topology = von-neumann rows=10 cols=10
topology = scale-free n=100 attach_count=2 seed=7
topology = random n=100 edge_prob=0.1 seed=7
topology = small-world n=100 degree=10 rewire_prob=0.1 seed=7
"""

_BUILTIN_PLANS = {
    "spectrum-full": _SPECTRUM_PLAN,
    "reference-grid": _REFERENCE_PLAN,
}

BUILTIN_PLAN_NAMES = tuple(sorted(_BUILTIN_PLANS))


def builtin_plan_text(name: str) -> str:
    """Text of a named built-in sweep plan."""
    if name not in _BUILTIN_PLANS:
        raise ValueError(
            f"unknown built-in plan {name!r}; expected one of {BUILTIN_PLAN_NAMES}"
        )
    return _BUILTIN_PLANS[name]
