"""Benchmark objective functions.

Five standard landscapes: Shekel (maximized, the 4-D foothill table
ships in ``data/objective_params.txt``), plus Ackley, Griewank,
Schwefel and Rastrigin (minimized).  The engine always maximizes a
score, so :func:`score_many` negates the minimization objectives.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
import numpy as np

__all__ = [
    "OBJECTIVE_NAMES",
    "ShekelParams",
    "shekel_params",
    "ObjectiveSpec",
    "default_spec",
    "evaluate",
    "evaluate_many",
    "score_many",
]

OBJECTIVE_NAMES = ("shekel", "ackley", "griewank", "schwefel", "rastrigin")


@dataclass(frozen=True, eq=False)
class ShekelParams:
    """Shekel foothill centers (m rows of 4 coordinates) and heights."""

    centers: np.ndarray
    heights: np.ndarray

    def __post_init__(self) -> None:
        centers = np.asarray(self.centers, dtype=np.float64)
        heights = np.asarray(self.heights, dtype=np.float64)
        if centers.ndim != 2 or centers.shape[0] != heights.shape[0]:
            raise ValueError("each center row needs one height entry")
        if (heights <= 0).any():
            raise ValueError("heights must be positive")
        centers.setflags(write=False)
        heights.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "heights", heights)


@lru_cache(maxsize=1)
def shekel_params() -> ShekelParams:
    """Load the packaged foothill table."""
    text = (
        resources.files("swarmtopo").joinpath("data/objective_params.txt").read_text()
    )
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"objective_params.txt line {lineno}: expected 5 numbers")
        rows.append([float(p) for p in parts])
    table = np.asarray(rows, dtype=np.float64)
    return ShekelParams(centers=table[:, :4], heights=table[:, 4])


def _shekel(points: np.ndarray) -> np.ndarray:
    params = shekel_params()
    diffs = points[:, None, :] - params.centers[None, :, :]
    sq = (diffs * diffs).sum(axis=2)
    return (1.0 / (params.heights[None, :] + sq)).sum(axis=1)


def _ackley(points: np.ndarray) -> np.ndarray:
    a, b, c = 20.0, 0.2, 2.0 * np.pi
    d = points.shape[1]
    radial = np.sqrt((points * points).sum(axis=1) / d)
    cosine = np.cos(c * points).sum(axis=1) / d
    return -a * np.exp(-b * radial) - np.exp(cosine) + a + np.e


def _griewank(points: np.ndarray) -> np.ndarray:
    d = points.shape[1]
    idx = np.sqrt(np.arange(1, d + 1, dtype=np.float64))
    return (
        (points * points).sum(axis=1) / 4000.0
        - np.cos(points / idx[None, :]).prod(axis=1)
        + 1.0
    )


def _schwefel(points: np.ndarray) -> np.ndarray:
    d = points.shape[1]
    return 418.9829 * d - (points * np.sin(np.sqrt(np.abs(points)))).sum(axis=1)


def _rastrigin(points: np.ndarray) -> np.ndarray:
    d = points.shape[1]
    return 10.0 * d + (
        points * points - 10.0 * np.cos(2.0 * np.pi * points)
    ).sum(axis=1)


_EVALUATORS = {
    "shekel": _shekel,
    "ackley": _ackley,
    "griewank": _griewank,
    "schwefel": _schwefel,
    "rastrigin": _rastrigin,
}


@dataclass(frozen=True, eq=False)
class ObjectiveSpec:
    """One benchmark objective with its search box and optimum.

    ``direction`` is ``"max"`` or ``"min"``; ``optimum_value`` is the
    objective evaluated exactly at ``optimum_location``.
    """

    name: str
    dimension: int
    lower: float
    upper: float
    direction: str
    optimum_location: np.ndarray
    optimum_value: float

    def __post_init__(self) -> None:
        if self.name not in OBJECTIVE_NAMES:
            raise ValueError(
                f"unknown objective {self.name!r}; expected one of {OBJECTIVE_NAMES}"
            )
        if self.direction not in ("max", "min"):
            raise ValueError(f"direction must be 'max' or 'min', got {self.direction!r}")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not self.lower < self.upper:
            raise ValueError("need lower < upper")
        pos = np.asarray(self.optimum_location, dtype=np.float64)
        if pos.shape != (self.dimension,):
            raise ValueError(
                f"optimum_location shape {pos.shape} does not match dimension {self.dimension}"
            )
        pos.setflags(write=False)
        object.__setattr__(self, "optimum_location", pos)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObjectiveSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.dimension == other.dimension
            and self.lower == other.lower
            and self.upper == other.upper
            and self.direction == other.direction
            and self.optimum_value == other.optimum_value
            and np.array_equal(self.optimum_location, other.optimum_location)
        )

    def __hash__(self) -> int:
        return hash(
            (self.name, self.dimension, self.lower, self.upper, self.direction)
        )

    def range_diagonal(self) -> float:
        """Length of the search box diagonal."""
        return float(np.sqrt(self.dimension) * (self.upper - self.lower))

    def evaluate(self, x) -> float:
        return evaluate(self, x)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        return evaluate_many(self, points)

    def score_many(self, points: np.ndarray) -> np.ndarray:
        return score_many(self, points)


def evaluate_many(spec: ObjectiveSpec, points: np.ndarray) -> np.ndarray:
    """Objective values for an ``(N, dimension)`` batch of positions."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != spec.dimension:
        raise ValueError(
            f"expected shape (N, {spec.dimension}), got {pts.shape}"
        )
    return _EVALUATORS[spec.name](pts)


def evaluate(spec: ObjectiveSpec, x) -> float:
    """Objective value at a single position; rejects non-finite input."""
    vec = np.asarray(x, dtype=np.float64)
    if vec.shape != (spec.dimension,):
        raise ValueError(f"expected shape ({spec.dimension},), got {vec.shape}")
    if not np.isfinite(vec).all():
        raise ValueError("position must be finite")
    return float(evaluate_many(spec, vec[None, :])[0])


def score_many(spec: ObjectiveSpec, points: np.ndarray) -> np.ndarray:
    """Direction-adjusted values: larger is always better."""
    values = evaluate_many(spec, points)
    return values if spec.direction == "max" else -values


_TABLE_DEFAULTS = {
    # name: (dimension, lower, upper, direction, optimum coordinate)
    "shekel": (4, 0.0, 10.0, "max", 4.0),
    "ackley": (2, -15.0, 30.0, "min", 0.0),
    "griewank": (2, -600.0, 600.0, "min", 0.0),
    "schwefel": (2, -500.0, 500.0, "min", 420.9687),
    "rastrigin": (2, -5.12, 5.12, "min", 0.0),
}


def default_spec(name: str, dimension: int | None = None) -> ObjectiveSpec:
    """Standard configuration for a named objective.

    ``dimension`` overrides the default for the separable objectives;
    the Shekel table is 4-D only.
    """
    if name not in _TABLE_DEFAULTS:
        raise ValueError(f"unknown objective {name!r}; expected one of {OBJECTIVE_NAMES}")
    dim, lower, upper, direction, opt_coord = _TABLE_DEFAULTS[name]
    if dimension is not None:
        if name == "shekel" and dimension != 4:
            raise ValueError("shekel is defined only for dimension 4")
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        dim = dimension
    optimum = np.full(dim, opt_coord, dtype=np.float64)
    probe = ObjectiveSpec(
        name=name,
        dimension=dim,
        lower=lower,
        upper=upper,
        direction=direction,
        optimum_location=optimum,
        optimum_value=0.0,
    )
    value = evaluate(probe, optimum)
    return ObjectiveSpec(
        name=name,
        dimension=dim,
        lower=lower,
        upper=upper,
        direction=direction,
        optimum_location=optimum,
        optimum_value=value,
    )
