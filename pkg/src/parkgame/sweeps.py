"""Parameter sweeps and figure-data generation.

A sweep walks a one- or two-axis grid over game parameters, evaluates the
requested metrics at every grid point, and yields plain row dictionaries in
deterministic grid order (first axis outermost). Rows serialize to CSV or
JSON lines with 12-significant-digit numbers so that reruns diff cleanly.

The three figure generators produce the data behind the social-cost curves
(cost versus competition level), the Price-of-Anarchy surface over the two
pricing parameters, and the equilibrium competition probability versus
demand.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, TextIO

import numpy as np

from .efficiency import price_of_anarchy
from .equilibria import Method, bayesian_equilibrium, mixed_equilibrium, potential
from .model import BayesianConfig, GameConfig, social_cost_mixed, social_cost_pure

SWEEP_PARAMETERS = ("beta", "delta", "n_drivers", "p_act", "p", "sigma")
SWEEP_METRICS = (
    "social_cost_pure",
    "social_cost_mixed",
    "poa",
    "p_ne",
    "p_ne_bayes",
    "potential",
)


def format_value(value) -> str:
    """Serialize one cell: integers exactly, reals to 12 significant digits."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return "%.12g" % value
    return str(value)


@dataclass(frozen=True)
class Axis:
    """Inclusive arithmetic grid over one sweep parameter."""

    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self) -> None:
        if self.name not in SWEEP_PARAMETERS:
            raise ValueError(
                f"requires axis name in {SWEEP_PARAMETERS}, got {self.name!r}"
            )
        if self.step <= 0:
            raise ValueError(f"requires step > 0, got {self.step}")
        if self.start > self.stop:
            raise ValueError(
                f"requires start <= stop, got start={self.start}, stop={self.stop}"
            )

    def values(self) -> list[float]:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: a baseline game, up to two axes, output metrics."""

    fixed: GameConfig
    axes: tuple[Axis, ...]
    outputs: tuple[str, ...]
    p_act: float | None = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise ValueError(f"requires 1 or 2 axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"requires distinct axis names, got {names}")
        for out in self.outputs:
            if out not in SWEEP_METRICS:
                raise ValueError(f"requires metric in {SWEEP_METRICS}, got {out!r}")

    def columns(self) -> list[str]:
        return [a.name for a in self.axes] + list(self.outputs)


def _config_at(spec: SweepSpec, point: dict[str, float]) -> GameConfig:
    """Game config at one grid point.

    Sweeping ``beta`` or ``delta`` keeps the other fixed and recomputes
    ``gamma = beta + delta`` so the validity ordering beta < gamma is
    preserved at every point.
    """
    base = spec.fixed
    beta = point.get("beta", base.beta)
    delta = point.get("delta", base.delta)
    n = int(round(point["n_drivers"])) if "n_drivers" in point else base.n_drivers
    if "beta" in point or "delta" in point:
        gamma = beta + delta
    else:
        gamma = base.gamma
    return replace(base, n_drivers=n, beta=beta, gamma=gamma)


def _evaluate(spec: SweepSpec, metric: str, cfg: GameConfig, point: dict[str, float]):
    if metric == "social_cost_pure":
        return social_cost_pure(cfg, int(round(point["sigma"])))
    if metric == "social_cost_mixed":
        return social_cost_mixed(cfg, point["p"])
    if metric == "potential":
        return potential(cfg, int(round(point["sigma"])))
    if metric == "poa":
        return price_of_anarchy(cfg).poa
    if metric == "p_ne":
        return mixed_equilibrium(cfg, Method.CLOSED_FORM).p_pub
    if metric == "p_ne_bayes":
        p_act = point.get("p_act", spec.p_act)
        if p_act is None:
            raise ValueError("requires p_act (fixed or as an axis) for p_ne_bayes")
        return bayesian_equilibrium(BayesianConfig(cfg, p_act)).p_pub
    raise ValueError(f"unknown metric {metric!r}")


def sweep_rows(spec: SweepSpec) -> Iterable[dict]:
    """Evaluate the sweep grid row by row, axes-then-metrics column order."""
    grids = [axis.values() for axis in spec.axes]
    names = [axis.name for axis in spec.axes]
    if len(grids) == 1:
        points = ([v] for v in grids[0])
    else:
        points = ([a, b] for a in grids[0] for b in grids[1])
    for values in points:
        point = dict(zip(names, values))
        cfg = _config_at(spec, point)
        row = dict(zip(names, values))
        for metric in spec.outputs:
            row[metric] = _evaluate(spec, metric, cfg, point)
        yield row


def _flag_minimum(rows: list[dict], column: str) -> None:
    values = np.array([row[column] for row in rows])
    min_index = int(np.argmin(values))
    for i, row in enumerate(rows):
        row["is_min"] = int(i == min_index)


def social_cost_curve_rows(cfg: GameConfig, mode: str, grid_points: int = 200) -> list[dict]:
    """Social cost against the competition level (both profile families).

    ``mode="pure"`` tabulates the deterministic cost at every competitor
    count; ``mode="mixed"`` tabulates the expected cost on a uniform grid of
    competition probabilities. The row attaining the minimum is flagged; for
    pure profiles that is exactly ``min(n_drivers, r_spots)``.
    """
    if mode == "pure":
        rows = [
            {"sigma": s, "social_cost": social_cost_pure(cfg, s)}
            for s in range(cfg.n_drivers + 1)
        ]
    elif mode == "mixed":
        rows = [
            {"p": p, "social_cost": social_cost_mixed(cfg, p)}
            for p in np.linspace(0.0, 1.0, grid_points)
        ]
    else:
        raise ValueError(f"requires mode 'pure' or 'mixed', got {mode!r}")
    _flag_minimum(rows, "social_cost")
    return rows


def poa_surface_spec(
    cfg: GameConfig,
    beta_axis: Axis = Axis("beta", 1.1, 16.0, 0.1),
    delta_axis: Axis = Axis("delta", 1.0, 5.0, 0.1),
) -> SweepSpec:
    """Sweep spec for the PoA surface over the two pricing parameters."""
    return SweepSpec(fixed=cfg, axes=(beta_axis, delta_axis), outputs=("poa",))


def equilibrium_probability_rows(
    n_values: Iterable[int],
    p_act_values: Iterable[float],
    charging_pairs: Iterable[tuple[float, float]],
    r_spots: int = 50,
    c_pub_s: float = 1.0,
) -> list[dict]:
    """Equilibrium competition probability against demand.

    One row per (demand level, activity probability, charging pair). The
    probability is 1 while the expected active demand stays below the
    threshold and decays like its inverse beyond; curves are non-increasing
    in the demand level.
    """
    rows = []
    for beta, gamma in charging_pairs:
        for p_act in p_act_values:
            for n in n_values:
                cfg = GameConfig(
                    n_drivers=n, r_spots=r_spots, beta=beta, gamma=gamma, c_pub_s=c_pub_s
                )
                p_ne = bayesian_equilibrium(BayesianConfig(cfg, p_act)).p_pub
                rows.append(
                    {
                        "n_drivers": n,
                        "p_act": p_act,
                        "beta": beta,
                        "gamma": gamma,
                        "p_ne": p_ne,
                    }
                )
    return rows


def write_rows(rows: Iterable[dict], stream: TextIO, fmt: str = "csv") -> None:
    """Write rows as CSV (header always present) or JSON lines."""
    rows = list(rows)
    if fmt == "json":
        for row in rows:
            stream.write(json.dumps({k: _json_value(v) for k, v in row.items()}))
            stream.write("\n")
        return
    if fmt != "csv":
        raise ValueError(f"requires format 'csv' or 'json', got {fmt!r}")
    if not rows:
        return
    writer = csv.writer(stream, lineterminator="\n")
    columns = list(rows[0].keys())
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])


def _json_value(value):
    if isinstance(value, float):
        if math.isinf(value):
            return None
        return float("%.12g" % value)
    if isinstance(value, np.integer):
        return int(value)
    return value
