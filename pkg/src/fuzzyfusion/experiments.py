"""Experiment runner: resolved configs, single runs, sweeps, CSV artifacts.

Configuration files are plain text, one `section.key = value` assignment per
line, with `#` comments and blank lines ignored.  Unknown keys are rejected
by name.  Every run writes its fully resolved configuration (including the
effective seed) next to its outputs, and identical configuration plus seed
reproduces every artifact byte for byte.
"""

import csv
import hashlib
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from fuzzyfusion.aggregator import AggregatorConfig
from fuzzyfusion.inference import ANTECEDENTS, LARGE, SMALL, RuleBase
from fuzzyfusion.metrics import iae, itae, peak_to_peak_tail
from fuzzyfusion.pendulum import (
    FEEDBACK_MODES,
    BenchmarkConfig,
    PendulumFellError,
    simulate,
)
from fuzzyfusion.predictor import PredictorConfig
from fuzzyfusion.sensors import WidebandSensorSpec

TRAJECTORY_HEADER = [
    "time", "truth", "s1", "s2", "estimate", "w1", "drift",
    "prediction", "prediction_used", "force",
]
SUMMARY_HEADER = ["mode", "iae", "itae", "peak_to_peak_tail", "seed", "config_digest", "status"]
SWEEP_HEADER = ["axis_value", "mode", "iae", "itae", "peak_to_peak_tail", "status"]

# default robustness grids; all swept parameters stay fully user-overridable
DEFAULT_TAU_GRID = [0.5, 0.65, 0.8, 0.95, 1.1, 1.25, 1.4]
DEFAULT_VARIANCE_GRID = [0.0025, 0.005, 0.01, 0.02, 0.04]
DEFAULT_BIAS_GRID = [-0.04, -0.02, 0.0, 0.02, 0.04]


class ConfigError(ValueError):
    """A configuration file or override could not be applied."""


@dataclass
class ExperimentConfig:
    plant: BenchmarkConfig = field(default_factory=BenchmarkConfig)
    wideband: WidebandSensorSpec = field(default_factory=WidebandSensorSpec)
    s2_time_constant: float = 0.5
    aggregator: AggregatorConfig = field(default_factory=AggregatorConfig)
    predictor: PredictorConfig = field(default_factory=PredictorConfig)
    tail_start: float = 15.0  # seconds, start of the oscillation diagnostic window
    seed: int = 1


_SECTIONS = {
    "plant": ("plant", BenchmarkConfig),
    "s1": ("wideband", WidebandSensorSpec),
    "aggregator": ("aggregator", AggregatorConfig),
    "predictor": ("predictor", PredictorConfig),
}
# sample_period is slaved to plant.dt; rules are exposed via dedicated keys
_HIDDEN_FIELDS = {("aggregator", "sample_period"), ("aggregator", "rules")}

_RULE_KEYS = {
    "aggregator.w1_small_small": (SMALL, SMALL),
    "aggregator.w1_small_large": (SMALL, LARGE),
    "aggregator.w1_large_small": (LARGE, SMALL),
    "aggregator.w1_large_large": (LARGE, LARGE),
}
_DRIFT_KEYS = ("aggregator.drift_peak", "aggregator.drift_base")


def _section_keys():
    keys = {}
    for prefix, (attr, cls) in _SECTIONS.items():
        for f in fields(cls):
            if (prefix, f.name) in _HIDDEN_FIELDS:
                continue
            keys[f"{prefix}.{f.name}"] = (attr, f.name, f.type)
    return keys


_FIELD_KEYS = _section_keys()
_SPECIAL_KEYS = ("s2.time_constant", "metrics.tail_start", "seed")

KNOWN_KEYS = tuple(
    sorted([*_FIELD_KEYS, *_SPECIAL_KEYS, *_RULE_KEYS, *_DRIFT_KEYS])
)


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse `key = value` lines into an override mapping of raw strings."""
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown configuration key {key!r}")
        overrides[key] = value
    return overrides


def load_config(path) -> "ExperimentConfig":
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err
    return build_config(parse_config_text(text, source=str(path)))


def _convert(key: str, value: str, target_type):
    try:
        if target_type is int:
            return int(value)
        return float(value)
    except ValueError as err:
        raise ConfigError(f"invalid value for {key}: {value!r}") from err


def build_config(overrides: dict | None = None) -> ExperimentConfig:
    """Defaults plus overrides; every constraint violation maps to ConfigError."""
    overrides = dict(overrides or {})
    section_values = {attr: {} for attr, _ in _SECTIONS.values()}
    w1 = dict(RuleBase().w1_consequents)
    drift = dict(RuleBase().drift_consequents)
    extras = {}
    for key, raw in overrides.items():
        if key in _FIELD_KEYS:
            attr, name, ftype = _FIELD_KEYS[key]
            section_values[attr][name] = _convert(key, raw, ftype)
        elif key in _RULE_KEYS:
            w1[_RULE_KEYS[key]] = _convert(key, raw, float)
        elif key == "aggregator.drift_peak":
            drift[(SMALL, LARGE)] = _convert(key, raw, float)
        elif key == "aggregator.drift_base":
            base = _convert(key, raw, float)
            for k in ANTECEDENTS:
                if k != (SMALL, LARGE):
                    drift[k] = base
        elif key == "s2.time_constant":
            extras["s2_time_constant"] = _convert(key, raw, float)
        elif key == "metrics.tail_start":
            extras["tail_start"] = _convert(key, raw, float)
        elif key == "seed":
            extras["seed"] = _convert(key, raw, int)
        else:
            raise ConfigError(f"unknown configuration key {key!r}")
    try:
        plant = BenchmarkConfig(**section_values["plant"])
        rules = RuleBase(w1_consequents=w1, drift_consequents=drift)
        aggregator = AggregatorConfig(
            sample_period=plant.dt, rules=rules, **section_values["aggregator"]
        )
        cfg = ExperimentConfig(
            plant=plant,
            wideband=WidebandSensorSpec(**section_values["wideband"]),
            aggregator=aggregator,
            predictor=PredictorConfig(**section_values["predictor"]),
            **extras,
        )
    except ValueError as err:
        raise ConfigError(str(err)) from err
    if not cfg.s2_time_constant > 0.0:
        raise ConfigError("s2.time_constant must be strictly positive")
    if not 0.0 <= cfg.tail_start < cfg.plant.duration:
        raise ConfigError("metrics.tail_start must lie within the run duration")
    return cfg


def render_config(cfg: ExperimentConfig, seed: int | None = None, notes: tuple = ()) -> str:
    """Full key = value listing; parsing it back reproduces cfg exactly."""
    lines = ["# fuzzyfusion resolved configuration"]
    lines.extend(f"# {note}" for note in notes)
    for prefix, (attr, cls) in _SECTIONS.items():
        section = getattr(cfg, attr)
        for f in fields(cls):
            if (prefix, f.name) in _HIDDEN_FIELDS:
                continue
            lines.append(f"{prefix}.{f.name} = {getattr(section, f.name)!r}")
    rules = cfg.aggregator.rules
    for key, pair in _RULE_KEYS.items():
        lines.append(f"{key} = {rules.w1_consequents[pair]!r}")
    lines.append(f"aggregator.drift_peak = {rules.drift_consequents[(SMALL, LARGE)]!r}")
    lines.append(f"aggregator.drift_base = {rules.drift_consequents[(SMALL, SMALL)]!r}")
    lines.append(f"s2.time_constant = {cfg.s2_time_constant!r}")
    lines.append(f"metrics.tail_start = {cfg.tail_start!r}")
    lines.append(f"seed = {cfg.seed if seed is None else seed}")
    return "\n".join(lines) + "\n"


def config_digest(cfg: ExperimentConfig, seed: int | None = None) -> str:
    return hashlib.sha256(render_config(cfg, seed=seed).encode()).hexdigest()[:12]


def _simulate(cfg: ExperimentConfig, mode: str, seed: int):
    return simulate(
        cfg.plant,
        mode,
        s1_spec=cfg.wideband,
        s2_time_constant=cfg.s2_time_constant,
        aggregator_cfg=cfg.aggregator,
        predictor_cfg=cfg.predictor,
        seed=seed,
    )


def _write_trajectory(path: Path, traj) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRAJECTORY_HEADER)
        for k in range(len(traj)):
            writer.writerow(
                [
                    traj.time[k], traj.truth[k], traj.s1[k], traj.s2[k],
                    traj.estimate[k], traj.w1[k], traj.drift[k],
                    traj.prediction[k], int(traj.prediction_used[k]), traj.force[k],
                ]
            )


def _metrics_row(traj, cfg: ExperimentConfig):
    errors = traj.truth
    tail = cfg.tail_start
    if tail >= (len(traj) - 1) * traj.dt:  # partial trajectory may end early
        p2p = math.nan
    else:
        p2p = peak_to_peak_tail(errors, traj.dt, tail)
    return iae(errors, traj.dt), itae(errors, traj.dt), p2p


def run_experiment(cfg: ExperimentConfig, mode: str, out_dir, seed: int | None = None) -> dict:
    """One closed-loop run; writes trajectory.csv, summary.csv and config.txt.

    Returns the summary mapping; a fall still writes the partial trajectory
    and a summary row with status "fall".
    """
    if mode not in FEEDBACK_MODES:
        raise ConfigError(f"unknown feedback mode {mode!r}; pick one of {FEEDBACK_MODES}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    effective_seed = cfg.seed if seed is None else seed
    (out_dir / "config.txt").write_text(render_config(cfg, seed=effective_seed))
    digest = config_digest(cfg, seed=effective_seed)

    status = "ok"
    try:
        traj = _simulate(cfg, mode, effective_seed)
    except PendulumFellError as err:
        traj = err.trajectory
        status = "fall"
    _write_trajectory(out_dir / "trajectory.csv", traj)
    if status == "ok":
        run_iae, run_itae, run_p2p = _metrics_row(traj, cfg)
    else:
        run_iae = run_itae = run_p2p = math.nan
    summary = {
        "mode": mode,
        "iae": run_iae,
        "itae": run_itae,
        "peak_to_peak_tail": run_p2p,
        "seed": effective_seed,
        "config_digest": digest,
        "status": status,
    }
    with (out_dir / "summary.csv").open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SUMMARY_HEADER)
        writer.writerow([summary[k] for k in SUMMARY_HEADER])
    return summary


def set_parameter(cfg: ExperimentConfig, key: str, value: float) -> ExperimentConfig:
    """A copy of cfg with one numeric parameter replaced, path-addressed."""
    if key == "seed":
        raise ConfigError("seed is not sweepable; pass seeds explicitly")
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown parameter path {key!r}")
    overrides = parse_config_text(render_config(cfg))
    overrides[key] = repr(value)
    return build_config(overrides)


def run_sweep(
    cfg: ExperimentConfig,
    axis: str,
    values,
    modes,
    out_dir,
    seed: int | None = None,
) -> list:
    """One run per (axis value, mode); writes sweep.csv and config.txt.

    Rows are ordered by ascending axis value, then by the given mode order.
    Falls become NaN metrics with status "fall" instead of aborting.
    """
    values = sorted(float(v) for v in values)
    if not values:
        raise ConfigError("sweep needs at least one axis value")
    for mode in modes:
        if mode not in FEEDBACK_MODES:
            raise ConfigError(f"unknown feedback mode {mode!r}; pick one of {FEEDBACK_MODES}")
    for value in values:  # fail fast on bad axis values before any run
        set_parameter(cfg, axis, value)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    effective_seed = cfg.seed if seed is None else seed
    notes = (
        f"sweep axis: {axis} = {','.join(repr(v) for v in values)}",
        f"sweep modes: {','.join(modes)}",
    )
    (out_dir / "config.txt").write_text(render_config(cfg, seed=effective_seed, notes=notes))

    rows = []
    for value in values:
        point_cfg = set_parameter(cfg, axis, value)
        for mode in modes:
            try:
                traj = _simulate(point_cfg, mode, effective_seed)
                point_iae, point_itae, point_p2p = _metrics_row(traj, point_cfg)
                status = "ok"
            except PendulumFellError:
                point_iae = point_itae = point_p2p = math.nan
                status = "fall"
            rows.append(
                {
                    "axis_value": value,
                    "mode": mode,
                    "iae": point_iae,
                    "itae": point_itae,
                    "peak_to_peak_tail": point_p2p,
                    "status": status,
                }
            )
    with (out_dir / "sweep.csv").open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow([row[k] for k in SWEEP_HEADER])
    return rows
