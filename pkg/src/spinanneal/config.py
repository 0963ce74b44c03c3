"""Experiment configuration: YAML schema, validation, and materialization.

Config files carry ordinary frequencies in Hz; the loader multiplies by
2*pi when building the ChainSpec. The dephasing value is special-cased:
``run.rate_convention`` chooses between the angular reading
(gamma = 2*pi * gamma_hz, consistent with every other parameter) and the
plain reading (gamma = gamma_hz as a bare rate in 1/s). Validation
errors always name the offending field path.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .dynamics import INTEGRATORS
from .hamiltonians import ChainSpec, dipolar_couplings

MAX_SITES = 4  # cost guard; the presets never need more

MODES = ("anneal", "spectrum", "sweep")
RATE_CONVENTIONS = ("angular", "plain")


class ConfigError(ValueError):
    """Invalid configuration; message names the field path."""


def _require(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise ConfigError(f"{path}: {msg}")


def _get_section(raw: dict, name: str, required: bool = True) -> dict:
    section = raw.get(name)
    if section is None:
        _require(not required, name, "section is required")
        return {}
    _require(isinstance(section, dict), name, "must be a mapping")
    return section


def _num(section: dict, path: str, key: str, default=None, allow_negative=False):
    if key not in section or section[key] is None:
        if default is None and key not in section:
            raise ConfigError(f"{path}.{key}: value is required")
        return default
    val = section[key]
    _require(isinstance(val, (int, float)) and not isinstance(val, bool),
             f"{path}.{key}", "must be a number")
    _require(math.isfinite(float(val)), f"{path}.{key}", "must be finite")
    if not allow_negative:
        _require(float(val) >= 0.0, f"{path}.{key}", "must be >= 0")
    return float(val)


def _check_keys(section: dict, path: str, allowed: set[str]) -> None:
    for key in section:
        _require(key in allowed, f"{path}.{key}", "unknown field")


@dataclass(frozen=True)
class RunOptions:
    mode: str = "anneal"
    frame: str = "rwa"
    integrator: str = "stepwise-exponential"
    n_steps: int | None = None
    n_out: int = 201
    steps_per_period: int = 40
    rate_convention: str = "angular"
    n_times: int = 201
    n_levels: int | None = None


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple


@dataclass
class ExperimentConfig:
    """Materialized configuration plus the normalized raw dict it came from."""

    raw: dict
    chain: ChainSpec
    run: RunOptions
    sweep: SweepSpec | None = None


_CHAIN_KEYS = {
    "n_sites", "d0_hz", "omega_hz", "strain_hz", "strain_base_hz", "strain_ratios",
    "j_nn_hz", "j_hz", "jz_nn_hz", "jz_hz", "gamma_hz", "coupling_exponent",
}
_SCHEDULE_KEYS = {"t_total_s", "detuning_amp_hz", "drive_amp_hz", "sigma_s", "sigma_frac"}
_RUN_KEYS = {
    "mode", "frame", "integrator", "n_steps", "n_out", "steps_per_period",
    "rate_convention", "n_times", "n_levels",
}
_SWEEP_KEYS = {"parameter", "values"}


def _strain_list(chain: dict, n_sites: int) -> list[float]:
    explicit = chain.get("strain_hz")
    base = chain.get("strain_base_hz")
    ratios = chain.get("strain_ratios")
    _require(explicit is None or base is None, "chain.strain_hz",
             "give either strain_hz or strain_base_hz, not both")
    if explicit is not None:
        _require(isinstance(explicit, (list, tuple)), "chain.strain_hz", "must be a list")
        _require(len(explicit) == n_sites, "chain.strain_hz", f"must have {n_sites} entries")
        out = []
        for i, v in enumerate(explicit):
            _require(isinstance(v, (int, float)) and not isinstance(v, bool),
                     f"chain.strain_hz[{i}]", "must be a number")
            _require(float(v) >= 0.0, f"chain.strain_hz[{i}]", "must be >= 0")
            out.append(float(v))
        return out
    if base is None:
        _require(ratios is None, "chain.strain_ratios", "requires strain_base_hz")
        return [0.0] * n_sites
    base = _num(chain, "chain", "strain_base_hz")
    if ratios is None:
        ratios = [1.0] * n_sites
    _require(isinstance(ratios, (list, tuple)), "chain.strain_ratios", "must be a list")
    _require(len(ratios) == n_sites, "chain.strain_ratios", f"must have {n_sites} entries")
    return [base * float(r) for r in ratios]


def _coupling_matrix(chain: dict, key_nn: str, key_full: str, n_sites: int,
                     exponent: float) -> np.ndarray:
    full = chain.get(key_full)
    nn = chain.get(key_nn)
    _require(full is None or nn is None, f"chain.{key_full}",
             f"give either {key_full} or {key_nn}, not both")
    if full is not None:
        mat = np.asarray(full, dtype=float)
        _require(mat.shape == (n_sites, n_sites), f"chain.{key_full}",
                 f"must be a {n_sites}x{n_sites} matrix")
        _require(bool(np.all(np.abs(np.diag(mat)) == 0)), f"chain.{key_full}",
                 "diagonal must be zero")
        _require(bool(np.allclose(mat, mat.T, rtol=0, atol=0)), f"chain.{key_full}",
                 "must be symmetric")
        return mat
    if nn is None or n_sites < 2:
        return np.zeros((n_sites, n_sites))
    val = _num(chain, "chain", key_nn)
    return dipolar_couplings(val, n_sites, exponent=exponent)


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Validate a raw config mapping and build the runtime objects."""
    _require(isinstance(raw, dict), "config", "top level must be a mapping")
    _check_keys(raw, "config", {"chain", "schedule", "run", "sweep"})
    chain = _get_section(raw, "chain")
    sched = _get_section(raw, "schedule")
    run = _get_section(raw, "run", required=False)
    _check_keys(chain, "chain", _CHAIN_KEYS)
    _check_keys(sched, "schedule", _SCHEDULE_KEYS)
    _check_keys(run, "run", _RUN_KEYS)

    n_sites = chain.get("n_sites")
    _require(isinstance(n_sites, int) and not isinstance(n_sites, bool),
             "chain.n_sites", "must be an integer")
    _require(1 <= n_sites <= MAX_SITES, "chain.n_sites", f"must be in 1..{MAX_SITES}")

    mode = run.get("mode", "anneal")
    _require(mode in MODES, "run.mode", f"must be one of {MODES}")
    frame = run.get("frame", "rwa")
    _require(frame in ("lab", "rwa"), "run.frame", "must be 'lab' or 'rwa'")
    integrator = run.get("integrator", "stepwise-exponential")
    _require(integrator in INTEGRATORS, "run.integrator", f"must be one of {INTEGRATORS}")
    rate_convention = run.get("rate_convention", "angular")
    _require(rate_convention in RATE_CONVENTIONS, "run.rate_convention",
             f"must be one of {RATE_CONVENTIONS}")
    n_steps = run.get("n_steps")
    if n_steps is not None:
        _require(isinstance(n_steps, int) and n_steps >= 1, "run.n_steps",
                 "must be a positive integer")
    n_out = run.get("n_out", 201)
    _require(isinstance(n_out, int) and n_out >= 2, "run.n_out", "must be an integer >= 2")
    steps_per_period = run.get("steps_per_period", 40)
    _require(isinstance(steps_per_period, int) and steps_per_period >= 20,
             "run.steps_per_period", "must be an integer >= 20")
    n_times = run.get("n_times", 201)
    _require(isinstance(n_times, int) and n_times >= 2, "run.n_times",
             "must be an integer >= 2")
    n_levels = run.get("n_levels")
    if n_levels is not None:
        _require(isinstance(n_levels, int) and n_levels >= 1, "run.n_levels",
                 "must be a positive integer")

    t_total = _num(sched, "schedule", "t_total_s")
    _require(t_total > 0, "schedule.t_total_s", "must be > 0")
    sigma_s = sched.get("sigma_s")
    sigma_frac = sched.get("sigma_frac")
    _require(not (sigma_s is not None and sigma_frac is not None),
             "schedule.sigma_s", "give either sigma_s or sigma_frac, not both")
    if sigma_s is not None:
        sigma = _num(sched, "schedule", "sigma_s")
    elif sigma_frac is not None:
        sigma = _num(sched, "schedule", "sigma_frac") * t_total
    else:
        sigma = 0.2 * t_total
    _require(sigma > 0, "schedule.sigma_s", "must be > 0")

    detuning_amp = _num(sched, "schedule", "detuning_amp_hz", allow_negative=True)
    drive_amp = _num(sched, "schedule", "drive_amp_hz", default=0.0)

    exponent = _num(chain, "chain", "coupling_exponent", default=3.0)
    gamma_hz = _num(chain, "chain", "gamma_hz", default=0.0)
    omega_hz = _num(chain, "chain", "omega_hz", default=40e6)

    if frame == "lab" and n_steps is not None:
        min_steps = int(math.ceil(t_total * omega_hz * 20))
        _require(n_steps >= min_steps, "run.n_steps",
                 f"lab frame needs >= 20 steps per drive period ({min_steps} total)")

    spec = ChainSpec.from_hz(
        n_sites=n_sites,
        d0_hz=_num(chain, "chain", "d0_hz", default=40e6),
        ex_hz=_strain_list(chain, n_sites),
        j_ff_hz=_coupling_matrix(chain, "j_nn_hz", "j_hz", n_sites, exponent),
        j_zz_hz=_coupling_matrix(chain, "jz_nn_hz", "jz_hz", n_sites, exponent),
        b_amp_hz=drive_amp,
        sigma_s=sigma,
        t_total_s=t_total,
        omega_hz=omega_hz,
        d0_prime_max_hz=detuning_amp,
        gamma_hz=gamma_hz,
        gamma_convention=rate_convention,
        frame=frame,
    )

    sweep_spec = None
    if "sweep" in raw and raw["sweep"] is not None:
        sweep = _get_section(raw, "sweep")
        _check_keys(sweep, "sweep", _SWEEP_KEYS)
        parameter = sweep.get("parameter")
        _require(isinstance(parameter, str) and parameter, "sweep.parameter",
                 "must be a non-empty dotted path")
        values = sweep.get("values")
        _require(isinstance(values, (list, tuple)), "sweep.values", "must be a list")
        sweep_spec = SweepSpec(parameter=parameter, values=tuple(values))
    else:
        _require(mode != "sweep", "sweep", "section is required when run.mode is 'sweep'")

    options = RunOptions(
        mode=mode, frame=frame, integrator=integrator, n_steps=n_steps, n_out=n_out,
        steps_per_period=steps_per_period, rate_convention=rate_convention,
        n_times=n_times, n_levels=n_levels,
    )
    return ExperimentConfig(raw=copy.deepcopy(raw), chain=spec, run=options, sweep=sweep_spec)


def parse_config(path: str | Path) -> ExperimentConfig:
    """Load and validate a YAML config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from exc
    if raw is None:
        raise ConfigError("config file is empty")
    return config_from_dict(raw)


def serialize_config(cfg: ExperimentConfig) -> str:
    """YAML text that parses back to an equivalent configuration."""
    return yaml.safe_dump(cfg.raw, sort_keys=True)


def config_as_json(cfg: ExperimentConfig) -> dict:
    """JSON-safe copy of the raw config (for manifests)."""
    return json.loads(json.dumps(cfg.raw))


def set_by_path(raw: dict, dotted: str, value: Any) -> dict:
    """Copy of a raw config dict with the value at ``section.key`` replaced."""
    parts = dotted.split(".")
    _require(len(parts) >= 2, f"sweep.parameter '{dotted}'",
             "must be a dotted path like 'chain.gamma_hz'")
    out = copy.deepcopy(raw)
    node = out
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            if isinstance(node, dict) and part in ("chain", "schedule", "run"):
                node[part] = {}
            else:
                raise ConfigError(f"sweep.parameter '{dotted}': no such section '{part}'")
        node = node.setdefault(part, {})
    allowed = {"chain": _CHAIN_KEYS, "schedule": _SCHEDULE_KEYS, "run": _RUN_KEYS}.get(parts[0])
    if allowed is not None and parts[-1] not in allowed:
        raise ConfigError(f"sweep.parameter '{dotted}': unknown field '{parts[-1]}'")
    node[parts[-1]] = value
    return out


def with_overrides(
    cfg: ExperimentConfig,
    frame: str | None = None,
    n_steps: int | None = None,
    rate_convention: str | None = None,
    mode: str | None = None,
) -> ExperimentConfig:
    """Re-materialize with CLI-level overrides applied to the raw dict."""
    raw = copy.deepcopy(cfg.raw)
    run = raw.setdefault("run", {})
    if frame is not None:
        run["frame"] = frame
    if n_steps is not None:
        run["n_steps"] = n_steps
    if rate_convention is not None:
        run["rate_convention"] = rate_convention
    if mode is not None:
        run["mode"] = mode
    return config_from_dict(raw)
