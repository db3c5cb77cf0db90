"""Scenario configuration, construction, report/pattern files and sweeps."""

from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Literal, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .causality import REPORT_FIELDS, analyze
from .errors import AnalysisNotApplicable, ConfigError, QCausalError
from .interference import superpose_equal
from .numerics import Grid
from .states import (
    GaussianSpec,
    WaveFunction,
    _conjugate_pair,
    free_evolve,
    gaussian,
    rotate_to_real_overlap,
)
from .stationary_phase import phase_difference

log = logging.getLogger(__name__)

PATTERN_HEADER = ("x", "density_psi", "density_A", "density_B", "S_over_hbar", "mask")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_APPLICABLE = 2


class GridConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)

    x_min: float
    x_max: float
    n: int = Field(ge=16)

    @model_validator(mode="after")
    def _ordered(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        return self

    def build(self) -> Grid:
        return Grid(self.x_min, self.x_max, self.n)


DEFAULT_GRIDS = {
    "conjugate_pair": GridConfig(x_min=-20.0, x_max=20.0, n=2 ** 14),
    "propagation": GridConfig(x_min=-300.0, x_max=300.0, n=2 ** 15),
}


class ScenarioConfig(BaseModel):
    """Validated scenario parameters.

    The propagation defaults put the classical meeting point
    ``x_A + p_B t / m`` at 0. ``sigma_p_B`` is tuned so that ``|A|`` and
    ``|B|`` agree at that point after the evolution.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)

    scenario: Literal["propagation", "conjugate_pair"]
    hbar: float = Field(1.0, gt=0)
    # propagation
    mass: float = Field(1.0, gt=0)
    time: float = Field(8.0, ge=0)
    x_A: float = -8.0
    p_B: float = 1.0
    sigma_A: float = Field(0.2, gt=0)
    sigma_p_B: float = Field(0.02308, gt=0)
    # conjugate_pair
    x0: float = 0.0
    sigma: float = Field(1.0, gt=0)
    chirp: float = 0.25

    grid: GridConfig | None = None
    floor: float = Field(1e-6, gt=0, lt=1)
    validity_factor: float = Field(5.0, gt=0)

    @model_validator(mode="after")
    def _default_grid(self):
        if self.grid is None:
            object.__setattr__(self, "grid", DEFAULT_GRIDS[self.scenario])
        return self


def _format_validation_error(err: ValidationError) -> str:
    parts = []
    for e in err.errors():
        where = ".".join(str(p) for p in e["loc"]) or "<config>"
        parts.append(f"{where}: {e['msg']}")
    return "; ".join(parts)


def parse_config(data: dict) -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as err:
        raise ConfigError(_format_validation_error(err)) from None


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return parse_config(data)


class Scenario(NamedTuple):
    A: WaveFunction
    B: WaveFunction
    phi: float  # rotation already applied to A


def build_scenario(cfg: ScenarioConfig) -> Scenario:
    """Construct the rotated pair ``(A, B)`` described by ``cfg``.

    For the propagation scenario ``A`` starts as a narrow position state at
    ``x_A`` and ``B`` as a broad packet at the same place carrying momentum
    ``p_B`` with momentum spread ``sigma_p_B``; both evolve freely for
    ``time``. After the evolution the envelope of ``B`` is centred on the
    classical trajectory point ``x_A + p_B t / m``.
    """
    grid = cfg.grid.build()
    if cfg.scenario == "conjugate_pair":
        A, B, _, phi = _conjugate_pair(cfg.x0, cfg.sigma, cfg.chirp, grid, cfg.hbar)
        return Scenario(A, B, phi)

    A0 = gaussian(GaussianSpec(x0=cfg.x_A, sigma=cfg.sigma_A), grid, cfg.hbar)
    B0 = gaussian(GaussianSpec(x0=cfg.x_A, p0=cfg.p_B, sigma=cfg.hbar / (2.0 * cfg.sigma_p_B)),
                  grid, cfg.hbar)
    A = free_evolve(A0, cfg.mass, cfg.time, cfg.hbar)
    B = free_evolve(B0, cfg.mass, cfg.time, cfg.hbar)
    A, phi = rotate_to_real_overlap(A, B)
    return Scenario(A, B, phi)


def analyze_scenario(cfg: ScenarioConfig, scenario: Scenario):
    return analyze(scenario.A, scenario.B, floor=cfg.floor,
                   validity_factor=cfg.validity_factor, hbar=cfg.hbar,
                   prior_rotation=scenario.phi)


# -- output formatting ------------------------------------------------------

def fmt_float(v: float) -> str:
    """17 significant digits, lowercase exponent."""
    return format(float(v), ".16e")


def _json_value(v, depth: int) -> str:
    if isinstance(v, dict):
        if not v:
            return "{}"
        pad = "  " * (depth + 1)
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(val, depth + 1)}" for k, val in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v) if math.isfinite(v) else "null"
    return json.dumps(v)


def dumps_report(payload: dict) -> str:
    return _json_value(payload, 0) + "\n"


def report_payload(status: str, fields: dict, cfg: ScenarioConfig, message: str | None = None) -> dict:
    payload = {"status": status}
    if message:
        payload["message"] = message
    payload.update({name: fields.get(name) for name in REPORT_FIELDS})
    payload["config_echo"] = cfg.model_dump()
    return payload


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v) if math.isfinite(v) else ""
    return str(v)


def write_pattern(path, A: WaveFunction, B: WaveFunction, floor: float, hbar: float) -> None:
    """Per-grid-point densities and action phase; ``S_over_hbar`` is blank off the mask."""
    psi = superpose_equal(A, B).psi
    profile = phase_difference(A, B, floor, hbar)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PATTERN_HEADER)
        for x, dpsi, da, db, S, m in zip(A.grid.x, psi.density, A.density, B.density,
                                         profile.S_over_hbar, profile.mask):
            w.writerow((fmt_float(x), fmt_float(dpsi), fmt_float(da), fmt_float(db),
                        fmt_float(S) if m else "", int(m)))


def run(cfg: ScenarioConfig, out_report, out_pattern, stderr=None) -> int:
    """Analyse one scenario and write its report JSON and pattern CSV.

    Exit codes: 0 success, 2 stationary-point analysis not applicable (files
    are still written, with the status in the report), 1 any other error.
    """
    def fail(stage: str, err: Exception) -> int:
        msg = f"qcausal: {stage} failed: {err}"
        log.error(msg)
        if stderr is not None:
            print(msg, file=stderr)
        return EXIT_ERROR

    try:
        scenario = build_scenario(cfg)
    except QCausalError as err:
        return fail("construction", err)

    code = EXIT_OK
    try:
        report = analyze_scenario(cfg, scenario)
        payload = report_payload("ok", report.to_dict(), cfg)
    except AnalysisNotApplicable as err:
        payload = report_payload(err.status, err.partial, cfg, str(err))
        code = EXIT_NOT_APPLICABLE
    except QCausalError as err:
        return fail("analysis", err)

    try:
        Path(out_report).write_text(dumps_report(payload), encoding="utf-8")
        write_pattern(out_pattern, scenario.A, scenario.B, cfg.floor, cfg.hbar)
    except OSError as err:
        return fail("output", err)
    return code


# -- sweeps -----------------------------------------------------------------

class SweepSpec(NamedTuple):
    param: str
    start: float
    stop: float
    steps: int
    log: bool = False

    def values(self) -> np.ndarray:
        if self.steps < 2:
            raise ConfigError(f"steps must be at least 2, got {self.steps}")
        if self.start == self.stop:
            raise ConfigError("sweep endpoints must differ")
        if self.log:
            if self.start <= 0 or self.stop <= 0:
                raise ConfigError("log sweeps need positive endpoints")
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


_GRID_PARAMS = {"grid.x_min", "grid.x_max", "grid.n"}


def sweepable_params() -> list[str]:
    scalar = [name for name, f in ScenarioConfig.model_fields.items()
              if f.annotation in (float, "float")]
    return scalar + sorted(_GRID_PARAMS)


def with_param(cfg: ScenarioConfig, param: str, value: float) -> ScenarioConfig:
    data = cfg.model_dump()
    if param in _GRID_PARAMS:
        key = param.split(".", 1)[1]
        data["grid"][key] = int(round(value)) if key == "n" else float(value)
    elif param in sweepable_params():
        data[param] = float(value)
    else:
        raise ConfigError(f"cannot sweep {param!r}; choose one of {', '.join(sweepable_params())}")
    return parse_config(data)


def evaluate_point(cfg: ScenarioConfig, param: str, value: float) -> dict:
    row = {param: value}
    try:
        point_cfg = with_param(cfg, param, value)
        report = analyze_scenario(point_cfg, build_scenario(point_cfg))
        row.update(status="ok", **report.to_dict())
    except AnalysisNotApplicable as err:
        row.update(status=err.status, **err.partial)
    except QCausalError as err:
        row.update(status=err.status)
    return row


def sweep(cfg: ScenarioConfig, spec: SweepSpec, out, workers: int = 1) -> int:
    """Evaluate ``cfg`` across one parameter and write one CSV row per value.

    Rows follow the sweep order whatever ``workers`` is. Returns 0 if any
    point succeeded, 2 if every point was analysis-not-applicable, else 1.
    """
    values = spec.values()
    with_param(cfg, spec.param, values[0])  # fail fast on a bad name

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: evaluate_point(cfg, spec.param, v), values))
    else:
        rows = [evaluate_point(cfg, spec.param, v) for v in values]

    header = (spec.param, "status") + REPORT_FIELDS
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_csv_cell(row.get(h)) for h in header])

    statuses = [r["status"] for r in rows]
    if "ok" in statuses:
        return EXIT_OK
    na = {cls.status for cls in AnalysisNotApplicable.__subclasses__()}
    return EXIT_NOT_APPLICABLE if all(s in na for s in statuses) else EXIT_ERROR
