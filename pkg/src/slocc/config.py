"""Run configuration: a JSON document with nested sections.

Complex numbers are written as ``[re, im]`` pairs (a bare number is read
as real).  Every section is optional::

    {
      "statistics": "boson",
      "regions": {"left": "L", "right": "R"},
      "psi":       {"L": [0.7071067811865476, 0], "R": [0.7071067811865476, 0]},
      "psi_prime": {"L": [0.7071067811865476, 0], "R": [0.7071067811865476, 0]},
      "input": {"a": [1, 0], "b": [0, 0]},
      "distinguishable": {"a": [0.7071067811865476, 0], "b": [0.7071067811865476, 0]},
      "sweep": {"parameter": "mirror", "start": 0, "stop": 0.7853981633974483, "steps": 11},
      "trials": 100000,
      "seed": 7,
      "output": {"path": "out.csv", "format": "csv"}
    }

Sweep parameters use ``psi = cos(theta)|L> + e^{i phase} sin(theta)|R>``:
``theta`` varies psi, ``theta_prime`` varies psi', and ``mirror`` sets
``theta = x`` and ``theta' = pi/2 - x`` (no overlap at 0, full overlap at pi/4).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .algebra import PSI0, SpatialWavefunction, Statistics
from .errors import DomainError

LOAD_TOL = 1e-9
SWEEP_PARAMETERS = ("theta", "theta_prime", "mirror")


class ConfigError(DomainError):
    pass


def parse_complex(value: Any, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: expected a number or [re, im], got {value!r}")


def _wavefunction(spec: Any, where: str) -> SpatialWavefunction:
    if not isinstance(spec, dict) or not spec:
        raise ConfigError(f"{where}: expected a region -> [re, im] map")
    amps = {str(k): parse_complex(v, f"{where}.{k}") for k, v in spec.items()}
    try:
        return SpatialWavefunction(amps, tol=LOAD_TOL)
    except DomainError as exc:
        raise ConfigError(f"{where}: {exc}") from None


@dataclass(frozen=True)
class Sweep:
    parameter: str = "mirror"
    values: tuple[float, ...] = ()
    phase: float = 0.0
    phase_prime: float = 0.0

    @classmethod
    def from_dict(cls, spec: dict) -> "Sweep":
        if not isinstance(spec, dict):
            raise ConfigError("sweep: expected an object")
        param = spec.get("parameter", "mirror")
        if param not in SWEEP_PARAMETERS:
            raise ConfigError(f"sweep.parameter must be one of {SWEEP_PARAMETERS}, got {param!r}")
        if "values" in spec:
            try:
                values = tuple(float(v) for v in spec["values"])
            except (TypeError, ValueError):
                raise ConfigError("sweep.values must be a list of numbers") from None
        else:
            try:
                start = float(spec.get("start", 0.0))
                stop = float(spec.get("stop", np.pi / 4))
                steps = int(spec.get("steps", 11))
            except (TypeError, ValueError):
                raise ConfigError("sweep.start/stop/steps must be numbers") from None
            if steps < 1:
                raise ConfigError("sweep.steps must be >= 1")
            values = tuple(float(v) for v in np.linspace(start, stop, steps))
        if not values:
            raise ConfigError("sweep has no points")
        return cls(param, values, float(spec.get("phase", 0.0)), float(spec.get("phase_prime", 0.0)))

    def modes(self, x: float, psi: SpatialWavefunction, psi_prime: SpatialWavefunction,
              regions: tuple[str, str]) -> tuple[SpatialWavefunction, SpatialWavefunction]:
        if self.parameter == "theta":
            return SpatialWavefunction.from_angle(x, self.phase, regions), psi_prime
        if self.parameter == "theta_prime":
            return psi, SpatialWavefunction.from_angle(x, self.phase_prime, regions)
        return (SpatialWavefunction.from_angle(x, self.phase, regions),
                SpatialWavefunction.from_angle(np.pi / 2 - x, self.phase_prime, regions))


@dataclass(frozen=True)
class RunConfig:
    statistics: Statistics = Statistics.BOSON
    psi: SpatialWavefunction = PSI0
    psi_prime: SpatialWavefunction = PSI0
    left: str = "L"
    right: str = "R"
    a: complex = 1.0
    b: complex = 0.0
    dist_a: complex = 1 / np.sqrt(2)
    dist_b: complex = 1 / np.sqrt(2)
    sweep: Optional[Sweep] = None
    trials: int = 0
    seed: int = 0
    output_path: Optional[str] = None
    output_format: Optional[str] = None

    @property
    def regions(self) -> tuple[str, str]:
        return (self.left, self.right)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        kw: dict[str, Any] = {}
        if "statistics" in doc:
            kw["statistics"] = Statistics.parse(doc["statistics"])
        regions = doc.get("regions", {})
        if not isinstance(regions, dict):
            raise ConfigError("regions: expected an object")
        left, right = str(regions.get("left", "L")), str(regions.get("right", "R"))
        if left == right:
            raise ConfigError("regions.left and regions.right must differ")
        kw["left"], kw["right"] = left, right
        for key in ("psi", "psi_prime"):
            if key in doc:
                kw[key] = _wavefunction(doc[key], key)
            else:
                kw[key] = SpatialWavefunction({left: 1 / np.sqrt(2), right: 1 / np.sqrt(2)})
            unknown = set(kw[key].regions) - {left, right}
            if any(abs(kw[key].amplitude(r)) > 0 for r in unknown):
                raise ConfigError(f"{key}: regions {sorted(unknown)} are not among {left!r}, {right!r}")
        for section, (ka, kb) in (("input", ("a", "b")), ("distinguishable", ("dist_a", "dist_b"))):
            if section in doc:
                sec = doc[section]
                if not isinstance(sec, dict):
                    raise ConfigError(f"{section}: expected an object")
                a = parse_complex(sec.get("a", 1.0), f"{section}.a")
                b = parse_complex(sec.get("b", 0.0), f"{section}.b")
                if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > LOAD_TOL:
                    raise ConfigError(f"{section}: |a|^2 + |b|^2 must be 1")
                kw[ka], kw[kb] = a, b
        if "sweep" in doc and doc["sweep"] is not None:
            kw["sweep"] = Sweep.from_dict(doc["sweep"])
        for key in ("trials", "seed"):
            if key in doc:
                value = doc[key]
                if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                    raise ConfigError(f"{key} must be a non-negative integer")
                kw[key] = value
        out = doc.get("output", {})
        if not isinstance(out, dict):
            raise ConfigError("output: expected an object")
        kw["output_path"] = out.get("path")
        kw["output_format"] = out.get("format")
        return cls(**kw)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(doc)
