"""Experiment configuration shared by the CLI and scripted runs.

An ExperimentConfig is a plain JSON-serializable description of one run:
geometry and propagation constants plus the section matching its kind (a
coordinate slice, a sampling setup, or a closed-form comparison grid).
Round-tripping through to_dict/from_dict is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .geometry import TxLocation, WallConfig
from .montecarlo import SampleSpec
from .signal import PropagationParams, SliceSpec

__all__ = [
    "KINDS",
    "ExperimentConfig",
    "LerchCheckSettings",
    "SampleSettings",
    "config_from_file",
]

KINDS = (
    "power-profile",
    "turning-points",
    "sample-density",
    "validate-lerch",
    "surface-bound",
)
_SLICE_KINDS = ("power-profile", "turning-points", "surface-bound")


@dataclass(frozen=True)
class SampleSettings:
    """Sampling setup for sample-density runs.

    For the phase model the transmitter sits on the axis at (x, 0) and the
    intervals are ignored.
    """

    model: str = "location"
    x: float = 0.25
    y: float = 0.0
    n_samples: int = 100_000
    x_interval: tuple[float, float] | None = None
    y_interval: tuple[float, float] | None = None
    bins: int = 200
    prominence_factor: float = 3.0

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise ValueError(f"bins must be >= 1, got {self.bins!r}")
        if not self.prominence_factor > 0.0:
            raise ValueError(
                f"prominence_factor must be positive, got {self.prominence_factor!r}"
            )

    def to_spec(self, seed: int) -> SampleSpec:
        return SampleSpec(
            model=self.model,
            base=TxLocation(self.x, self.y),
            n_samples=self.n_samples,
            seed=seed,
            x_interval=self.x_interval,
            y_interval=self.y_interval,
        )


@dataclass(frozen=True)
class LerchCheckSettings:
    """Grid for cross-checking the direct series against the closed form."""

    lo: float = 0.05
    hi: float = 0.45
    points: int = 101
    k_values: tuple[float, ...] = (10.0, 100.0)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"need lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.points < 1:
            raise ValueError(f"points must be >= 1, got {self.points!r}")
        if not self.k_values:
            raise ValueError("k_values must not be empty")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    a: float = 0.5
    b: float = 0.5
    kappa: float = 0.5
    k: float = 10.0
    beta: float = 4.0
    eps_series: float = 1e-12
    seed: int = 0
    include_los: bool = False
    slice_spec: SliceSpec | None = None
    sample: SampleSettings | None = None
    lerch_check: LerchCheckSettings | None = None
    out: str | None = None
    peaks_out: str | None = None
    dump_samples: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        # surface geometry and propagation validation happens eagerly so a
        # bad config fails before any computation starts
        self.wall_config()
        self.propagation()
        if self.kind in _SLICE_KINDS and self.slice_spec is None:
            raise ValueError(f"{self.kind} needs a slice (axis/fixed/lo/hi/points)")
        if self.kind == "sample-density" and self.sample is None:
            raise ValueError("sample-density needs sample settings")
        if self.kind == "validate-lerch":
            if self.lerch_check is None:
                raise ValueError("validate-lerch needs a comparison grid")
            if self.a != self.b:
                raise ValueError("validate-lerch requires the symmetric geometry a == b")

    def wall_config(self) -> WallConfig:
        return WallConfig(self.a, self.b, self.kappa)

    def propagation(self) -> PropagationParams:
        return PropagationParams(self.k, self.beta, self.eps_series)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind,
            "a": self.a,
            "b": self.b,
            "kappa": self.kappa,
            "k": self.k,
            "beta": self.beta,
            "eps_series": self.eps_series,
            "seed": self.seed,
            "include_los": self.include_los,
        }
        if self.slice_spec is not None:
            s = self.slice_spec
            out["slice"] = {
                "axis": s.axis,
                "fixed": s.fixed,
                "lo": s.lo,
                "hi": s.hi,
                "points": s.points,
            }
        if self.sample is not None:
            s = self.sample
            out["sample"] = {
                "model": s.model,
                "x": s.x,
                "y": s.y,
                "n_samples": s.n_samples,
                "x_interval": list(s.x_interval) if s.x_interval else None,
                "y_interval": list(s.y_interval) if s.y_interval else None,
                "bins": s.bins,
                "prominence_factor": s.prominence_factor,
            }
        if self.lerch_check is not None:
            c = self.lerch_check
            out["lerch"] = {
                "lo": c.lo,
                "hi": c.hi,
                "points": c.points,
                "k_values": list(c.k_values),
            }
        for key in ("out", "peaks_out", "dump_samples"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentConfig:
        known = {
            "kind",
            "a",
            "b",
            "kappa",
            "k",
            "beta",
            "eps_series",
            "seed",
            "include_los",
            "slice",
            "sample",
            "lerch",
            "out",
            "peaks_out",
            "dump_samples",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "kind" not in data:
            raise ValueError("config needs a kind")
        kwargs: dict[str, Any] = {
            key: data[key]
            for key in (
                "kind",
                "a",
                "b",
                "kappa",
                "k",
                "beta",
                "eps_series",
                "seed",
                "include_los",
                "out",
                "peaks_out",
                "dump_samples",
            )
            if key in data
        }
        if data.get("slice") is not None:
            kwargs["slice_spec"] = SliceSpec(**_section(data["slice"], "slice"))
        if data.get("sample") is not None:
            section = _section(data["sample"], "sample")
            for name in ("x_interval", "y_interval"):
                if section.get(name) is not None:
                    section[name] = tuple(float(v) for v in section[name])
            kwargs["sample"] = SampleSettings(**section)
        if data.get("lerch") is not None:
            section = _section(data["lerch"], "lerch")
            if "k_values" in section:
                section["k_values"] = tuple(float(v) for v in section["k_values"])
            kwargs["lerch_check"] = LerchCheckSettings(**section)
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> ExperimentConfig:
        return cls.from_dict(json.loads(text))


def _section(value: Any, name: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise ValueError(f"config section {name!r} must be an object")
    return dict(value)


def config_from_file(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return ExperimentConfig.from_json(fh.read())
