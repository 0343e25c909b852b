"""Time-profile specifications for the excitation extractors.

Force profiles f(t) must decay at large |t|; frequency profiles omega(t)
must stay positive and settle to constants omega_minus / omega_plus, which
define the in and out eigenbases.  Everything is in hbar = m = 1 units.

Profiles load from a JSON document with a ``kind`` field matching the
constructors below; tabulated data comes either inline (two parallel
arrays) or from a two-column CSV (time, value; '#' comments allowed).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

__all__ = ["ForceProfile", "FrequencyProfile", "load_profile", "ProfileError"]

_FORCE_KINDS = ("gaussian", "rectangular", "damped_cosine", "tabulated")
_FREQ_KINDS = ("constant", "sudden_step", "tanh_ramp", "tabulated")

_DECAY_REL = 1e-8


class ProfileError(ValueError):
    """Malformed or physically inadmissible profile specification."""


def _tabulated_arrays(times, values):
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.shape != v.shape or t.size < 4:
        raise ProfileError("tabulated profile needs two equal 1-d arrays (>= 4 samples)")
    if np.any(np.diff(t) <= 0):
        raise ProfileError("tabulated times must increase strictly")
    return t, v


@dataclass(frozen=True)
class ForceProfile:
    """Driving force f(t); kinds: gaussian, rectangular, damped_cosine,
    tabulated."""

    kind: str
    params: dict = field(default_factory=dict)
    times: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in _FORCE_KINDS:
            raise ProfileError(f"unknown force profile kind {self.kind!r}")
        if self.kind == "tabulated":
            t, v = _tabulated_arrays(self.times, self.values)
            object.__setattr__(self, "times", t)
            object.__setattr__(self, "values", v)
            peak = float(np.max(np.abs(v)))
            if peak == 0.0:
                return
            if abs(v[0]) > _DECAY_REL * peak or abs(v[-1]) > _DECAY_REL * peak:
                raise ProfileError(
                    "tabulated force must start and end below 1e-8 of its peak"
                )
        else:
            needed = {
                "gaussian": ("f0", "tau", "t0"),
                "rectangular": ("f0", "t_on", "t_off"),
                "damped_cosine": ("f0", "gamma", "omega_d"),
            }[self.kind]
            missing = [k for k in needed if k not in self.params]
            if missing:
                raise ProfileError(f"{self.kind} profile missing fields {missing}")
            if self.kind == "gaussian" and not self.params["tau"] > 0:
                raise ProfileError("gaussian width tau must be positive")
            if self.kind == "rectangular" and not self.params["t_off"] > self.params["t_on"]:
                raise ProfileError("rectangular window must have t_off > t_on")
            if self.kind == "damped_cosine" and not self.params["gamma"] > 0:
                raise ProfileError("damping gamma must be positive")

    @classmethod
    def gaussian(cls, f0: float, tau: float, t0: float = 0.0) -> "ForceProfile":
        return cls("gaussian", {"f0": f0, "tau": tau, "t0": t0})

    @classmethod
    def rectangular(cls, f0: float, t_on: float, t_off: float) -> "ForceProfile":
        return cls("rectangular", {"f0": f0, "t_on": t_on, "t_off": t_off})

    @classmethod
    def damped_cosine(cls, f0: float, gamma: float, omega_d: float) -> "ForceProfile":
        return cls("damped_cosine", {"f0": f0, "gamma": gamma, "omega_d": omega_d})

    @classmethod
    def tabulated(cls, times, values) -> "ForceProfile":
        return cls("tabulated", {}, times=times, values=values)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        p = self.params
        if self.kind == "gaussian":
            out = p["f0"] * np.exp(-(((t - p["t0"]) / p["tau"]) ** 2))
        elif self.kind == "rectangular":
            out = p["f0"] * ((t >= p["t_on"]) & (t <= p["t_off"])).astype(float)
        elif self.kind == "damped_cosine":
            out = p["f0"] * np.exp(-p["gamma"] * np.abs(t)) * np.cos(p["omega_d"] * t)
        else:
            spline = CubicSpline(self.times, self.values)
            out = np.where(
                (t < self.times[0]) | (t > self.times[-1]), 0.0, spline(t)
            )
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FrequencyProfile:
    """Oscillator frequency omega(t); kinds: constant, sudden_step,
    tanh_ramp, tabulated.  tanh_ramp interpolates omega^2 between its
    asymptotes: omega^2(t) = w2m + (w2p - w2m)(1 + tanh(t/T))/2."""

    kind: str
    params: dict = field(default_factory=dict)
    times: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in _FREQ_KINDS:
            raise ProfileError(f"unknown frequency profile kind {self.kind!r}")
        if self.kind == "tabulated":
            t, v = _tabulated_arrays(self.times, self.values)
            object.__setattr__(self, "times", t)
            object.__setattr__(self, "values", v)
            if np.any(v <= 0):
                raise ProfileError("omega(t) must stay positive")
            for side in (v[: max(2, t.size // 16)], v[-max(2, t.size // 16):]):
                if np.max(np.abs(side - side[-1])) > 1e-6 * side[-1]:
                    raise ProfileError(
                        "tabulated frequency must be flat at both ends"
                    )
        else:
            needed = {
                "constant": ("omega",),
                "sudden_step": ("omega_minus", "omega_plus", "t_jump"),
                "tanh_ramp": ("omega2_minus", "omega2_plus", "T"),
            }[self.kind]
            missing = [k for k in needed if k not in self.params]
            if missing:
                raise ProfileError(f"{self.kind} profile missing fields {missing}")
            p = self.params
            if self.kind == "constant" and not p["omega"] > 0:
                raise ProfileError("omega must be positive")
            if self.kind == "sudden_step" and not (
                p["omega_minus"] > 0 and p["omega_plus"] > 0
            ):
                raise ProfileError("asymptotic frequencies must be positive")
            if self.kind == "tanh_ramp":
                if not (p["omega2_minus"] > 0 and p["omega2_plus"] > 0):
                    raise ProfileError("omega^2 asymptotes must be positive")
                if not p["T"] > 0:
                    raise ProfileError("ramp time T must be positive")

    @classmethod
    def constant(cls, omega: float) -> "FrequencyProfile":
        return cls("constant", {"omega": omega})

    @classmethod
    def sudden_step(cls, omega_minus: float, omega_plus: float,
                    t_jump: float = 0.0) -> "FrequencyProfile":
        return cls(
            "sudden_step",
            {"omega_minus": omega_minus, "omega_plus": omega_plus, "t_jump": t_jump},
        )

    @classmethod
    def tanh_ramp(cls, omega2_minus: float, omega2_plus: float,
                  T: float) -> "FrequencyProfile":
        return cls(
            "tanh_ramp",
            {"omega2_minus": omega2_minus, "omega2_plus": omega2_plus, "T": T},
        )

    @classmethod
    def tabulated(cls, times, values) -> "FrequencyProfile":
        return cls("tabulated", {}, times=times, values=values)

    @property
    def omega_minus(self) -> float:
        p = self.params
        if self.kind == "constant":
            return p["omega"]
        if self.kind == "sudden_step":
            return p["omega_minus"]
        if self.kind == "tanh_ramp":
            return math.sqrt(p["omega2_minus"])
        return float(self.values[0])

    @property
    def omega_plus(self) -> float:
        p = self.params
        if self.kind == "constant":
            return p["omega"]
        if self.kind == "sudden_step":
            return p["omega_plus"]
        if self.kind == "tanh_ramp":
            return math.sqrt(p["omega2_plus"])
        return float(self.values[-1])

    def omega_sq(self, t):
        """omega^2(t), vectorized; this is what enters the oscillator ODE."""
        t = np.asarray(t, dtype=float)
        p = self.params
        if self.kind == "constant":
            out = np.full_like(t, p["omega"] ** 2)
        elif self.kind == "sudden_step":
            out = np.where(t < p["t_jump"], p["omega_minus"] ** 2, p["omega_plus"] ** 2)
        elif self.kind == "tanh_ramp":
            w2m, w2p = p["omega2_minus"], p["omega2_plus"]
            out = w2m + (w2p - w2m) * (1.0 + np.tanh(t / p["T"])) / 2.0
        else:
            spline = self._spline()
            inside = spline(np.clip(t, self.times[0], self.times[-1])) ** 2
            out = np.where(t < self.times[0], self.values[0] ** 2, inside)
            out = np.where(t > self.times[-1], self.values[-1] ** 2, out)
        return float(out) if out.ndim == 0 else out

    def _spline(self):
        # smooth local interpolant; a kinked one would degrade the
        # integrator's order through omega^2(t)
        return CubicSpline(self.times, self.values)

    def settle_times(self, rel: float = 1e-8) -> tuple[float, float]:
        """(t_start, t_end) outside of which |omega(t) - omega_-+| stays
        below rel times the asymptote."""
        p = self.params
        if self.kind == "constant":
            return 0.0, 0.0
        if self.kind == "sudden_step":
            return p["t_jump"], p["t_jump"]
        if self.kind == "tanh_ramp":
            w2m, w2p = p["omega2_minus"], p["omega2_plus"]
            T = p["T"]
            delta = abs(w2p - w2m)
            # ramp fraction s(t) = (1 + tanh(t/T))/2 inverts to
            # t = (T/2) ln(s / (1-s)), robust for tiny s
            s_minus = min(((1 + rel) ** 2 - 1) * w2m / delta, 0.5)
            s_plus = min(((1 + rel) ** 2 - 1) * w2p / delta, 0.5)
            t_start = 0.5 * T * math.log(s_minus / (1.0 - s_minus))
            t_end = 0.5 * T * math.log((1.0 - s_plus) / s_plus)
            return t_start, t_end
        # tabulated: scan the grid from both ends
        dev_lo = np.abs(self.values - self.values[0]) > rel * self.values[0]
        dev_hi = np.abs(self.values - self.values[-1]) > rel * self.values[-1]
        t_start = self.times[0] if not dev_lo.any() else self.times[np.argmax(dev_lo)]
        t_end = (
            self.times[-1]
            if not dev_hi.any()
            else self.times[len(self.times) - 1 - np.argmax(dev_hi[::-1])]
        )
        return float(t_start), float(t_end)


def _read_two_column_csv(path: Path) -> tuple[list[float], list[float]]:
    times, values = [], []
    text = path.read_text()
    for row in csv.reader(io.StringIO(text)):
        if not row:
            continue
        cell = row[0].strip()
        if cell.startswith("#"):
            continue
        if len(row) < 2:
            raise ProfileError(f"CSV row needs two columns: {row!r}")
        times.append(float(row[0]))
        values.append(float(row[1]))
    return times, values


def load_profile(source, what: str | None = None):
    """Build a profile from a JSON document, file path or parsed dict.

    ``what`` ("nu" or "rho") disambiguates tabulated data, which could feed
    either extractor; an explicit ``profile`` field ("force" or
    "frequency") in the document takes precedence.
    """
    base = Path(".")
    if isinstance(source, (str, Path)):
        path = Path(source)
        base = path.parent
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ProfileError(f"invalid JSON in {path}: {exc}") from exc
    elif isinstance(source, dict):
        doc = dict(source)
    else:
        raise ProfileError(f"cannot load a profile from {type(source).__name__}")
    if "kind" not in doc:
        raise ProfileError("profile document needs a 'kind' field")
    kind = doc.pop("kind")
    family = doc.pop("profile", None)
    if family is None:
        if kind in _FORCE_KINDS and kind not in _FREQ_KINDS:
            family = "force"
        elif kind in _FREQ_KINDS and kind not in _FORCE_KINDS:
            family = "frequency"
        elif what == "nu":
            family = "force"
        elif what == "rho":
            family = "frequency"
        else:
            raise ProfileError(
                "tabulated profile is ambiguous: add a 'profile' field "
                "('force' or 'frequency') or pass the target parameter"
            )
    if kind == "tabulated":
        if "csv" in doc:
            times, values = _read_two_column_csv(base / doc.pop("csv"))
        else:
            times = doc.pop("times", None)
            values = doc.pop("values", None)
        if times is None or values is None:
            raise ProfileError("tabulated profile needs times/values or a csv path")
        cls = ForceProfile if family == "force" else FrequencyProfile
        return cls.tabulated(times, values)
    cls = ForceProfile if family == "force" else FrequencyProfile
    try:
        return cls(kind, doc)
    except ProfileError:
        raise
    except (TypeError, KeyError) as exc:
        raise ProfileError(f"bad profile fields: {exc}") from exc
