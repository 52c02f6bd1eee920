"""Causal boundary signals: smooth windows and pulse trains.

All transitions use the quintic smoothstep 6 t^5 - 15 t^4 + 10 t^3, which
is C^2 at the knots; signals vanish identically before their first knot,
so every shipped signal is causal and compatible with the zero initial
state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Window", "PulseTrain", "ZeroSignal", "BoundarySignals", "signal_from_dict"]


def smoothstep(tau):
    """Quintic smoothstep on [0, 1], clamped outside."""
    tau = np.clip(tau, 0.0, 1.0)
    return tau**3 * (10.0 - 15.0 * tau + 6.0 * tau**2)


def _smoothstep_primitive(tau):
    """Exact antiderivative of the clamped smoothstep, zero at tau = 0."""
    tau = np.asarray(tau, dtype=float)
    inside = np.clip(tau, 0.0, 1.0)
    core = inside**4 * (2.5 - 3.0 * inside + inside**2)
    return core + np.maximum(tau - 1.0, 0.0)


@dataclass(frozen=True)
class ZeroSignal:
    support_end: float = 0.0

    def __call__(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def primitive(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def to_dict(self) -> dict:
        return {"kind": "zero"}


@dataclass(frozen=True)
class Window:
    """zero / smooth rise / plateau / smooth fall / zero.

    knots = (t0, t1, t2, t3): rise on (t0, t1), plateau on [t1, t2], fall
    on (t2, t3).  t1 = t2 gives a plain pulse.
    """

    knots: tuple[float, float, float, float]
    amplitude: float = 1.0

    def __post_init__(self):
        t0, t1, t2, t3 = self.knots
        if not (t0 < t1 <= t2 < t3):
            raise ValueError(f"window knots must increase: {self.knots}")

    @property
    def support_end(self) -> float:
        return self.knots[3]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        t0, t1, t2, t3 = self.knots
        up = smoothstep((t - t0) / (t1 - t0))
        down = smoothstep((t - t2) / (t3 - t2))
        return self.amplitude * (up - down)

    def primitive(self, t):
        """Exact running integral from 0 (needed by the first-order form,
        where the traction datum enters as its antiderivative)."""
        t = np.asarray(t, dtype=float)
        t0, t1, t2, t3 = self.knots
        up = (t1 - t0) * _smoothstep_primitive((t - t0) / (t1 - t0))
        down = (t3 - t2) * _smoothstep_primitive((t - t2) / (t3 - t2))
        return self.amplitude * (up - down)

    def to_dict(self) -> dict:
        return {"kind": "window", "knots": list(self.knots),
                "amplitude": self.amplitude}


@dataclass(frozen=True)
class PulseTrain:
    """A base window repeated `count` times with the given period."""

    knots: tuple[float, float, float, float]
    period: float
    count: int
    amplitude: float = 1.0

    def __post_init__(self):
        Window(self.knots, self.amplitude)  # validates knots
        if self.period <= 0 or self.count < 1:
            raise ValueError("pulse train needs period > 0 and count >= 1")

    @property
    def support_end(self) -> float:
        return self.knots[3] + self.period * (self.count - 1)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        base = Window(self.knots, self.amplitude)
        out = np.zeros_like(t)
        for i in range(self.count):
            out = out + base(t - i * self.period)
        return out

    def primitive(self, t):
        t = np.asarray(t, dtype=float)
        base = Window(self.knots, self.amplitude)
        out = np.zeros_like(t)
        for i in range(self.count):
            out = out + base.primitive(t - i * self.period)
        return out

    def to_dict(self) -> dict:
        return {"kind": "pulse_train", "knots": list(self.knots),
                "period": self.period, "count": self.count,
                "amplitude": self.amplitude}


# defaults matching the shipped experiments: the Dirichlet window rises on
# (0.5, 1.5) and falls on (2.5, 3.5) with unit plateau; the traction window
# has a much longer plateau.  Pulse-train defaults: a one-unit pulse
# repeated every 2.5 time units.
DIRICHLET_WINDOW = Window(knots=(0.5, 1.5, 2.5, 3.5), amplitude=1.0)
TRACTION_WINDOW = Window(knots=(0.5, 1.5, 35.0, 36.0), amplitude=1.0)
SINGLE_PULSE = Window(knots=(0.5, 1.0, 1.0, 1.5), amplitude=1.0)


def default_pulse_train(count: int = 8) -> PulseTrain:
    return PulseTrain(knots=(0.5, 1.0, 1.0, 1.5), period=2.5, count=count)


@dataclass(frozen=True)
class BoundarySignals:
    """Dirichlet displacement g(t) at x = 0 and traction h(t) at x = L."""

    dirichlet: object = ZeroSignal()
    neumann: object = ZeroSignal()

    @property
    def support_end(self) -> float:
        return max(self.dirichlet.support_end, self.neumann.support_end)

    def to_dict(self) -> dict:
        return {"dirichlet": self.dirichlet.to_dict(),
                "neumann": self.neumann.to_dict()}


def signal_from_dict(d: dict):
    kind = d.get("kind", "zero")
    if kind == "zero":
        return ZeroSignal()
    if kind == "window":
        return Window(knots=tuple(d["knots"]), amplitude=d.get("amplitude", 1.0))
    if kind == "pulse_train":
        return PulseTrain(knots=tuple(d["knots"]), period=d["period"],
                          count=d["count"], amplitude=d.get("amplitude", 1.0))
    raise ValueError(f"unknown signal kind: {kind!r}")
