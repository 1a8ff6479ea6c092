"""Discrete-time PD regulators for the two flow-control devices.

The main-loop FCD area holds the converter shaft at its speed setpoint; the
kidney-loop FCD area holds the accumulator at its rated pressure. Each
controller emits an area *increment* per sample (velocity form), so the
accumulated area provides integral action and zero steady-state error. The
derivative uses a first-order low-pass on the backward difference to keep
wave-frequency content out of the valve command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class PdController:
    """Incremental PD law: delta_area = kp * e + kd * filtered de/dt.

    Units: kp in m^2 per error unit (rev/s for the speed loop, Pa for the
    pressure loop); kd = kp-units * seconds. Gains for the pressure loop are
    negative: overpressure (negative error) must open the bleed valve.
    """

    kp: float
    kd: float
    setpoint: float
    area_bounds: tuple[float, float]
    derivative_filter_tc: float = 0.05  # s; 10x the default sample period
    sample_period: float = 5.0e-3  # s

    _prev_error: float = field(default=0.0, repr=False)
    _filtered_derivative: float = field(default=0.0, repr=False)
    _primed: bool = field(default=False, repr=False)

    def __post_init__(self):
        lo, hi = self.area_bounds
        if lo < 0 or hi <= lo:
            raise ValueError("area_bounds must satisfy 0 <= lo < hi")
        if self.derivative_filter_tc < 0:
            raise ValueError("derivative filter time constant must be >= 0")
        if self.sample_period <= 0:
            raise ValueError("sample period must be positive")

    def reset(self) -> None:
        self._prev_error = 0.0
        self._filtered_derivative = 0.0
        self._primed = False

    def update(self, error: float, dt: float | None = None) -> float:
        """One controller sample; returns the commanded area change (m^2)."""
        if dt is None:
            dt = self.sample_period
        delta, self._filtered_derivative = pd_update(
            self, error, dt, self._filtered_derivative,
            prev_error=self._prev_error if self._primed else error,
        )
        self._prev_error = error
        self._primed = True
        return delta

    def clamp(self, area: float) -> float:
        lo, hi = self.area_bounds
        return min(max(area, lo), hi)


def pd_update(c: PdController, e: float, dt: float, prev_filtered_de: float,
              prev_error: float | None = None) -> tuple[float, float]:
    """Single PD evaluation.

    The raw derivative is the backward difference (e - prev_error)/dt passed
    through a first-order filter with time constant c.derivative_filter_tc.
    Returns (area increment, new filtered derivative). The caller accumulates
    the increment into the absolute area and clamps to the area bounds.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if prev_error is None:
        prev_error = e
    raw = (e - prev_error) / dt
    tc = c.derivative_filter_tc
    if tc > 0:
        alpha = math.exp(-dt / tc)
        filtered = alpha * prev_filtered_de + (1.0 - alpha) * raw
    else:
        filtered = raw
    return c.kp * e + c.kd * filtered, filtered


def main_loop_error(n_ref: float, n: float) -> float:
    """Shaft-speed tracking error (rev/s)."""
    return n_ref - n


def kidney_error(p_ref: float, p: float) -> float:
    """Accumulator-pressure tracking error (Pa); p_ref is the rated pressure."""
    return p_ref - p


def default_main_controller(setpoint: float = 50.0) -> PdController:
    """Speed-loop controller with the stock gains."""
    return PdController(
        kp=1.0e-5,
        kd=100.0e-5,
        setpoint=setpoint,
        area_bounds=(1.0e-6, 5.0e-3),
    )


def default_kidney_controller(setpoint: float = 16.0e6) -> PdController:
    """Pressure-loop controller with the stock (negative) gains.

    The derivative filter sits well below the wave band so the bleed valve
    follows the mean pressure rather than every wave crest.
    """
    return PdController(
        kp=-6.67e-14,
        kd=-667.0e-14,
        setpoint=setpoint,
        area_bounds=(0.0, 5.0e-4),
        derivative_filter_tc=20.0,
    )
