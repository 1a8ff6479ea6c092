"""Single-degree-of-freedom pitching-flap surrogate for the surge converter.

The flap is a bottom-hinged plate driven by wave excitation and loaded by the
piston power take-off. Hydrodynamics are constant-coefficient (added inertia,
radiation damping, hydrostatic stiffness, excitation gain), which preserves
the coupling dynamics without a boundary-element solve; the coefficients are
calibration inputs, not derived quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IntegrationDivergedError


@dataclass(frozen=True)
class WecConfig:
    mass: float = 127_000.0  # kg
    height: float = 8.9  # m
    width: float = 18.0  # m
    thickness: float = 1.8  # m
    pitch_inertia: float = 3.35e6  # kg m^2, about the bottom hinge
    added_inertia: float = 1.0e7  # kg m^2
    radiation_damping: float = 3.0e6  # N m s/rad
    hydrostatic_stiffness: float = 2.6e7  # N m/rad
    excitation_gain: float = 1.1e7  # N m per metre of elevation
    max_pitch: float = math.radians(60.0)  # rad, end-stop

    def __post_init__(self):
        if self.pitch_inertia + self.added_inertia <= 0:
            raise ValueError("total pitch inertia must be positive")
        if self.radiation_damping < 0:
            raise ValueError("radiation damping must be non-negative")
        if self.hydrostatic_stiffness <= 0:
            raise ValueError("hydrostatic stiffness must be positive")
        if self.excitation_gain < 0:
            raise ValueError("excitation gain must be non-negative")

    @property
    def total_inertia(self) -> float:
        return self.pitch_inertia + self.added_inertia

    @property
    def natural_frequency(self) -> float:
        """Undamped pitch natural frequency (rad/s)."""
        return math.sqrt(self.hydrostatic_stiffness / self.total_inertia)


@dataclass
class FlapState:
    theta: float = 0.0  # rad
    omega: float = 0.0  # rad/s


def excitation_torque(cfg: WecConfig, eta: float) -> float:
    """Wave excitation torque, linear in the instantaneous elevation (N m)."""
    return cfg.excitation_gain * eta


def flap_acceleration(cfg: WecConfig, s: FlapState, tau_pto: float,
                      eta: float) -> float:
    """Pitch acceleration from the torque balance about the hinge (rad/s^2).

    tau_pto is the reaction torque the slider-crank exerts on the flap; its
    sign convention is such that tau_pto * omega >= 0 when the PTO absorbs
    power.
    """
    tau_exc = excitation_torque(cfg, eta)
    return (
        tau_exc
        - cfg.radiation_damping * s.omega
        - cfg.hydrostatic_stiffness * s.theta
        - tau_pto
    ) / cfg.total_inertia


def step_flap(cfg: WecConfig, s: FlapState, tau_pto: float, eta,
              dt: float) -> FlapState:
    """Advance (theta, omega) by one RK4 step with end-stop enforcement.

    eta may be a number (held constant over the step) or a callable of the
    offset time within the step, which the stages sample at 0, dt/2 and dt;
    the callable form preserves the integrator's 4th-order accuracy under
    smooth forcing. tau_pto is held constant. On end-stop contact the angle
    is clamped to +/-max_pitch and the angular rate is zeroed.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    th, om = s.theta, s.omega
    inv_i = 1.0 / cfg.total_inertia
    b, k = cfg.radiation_damping, cfg.hydrostatic_stiffness
    if callable(eta):
        e0, em, e1 = eta(0.0), eta(0.5 * dt), eta(dt)
    else:
        e0 = em = e1 = eta
    gain = cfg.excitation_gain

    def acc(theta, omega, eta_val):
        return (gain * eta_val - tau_pto - b * omega - k * theta) * inv_i

    k1t, k1o = om, acc(th, om, e0)
    k2t, k2o = (om + 0.5 * dt * k1o,
                acc(th + 0.5 * dt * k1t, om + 0.5 * dt * k1o, em))
    k3t, k3o = (om + 0.5 * dt * k2o,
                acc(th + 0.5 * dt * k2t, om + 0.5 * dt * k2o, em))
    k4t, k4o = om + dt * k3o, acc(th + dt * k3t, om + dt * k3o, e1)
    th_new = th + dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
    om_new = om + dt / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o)

    if not (math.isfinite(th_new) and math.isfinite(om_new)):
        raise IntegrationDivergedError(
            f"flap state diverged: theta={th_new}, omega={om_new}"
        )

    if th_new > cfg.max_pitch:
        th_new, om_new = cfg.max_pitch, 0.0
    elif th_new < -cfg.max_pitch:
        th_new, om_new = -cfg.max_pitch, 0.0
    return FlapState(theta=th_new, omega=om_new)


def mechanical_energy(cfg: WecConfig, s: FlapState) -> float:
    """Stored flap energy: rotational kinetic plus hydrostatic potential (J)."""
    return 0.5 * cfg.total_inertia * s.omega**2 + 0.5 * cfg.hydrostatic_stiffness * s.theta**2
