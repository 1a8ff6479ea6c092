"""Hydraulic power take-off: pistons, accumulator, flow-control devices, shaft.

Topology (all pressures gauge, discharge to ambient at 0):

    pistons -> accumulator -> + -> main FCD -> turbine -> ambient
                              |
                              + -> kidney FCD -> ambient

The two slider-crank pistons rectify the flap motion through ideal check
valves. The gas-charged accumulator smooths the delivery; the kidney loop
bleeds the surplus between what the pistons supply and what the
positive-displacement turbine draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    AccumulatorEmptyError,
    AccumulatorOverfillError,
    BackflowError,
    InfeasibleSeaStateError,
    MechanismError,
    OverloadError,
)
from .waves import SEAWATER_DENSITY

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Slider-crank pistons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliderCrank:
    """Offset slider-crank kinematics; the flap shaft is the crank shaft.

    crank_len (R2), rod_len (R3) and offset (R5) in metres, piston_area in m^2.
    """

    crank_len: float = 3.0
    rod_len: float = 5.0
    offset: float = 1.3
    piston_area: float = 0.0378

    def __post_init__(self):
        if self.piston_area <= 0:
            raise ValueError("piston_area must be positive")
        if self.crank_len <= 0 or self.rod_len <= 0:
            raise ValueError("link lengths must be positive")

    def check_reachable(self, max_angle: float) -> None:
        """Verify the rod clears the slide axis over [-max_angle, max_angle].

        The reachability condition is rod_len^2 > (crank_len sin(theta) - offset)^2
        for every attainable crank angle; raises MechanismError otherwise.
        """
        # sin extremes inside the range matter only if +/-pi/2 is reachable
        candidates = [max_angle, -max_angle]
        if max_angle >= math.pi / 2:
            candidates += [math.pi / 2, -math.pi / 2]
        worst = max(abs(self.crank_len * math.sin(a) - self.offset) for a in candidates)
        if self.rod_len**2 <= worst**2:
            raise MechanismError(
                f"rod length {self.rod_len} m cannot span the slider offset over "
                f"+/-{max_angle:.3f} rad"
            )


def piston_position(sc: SliderCrank, theta: float) -> float:
    """Slider distance from the crank axis (m); 2*pi periodic in theta."""
    s = sc.crank_len * math.sin(theta) - sc.offset
    disc = sc.rod_len**2 - s * s
    if disc <= 0.0:
        raise MechanismError(f"kinematic lockup at theta={theta:.4f} rad")
    return sc.crank_len * math.cos(theta) + math.sqrt(disc)


def piston_velocity_coeff(sc: SliderCrank, theta: float) -> float:
    """dx/dtheta (m/rad) of the slider position."""
    s = sc.crank_len * math.sin(theta) - sc.offset
    disc = sc.rod_len**2 - s * s
    if disc <= 0.0:
        raise MechanismError(f"kinematic lockup at theta={theta:.4f} rad")
    return -sc.crank_len * math.sin(theta) - s * sc.crank_len * math.cos(theta) / math.sqrt(disc)


def piston_flows(sc: SliderCrank, theta: float, omega: float) -> tuple[float, float]:
    """Rectified flows for the opposed piston pair (m^3/s).

    Returns (delivered to the high-pressure line, drawn from intake). A
    chamber discharges while its slider retracts; ideal check valves send the
    discharge to the line and let the opposite stroke refill from intake, so
    the delivered total is never negative.
    """
    q_out = 0.0
    q_in = 0.0
    for phase in (0.0, math.pi):
        v = piston_velocity_coeff(sc, theta + phase) * omega  # slider speed, m/s
        if v < 0.0:
            q_out -= sc.piston_area * v
        else:
            q_in += sc.piston_area * v
    return q_out, q_in


def piston_reaction_torque(sc: SliderCrank, theta: float, omega: float,
                           line_pressure: float) -> float:
    """Reaction torque of the pumping pistons on the crank (N m).

    Only discharging chambers (held at line pressure by their check valves)
    load the crank; suction chambers see ambient. The convention satisfies
    torque * omega = line_pressure * delivered_flow >= 0.
    """
    tau = 0.0
    for phase in (0.0, math.pi):
        dxdth = piston_velocity_coeff(sc, theta + phase)
        if dxdth * omega < 0.0:  # retracting -> discharging
            tau -= line_pressure * sc.piston_area * dxdth
    return tau


# ---------------------------------------------------------------------------
# Gas-charged accumulator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Accumulator:
    """Gas bottle of total volume V0 precharged to p_precharge.

    The gas follows a polytropic law p * V_gas^n = const; the liquid volume
    is the complement V0 - V_gas, zero at precharge. With the defaults the
    16 MPa rated point stores 1.83 m^3 of liquid.
    """

    total_gas_volume: float = 6.0  # m^3
    precharge_pressure: float = 9.6e6  # Pa
    rated_pressure: float = 16.0e6  # Pa
    polytropic_exponent: float = 1.4

    def __post_init__(self):
        if self.total_gas_volume <= 0:
            raise ValueError("total_gas_volume must be positive")
        if not 0 < self.precharge_pressure <= self.rated_pressure:
            raise ValueError("require 0 < precharge <= rated pressure")
        if self.polytropic_exponent <= 0:
            raise ValueError("polytropic exponent must be positive")


def accumulator_liquid_volume(acc: Accumulator, p: float) -> float:
    """Liquid volume stored at line pressure p (m^3)."""
    if p < acc.precharge_pressure:
        raise AccumulatorEmptyError(
            f"pressure {p:.4g} Pa below precharge {acc.precharge_pressure:.4g} Pa"
        )
    ratio = (acc.precharge_pressure / p) ** (1.0 / acc.polytropic_exponent)
    return acc.total_gas_volume * (1.0 - ratio)


def accumulator_pressure(acc: Accumulator, v_liq: float) -> float:
    """Line pressure with v_liq of liquid stored (Pa); inverse of the above."""
    if v_liq < 0.0:
        raise AccumulatorEmptyError(f"negative liquid volume {v_liq:.4g} m^3")
    if v_liq >= acc.total_gas_volume:
        raise AccumulatorOverfillError(
            f"liquid volume {v_liq:.4g} m^3 >= bottle volume {acc.total_gas_volume} m^3"
        )
    return acc.precharge_pressure * (
        acc.total_gas_volume / (acc.total_gas_volume - v_liq)
    ) ** acc.polytropic_exponent


def accumulator_gas_energy(acc: Accumulator, v_liq: float) -> float:
    """Work stored in the gas relative to the precharge state (J).

    Closed-form integral of p dV_liq; used by the energy audit so the gas
    term closes exactly rather than by per-step quadrature.
    """
    if v_liq < 0.0 or v_liq >= acc.total_gas_volume:
        raise ValueError("liquid volume outside [0, V0)")
    n = acc.polytropic_exponent
    v0 = acc.total_gas_volume
    p0 = acc.precharge_pressure
    if abs(n - 1.0) < 1e-12:
        return p0 * v0 * math.log(v0 / (v0 - v_liq))
    return p0 * v0**n / (n - 1.0) * ((v0 - v_liq) ** (1.0 - n) - v0 ** (1.0 - n))


# ---------------------------------------------------------------------------
# Flow-control devices and the turbine shaft
# ---------------------------------------------------------------------------

@dataclass
class FcdState:
    """Variable-area orifice used as the control actuator."""

    area: float  # m^2 (state)
    flow_coeff: float = 0.7
    area_bounds: tuple[float, float] = (0.0, 5.0e-3)

    def __post_init__(self):
        lo, hi = self.area_bounds
        if lo < 0 or hi <= lo:
            raise ValueError("area_bounds must satisfy 0 <= lo < hi")
        if not lo <= self.area <= hi:
            raise ValueError("initial area outside area_bounds")


def orifice_flow(fcd: FcdState, dp: float, rho: float = SEAWATER_DENSITY) -> float:
    """Turbulent orifice flow Q = Cf A sqrt(2 dp / rho) (m^3/s); dp >= 0."""
    if dp < 0.0:
        raise BackflowError(f"negative orifice pressure drop {dp:.4g} Pa")
    return fcd.flow_coeff * fcd.area * math.sqrt(2.0 * dp / rho)


def orifice_pressure_drop(fcd: FcdState, q: float, rho: float = SEAWATER_DENSITY) -> float:
    """Pressure drop needed to pass q through the current area (Pa)."""
    if q < 0.0:
        raise BackflowError(f"negative orifice flow {q:.4g} m^3/s")
    if q == 0.0:
        return 0.0
    if fcd.area <= 0.0:
        raise ValueError("cannot pass flow through a closed orifice")
    v = q / (fcd.flow_coeff * fcd.area)
    return 0.5 * rho * v * v


@dataclass
class ShaftAssembly:
    """Fixed-displacement turbine rigidly coupled to the RO feed pump."""

    displacement: float = 3.52e-4  # m^3/rev through the turbine
    turbine_efficiency: float = 0.95
    rotational_inertia: float = 2000.0  # kg m^2
    speed: float = 50.0  # rev/s (state)

    def __post_init__(self):
        if self.displacement <= 0:
            raise ValueError("displacement must be positive")
        if not 0 < self.turbine_efficiency <= 1:
            raise ValueError("turbine efficiency must be in (0, 1]")
        if self.rotational_inertia <= 0:
            raise ValueError("rotational inertia must be positive")
        if self.speed < 0:
            raise ValueError("speed must be non-negative")


def turbine_flow(sh: ShaftAssembly) -> float:
    """Positive-displacement draw Q = N * Vd (m^3/s)."""
    return sh.speed * sh.displacement


def shaft_acceleration(sh: ShaftAssembly, dp_motor: float, tau_hp: float) -> float:
    """Shaft speed rate from the turbine/pump torque balance (rev/s^2).

    dp_motor is the pressure drop across the turbine; tau_hp is the magnitude
    of the feed-pump back-torque, which opposes rotation.
    """
    if tau_hp < 0.0:
        raise ValueError("tau_hp is a magnitude and must be >= 0")
    tau_m = dp_motor * sh.displacement * sh.turbine_efficiency / TWO_PI
    return (tau_m - tau_hp) / (TWO_PI * sh.rotational_inertia)


# ---------------------------------------------------------------------------
# Network state and one-step resolution
# ---------------------------------------------------------------------------

@dataclass
class PtoState:
    """Hydraulic state vector of the drive side."""

    pressure: float  # accumulator pressure, Pa
    liquid_volume: float  # m^3
    shaft_speed: float  # rev/s
    main_area: float  # m^2
    kidney_area: float  # m^2


@dataclass(frozen=True)
class NetworkStep:
    """Resolved flows, pressures and powers for one time step."""

    state: PtoState
    q_pistons: float  # m^3/s into the line
    q_main: float
    q_kidney: float
    dp_main_fcd: float  # Pa across the main FCD
    p_turbine_inlet: float  # Pa
    p_pistons: float  # W, hydraulic input from the pistons
    p_turbine: float  # W, hydraulic power into the turbine
    p_main_fcd: float  # W dissipated (or recoverable) at the main FCD
    p_kidney: float  # W dissipated (or recoverable) at the kidney FCD


def network_step(state: PtoState, q_in: float, acc: Accumulator,
                 shaft: ShaftAssembly, main_fcd: FcdState,
                 kidney_fcd: FcdState, tau_hp: float, dt: float,
                 rho: float = SEAWATER_DENSITY) -> NetworkStep:
    """Advance the hydraulic network one explicit step from `state`.

    Resolution order: pressure from stored volume, then flows (turbine draw
    fixed by shaft speed, kidney flow by the orifice law at full line
    pressure), then the volume and shaft-speed updates. Raises OverloadError
    if the main FCD drop leaves no positive turbine-inlet pressure and
    InfeasibleSeaStateError if the accumulator drains below precharge.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if q_in < 0:
        raise ValueError("piston inflow must be non-negative")

    p = state.pressure
    n_shaft = state.shaft_speed

    q_main = n_shaft * shaft.displacement
    main = replace(main_fcd, area=state.main_area)
    kidney = replace(kidney_fcd, area=state.kidney_area)
    dp_main = orifice_pressure_drop(main, q_main, rho)
    p_turb = p - dp_main
    if q_main > 0.0 and p_turb <= 0.0:
        raise OverloadError(
            "main-loop FCD inlet pressure reached zero", snapshot=state
        )
    q_kidney = orifice_flow(kidney, p, rho)
    if q_kidney < 0.0:
        raise InfeasibleSeaStateError("kidney-loop backflow", snapshot=state)

    # torque balance; the positive-displacement pump back-torque opposes
    dp_motor = p_turb if q_main > 0.0 else 0.0
    dn = shaft_acceleration(shaft, dp_motor, tau_hp) * dt
    n_new = max(n_shaft + dn, 0.0)

    v_new = state.liquid_volume + (q_in - q_main - q_kidney) * dt
    if v_new < 0.0:
        raise InfeasibleSeaStateError(
            "accumulator drained below precharge", snapshot=state
        )
    if v_new >= acc.total_gas_volume:
        raise AccumulatorOverfillError(
            f"accumulator overfilled: {v_new:.4g} m^3"
        )
    p_new = accumulator_pressure(acc, v_new)

    new_state = PtoState(
        pressure=p_new,
        liquid_volume=v_new,
        shaft_speed=n_new,
        main_area=state.main_area,
        kidney_area=state.kidney_area,
    )
    return NetworkStep(
        state=new_state,
        q_pistons=q_in,
        q_main=q_main,
        q_kidney=q_kidney,
        dp_main_fcd=dp_main,
        p_turbine_inlet=p_turb,
        p_pistons=p * q_in,
        p_turbine=p_turb * q_main,
        p_main_fcd=dp_main * q_main,
        p_kidney=p * q_kidney,
    )
