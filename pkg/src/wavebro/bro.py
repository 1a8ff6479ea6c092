"""Batch reverse osmosis: membrane transport, piston-tank cycle, feed pump.

One batch cycle pressurizes a fixed charge of feed while permeate leaves the
loop; salt stays behind, the bulk salinity climbs and with it the osmotic and
feed pressures, until the target recovery is reached and the tank is
re-initialized (the flush is taken as instantaneous). Salt rejection is
perfect, so the salt mass in the loop is invariant within a cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import CycleAccountingError

# cap on the polarization exponent Jw/k; keeps off-design sweeps finite
_MAX_POLARIZATION_EXPONENT = 20.0


@dataclass(frozen=True)
class MembraneConfig:
    """Spiral-wound module bank and solution properties."""

    permeability: float = 5.56e-12  # m/(s Pa)
    area_per_module: float = 7.4  # m^2
    module_length: float = 0.96  # m
    spacer_thickness: float = 7.112e-4  # m
    modules_series: int = 1
    modules_parallel: int = 450
    osmotic_coeff: float = 0.93
    vant_hoff: float = 2.0
    molar_mass: float = 58.55  # kg/kmol NaCl
    gas_constant: float = 8.314  # J/(mol K)
    temperature: float = 300.0  # K
    diffusivity: float = 1.47e-9  # m^2/s
    kinematic_viscosity: float = 8.56e-7  # m^2/s
    density: float = 1025.0  # kg/m^3
    # spacer-filled-channel transport correlations, Sh = a Re^b Sc^c and
    # f = K_f Re^-n_f; coefficients deliberately config-exposed
    sherwood_coeffs: tuple[float, float, float] = (0.2, 0.57, 0.4)
    friction_coeffs: tuple[float, float] = (6.23, 0.3)

    def __post_init__(self):
        if self.modules_series < 1 or self.modules_parallel < 1:
            raise ValueError("module counts must be >= 1")
        if not 0 < self.osmotic_coeff <= 1:
            raise ValueError("osmotic coefficient must be in (0, 1]")
        for name in ("permeability", "area_per_module", "module_length",
                     "spacer_thickness", "molar_mass", "temperature",
                     "diffusivity", "kinematic_viscosity", "density"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def hydraulic_diameter(self) -> float:
        """Feed-channel hydraulic diameter, twice the spacer thickness (m)."""
        return 2.0 * self.spacer_thickness

    @property
    def channel_cross_section(self) -> float:
        """Open flow area of one module's feed channel (m^2).

        Spacer thickness times membrane width (area over length); spacer
        blockage is not modelled.
        """
        return self.spacer_thickness * self.area_per_module / self.module_length

    @property
    def total_area(self) -> float:
        return self.area_per_module * self.modules_series * self.modules_parallel


@dataclass(frozen=True)
class BroPumpConfig:
    """High-pressure pump, circulation pump and cycle targets."""

    displacement: float = 5.55e-4  # m^3/rev
    hp_efficiency: float = 0.85
    circ_efficiency: float = 0.65
    recovery_per_pass: float = 0.1
    total_recovery: float = 0.5
    tank_volume: float = 1.18  # m^3
    feed_salinity: float = 35.0  # g salt / kg water

    def __post_init__(self):
        if not 0 < self.recovery_per_pass < 1:
            raise ValueError("recovery_per_pass must be in (0, 1)")
        if not 0 < self.total_recovery < 1:
            raise ValueError("total_recovery must be in (0, 1)")
        for name in ("hp_efficiency", "circ_efficiency"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError(f"{name} must be in (0, 1]")
        if self.displacement <= 0 or self.tank_volume <= 0:
            raise ValueError("displacement and tank_volume must be positive")


@dataclass(frozen=True)
class BatchState:
    """State of the active piston-tank side."""

    active_volume: float  # m^3 remaining on the pressurized side
    bulk_salinity: float  # g/kg
    cumulative_permeate: float = 0.0  # m^3, lifetime total
    cycle_permeate: float = 0.0  # m^3 produced in the current cycle
    cycle_index: int = 0
    phase: str = "pressurize"


def fresh_batch_state(pump: BroPumpConfig) -> BatchState:
    return BatchState(active_volume=pump.tank_volume,
                      bulk_salinity=pump.feed_salinity)


# ---------------------------------------------------------------------------
# Pump side
# ---------------------------------------------------------------------------

def hp_pump_flow(n: float, cfg: BroPumpConfig) -> float:
    """Feed-pump (equals permeate) flow for shaft speed n rev/s (m^3/s)."""
    if n < 0:
        raise ValueError("shaft speed must be non-negative")
    return n * cfg.displacement


def hp_pump_torque(p_f: float, cfg: BroPumpConfig) -> float:
    """Back-torque of the fixed-displacement feed pump at outlet pressure p_f."""
    if p_f < 0:
        raise ValueError("feed pressure must be non-negative")
    return cfg.displacement * p_f / (2.0 * math.pi * cfg.hp_efficiency)


def circulation_pump_power(q_p: float, rr_inst: float, u_avg: float,
                           mem: MembraneConfig, cfg: BroPumpConfig) -> float:
    """Crossflow circulation power (W).

    The circulation pump drives the full loop pressure drop (twice the
    half-drop charged to the feed pressure) at the branch crossflow
    q_p / rr_inst, with efficiency circ_efficiency.
    """
    if q_p < 0:
        raise ValueError("permeate flow must be non-negative")
    if q_p == 0.0:
        return 0.0
    dp_loop = 2.0 * channel_friction_drop(u_avg, mem)
    return (q_p / rr_inst) * dp_loop / cfg.circ_efficiency


# ---------------------------------------------------------------------------
# Membrane transport
# ---------------------------------------------------------------------------

def permeate_flux(q_p: float, cfg: MembraneConfig) -> float:
    """Mean permeate flux over the whole module bank (m/s)."""
    if q_p < 0:
        raise ValueError("permeate flow must be non-negative")
    return q_p / cfg.total_area


def crossflow_velocity(q_p: float, rr_inst: float, cfg: MembraneConfig) -> float:
    """Bulk velocity in one parallel branch's feed channel (m/s)."""
    q_feed = q_p / rr_inst
    return q_feed / (cfg.modules_parallel * cfg.channel_cross_section)


def mass_transfer_coeff(u_avg: float, cfg: MembraneConfig) -> float:
    """Film mass-transfer coefficient from a Sherwood power law (m/s)."""
    if u_avg <= 0:
        raise ValueError("crossflow velocity must be positive")
    a, b, c = cfg.sherwood_coeffs
    re = u_avg * cfg.hydraulic_diameter / cfg.kinematic_viscosity
    sc = cfg.kinematic_viscosity / cfg.diffusivity
    sh = a * re**b * sc**c
    return sh * cfg.diffusivity / cfg.hydraulic_diameter


def membrane_bulk_concentration(c_in: float, rr_inst: float) -> tuple[float, float]:
    """Branch outlet and average bulk salinity for one membrane pass (g/kg).

    Salt balance with salt-free permeate: c_out = c_in / (1 - rr_inst); the
    branch bulk is approximated by the inlet/outlet average.
    """
    if not 0 < rr_inst < 1:
        raise ValueError("recovery per pass must be in (0, 1)")
    c_out = c_in / (1.0 - rr_inst)
    return c_out, 0.5 * (c_in + c_out)


def osmotic_pressure(c_mem: float, j_w: float, k: float,
                     cfg: MembraneConfig) -> float:
    """Osmotic pressure at the membrane wall (Pa).

    Van't Hoff with the osmotic coefficient, on the molar concentration
    c_mem * rho / M, amplified by the film-model polarization factor
    exp(Jw / k).
    """
    if c_mem < 0:
        raise ValueError("salinity must be non-negative")
    if k <= 0:
        raise ValueError("mass-transfer coefficient must be positive")
    c_molar = c_mem * cfg.density / cfg.molar_mass  # mol/m^3
    expo = min(j_w / k, _MAX_POLARIZATION_EXPONENT)
    return (cfg.vant_hoff * cfg.osmotic_coeff * cfg.gas_constant
            * cfg.temperature * c_molar * math.exp(expo))


def channel_friction_drop(u_avg: float, cfg: MembraneConfig) -> float:
    """Half the feed-channel pressure drop across the series path (Pa)."""
    if u_avg <= 0:
        return 0.0
    k_f, n_f = cfg.friction_coeffs
    re = u_avg * cfg.hydraulic_diameter / cfg.kinematic_viscosity
    f = k_f * re ** (-n_f)
    return (f * cfg.density * u_avg**2 / (4.0 * cfg.hydraulic_diameter)
            * cfg.module_length * cfg.modules_series)


def feed_pressure(j_w: float, pi: float, u_avg: float,
                  cfg: MembraneConfig) -> float:
    """Required pressure at the module inlet (Pa).

    Transmembrane driving term Jw/Aw plus the wall osmotic pressure plus half
    of the feed-channel friction drop.
    """
    if j_w < 0:
        raise ValueError("flux must be non-negative")
    return j_w / cfg.permeability + pi + channel_friction_drop(u_avg, cfg)


@dataclass(frozen=True)
class MembraneOperatingPoint:
    """Derived transport quantities at one instant."""

    q_permeate: float  # m^3/s
    flux: float  # m/s
    u_avg: float  # m/s
    k: float  # m/s
    c_membrane: float  # g/kg branch average
    osmotic: float  # Pa at the wall
    p_feed: float  # Pa
    tau_pump: float  # N m
    p_circulation: float  # W


def operating_point(n_shaft: float, bulk_salinity: float, mem: MembraneConfig,
                    pump: BroPumpConfig) -> MembraneOperatingPoint:
    """Evaluate the full transport chain at shaft speed and bulk salinity."""
    q_p = hp_pump_flow(n_shaft, pump)
    if q_p <= 0.0:
        return MembraneOperatingPoint(0.0, 0.0, 0.0, math.inf, bulk_salinity,
                                      0.0, 0.0, 0.0, 0.0)
    j_w = permeate_flux(q_p, mem)
    u = crossflow_velocity(q_p, pump.recovery_per_pass, mem)
    k = mass_transfer_coeff(u, mem)
    _, c_mem = membrane_bulk_concentration(bulk_salinity, pump.recovery_per_pass)
    pi = osmotic_pressure(c_mem, j_w, k, mem)
    p_f = feed_pressure(j_w, pi, u, mem)
    tau = hp_pump_torque(p_f, pump)
    p_cp = circulation_pump_power(q_p, pump.recovery_per_pass, u, mem, pump)
    return MembraneOperatingPoint(q_p, j_w, u, k, c_mem, pi, p_f, tau, p_cp)


# ---------------------------------------------------------------------------
# Batch cycle accounting
# ---------------------------------------------------------------------------

def batch_step(s: BatchState, q_p: float, dt: float,
               pump: BroPumpConfig) -> BatchState:
    """Remove q_p * dt of permeate from the active side.

    The salt mass C * V is invariant (perfect rejection, instantaneous
    mixing), so the bulk salinity scales with the inverse volume.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if q_p < 0:
        raise ValueError("permeate flow must be non-negative")
    if q_p == 0.0:
        return s
    dv = q_p * dt
    v_new = s.active_volume - dv
    if v_new <= 0.0:
        raise CycleAccountingError(
            f"tank volume underflow: {v_new:.4g} m^3 before reset trigger"
        )
    return replace(
        s,
        active_volume=v_new,
        bulk_salinity=s.bulk_salinity * s.active_volume / v_new,
        cumulative_permeate=s.cumulative_permeate + dv,
        cycle_permeate=s.cycle_permeate + dv,
    )


def cycle_complete(s: BatchState, pump: BroPumpConfig) -> bool:
    """True once the cycle's permeate reaches the total-recovery target."""
    return s.cycle_permeate >= pump.total_recovery * pump.tank_volume


def cycle_reset(s: BatchState, pump: BroPumpConfig) -> BatchState:
    """Re-initialize the tank for the next cycle; consumes no simulated time."""
    return BatchState(
        active_volume=pump.tank_volume,
        bulk_salinity=pump.feed_salinity,
        cumulative_permeate=s.cumulative_permeate,
        cycle_permeate=0.0,
        cycle_index=s.cycle_index + 1,
        phase="pressurize",
    )


def cycle_specific_energy(mem: MembraneConfig, pump: BroPumpConfig,
                          n_shaft: float = 50.0, dt: float = 0.05) -> float:
    """SEC of the batch process alone with an ideal supply (kWh/m^3).

    The shaft is held at n_shaft as if driven by a lossless, always-sufficient
    source; the energy charged is the feed-pump input (hydraulic over
    hp_efficiency) plus circulation power, integrated over exactly one cycle.
    """
    state = fresh_batch_state(pump)
    energy = 0.0  # J
    permeate = 0.0  # m^3
    while not cycle_complete(state, pump):
        op = operating_point(n_shaft, state.bulk_salinity, mem, pump)
        step_dt = dt
        # shrink the last step to land exactly on the trigger
        remaining = pump.total_recovery * pump.tank_volume - state.cycle_permeate
        if op.q_permeate * step_dt > remaining:
            step_dt = remaining / op.q_permeate
        energy += (op.p_feed * op.q_permeate / pump.hp_efficiency
                   + op.p_circulation) * step_dt
        permeate += op.q_permeate * step_dt
        state = batch_step(state, op.q_permeate, step_dt, pump)
    return energy / permeate / 3.6e6
