"""Energy metrics (SEC, least work, second-law efficiency) and plant economics.

Power averages come in through an EnergyLedger filled by the simulation
engine over the post-warm-up window; everything here is pure arithmetic on
those averages plus the cost configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import UndefinedMetricError

J_PER_M3_TO_KWH_PER_M3 = 1.0 / 3.6e6
WATER_MOLAR_MASS = 0.0180153  # kg/mol


@dataclass
class EnergyLedger:
    """Window-averaged component powers (W) and permeate flow (m^3/s)."""

    avg_p_wec: float = 0.0
    avg_p_cp: float = 0.0
    avg_p_kidney: float = 0.0
    avg_p_main_fcd: float = 0.0
    avg_p_turbine: float = 0.0
    avg_q_permeate: float = 0.0
    window: tuple[float, float] = (0.0, 0.0)


def sec(ledger: EnergyLedger) -> float:
    """Specific energy consumption (kWh/m^3): WEC plus circulation power
    per unit permeate."""
    if ledger.avg_q_permeate <= 0:
        raise UndefinedMetricError("SEC undefined with zero permeate flow")
    w_per_flow = (ledger.avg_p_wec + ledger.avg_p_cp) / ledger.avg_q_permeate
    return w_per_flow * J_PER_M3_TO_KWH_PER_M3


def sec_with_recovery(ledger: EnergyLedger, eta_gen: float) -> float:
    """SEC when both FCDs run as generators recovering their throttling loss."""
    if not 0 < eta_gen <= 1:
        raise ValueError("generator efficiency must be in (0, 1]")
    if ledger.avg_q_permeate <= 0:
        raise UndefinedMetricError("SEC undefined with zero permeate flow")
    p_rec = eta_gen * (ledger.avg_p_kidney + ledger.avg_p_main_fcd)
    net = ledger.avg_p_wec + ledger.avg_p_cp - p_rec
    return net / ledger.avg_q_permeate * J_PER_M3_TO_KWH_PER_M3


# ---------------------------------------------------------------------------
# Least work of separation
# ---------------------------------------------------------------------------

def least_work(feed_salinity: float, recovery: float, temperature: float,
               osmotic_coeff: float = 0.93, salt_molar_mass: float = 58.55,
               gas_constant: float = 8.314) -> float:
    """Reversible separation work at finite recovery (kJ per kg permeate).

    Ideal-mixing Gibbs energy of water plus fully dissociated NaCl ions,
    scaled by a constant osmotic coefficient; permeate is pure water and the
    brine carries all the salt at salinity feed/(1 - r). Bounded against a
    full electrolyte property model to within a few percent at seawater
    conditions; the coefficient is configurable so a property table can be
    substituted.
    """
    if not 0 < recovery < 1:
        raise ValueError("recovery must be in (0, 1)")
    if feed_salinity < 0:
        raise ValueError("salinity must be non-negative")
    if feed_salinity == 0.0:
        return 0.0
    if temperature <= 0:
        raise ValueError("temperature must be positive")

    m_salt_per_mol = salt_molar_mass / 1000.0  # kg/mol

    def mixing_gibbs_per_rt(salt_kg: float, water_kg: float) -> float:
        # sum n_i ln x_i over water and the two ion species
        n_salt = salt_kg / m_salt_per_mol
        n_ions = 2.0 * n_salt
        n_w = water_kg / WATER_MOLAR_MASS
        n_tot = n_w + n_ions
        return n_w * math.log(n_w / n_tot) + n_ions * math.log(n_salt / n_tot)

    s = feed_salinity / 1000.0  # kg salt per kg feed
    r = recovery
    if (1.0 - r) <= s:
        raise ValueError("recovery leaves no water in the brine")
    g_feed = mixing_gibbs_per_rt(s, 1.0 - s)  # per kg feed
    g_brine = mixing_gibbs_per_rt(s, (1.0 - r) - s)  # brine holds all salt
    rt = gas_constant * temperature
    w_j_per_kg = osmotic_coeff * rt * (g_brine - g_feed) / r  # permeate g = 0
    return w_j_per_kg / 1000.0


def sec_least(w_least: float, rho_permeate: float = 1000.0) -> float:
    """Convert least work (kJ/kg) to minimum SEC (kWh/m^3)."""
    if w_least < 0 or rho_permeate <= 0:
        raise ValueError("least work must be >= 0 and density positive")
    return rho_permeate * w_least / 3600.0


def second_law_efficiency(sec_least_value: float, sec_value: float) -> float:
    """Ratio of the thermodynamic minimum to the actual SEC."""
    if sec_value <= 0:
        raise ValueError("SEC must be positive")
    return sec_least_value / sec_value


# ---------------------------------------------------------------------------
# Economics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OpexItem:
    """One operating-cost rule: per-m^3 rate, fixed annual, or % of RO CapEx."""

    name: str
    rule: str  # "per_m3" | "fixed_annual" | "pct_of_bro_capex"
    value: float

    def __post_init__(self):
        if self.rule not in ("per_m3", "fixed_annual", "pct_of_bro_capex"):
            raise ValueError(f"unknown opex rule {self.rule!r}")
        if self.value < 0:
            raise ValueError("opex values must be non-negative")


def default_opex_items() -> tuple[OpexItem, ...]:
    return (
        OpexItem("spare_parts", "per_m3", 0.04),
        OpexItem("pretreatment", "per_m3", 0.03),
        OpexItem("posttreatment", "per_m3", 0.01),
        OpexItem("membranes", "per_m3", 0.07),
        OpexItem("insurance", "pct_of_bro_capex", 0.005),
        OpexItem("labor", "fixed_annual", 95_700.0),  # one operator + one manager
    )


@dataclass(frozen=True)
class EconConfig:
    """Capital and operating cost inputs (USD)."""

    wec_capex: float = 3_880_000.0
    bro_capex_per_100m3day: float = 146_000.0
    wec_opex: float = 68_100.0
    bro_opex_items: tuple[OpexItem, ...] = field(default_factory=default_opex_items)
    fixed_charge_rate: float = 0.108
    capacity_factor: float = 0.49

    def __post_init__(self):
        if not 0 < self.fixed_charge_rate < 1:
            raise ValueError("fixed charge rate must be in (0, 1)")
        if not 0 < self.capacity_factor <= 1:
            raise ValueError("capacity factor must be in (0, 1]")
        for name in ("wec_capex", "bro_capex_per_100m3day", "wec_opex"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


def annual_water_production(daily: float, capacity_factor: float) -> float:
    """Yearly permeate volume (m^3/yr) at the given availability."""
    if daily <= 0 or not 0 < capacity_factor <= 1:
        raise ValueError("daily production and capacity factor must be positive")
    return daily * 365.0 * capacity_factor


def bro_capex(cfg: EconConfig, daily_capacity: float) -> float:
    """RO-side capital cost, linear in permeate capacity (USD)."""
    if daily_capacity < 0:
        raise ValueError("capacity must be non-negative")
    return cfg.bro_capex_per_100m3day * daily_capacity / 100.0


def annual_opex(cfg: EconConfig, daily_capacity: float) -> float:
    """Total yearly operating cost (USD/yr) for one plant."""
    awp = annual_water_production(daily_capacity, cfg.capacity_factor)
    capex_ro = bro_capex(cfg, daily_capacity)
    total = cfg.wec_opex
    for item in cfg.bro_opex_items:
        if item.rule == "per_m3":
            total += item.value * awp
        elif item.rule == "fixed_annual":
            total += item.value
        else:  # pct_of_bro_capex
            total += item.value * capex_ro
    return total


def lcow(capex: float, opex: float, awp: float, fcr: float) -> float:
    """Levelized cost of water (USD/m^3)."""
    if awp <= 0:
        raise UndefinedMetricError("LCOW undefined with zero annual production")
    if capex < 0 or opex < 0 or fcr < 0:
        raise ValueError("costs and FCR must be non-negative")
    return (fcr * capex + opex) / awp


def plant_lcow(cfg: EconConfig, daily_capacity: float) -> float:
    """LCOW from the config's cost rules at the given capacity (USD/m^3)."""
    awp = annual_water_production(daily_capacity, cfg.capacity_factor)
    capex = cfg.wec_capex + bro_capex(cfg, daily_capacity)
    return lcow(capex, annual_opex(cfg, daily_capacity), awp,
                cfg.fixed_charge_rate)
