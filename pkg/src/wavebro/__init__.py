"""Time-domain simulator of a direct-drive wave-powered batch RO plant."""

from .bro import (
    BatchState,
    BroPumpConfig,
    MembraneConfig,
    batch_step,
    cycle_reset,
    cycle_specific_energy,
    feed_pressure,
    hp_pump_flow,
    hp_pump_torque,
    mass_transfer_coeff,
    membrane_bulk_concentration,
    osmotic_pressure,
    permeate_flux,
)
from .control import PdController, kidney_error, main_loop_error, pd_update
from .energy import (
    EconConfig,
    EnergyLedger,
    annual_water_production,
    bro_capex,
    lcow,
    least_work,
    sec,
    sec_least,
    sec_with_recovery,
    second_law_efficiency,
)
from .engine import (
    CalibratedSource,
    RunResult,
    Scenario,
    SeaStateSpec,
    SimSummary,
    check_feasibility,
    run,
    scale_modules,
    sweep,
)
from .errors import (
    InfeasibleSeaStateError,
    OverloadError,
    ScenarioError,
    WavebroError,
)
from .flap import FlapState, WecConfig, excitation_torque, flap_acceleration, step_flap
from .hydraulics import (
    Accumulator,
    FcdState,
    PtoState,
    ShaftAssembly,
    SliderCrank,
    accumulator_liquid_volume,
    accumulator_pressure,
    orifice_flow,
    piston_flows,
    piston_position,
    shaft_acceleration,
    turbine_flow,
)
from .scenario import bundled_scenario, load_scenario, load_sea_state_specs, save_scenario
from .waves import SeaState, WaveField, elevation, spectral_density, wave_power_flux

__version__ = "0.1.0"
