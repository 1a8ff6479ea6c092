"""Built-in validation suite: closed-form oracles, invariants, short runs.

Each check returns (ok, detail) and accepts overrides so a perturbed
configuration demonstrably fails (used to prove the checks have teeth).
`run_all` prints one line per check and reports overall success.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from . import bro, control, energy, engine, hydraulics, waves

CHECK_REGISTRY: list = []


def _register(fn):
    CHECK_REGISTRY.append(fn)
    return fn


@_register
def check_accumulator_rated_volume(polytropic_exponent: float = 1.4):
    """Stored liquid at the 16 MPa rated point must be 1.83 m^3 (3 s.f.)."""
    acc = hydraulics.Accumulator(polytropic_exponent=polytropic_exponent)
    v = hydraulics.accumulator_liquid_volume(acc, acc.rated_pressure)
    ok = abs(v - 1.83) <= 0.005
    return ok, f"V_liq(16 MPa) = {v:.4f} m^3 (want 1.83 +/- 0.005)"


@_register
def check_wave_power_flux():
    """Five site (Hs, Tp) pairs against their published flux values, 0.5%."""
    table = [(3.0, 11.0, 48_570.0), (1.5, 6.75, 7_451.0), (1.0, 5.5, 2_698.0),
             (1.75, 9.25, 13_898.0), (1.25, 7.25, 5_558.0)]
    worst = 0.0
    for hs, tp, want in table:
        got = waves.wave_power_flux(hs, tp)
        worst = max(worst, abs(got - want) / want)
    return worst < 0.005, f"max flux error {worst * 100:.3f}% (limit 0.5%)"


@_register
def check_spectrum_integral():
    """Band-integrated variance density must equal Hs^2/16 within 2%."""
    sea = waves.SeaState(3.0, 11.0, kind="irregular")
    lo, hi = sea.band()
    w = np.linspace(lo, hi, 20_001)
    m0 = np.trapz(waves.spectral_density(sea, w), w)
    want = sea.significant_height**2 / 16.0
    err = abs(m0 - want) / want
    return err < 0.02, f"PM band integral off by {err * 100:.3f}% (limit 2%)"


@_register
def check_regular_wave_amplitude():
    sea = waves.SeaState(3.0, 11.0)
    field = waves.WaveField(sea)
    eta = field.elevation(np.linspace(0.0, 22.0, 2001))
    ok = math.isclose(np.max(np.abs(eta)), 1.5, rel_tol=1e-9)
    return ok, f"max|eta| = {np.max(np.abs(eta)):.6f} m (want 1.5)"


@_register
def check_piston_kinematics():
    sc = hydraulics.SliderCrank()
    x0 = hydraulics.piston_position(sc, 0.0)
    x90 = hydraulics.piston_position(sc, math.pi / 2)
    ok = (math.isclose(x0, 3.0 + math.sqrt(23.31), rel_tol=1e-12)
          and math.isclose(x90, math.sqrt(22.11), rel_tol=1e-12))
    return ok, f"x(0) = {x0:.4f} m, x(pi/2) = {x90:.4f} m"


@_register
def check_orifice_example():
    fcd = hydraulics.FcdState(area=1e-4)
    q = hydraulics.orifice_flow(fcd, 1e6, 1025.0)
    want = 0.7 * 1e-4 * math.sqrt(2e6 / 1025.0)
    return math.isclose(q, want, rel_tol=1e-12), f"Q = {q:.6g} m^3/s"


@_register
def check_shaft_balance():
    sh = hydraulics.ShaftAssembly()
    dn = hydraulics.shaft_acceleration(sh, 1e7, 500.0)
    want = (1e7 * 3.52e-4 * 0.95 / (2 * math.pi) - 500.0) / (2 * math.pi * 2000.0)
    return math.isclose(dn, want, rel_tol=1e-12), f"dN/dt = {dn:.6g} rev/s^2"


@_register
def check_controller_gains(main_kp: float = 1.0e-5, kidney_kp: float = -6.67e-14):
    """Stock proportional gains must move the areas the documented way."""
    main = control.PdController(kp=main_kp, kd=0.0, setpoint=50.0,
                                area_bounds=(0.0, 1.0))
    da_main = main.update(1.0)
    kid = control.PdController(kp=kidney_kp, kd=0.0, setpoint=16e6,
                               area_bounds=(0.0, 1.0))
    da_kid = kid.update(-1e6)  # 1 MPa overpressure
    ok = (math.isclose(da_main, main_kp, rel_tol=1e-12)
          and math.isclose(da_kid, -kidney_kp * 1e6, rel_tol=1e-12)
          and da_kid > 0)
    return ok, f"dA_main = {da_main:.3g} m^2, dA_kidney = {da_kid:.3g} m^2"


@_register
def check_osmotic_pressure():
    mem = bro.MembraneConfig()
    pi0 = bro.osmotic_pressure(35.0, 0.0, 1e-4, mem)
    want0 = 2 * 0.93 * 8.314 * 300.0 * (35.0 * 1025.0 / 58.55)
    pi_cp = bro.osmotic_pressure(35.0, 8.33e-6, 3.88e-5, mem)
    ok = (math.isclose(pi0, want0, rel_tol=1e-12)
          and math.isclose(pi_cp, want0 * math.exp(8.33e-6 / 3.88e-5),
                           rel_tol=1e-12))
    return ok, f"pi(35 g/kg) = {pi0 / 1e5:.2f} bar, polarized {pi_cp / 1e5:.2f} bar"


@_register
def check_feed_pressure_terms():
    mem = bro.MembraneConfig()
    p = bro.feed_pressure(8.33e-6, 0.0, 1e-9, mem)
    want = 8.33e-6 / 5.56e-12
    ok = abs(p - want) < 1e3  # friction at u ~ 1e-9 is negligible
    return ok, f"transmembrane term = {p / 1e5:.2f} bar (want ~{want / 1e5:.2f})"


@_register
def check_batch_salt_conservation(total_recovery: float = 0.5):
    pump = replace(bro.BroPumpConfig(), total_recovery=total_recovery)
    state = bro.fresh_batch_state(pump)
    salt0 = state.active_volume * state.bulk_salinity
    q = 0.02775
    while not bro.cycle_complete(state, pump):
        state = bro.batch_step(state, q, 0.01, pump)
    salt = state.active_volume * state.bulk_salinity
    drift = abs(salt - salt0) / salt0
    doubling = state.bulk_salinity / pump.feed_salinity
    ok = drift < 1e-6 and abs(doubling - 1.0 / (1.0 - total_recovery)) < 0.01
    return ok, (f"salt drift {drift:.2e} over one cycle; end salinity "
                f"x{doubling:.4f} feed")


@_register
def check_least_work_anchor(osmotic_coeff: float = 0.93):
    w = energy.least_work(35.0, 0.5, 294.75, osmotic_coeff=osmotic_coeff)
    s = energy.sec_least(w)
    ok = abs(s - 1.09) / 1.09 < 0.08
    return ok, f"SEC_least(35 g/kg, r=0.5, 294.75 K) = {s:.4f} kWh/m^3"


@_register
def check_second_law_anchor():
    w = energy.least_work(35.0, 0.5, 300.0)
    eta = energy.second_law_efficiency(energy.sec_least(w), 2.4)
    ok = abs(eta - 0.461) < 0.02
    return ok, f"eta_II(SEC 2.4, 300 K) = {eta * 100:.2f}% (want 46.1 +/- 2)"


@_register
def check_sec_arithmetic():
    ledger = energy.EnergyLedger(avg_p_wec=350e3, avg_p_cp=40e3,
                                 avg_q_permeate=0.02775)
    val = energy.sec(ledger)
    want = (390e3 / 0.02775) / 3.6e6
    return math.isclose(val, want, rel_tol=1e-12), f"SEC = {val:.4f} kWh/m^3"


@_register
def check_lcow_arithmetic():
    val = energy.lcow(7.384e6, 2.29e5, 429_240.0, 0.108)
    ok = abs(val - 2.39) < 0.005
    return ok, f"LCOW = {val:.4f} $/m^3 (want ~2.39)"


@_register
def check_bro_capex_scaling():
    cfg = energy.EconConfig()
    a = energy.bro_capex(cfg, 100.0)
    b = energy.bro_capex(cfg, 2400.0)
    ok = math.isclose(a, 146_000.0) and math.isclose(b, 3_504_000.0)
    return ok, f"CapEx(100) = ${a:,.0f}, CapEx(2400) = ${b:,.0f}"


def _short_benchmark(main_kp: float = 1.0e-5, main_kd: float = 100.0e-5,
                     duration: float = 150.0, warmup: float = 60.0):
    scn = engine.Scenario(
        main_control=replace(engine.default_main_gains(), kp=main_kp,
                             kd=main_kd),
        duration=duration, warmup=warmup,
    )
    return engine.run(scn)


@_register
def check_controller_settling(main_kp: float = 1.0e-5,
                              main_kd: float = 100.0e-5):
    """Short benchmark run: shaft within +/-1 rev/s, pressure within 10%."""
    try:
        result = _short_benchmark(main_kp=main_kp, main_kd=main_kd)
    except Exception as exc:  # a broken controller can crash the plant
        return False, f"run aborted: {type(exc).__name__}: {exc}"
    d = result.summary.diagnostics
    speed_ok = d["max_shaft_speed_error"] <= 1.0
    p_ok = (d["pressure_min_pa"] >= 0.9 * 16e6
            and d["pressure_max_pa"] <= 1.1 * 16e6)
    return speed_ok and p_ok, (
        f"max speed error {d['max_shaft_speed_error']:.3f} rev/s, pressure "
        f"[{d['pressure_min_pa'] / 1e6:.2f}, {d['pressure_max_pa'] / 1e6:.2f}] MPa"
    )


@_register
def check_energy_audit():
    result = _short_benchmark()
    res = result.summary.energy_audit_residual
    return res < 0.005, f"drive-side power audit residual {res * 100:.3f}% (limit 0.5%)"


@_register
def check_benchmark_permeate():
    result = _short_benchmark(duration=250.0, warmup=60.0)
    got = result.summary.permeate_per_day
    ok = abs(got - 2400.0) / 2400.0 < 0.05
    return ok, f"permeate {got:.0f} m^3/day (want 2400 +/- 5%)"


def run_all(printer=print) -> bool:
    """Execute every registered check; returns True if all pass."""
    all_ok = True
    for fn in CHECK_REGISTRY:
        name = fn.__name__.removeprefix("check_")
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        printer(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
