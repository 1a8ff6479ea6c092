import math
from dataclasses import replace

import numpy as np
import pytest

from wavebro import engine, hydraulics, scenario
from wavebro.errors import InfeasibleSeaStateError, OverloadError


def _short(scn=None, **overrides):
    scn = scn or scenario.bundled_scenario("humboldt_winter")
    defaults = {"duration": 200.0, "warmup": 60.0}
    defaults.update(overrides)
    return replace(scn, **defaults)


# ---------------------------------------------------------------------------
# run()
# ---------------------------------------------------------------------------

def test_run_is_deterministic():
    scn = _short()
    a = engine.run(scn)
    b = engine.run(scn)
    assert a.summary.to_dict() == b.summary.to_dict()
    assert (a.timeseries.data == b.timeseries.data).all()


def test_seed_changes_irregular_waves_only():
    scn = _short()
    reseeded = replace(scn, sea=replace(scn.sea, rng_seed=1234))
    eta_a = engine.run(scn).timeseries.column("eta")
    eta_b = engine.run(reseeded).timeseries.column("eta")
    assert not np.array_equal(eta_a, eta_b)

    regular = replace(scn, sea=replace(scn.sea, kind="regular"))
    regular_reseeded = replace(regular, sea=replace(regular.sea, rng_seed=99))
    assert np.array_equal(engine.run(regular).timeseries.column("eta"),
                          engine.run(regular_reseeded).timeseries.column("eta"))


def test_benchmark_summary(benchmark_result):
    s = benchmark_result.summary
    assert s.permeate_per_day == pytest.approx(2400.0, rel=0.05)
    assert s.cycles_completed >= 3
    assert s.feasibility_flags == []
    assert s.energy_audit_residual < 0.005
    assert 0.0 < s.eta_ii < 1.0
    assert s.sec_with_gen <= s.sec


def test_small_state_summary(small_state_result):
    s = small_state_result.summary
    assert s.permeate_per_day == pytest.approx(1700.0, rel=0.05)
    assert s.feasibility_flags == []
    assert s.energy_audit_residual < 0.005


def test_all_logged_flows_non_negative(benchmark_result):
    ts = benchmark_result.timeseries
    for col in ("q_main", "q_kidney", "q_p"):
        assert (ts.column(col) >= 0.0).all()


def test_accumulator_stays_within_bounds(benchmark_result):
    ts = benchmark_result.timeseries
    acc = hydraulics.Accumulator()
    p = ts.column("p_accum")
    v = ts.column("v_liq")
    assert (p >= acc.precharge_pressure).all()
    assert (p <= 1.1 * acc.rated_pressure).all()
    assert (v >= 0.0).all() and (v < acc.total_gas_volume).all()


def test_controller_holds_setpoints(benchmark_result):
    d = benchmark_result.summary.diagnostics
    assert d["max_shaft_speed_error"] <= 1.0
    assert d["pressure_min_pa"] >= 0.9 * 16e6
    assert d["pressure_max_pa"] <= 1.1 * 16e6


def test_dt_halving_barely_moves_sec():
    scn = _short()
    sec_a = engine.run(scn).summary.sec
    sec_b = engine.run(replace(scn, dt=scn.dt / 2)).summary.sec
    assert abs(sec_b - sec_a) / sec_a < 0.005


def test_warmup_doubling_barely_moves_sec():
    scn = _short(duration=400.0, warmup=60.0)
    sec_a = engine.run(scn).summary.sec
    sec_b = engine.run(replace(scn, warmup=120.0)).summary.sec
    assert abs(sec_b - sec_a) / sec_a < 0.01


def test_insufficient_cycles_flagged():
    scn = _short(duration=80.0, warmup=60.0)
    result = engine.run(scn)
    assert "insufficient_cycles" in result.summary.feasibility_flags


def test_physics_mode_runs_conservatively():
    scn = replace(scenario.bundled_scenario("physics_demo"),
                  duration=200.0, warmup=60.0)
    result = engine.run(scn)
    s = result.summary
    assert s.energy_audit_residual < 0.005
    assert s.feasibility_flags == []
    ts = result.timeseries
    assert (ts.column("q_main") >= 0.0).all()
    assert np.abs(ts.column("theta")).max() <= scn.wec.max_pitch + 1e-12


def test_overload_abort_carries_time_and_snapshot():
    # pinching the main valve hard on a live turbine starves its inlet
    scn = _short()
    scn = replace(
        scn,
        main_fcd=replace(scn.main_fcd, initial_area=2e-6,
                         area_bounds=(1e-7, 5e-3)),
        main_control=replace(scn.main_control, kp=0.0, kd=0.0),
    )
    with pytest.raises(OverloadError) as err:
        engine.run(scn)
    assert err.value.t is not None
    assert err.value.snapshot is not None


def test_starved_source_is_infeasible():
    # a source far below the turbine draw drains the accumulator
    scn = _short()
    scn = replace(scn, source=replace(scn.source, mean_flow=0.004))
    with pytest.raises(InfeasibleSeaStateError) as err:
        engine.run(scn)
    assert err.value.t is not None


# ---------------------------------------------------------------------------
# check_feasibility
# ---------------------------------------------------------------------------

def test_check_feasibility_nominal_state_clean():
    acc = hydraulics.Accumulator()
    snap = engine.StateSnapshot(t=0.0, pressure=16e6, liquid_volume=1.83,
                                shaft_speed=50.0, q_kidney=0.004,
                                p_turbine_inlet=1e7)
    assert engine.check_feasibility(snap, acc) == []


def test_check_feasibility_flags_injected_violations():
    acc = hydraulics.Accumulator()
    snap = engine.StateSnapshot(t=1.0, pressure=16e6, liquid_volume=1.83,
                                shaft_speed=50.0, q_kidney=-0.001,
                                p_turbine_inlet=1e7)
    assert engine.check_feasibility(snap, acc) == ["kidney_backflow"]

    snap = engine.StateSnapshot(t=1.0, pressure=18e6, liquid_volume=1.83,
                                shaft_speed=50.0, q_kidney=0.001,
                                p_turbine_inlet=0.0)
    flags = engine.check_feasibility(snap, acc)
    assert "main_fcd_inlet_nonpositive" in flags
    assert "accumulator_overpressure" in flags


# ---------------------------------------------------------------------------
# sweep()
# ---------------------------------------------------------------------------

def test_single_point_sweep_matches_run():
    scn = _short()
    rows = engine.sweep(scn)
    result = engine.run(scn)
    assert len(rows) == 1
    row = rows[0]
    assert row.fcd_mode == scn.fcd_mode
    # the row's headline SEC is the mode-appropriate one
    assert row.sec == result.summary.sec_with_gen
    assert row.sec_with_gen == result.summary.sec_with_gen
    assert row.permeate_per_day == result.summary.permeate_per_day
    assert row.feasible


def test_sweep_emits_one_row_per_grid_point():
    scn = _short(duration=120.0, warmup=60.0)
    rows = engine.sweep(scn, modules=[440, 450], fcd_modes=["valve", "generator"])
    assert len(rows) == 4
    assert {(r.modules, r.fcd_mode) for r in rows} == {
        (440, "valve"), (440, "generator"), (450, "valve"), (450, "generator")}
    for row in rows:
        if row.fcd_mode == "generator":
            assert row.sec == row.sec_with_gen


def test_sweep_parallel_matches_serial():
    scn = _short(duration=120.0, warmup=60.0)
    serial = engine.sweep(scn, modules=[430, 450, 470])
    parallel = engine.sweep(scn, modules=[430, 450, 470], workers=2)
    assert [(r.modules, r.sec, r.permeate_per_day) for r in serial] == \
           [(r.modules, r.sec, r.permeate_per_day) for r in parallel]


def test_sweep_records_infeasible_points():
    scn = _short()
    starved = replace(scn, source=replace(scn.source, mean_flow=0.004))
    rows = engine.sweep(starved)
    assert len(rows) == 1
    assert not rows[0].feasible
    assert "InfeasibleSeaState" in rows[0].error


def test_scale_modules_preserves_design_flux():
    scn = scenario.bundled_scenario("humboldt_winter")
    scaled = engine.scale_modules(scn, 900)
    from wavebro import bro
    j_base = bro.permeate_flux(50.0 * scn.pump.displacement, scn.membrane)
    j_scaled = bro.permeate_flux(50.0 * scaled.pump.displacement, scaled.membrane)
    assert j_scaled == pytest.approx(j_base, rel=1e-12)
    assert scaled.pump.tank_volume == pytest.approx(2 * scn.pump.tank_volume)


def test_timeseries_columns_and_window(benchmark_result):
    ts = benchmark_result.timeseries
    assert ts.data.shape[1] == len(engine.TIMESERIES_COLUMNS)
    t = ts.column("t")
    assert t[0] == 0.0
    assert np.allclose(np.diff(t), 0.005)
    w = ts.window(100.0, 200.0)
    assert w[:, 0].min() >= 100.0
    assert w[:, 0].max() < 200.0


def test_scenario_fingerprint_tracks_content():
    scn = scenario.bundled_scenario("humboldt_winter")
    assert engine.scenario_fingerprint(scn) == engine.scenario_fingerprint(scn)
    other = replace(scn, dt=1e-3)
    assert engine.scenario_fingerprint(scn) != engine.scenario_fingerprint(other)
