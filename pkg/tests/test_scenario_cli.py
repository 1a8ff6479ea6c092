import json
import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import pytest

from wavebro import cli, engine, scenario, validate
from wavebro.errors import ScenarioError


# ---------------------------------------------------------------------------
# Scenario files
# ---------------------------------------------------------------------------

def test_bundled_scenarios_parse():
    for name in ("humboldt_winter", "kos_winter", "kos_summer",
                 "guana_winter", "guana_summer", "physics_demo"):
        scn = scenario.bundled_scenario(name)
        assert scn.name == name


def test_defaults_match_stock_configuration():
    scn = scenario.parse_scenario("schema: 1\n")
    assert scn.accumulator.rated_pressure == 16e6
    assert scn.accumulator.precharge_pressure == 9.6e6
    assert scn.membrane.area_per_module == 7.4
    assert scn.pump.hp_efficiency == 0.85
    assert scn.main_control.kp == 1e-5
    assert scn.kidney_control.kp == -6.67e-14
    assert scn.econ.fixed_charge_rate == 0.108
    assert scn.dt == 5e-3


def test_roundtrip_identity():
    for name in ("humboldt_winter", "physics_demo"):
        scn = scenario.bundled_scenario(name)
        again = scenario.parse_scenario(scenario.dumps_scenario(scn))
        assert again == scn
        # serialize -> parse -> serialize is stable too
        assert scenario.dumps_scenario(again) == scenario.dumps_scenario(scn)


def test_unknown_key_rejected_with_line():
    text = "schema: 1\nsea:\n  significant_height: 2.0\n  wavyness: 3\n"
    with pytest.raises(ScenarioError, match=r"sea\.wavyness.*line 4"):
        scenario.parse_scenario(text)


def test_unknown_top_level_key_rejected():
    with pytest.raises(ScenarioError, match="mystery"):
        scenario.parse_scenario("schema: 1\nmystery: true\n")


def test_missing_schema_tag_rejected():
    with pytest.raises(ScenarioError, match="schema"):
        scenario.parse_scenario("name: x\n")
    with pytest.raises(ScenarioError, match="schema"):
        scenario.parse_scenario("schema: 99\n")


def test_wrong_type_rejected():
    with pytest.raises(ScenarioError, match="significant_height"):
        scenario.parse_scenario("schema: 1\nsea:\n  significant_height: tall\n")


def test_duplicate_key_rejected():
    with pytest.raises(ScenarioError, match="duplicate"):
        scenario.parse_scenario("schema: 1\nname: a\nname: b\n")


def test_invalid_physical_value_reported():
    with pytest.raises(ScenarioError, match="positive"):
        scenario.parse_scenario(
            "schema: 1\nsea:\n  significant_height: -3.0\n")


def test_sea_state_table_loads():
    specs = scenario.load_sea_state_specs("site_seastates")
    assert len(specs) == 5
    names = [s.name for s in specs]
    assert "humboldt_winter" in names and "guana_summer" in names
    hum = next(s for s in specs if s.name == "humboldt_winter")
    assert hum.mean_flow == 0.022 and hum.modules == 450


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_run_writes_artifacts(tmp_path):
    rc = cli.main(["run", "humboldt_winter", "--out", str(tmp_path),
                   "--duration", "150"])
    assert rc == cli.EXIT_OK
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert set(summary) >= {"sec", "sec_with_gen", "eta_ii", "permeate_per_day",
                            "lcow", "cycles_completed", "feasibility_flags",
                            "energy_audit_residual", "scenario_hash"}
    header = (tmp_path / "timeseries.csv").read_text().splitlines()[0]
    assert header == ",".join(engine.TIMESERIES_COLUMNS)


def test_cli_outputs_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["run", "kos_winter", "--out", str(a), "--duration", "150"]) == 0
    assert cli.main(["run", "kos_winter", "--out", str(b), "--duration", "150"]) == 0
    assert (a / "summary.json").read_bytes() == (b / "summary.json").read_bytes()
    assert (a / "timeseries.csv").read_bytes() == (b / "timeseries.csv").read_bytes()


def test_cli_seed_flag_scope(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    cli.main(["run", "humboldt_winter", "--out", str(a), "--duration", "150"])
    cli.main(["run", "humboldt_winter", "--out", str(b), "--duration", "150",
              "--seed", "7"])
    sa = json.loads((a / "summary.json").read_text())
    sb = json.loads((b / "summary.json").read_text())
    assert sa["scenario_hash"] != sb["scenario_hash"]


def test_cli_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("schema: 1\nsea:\n  nonsense_key: 1\n")
    assert cli.main(["run", str(bad), "--out", str(tmp_path)]) == cli.EXIT_PARSE


def test_cli_infeasible_exit_code(tmp_path):
    scn = scenario.bundled_scenario("humboldt_winter")
    starved = replace(scn, source=replace(scn.source, mean_flow=0.004),
                      duration=250.0, warmup=60.0)
    path = tmp_path / "starved.yaml"
    scenario.save_scenario(starved, path)
    assert cli.main(["run", str(path), "--out", str(tmp_path)]) == cli.EXIT_INFEASIBLE


def test_cli_overload_exit_code(tmp_path):
    scn = scenario.bundled_scenario("humboldt_winter")
    pinched = replace(
        scn,
        main_fcd=replace(scn.main_fcd, initial_area=2e-6,
                         area_bounds=(1e-7, 5e-3)),
        main_control=replace(scn.main_control, kp=0.0, kd=0.0),
        duration=120.0, warmup=60.0,
    )
    path = tmp_path / "pinched.yaml"
    scenario.save_scenario(pinched, path)
    assert cli.main(["run", str(path), "--out", str(tmp_path)]) == cli.EXIT_OVERLOAD


def test_cli_sweep_writes_results(tmp_path):
    rc = cli.main(["sweep", "humboldt_winter", "--modules", "440:450:10",
                   "--fcd", "both", "--duration", "120", "--out", str(tmp_path)])
    assert rc == cli.EXIT_OK
    lines = (tmp_path / "results.csv").read_text().splitlines()
    assert len(lines) == 1 + 4  # header + 2 module counts x 2 modes


def test_cli_bad_module_range(tmp_path):
    rc = cli.main(["sweep", "humboldt_winter", "--modules", "oops",
                   "--out", str(tmp_path)])
    assert rc == cli.EXIT_PARSE


def test_cli_entrypoint_runs():
    proc = subprocess.run([sys.executable, "-m", "wavebro.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "run" in proc.stdout and "sweep" in proc.stdout


# ---------------------------------------------------------------------------
# Built-in validation suite
# ---------------------------------------------------------------------------

def test_validation_suite_passes():
    lines = []
    assert validate.run_all(printer=lines.append)
    assert all(line.startswith("[PASS]") for line in lines)
    assert len(lines) == len(validate.CHECK_REGISTRY)


def test_validation_detects_wrong_gas_exponent():
    # an isothermal bottle stores more liquid at the rated pressure
    ok, detail = validate.check_accumulator_rated_volume(polytropic_exponent=1.0)
    assert not ok


def test_validation_detects_flipped_gain():
    ok, _ = validate.check_controller_settling(main_kp=-1e-5, main_kd=-100e-5)
    assert not ok


def test_validation_detects_weak_osmotic_correction():
    ok, _ = validate.check_least_work_anchor(osmotic_coeff=0.5)
    assert not ok
