"""Scenario-file ingestion and serialization.

Scenario files are YAML with a fixed, versioned schema mirroring the
Scenario dataclass. Unknown keys are rejected (with the offending line),
every key has a documented default, and parse -> serialize -> parse is the
identity. A small library of site scenarios ships with the package.
"""

from __future__ import annotations

import importlib.resources
import math
from pathlib import Path

import yaml

from . import bro, energy, engine, flap, hydraulics, waves
from .errors import ScenarioError

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Line-tracking YAML loading
# ---------------------------------------------------------------------------

class _TrackedDict(dict):
    """Mapping that remembers the source line of each key."""

    def __init__(self):
        super().__init__()
        self.key_lines: dict[str, int] = {}


class _LineLoader(yaml.SafeLoader):
    pass


def _construct_tracked_mapping(loader, node):
    mapping = _TrackedDict()
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=True)
        value = loader.construct_object(value_node, deep=True)
        if key in mapping:
            raise ScenarioError(
                f"duplicate key {key!r} at line {key_node.start_mark.line + 1}"
            )
        mapping[key] = value
        mapping.key_lines[key] = key_node.start_mark.line + 1
    return mapping


_LineLoader.add_constructor(
    yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_tracked_mapping
)


def _load_yaml(text: str):
    try:
        return yaml.load(text, Loader=_LineLoader)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"invalid YAML: {exc}") from exc


# ---------------------------------------------------------------------------
# Schema: section -> key -> expected type(s)
# ---------------------------------------------------------------------------

_FLOAT = (int, float)
_OPT_FLOAT = (int, float, type(None))

SCHEMA: dict[str, dict | type | tuple] = {
    "schema": int,
    "name": str,
    "sea": {
        "significant_height": _FLOAT,
        "peak_period": _FLOAT,
        "kind": str,
        "spectrum_family": str,
        "gamma": _FLOAT,
        "n_components": int,
        "freq_band": (list, type(None)),
        "rng_seed": int,
    },
    "wec": {
        "mode": str,  # "calibrated" | "physics"
        "mean_flow": _FLOAT,
        "line_pressure": _FLOAT,
        "modulation_depth": _FLOAT,
        "mass": _FLOAT,
        "height": _FLOAT,
        "width": _FLOAT,
        "thickness": _FLOAT,
        "pitch_inertia": _FLOAT,
        "added_inertia": _FLOAT,
        "radiation_damping": _FLOAT,
        "hydrostatic_stiffness": _FLOAT,
        "excitation_gain": _FLOAT,
        "max_pitch": _FLOAT,  # rad
    },
    "slider_crank": {
        "crank_len": _FLOAT,
        "rod_len": _FLOAT,
        "offset": _FLOAT,
        "piston_area": _FLOAT,
    },
    "accumulator": {
        "total_gas_volume": _FLOAT,
        "precharge_pressure": _FLOAT,
        "rated_pressure": _FLOAT,
        "polytropic_exponent": _FLOAT,
    },
    "shaft": {
        "displacement": _FLOAT,
        "turbine_efficiency": _FLOAT,
        "rotational_inertia": _FLOAT,
        "initial_speed": _FLOAT,
    },
    "main_fcd": {
        "flow_coeff": _FLOAT,
        "area_min": _FLOAT,
        "area_max": _FLOAT,
        "initial_area": _OPT_FLOAT,
    },
    "kidney_fcd": {
        "flow_coeff": _FLOAT,
        "area_min": _FLOAT,
        "area_max": _FLOAT,
        "initial_area": _OPT_FLOAT,
    },
    "control": {
        "period": _FLOAT,
        "main": {
            "kp": _FLOAT,
            "kd": _FLOAT,
            "setpoint": _FLOAT,
            "derivative_filter_tc": _OPT_FLOAT,
        },
        "kidney": {
            "kp": _FLOAT,
            "kd": _FLOAT,
            "setpoint": _FLOAT,
            "derivative_filter_tc": _OPT_FLOAT,
        },
    },
    "membrane": {
        "permeability": _FLOAT,
        "area_per_module": _FLOAT,
        "module_length": _FLOAT,
        "spacer_thickness": _FLOAT,
        "modules_series": int,
        "modules_parallel": int,
        "osmotic_coeff": _FLOAT,
        "vant_hoff": _FLOAT,
        "molar_mass": _FLOAT,
        "gas_constant": _FLOAT,
        "temperature": _FLOAT,
        "diffusivity": _FLOAT,
        "kinematic_viscosity": _FLOAT,
        "density": _FLOAT,
        "sherwood_a": _FLOAT,
        "sherwood_b": _FLOAT,
        "sherwood_c": _FLOAT,
        "friction_k": _FLOAT,
        "friction_n": _FLOAT,
    },
    "pump": {
        "displacement": _FLOAT,
        "hp_efficiency": _FLOAT,
        "circ_efficiency": _FLOAT,
        "recovery_per_pass": _FLOAT,
        "total_recovery": _FLOAT,
        "tank_volume": _FLOAT,
        "feed_salinity": _FLOAT,
    },
    "econ": {
        "wec_capex": _FLOAT,
        "bro_capex_per_100m3day": _FLOAT,
        "wec_opex": _FLOAT,
        "fixed_charge_rate": _FLOAT,
        "capacity_factor": _FLOAT,
        "opex_items": list,
    },
    "sim": {
        "dt": _FLOAT,
        "duration": _FLOAT,
        "warmup": _FLOAT,
        "control_period": _FLOAT,
        "fcd_mode": str,
        "eta_gen": _FLOAT,
        "main_flow_fraction": _FLOAT,
    },
}


def _reject_unknown(data: dict, schema: dict, path: str) -> None:
    lines = getattr(data, "key_lines", {})
    for key, value in data.items():
        where = f" at line {lines[key]}" if key in lines else ""
        full = f"{path}.{key}" if path else key
        if key not in schema:
            raise ScenarioError(f"unknown key '{full}'{where}")
        expected = schema[key]
        if isinstance(expected, dict):
            if not isinstance(value, dict):
                raise ScenarioError(f"key '{full}'{where} must be a mapping")
            _reject_unknown(value, expected, full)
        else:
            types = expected if isinstance(expected, tuple) else (expected,)
            if isinstance(value, bool) and bool not in types:
                raise ScenarioError(f"key '{full}'{where} has wrong type bool")
            if not isinstance(value, types):
                raise ScenarioError(
                    f"key '{full}'{where} has wrong type "
                    f"{type(value).__name__}"
                )


def _fnum(section: dict, key: str, default: float | None) -> float | None:
    value = section.get(key, default)
    return None if value is None else float(value)


# ---------------------------------------------------------------------------
# dict -> Scenario
# ---------------------------------------------------------------------------

def scenario_from_dict(data: dict, source: str = "<dict>") -> engine.Scenario:
    if not isinstance(data, dict):
        raise ScenarioError(f"{source}: top level must be a mapping")
    _reject_unknown(data, SCHEMA, "")
    version = data.get("schema")
    if version is None:
        raise ScenarioError(f"{source}: missing required 'schema' version tag")
    if version != SCHEMA_VERSION:
        raise ScenarioError(
            f"{source}: unsupported schema version {version} "
            f"(expected {SCHEMA_VERSION})"
        )

    d = engine.Scenario()  # carries every default

    sea_d = data.get("sea", {})
    freq_band = sea_d.get("freq_band")
    if freq_band is not None:
        if len(freq_band) != 2:
            raise ScenarioError(f"{source}: sea.freq_band must have 2 entries")
        freq_band = (float(freq_band[0]), float(freq_band[1]))
    try:
        sea = waves.SeaState(
            significant_height=_fnum(sea_d, "significant_height",
                                     d.sea.significant_height),
            peak_period=_fnum(sea_d, "peak_period", d.sea.peak_period),
            kind=sea_d.get("kind", d.sea.kind),
            spectrum_family=sea_d.get("spectrum_family", d.sea.spectrum_family),
            gamma=_fnum(sea_d, "gamma", d.sea.gamma),
            n_components=sea_d.get("n_components", d.sea.n_components),
            freq_band=freq_band,
            rng_seed=sea_d.get("rng_seed", d.sea.rng_seed),
        )

        wec_d = data.get("wec", {})
        mode = wec_d.get("mode", "calibrated")
        if mode not in ("calibrated", "physics"):
            raise ScenarioError(f"{source}: wec.mode must be calibrated|physics")
        if mode == "calibrated":
            source_cfg = engine.CalibratedSource(
                mean_flow=_fnum(wec_d, "mean_flow", 0.022),
                line_pressure=_fnum(wec_d, "line_pressure", 16.0e6),
                modulation_depth=_fnum(wec_d, "modulation_depth", 0.9),
            )
        else:
            source_cfg = None
        wec_cfg = flap.WecConfig(
            mass=_fnum(wec_d, "mass", d.wec.mass),
            height=_fnum(wec_d, "height", d.wec.height),
            width=_fnum(wec_d, "width", d.wec.width),
            thickness=_fnum(wec_d, "thickness", d.wec.thickness),
            pitch_inertia=_fnum(wec_d, "pitch_inertia", d.wec.pitch_inertia),
            added_inertia=_fnum(wec_d, "added_inertia", d.wec.added_inertia),
            radiation_damping=_fnum(wec_d, "radiation_damping",
                                    d.wec.radiation_damping),
            hydrostatic_stiffness=_fnum(wec_d, "hydrostatic_stiffness",
                                        d.wec.hydrostatic_stiffness),
            excitation_gain=_fnum(wec_d, "excitation_gain",
                                  d.wec.excitation_gain),
            max_pitch=_fnum(wec_d, "max_pitch", d.wec.max_pitch),
        )

        crank_d = data.get("slider_crank", {})
        crank = hydraulics.SliderCrank(
            crank_len=_fnum(crank_d, "crank_len", d.crank.crank_len),
            rod_len=_fnum(crank_d, "rod_len", d.crank.rod_len),
            offset=_fnum(crank_d, "offset", d.crank.offset),
            piston_area=_fnum(crank_d, "piston_area", d.crank.piston_area),
        )

        acc_d = data.get("accumulator", {})
        acc = hydraulics.Accumulator(
            total_gas_volume=_fnum(acc_d, "total_gas_volume",
                                   d.accumulator.total_gas_volume),
            precharge_pressure=_fnum(acc_d, "precharge_pressure",
                                     d.accumulator.precharge_pressure),
            rated_pressure=_fnum(acc_d, "rated_pressure",
                                 d.accumulator.rated_pressure),
            polytropic_exponent=_fnum(acc_d, "polytropic_exponent",
                                      d.accumulator.polytropic_exponent),
        )

        shaft_d = data.get("shaft", {})
        shaft = hydraulics.ShaftAssembly(
            displacement=_fnum(shaft_d, "displacement", d.shaft.displacement),
            turbine_efficiency=_fnum(shaft_d, "turbine_efficiency",
                                     d.shaft.turbine_efficiency),
            rotational_inertia=_fnum(shaft_d, "rotational_inertia",
                                     d.shaft.rotational_inertia),
            speed=_fnum(shaft_d, "initial_speed", d.shaft.speed),
        )

        def fcd_spec(section_name: str, default: engine.FcdSpec) -> engine.FcdSpec:
            sec = data.get(section_name, {})
            return engine.FcdSpec(
                flow_coeff=_fnum(sec, "flow_coeff", default.flow_coeff),
                area_bounds=(
                    _fnum(sec, "area_min", default.area_bounds[0]),
                    _fnum(sec, "area_max", default.area_bounds[1]),
                ),
                initial_area=_fnum(sec, "initial_area", default.initial_area),
            )

        main_fcd = fcd_spec("main_fcd", d.main_fcd)
        kidney_fcd = fcd_spec("kidney_fcd", d.kidney_fcd)

        ctrl_d = data.get("control", {})

        def gains(section: dict, default: engine.PdGains) -> engine.PdGains:
            return engine.PdGains(
                kp=_fnum(section, "kp", default.kp),
                kd=_fnum(section, "kd", default.kd),
                setpoint=_fnum(section, "setpoint", default.setpoint),
                derivative_filter_tc=_fnum(section, "derivative_filter_tc",
                                           default.derivative_filter_tc),
            )

        main_ctrl = gains(ctrl_d.get("main", {}), d.main_control)
        kid_ctrl = gains(ctrl_d.get("kidney", {}), d.kidney_control)

        mem_d = data.get("membrane", {})
        membrane = bro.MembraneConfig(
            permeability=_fnum(mem_d, "permeability", d.membrane.permeability),
            area_per_module=_fnum(mem_d, "area_per_module",
                                  d.membrane.area_per_module),
            module_length=_fnum(mem_d, "module_length", d.membrane.module_length),
            spacer_thickness=_fnum(mem_d, "spacer_thickness",
                                   d.membrane.spacer_thickness),
            modules_series=mem_d.get("modules_series", d.membrane.modules_series),
            modules_parallel=mem_d.get("modules_parallel",
                                       d.membrane.modules_parallel),
            osmotic_coeff=_fnum(mem_d, "osmotic_coeff", d.membrane.osmotic_coeff),
            vant_hoff=_fnum(mem_d, "vant_hoff", d.membrane.vant_hoff),
            molar_mass=_fnum(mem_d, "molar_mass", d.membrane.molar_mass),
            gas_constant=_fnum(mem_d, "gas_constant", d.membrane.gas_constant),
            temperature=_fnum(mem_d, "temperature", d.membrane.temperature),
            diffusivity=_fnum(mem_d, "diffusivity", d.membrane.diffusivity),
            kinematic_viscosity=_fnum(mem_d, "kinematic_viscosity",
                                      d.membrane.kinematic_viscosity),
            density=_fnum(mem_d, "density", d.membrane.density),
            sherwood_coeffs=(
                _fnum(mem_d, "sherwood_a", d.membrane.sherwood_coeffs[0]),
                _fnum(mem_d, "sherwood_b", d.membrane.sherwood_coeffs[1]),
                _fnum(mem_d, "sherwood_c", d.membrane.sherwood_coeffs[2]),
            ),
            friction_coeffs=(
                _fnum(mem_d, "friction_k", d.membrane.friction_coeffs[0]),
                _fnum(mem_d, "friction_n", d.membrane.friction_coeffs[1]),
            ),
        )

        pump_d = data.get("pump", {})
        pump = bro.BroPumpConfig(
            displacement=_fnum(pump_d, "displacement", d.pump.displacement),
            hp_efficiency=_fnum(pump_d, "hp_efficiency", d.pump.hp_efficiency),
            circ_efficiency=_fnum(pump_d, "circ_efficiency",
                                  d.pump.circ_efficiency),
            recovery_per_pass=_fnum(pump_d, "recovery_per_pass",
                                    d.pump.recovery_per_pass),
            total_recovery=_fnum(pump_d, "total_recovery", d.pump.total_recovery),
            tank_volume=_fnum(pump_d, "tank_volume", d.pump.tank_volume),
            feed_salinity=_fnum(pump_d, "feed_salinity", d.pump.feed_salinity),
        )

        econ_d = data.get("econ", {})
        items = econ_d.get("opex_items")
        if items is None:
            opex_items = energy.default_opex_items()
        else:
            opex_items = tuple(
                energy.OpexItem(name=item["name"], rule=item["rule"],
                                value=float(item["value"]))
                for item in items
            )
        econ = energy.EconConfig(
            wec_capex=_fnum(econ_d, "wec_capex", d.econ.wec_capex),
            bro_capex_per_100m3day=_fnum(econ_d, "bro_capex_per_100m3day",
                                         d.econ.bro_capex_per_100m3day),
            wec_opex=_fnum(econ_d, "wec_opex", d.econ.wec_opex),
            bro_opex_items=opex_items,
            fixed_charge_rate=_fnum(econ_d, "fixed_charge_rate",
                                    d.econ.fixed_charge_rate),
            capacity_factor=_fnum(econ_d, "capacity_factor",
                                  d.econ.capacity_factor),
        )

        sim_d = data.get("sim", {})
        return engine.Scenario(
            name=data.get("name", "scenario"),
            sea=sea,
            source=source_cfg,
            wec=wec_cfg,
            crank=crank,
            accumulator=acc,
            shaft=shaft,
            main_fcd=main_fcd,
            kidney_fcd=kidney_fcd,
            main_control=main_ctrl,
            kidney_control=kid_ctrl,
            membrane=membrane,
            pump=pump,
            econ=econ,
            dt=_fnum(sim_d, "dt", d.dt),
            duration=_fnum(sim_d, "duration", d.duration),
            warmup=_fnum(sim_d, "warmup", d.warmup),
            control_period=_fnum(sim_d, "control_period", d.control_period),
            fcd_mode=sim_d.get("fcd_mode", d.fcd_mode),
            eta_gen=_fnum(sim_d, "eta_gen", d.eta_gen),
            main_flow_fraction=_fnum(sim_d, "main_flow_fraction",
                                     d.main_flow_fraction),
        )
    except ScenarioError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise ScenarioError(f"{source}: {exc}") from exc


def parse_scenario(text: str, source: str = "<string>") -> engine.Scenario:
    return scenario_from_dict(_load_yaml(text), source)


def load_scenario(path) -> engine.Scenario:
    path = Path(path)
    if not path.exists():
        raise ScenarioError(f"scenario file not found: {path}")
    return parse_scenario(path.read_text(), str(path))


# ---------------------------------------------------------------------------
# Scenario -> dict / YAML
# ---------------------------------------------------------------------------

def scenario_to_dict(scn: engine.Scenario) -> dict:
    wec: dict = {"mode": scn.mode}
    if scn.source is not None:
        wec.update(
            mean_flow=scn.source.mean_flow,
            line_pressure=scn.source.line_pressure,
            modulation_depth=scn.source.modulation_depth,
        )
    wec.update(
        mass=scn.wec.mass, height=scn.wec.height, width=scn.wec.width,
        thickness=scn.wec.thickness, pitch_inertia=scn.wec.pitch_inertia,
        added_inertia=scn.wec.added_inertia,
        radiation_damping=scn.wec.radiation_damping,
        hydrostatic_stiffness=scn.wec.hydrostatic_stiffness,
        excitation_gain=scn.wec.excitation_gain, max_pitch=scn.wec.max_pitch,
    )
    return {
        "schema": SCHEMA_VERSION,
        "name": scn.name,
        "sea": {
            "significant_height": scn.sea.significant_height,
            "peak_period": scn.sea.peak_period,
            "kind": scn.sea.kind,
            "spectrum_family": scn.sea.spectrum_family,
            "gamma": scn.sea.gamma,
            "n_components": scn.sea.n_components,
            "freq_band": (list(scn.sea.freq_band)
                          if scn.sea.freq_band is not None else None),
            "rng_seed": scn.sea.rng_seed,
        },
        "wec": wec,
        "slider_crank": {
            "crank_len": scn.crank.crank_len,
            "rod_len": scn.crank.rod_len,
            "offset": scn.crank.offset,
            "piston_area": scn.crank.piston_area,
        },
        "accumulator": {
            "total_gas_volume": scn.accumulator.total_gas_volume,
            "precharge_pressure": scn.accumulator.precharge_pressure,
            "rated_pressure": scn.accumulator.rated_pressure,
            "polytropic_exponent": scn.accumulator.polytropic_exponent,
        },
        "shaft": {
            "displacement": scn.shaft.displacement,
            "turbine_efficiency": scn.shaft.turbine_efficiency,
            "rotational_inertia": scn.shaft.rotational_inertia,
            "initial_speed": scn.shaft.speed,
        },
        "main_fcd": {
            "flow_coeff": scn.main_fcd.flow_coeff,
            "area_min": scn.main_fcd.area_bounds[0],
            "area_max": scn.main_fcd.area_bounds[1],
            "initial_area": scn.main_fcd.initial_area,
        },
        "kidney_fcd": {
            "flow_coeff": scn.kidney_fcd.flow_coeff,
            "area_min": scn.kidney_fcd.area_bounds[0],
            "area_max": scn.kidney_fcd.area_bounds[1],
            "initial_area": scn.kidney_fcd.initial_area,
        },
        "control": {
            "main": {
                "kp": scn.main_control.kp,
                "kd": scn.main_control.kd,
                "setpoint": scn.main_control.setpoint,
                "derivative_filter_tc": scn.main_control.derivative_filter_tc,
            },
            "kidney": {
                "kp": scn.kidney_control.kp,
                "kd": scn.kidney_control.kd,
                "setpoint": scn.kidney_control.setpoint,
                "derivative_filter_tc": scn.kidney_control.derivative_filter_tc,
            },
        },
        "membrane": {
            "permeability": scn.membrane.permeability,
            "area_per_module": scn.membrane.area_per_module,
            "module_length": scn.membrane.module_length,
            "spacer_thickness": scn.membrane.spacer_thickness,
            "modules_series": scn.membrane.modules_series,
            "modules_parallel": scn.membrane.modules_parallel,
            "osmotic_coeff": scn.membrane.osmotic_coeff,
            "vant_hoff": scn.membrane.vant_hoff,
            "molar_mass": scn.membrane.molar_mass,
            "gas_constant": scn.membrane.gas_constant,
            "temperature": scn.membrane.temperature,
            "diffusivity": scn.membrane.diffusivity,
            "kinematic_viscosity": scn.membrane.kinematic_viscosity,
            "density": scn.membrane.density,
            "sherwood_a": scn.membrane.sherwood_coeffs[0],
            "sherwood_b": scn.membrane.sherwood_coeffs[1],
            "sherwood_c": scn.membrane.sherwood_coeffs[2],
            "friction_k": scn.membrane.friction_coeffs[0],
            "friction_n": scn.membrane.friction_coeffs[1],
        },
        "pump": {
            "displacement": scn.pump.displacement,
            "hp_efficiency": scn.pump.hp_efficiency,
            "circ_efficiency": scn.pump.circ_efficiency,
            "recovery_per_pass": scn.pump.recovery_per_pass,
            "total_recovery": scn.pump.total_recovery,
            "tank_volume": scn.pump.tank_volume,
            "feed_salinity": scn.pump.feed_salinity,
        },
        "econ": {
            "wec_capex": scn.econ.wec_capex,
            "bro_capex_per_100m3day": scn.econ.bro_capex_per_100m3day,
            "wec_opex": scn.econ.wec_opex,
            "fixed_charge_rate": scn.econ.fixed_charge_rate,
            "capacity_factor": scn.econ.capacity_factor,
            "opex_items": [
                {"name": it.name, "rule": it.rule, "value": it.value}
                for it in scn.econ.bro_opex_items
            ],
        },
        "sim": {
            "dt": scn.dt,
            "duration": scn.duration,
            "warmup": scn.warmup,
            "control_period": scn.control_period,
            "fcd_mode": scn.fcd_mode,
            "eta_gen": scn.eta_gen,
            "main_flow_fraction": scn.main_flow_fraction,
        },
    }


def dumps_scenario(scn: engine.Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(scn), sort_keys=False)


def save_scenario(scn: engine.Scenario, path) -> None:
    Path(path).write_text(dumps_scenario(scn))


# ---------------------------------------------------------------------------
# Bundled library
# ---------------------------------------------------------------------------

def _bundle_root():
    return importlib.resources.files("wavebro") / "scenarios"


def list_bundled() -> list[str]:
    return sorted(p.name.removesuffix(".yaml")
                  for p in _bundle_root().iterdir() if p.name.endswith(".yaml"))


def bundled_scenario(name: str) -> engine.Scenario:
    res = _bundle_root() / f"{name}.yaml"
    try:
        text = res.read_text()
    except FileNotFoundError:
        raise ScenarioError(
            f"no bundled scenario {name!r}; available: {list_bundled()}"
        ) from None
    return parse_scenario(text, f"bundled:{name}")


def load_sea_state_specs(path_or_name) -> list[engine.SeaStateSpec]:
    """Read a sea-state table (file path or bundled name) for sweeps."""
    path = Path(str(path_or_name))
    if path.exists():
        text = path.read_text()
        source = str(path)
    else:
        res = _bundle_root() / f"{path_or_name}.yaml"
        try:
            text = res.read_text()
        except FileNotFoundError:
            raise ScenarioError(
                f"sea-state table not found: {path_or_name}"
            ) from None
        source = f"bundled:{path_or_name}"
    data = _load_yaml(text)
    if not isinstance(data, dict) or "sea_states" not in data:
        raise ScenarioError(f"{source}: expected a 'sea_states' list")
    specs = []
    for entry in data["sea_states"]:
        try:
            specs.append(engine.SeaStateSpec(
                name=entry["name"],
                hs=float(entry["hs"]),
                tp=float(entry["tp"]),
                kind=entry.get("kind", "irregular"),
                mean_flow=float(entry["mean_flow"]),
                modules=int(entry["modules"]),
                main_displacement=float(entry["main_displacement"]),
                pump_displacement=float(entry["pump_displacement"]),
                tank_volume=float(entry["tank_volume"]),
            ))
        except (KeyError, ValueError, TypeError) as exc:
            raise ScenarioError(f"{source}: bad sea-state entry: {exc}") from exc
    if not specs:
        raise ScenarioError(f"{source}: empty sea-state table")
    return specs
