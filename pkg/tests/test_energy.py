import math

import numpy as np
import pytest

from wavebro import energy
from wavebro.errors import UndefinedMetricError


# ---------------------------------------------------------------------------
# SEC
# ---------------------------------------------------------------------------

def test_sec_zero_power():
    ledger = energy.EnergyLedger(avg_q_permeate=0.01)
    assert energy.sec(ledger) == 0.0


def test_sec_reference_value():
    ledger = energy.EnergyLedger(avg_p_wec=350e3, avg_p_cp=40e3,
                                 avg_q_permeate=0.02775)
    exact = (350e3 + 40e3) / 0.02775 / 3.6e6
    assert energy.sec(ledger) == pytest.approx(exact, rel=1e-12)
    assert energy.sec(ledger) == pytest.approx(3.90, rel=2e-3)


def test_sec_zero_permeate_rejected():
    with pytest.raises(UndefinedMetricError):
        energy.sec(energy.EnergyLedger())


def test_sec_with_recovery_limits():
    ledger = energy.EnergyLedger(avg_p_wec=350e3, avg_p_cp=40e3,
                                 avg_p_kidney=60e3, avg_p_main_fcd=30e3,
                                 avg_q_permeate=0.02775)
    # eta -> 0+ approaches the plain SEC
    assert energy.sec_with_recovery(ledger, 1e-9) == pytest.approx(
        energy.sec(ledger), rel=1e-6)
    # full recovery removes exactly the valve losses
    full = energy.sec_with_recovery(ledger, 1.0)
    expected = (350e3 + 40e3 - 90e3) / 0.02775 / 3.6e6
    assert full == pytest.approx(expected, rel=1e-12)


def test_recovery_never_increases_sec():
    ledger = energy.EnergyLedger(avg_p_wec=300e3, avg_p_cp=10e3,
                                 avg_p_kidney=50e3, avg_p_main_fcd=20e3,
                                 avg_q_permeate=0.02)
    base = energy.sec(ledger)
    for eta in np.linspace(0.05, 1.0, 12):
        assert energy.sec_with_recovery(ledger, eta) <= base


def test_sec_with_recovery_validates_eta():
    ledger = energy.EnergyLedger(avg_q_permeate=0.01)
    with pytest.raises(ValueError):
        energy.sec_with_recovery(ledger, 0.0)
    with pytest.raises(ValueError):
        energy.sec_with_recovery(ledger, 1.5)


# ---------------------------------------------------------------------------
# Least work / second-law efficiency
# ---------------------------------------------------------------------------

def _least_work_oracle(salinity, r, temperature, phi=0.93):
    """Independent mixing-Gibbs evaluation on a mole-fraction basis."""
    if salinity == 0.0:
        return 0.0
    m_w = 0.0180153
    m_s = 0.05855

    def g_over_rt(salt_kg, water_kg):
        n_s = salt_kg / m_s
        n_i = 2.0 * n_s
        n_w = water_kg / m_w
        x_w = n_w / (n_w + n_i)
        x_i = n_s / (n_w + n_i)
        return n_w * math.log(x_w) + n_i * math.log(x_i)

    s = salinity / 1000.0
    delta = g_over_rt(s, (1.0 - r) - s) - g_over_rt(s, 1.0 - s)
    return phi * 8.314 * temperature * delta / r / 1000.0  # kJ/kg permeate


def test_least_work_zero_salinity():
    assert energy.least_work(0.0, 0.5, 295.0) == 0.0


def test_least_work_matches_oracle():
    for salinity, r, t in [(35.0, 0.5, 294.75), (35.0, 0.45, 294.75),
                           (70.0, 0.3, 300.0), (10.0, 0.7, 290.0)]:
        assert energy.least_work(salinity, r, t) == pytest.approx(
            _least_work_oracle(salinity, r, t), rel=1e-9)


def test_least_work_seawater_anchor():
    # 35 g/kg, 50% recovery near 295 K: minimum SEC within 8% of 1.09 kWh/m^3
    w = energy.least_work(35.0, 0.5, 294.75)
    assert energy.sec_least(w) == pytest.approx(1.09, rel=0.08)


def test_least_work_monotone_in_recovery():
    rs = np.linspace(0.1, 0.9, 17)
    ws = [energy.least_work(35.0, r, 295.0) for r in rs]
    oracle = [_least_work_oracle(35.0, r, 295.0) for r in rs]
    assert all(b > a for a, b in zip(ws, ws[1:]))
    assert ws == pytest.approx(oracle, rel=1e-9)


def test_least_work_continuous_to_zero_salinity():
    w = [energy.least_work(s, 0.5, 295.0) for s in (1e-3, 1e-2, 0.1, 1.0)]
    assert all(b > a for a, b in zip(w, w[1:]))
    assert w[0] < 1e-3  # vanishes with the salinity


def test_least_work_validates_inputs():
    with pytest.raises(ValueError):
        energy.least_work(35.0, 0.0, 295.0)
    with pytest.raises(ValueError):
        energy.least_work(35.0, 1.0, 295.0)
    with pytest.raises(ValueError):
        energy.least_work(995.0, 0.5, 295.0)  # no water left in the brine


def test_sec_least_conversion():
    assert energy.sec_least(0.0) == 0.0
    assert energy.sec_least(3.924, 1000.0) == pytest.approx(1.09, rel=1e-3)
    # linear in both arguments
    assert energy.sec_least(7.848, 1000.0) == pytest.approx(2.18, rel=1e-3)
    assert energy.sec_least(3.924, 500.0) == pytest.approx(0.545, rel=1e-3)


def test_second_law_efficiency_cases():
    assert energy.second_law_efficiency(1.09, 1.09) == pytest.approx(1.0)
    assert energy.second_law_efficiency(1.106, 2.4) == pytest.approx(0.461, abs=5e-4)
    assert energy.second_law_efficiency(1.106, 2.8) == pytest.approx(0.395, abs=5e-4)
    with pytest.raises(ValueError):
        energy.second_law_efficiency(1.0, 0.0)


def test_second_law_efficiency_model_anchor():
    # the model's own least work at the plant temperature against the
    # headline operating SEC
    w = energy.least_work(35.0, 0.5, 300.0)
    eta = energy.second_law_efficiency(energy.sec_least(w), 2.4)
    assert eta == pytest.approx(0.461, abs=0.02)


# ---------------------------------------------------------------------------
# Economics
# ---------------------------------------------------------------------------

def test_awp_values():
    assert energy.annual_water_production(1.0, 1.0) == 365.0
    assert energy.annual_water_production(2400.0, 0.49) == pytest.approx(429_240.0)
    assert energy.annual_water_production(1700.0, 0.49) == pytest.approx(304_045.0)


def test_bro_capex_linear_scaling():
    cfg = energy.EconConfig()
    assert energy.bro_capex(cfg, 100.0) == pytest.approx(146_000.0)
    assert energy.bro_capex(cfg, 2400.0) == pytest.approx(3_504_000.0)
    assert energy.bro_capex(cfg, 0.0) == 0.0


def test_lcow_arithmetic():
    assert energy.lcow(1e6, 0.0, 1e5, 0.0) == 0.0
    got = energy.lcow(7.384e6, 2.29e5, 429_240.0, 0.108)
    assert got == pytest.approx(2.39, abs=5e-3)
    with pytest.raises(UndefinedMetricError):
        energy.lcow(1e6, 1e5, 0.0, 0.108)


def test_lcow_monotone_in_inputs():
    base = energy.lcow(7e6, 2e5, 4e5, 0.108)
    assert energy.lcow(8e6, 2e5, 4e5, 0.108) > base
    assert energy.lcow(7e6, 3e5, 4e5, 0.108) > base
    assert energy.lcow(7e6, 2e5, 5e5, 0.108) < base


def test_plant_lcow_decreases_with_capacity():
    cfg = energy.EconConfig()
    big = energy.plant_lcow(cfg, 2400.0)
    small = energy.plant_lcow(cfg, 1700.0)
    assert big < small


def test_opex_rules_apply():
    cfg = energy.EconConfig()
    total = energy.annual_opex(cfg, 2400.0)
    awp = energy.annual_water_production(2400.0, 0.49)
    per_m3 = 0.15 * awp  # spares + pre + post + membranes
    insurance = 0.005 * energy.bro_capex(cfg, 2400.0)
    assert total == pytest.approx(68_100.0 + per_m3 + insurance + 95_700.0, rel=1e-12)


def test_opex_item_validation():
    with pytest.raises(ValueError):
        energy.OpexItem("x", "per_kg", 1.0)
    with pytest.raises(ValueError):
        energy.OpexItem("x", "per_m3", -1.0)
