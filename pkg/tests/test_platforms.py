import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ranshare.platforms import (
    CellConfig,
    DeploymentMix,
    PlatformSpec,
    baseband_capacity,
    dimension_for_throughput,
    efficiency_metrics,
    load_catalog,
    mixed_capacity,
    net_throughput,
)

# Published benchmark table: (platform, config) -> (B MHz, eta_C, eta_O), with
# the FlexRAN mixed eta_C asserted at its computed value (3480/6600), not the
# printed one.
TABLE_ROWS = {
    ("ARS-111GL", "micro"): (16000, 0.36, 13.33),
    ("ARS-111GL", "macro"): (9600, 0.21, 8.00),
    ("EGX74I", "micro"): (1440, 0.24, 4.80),
    ("EGX74I", "macro"): (9600, 1.60, 32.00),
    ("DL110", "micro"): (1440, 0.20, 4.80),
    ("DL110", "macro"): (9600, 1.33, 32.00),
    ("Aerial", "mixed"): (14400, 0.32, 12.00),
    ("FlexRAN", "mixed"): (3480, 0.53, 11.60),
}


def test_baseband_capacity_examples():
    assert baseband_capacity(CellConfig(4, 4, 40, 100)) == 16000
    assert baseband_capacity(CellConfig(16, 8, 6, 100)) == 9600
    assert baseband_capacity(CellConfig(1, 1, 1, 1)) == 1


@given(
    st.integers(1, 64), st.integers(1, 64), st.floats(0.5, 400),
)
def test_baseband_capacity_multiplicative(layers, cells, bw):
    base = baseband_capacity(CellConfig(layers, layers, cells, bw))
    assert baseband_capacity(CellConfig(2 * layers, layers, cells, bw)) == pytest.approx(2 * base)
    assert baseband_capacity(CellConfig(layers, layers, 2 * cells, bw)) == pytest.approx(2 * base)
    assert baseband_capacity(CellConfig(layers, layers, cells, 2 * bw)) == pytest.approx(2 * base)


def test_cell_config_validation():
    with pytest.raises(ValueError):
        CellConfig(0, 4, 40, 100)
    with pytest.raises(ValueError):
        CellConfig(4, 4, 0, 100)
    with pytest.raises(ValueError):
        CellConfig(4, 4, 40, 0)


def test_mixed_capacity_published_values(catalog):
    assert mixed_capacity(catalog.resolve("Aerial")) == 14400
    assert mixed_capacity(catalog.resolve("FlexRAN")) == 3480


@given(st.floats(1, 1e5), st.integers(0, 10), st.integers(0, 10))
def test_mixed_capacity_degenerate_and_bounded(b, macro_w, micro_w):
    if macro_w + micro_w < 1:
        macro_w = 1
    mix = DeploymentMix(macro_w, micro_w)

    class _P:
        b_macro = b
        b_micro = b

    assert mixed_capacity(_P, mix) == pytest.approx(b)

    class _Q:
        b_macro = b
        b_micro = 3 * b

    m = mixed_capacity(_Q, mix)
    assert b <= m <= 3 * b + 1e-9


def test_efficiency_metrics_examples():
    eta_c, eta_o = efficiency_metrics(16000, 45000, 1200)
    assert eta_c == pytest.approx(0.3556, abs=5e-5)
    assert eta_o == pytest.approx(13.33, abs=5e-3)
    assert efficiency_metrics(9600, 6000, 300) == (pytest.approx(1.60), pytest.approx(32.00))
    assert efficiency_metrics(0, 1000, 100) == (0, 0)


def test_efficiency_metrics_rejects_zero_denominators():
    with pytest.raises(ValueError):
        efficiency_metrics(1000, 0, 100)
    with pytest.raises(ValueError):
        efficiency_metrics(1000, 100, 0)


def test_net_throughput_examples():
    assert net_throughput(14400, 9, 0.20) == pytest.approx(103680)
    assert net_throughput(3480, 9, 0.20) == pytest.approx(25056)
    assert net_throughput(1234, 7, 0) == pytest.approx(1234 * 7)
    with pytest.raises(ValueError):
        net_throughput(1000, 9, 1.0)
    with pytest.raises(ValueError):
        net_throughput(1000, 9, 1.5)


def test_table_reproduction(catalog):
    rows = {(r["platform"], r["config"]): r for r in catalog.table_rows()}
    assert len(rows) == len(TABLE_ROWS)
    for key, (b, eta_c, eta_o) in TABLE_ROWS.items():
        r = rows[key]
        assert r["b_mhz"] == b, key
        assert round(r["eta_c_mhz_per_usd"], 2) == eta_c, key
        assert round(r["eta_o_mhz_per_w"], 2) == eta_o, key


def test_family_mean_cost_and_power(catalog):
    flexran = catalog.resolve("FlexRAN")
    assert flexran.cost_usd == pytest.approx(6600)
    assert flexran.power_w == pytest.approx(300)
    assert flexran.members == ("EGX74I", "DL110")


def test_resolve_unknown_name(catalog):
    with pytest.raises(KeyError):
        catalog.resolve("nonesuch")


def test_dimension_for_throughput_aerial_micro(catalog):
    plat = catalog.resolve("ARS-111GL")
    tco = dimension_for_throughput(plat, "micro", 10_000, 9, 0.2, 10, 0.2, 1.5)
    assert tco.server_count == 1
    assert tco.capex_usd == pytest.approx(45000)
    assert tco.opex_usd == pytest.approx(31536)
    assert tco.tco_usd == pytest.approx(76536)
    assert tco.per_gbps_usd == pytest.approx(7653.6)


def test_dimension_for_throughput_flexran_macro(catalog):
    plat = catalog.resolve("EGX74I")
    tco = dimension_for_throughput(plat, "macro", 10_000, 9, 0.2, 10, 0.2, 1.5)
    assert tco.server_count == 1
    assert tco.capex_usd == pytest.approx(6000)
    assert tco.opex_usd == pytest.approx(7884)
    assert tco.tco_usd == pytest.approx(13884)


def test_dimension_for_throughput_tiny_target(catalog):
    tco = dimension_for_throughput(catalog.resolve("Aerial"), "mixed", 0.001, 9, 0.2, 1, 0.2, 1.5)
    assert tco.server_count == 1


@given(st.floats(10, 1e6), st.floats(2e6, 4e6))
def test_dimension_monotone_in_target(catalog, target_a, target_b):
    plat = catalog.resolve("FlexRAN")
    lo, hi = sorted([target_a, target_b])
    a = dimension_for_throughput(plat, "mixed", lo, 9, 0.2, 10, 0.2, 1.5)
    b = dimension_for_throughput(plat, "mixed", hi, 9, 0.2, 10, 0.2, 1.5)
    assert a.server_count <= b.server_count
    assert a.tco_usd == pytest.approx(a.capex_usd + a.opex_usd)


def test_dimension_rejects_bad_inputs(catalog):
    plat = catalog.resolve("Aerial")
    with pytest.raises(ValueError):
        dimension_for_throughput(plat, "mixed", 0, 9, 0.2, 10, 0.2, 1.5)
    with pytest.raises(ValueError):
        dimension_for_throughput(plat, "mixed", 100, 9, 0.2, 0, 0.2, 1.5)
    with pytest.raises(ValueError):
        dimension_for_throughput(plat, "bogus", 100, 9, 0.2, 10, 0.2, 1.5)


def test_catalog_from_custom_file(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(
        """
        {"platforms": [{"name": "X1", "accelerator": "A", "l1_stack": "S",
          "cost_usd": 1000, "power_w": 100,
          "macro_config": {"dl_layers": 2, "ul_layers": 2, "num_cells": 3, "bandwidth_mhz": 50},
          "micro_config": {"dl_layers": 1, "ul_layers": 1, "num_cells": 6, "bandwidth_mhz": 20}}]}
        """
    )
    cat = load_catalog(path)
    assert cat.resolve("X1").b_macro == 300
    assert cat.resolve("S").b_micro == 120


def test_catalog_rejects_bad_records(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text('{"platforms": [{"name": "X1"}]}')
    with pytest.raises(ValueError, match="record 0"):
        load_catalog(path)


def test_platform_spec_validation():
    cfg = CellConfig(4, 4, 40, 100)
    with pytest.raises(ValueError):
        PlatformSpec("X", "A", "S", 0, 100, cfg, cfg)
    with pytest.raises(ValueError):
        PlatformSpec("X", "A", "S", 100, 0, cfg, cfg)
