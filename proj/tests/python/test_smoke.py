from fractions import Fraction

import pytest

import kemeny_lab

OZ_EXACT = [
    ["1/2", "1/4", "1/4"],
    ["1/2", "0", "1/2"],
    ["1/4", "1/4", "1/2"],
]
OZ_FLOAT = [
    [0.5, 0.25, 0.25],
    [0.5, 0.0, 0.5],
    [0.25, 0.25, 0.5],
]


def test_schema_constant():
    assert kemeny_lab.SCHEMA == "kemeny-lab/1"


def test_exact_analysis_golden_values():
    doc = kemeny_lab.analyze_exact(OZ_EXACT)
    assert doc["schema"] == "kemeny-lab/1"
    assert doc["chain"]["mode"] == "exact"
    assert doc["stationary"]["pi"] == ["2/5", "1/5", "2/5"]
    assert doc["kemeny"]["k"] == "47/15"
    assert doc["kemeny"]["k_minus_one"] == "32/15"
    assert doc["basis"]["normalization_factor"] == "32/5"
    assert doc["basis"]["pullback_vector"] == ["1/16", "1/32", "1/16"]
    for residual in doc["diagnostics"].values():
        assert residual == "0"


def test_float_analysis_adds_spectral_route():
    doc = kemeny_lab.analyze_float(OZ_FLOAT)
    assert doc["chain"]["mode"] == "float"
    k = doc["kemeny"]
    assert k["k"] == pytest.approx(47 / 15, abs=1e-12)
    assert k["k_eigen"] == pytest.approx(47 / 15, abs=1e-7)
    assert k["route_max_discrepancy"] < 1e-7
    assert doc["diagnostics"]["stationarity_residual"] < 1e-14


def test_kemeny_constant_convenience():
    exact = kemeny_lab.kemeny_constant(OZ_EXACT)
    assert exact == Fraction(47, 15)
    floating = kemeny_lab.kemeny_constant(OZ_FLOAT)
    assert floating == pytest.approx(47 / 15, abs=1e-12)


def test_evolution_series():
    doc = kemeny_lab.evolve_exact(OZ_EXACT, steps=3)
    steps = doc["evolution"]["steps"]
    assert [s["k_pipeline"] for s in steps] == ["47/15", "47/15", "12287/4095"]
    assert [s["projector_gap"] for s in steps] == ["2/5", "1/10", "1/40"]
    assert all(s["invariance_residual"] == "0" for s in steps)
    assert doc["evolution"]["k_limit"] == "3"


def test_simulation_is_reproducible():
    first = kemeny_lab.simulate(OZ_FLOAT, trials=2000, seed=11)
    second = kemeny_lab.simulate(OZ_FLOAT, trials=2000, seed=11, threads=3)
    assert first["montecarlo"]["means"] == second["montecarlo"]["means"]
    assert first["montecarlo"]["max_abs_z"] < 5.0
    assert first["montecarlo"]["censored"] == [[0, 0, 0]] * 3


def test_validation_errors_surface():
    with pytest.raises(kemeny_lab.KemenyLabError):
        kemeny_lab.analyze_float([[0.5, 0.6], [0.5, 0.4]])
    with pytest.raises(kemeny_lab.KemenyLabError):
        kemeny_lab.analyze_exact([["1", "0"], ["0", "1"]])
    with pytest.raises(kemeny_lab.KemenyLabError):
        kemeny_lab.analyze_exact([["1/2", "1/3"], ["1/2", "1/2"]])
