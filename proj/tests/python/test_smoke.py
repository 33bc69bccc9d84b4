import math

import pytest

import iifslab as il


def test_make_system_and_metadata():
    cf = il.make_system("cf")
    assert cf.d == 2.0
    assert cf.name == "continued_fraction"
    assert cf.c1 <= cf.c2
    ld = il.make_system('{"kind": "linear_decay", "d": 2.5}')
    assert ld.d == 2.5
    with pytest.raises(ValueError):
        il.make_linear_decay(0.5)


def test_expand_golden_ratio():
    cf = il.make_system("cf")
    r = il.expand(cf, "0.6180339887498948482045868343656381177", 10, 256)
    assert r["digits"] == [1] * 10
    assert r["trusted_count"] == 10


def test_project_and_length_bounds():
    cf = il.make_system("cf")
    c = il.project(cf, [1, 1], 128)
    assert c["lo"] == pytest.approx(0.5, abs=1e-12)
    assert c["hi"] == pytest.approx(2.0 / 3.0, abs=1e-12)
    lo, hi = il.cylinder_length_bounds(cf, [1])
    assert lo <= 0.5 <= hi


def test_zeta_and_gibbs():
    assert il.zeta(2.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-12)
    assert il.gibbs_mass(2.0, [1]) == pytest.approx(1.0 / il.zeta(2.0), rel=1e-12)
    assert il.gibbs_mass_check(2.0, 3, 10**6) == pytest.approx(1.0, abs=1e-4)


def test_pressure_root_is_one():
    cf = il.make_system("cf")
    assert il.pressure_root(cf) == pytest.approx(1.0, abs=1e-6)


def test_exponents():
    digits = [n * n for n in range(1, 5001)]
    est = il.tau_from_rearrangement(digits)
    assert est["value"] == pytest.approx(0.5, abs=1e-3)
    value, boundary = il.tau_by_partial_sums(digits, 0.0, 2.0)
    assert value == pytest.approx(0.5, abs=0.05)
    assert not boundary
    assert il.is_monotone([1, 2, 2, 5])
    assert not il.is_monotone([3, 2])


def test_spectra():
    assert il.dim_tau1_level(3.0, 2.0) == 0.5
    assert il.dim_monotone_product_level(4.0, 2.0, 2.0) == 0.25
    assert il.dim_monotone_product_level(float("inf"), 2.0, 2.0) == 0.5
    assert il.count_monotone_words(2, 3) == "6"


def test_cantor_sampling_roundtrip():
    s = il.sample_cantor_point("power-alpha", alpha=2.0, n=2000, seed=5)
    assert len(s["digits"]) == 2000
    value, boundary = il.tau_by_partial_sums(s["digits"], 0.0, 4.0)
    assert value == pytest.approx(2.0, abs=0.25)
    v_at, min_tail = il.cantor_dimension_estimate("e0", n_max=10000, d=2.0)
    assert v_at == pytest.approx(0.5, abs=0.01)
    assert min_tail <= v_at


def test_perron_density():
    cf = il.make_system("cf")
    g = il.perron_iterate(cf, grid=256, iterations=20, cap=20000)
    assert not g["diverged"]
    assert g["g"][0] == pytest.approx(1.0 / math.log(2.0), abs=5e-3)


def test_covers():
    s = il.good_critical_exponent(2.0, 1.0, 2, 1e-9)
    assert il.zeta(2.0 * s) == pytest.approx(2.0, abs=1e-6)
    value, argmax = il.subdivision_dimension_bound(4.0, 2.0, 2.0, 1000)
    assert argmax == 999
    assert value == pytest.approx(0.25, abs=0.01)


def test_monte_carlo_determinism():
    cf = il.make_system("cf")
    a = il.birkhoff_geometric_mean(cf, 10, 50, seed=3, threads=1)
    b = il.birkhoff_geometric_mean(cf, 10, 50, seed=3, threads=2)
    assert a["estimate"] == b["estimate"]
