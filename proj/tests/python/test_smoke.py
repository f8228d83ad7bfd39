import math

import pytest

import dpbloom


def test_build_and_query_membership():
    params = dpbloom.FilterParams(m=1024, k=4, n=1 << 20, seed=7)
    dataset = [3, 99, 4096, 77777]
    filt = dpbloom.bloom_init(dataset, params)
    assert filt.inserted_count == 4
    for x in dataset:
        assert filt.query(x)  # no false negatives
    assert not dpbloom.bloom_init([], params).query(3)


def test_privatize_is_deterministic_and_calibrated():
    params = dpbloom.FilterParams(m=256, k=3, n=1 << 20, seed=1)
    filt = dpbloom.bloom_init(list(range(10)), params)
    budget = dpbloom.derive_budget(1.0, 0.05, 256, 3, 10)
    assert budget.N >= 1
    assert math.isclose(budget.epsilon0 * budget.N, 1.0, rel_tol=1e-12)
    assert math.isclose(budget.keep_prob + budget.flip_prob, 1.0, rel_tol=1e-12)

    a = dpbloom.privatize(filt, budget, 42)
    b = dpbloom.privatize(filt, budget, 42)
    assert a.bits == b.bits
    assert a.budget.epsilon0 == budget.epsilon0


def test_calibration_tables_normalize():
    y = dpbloom.dist_y(32, 3)
    assert math.isclose(sum(y.pmf), 1.0, abs_tol=1e-9)
    assert math.isclose(y.prob(1), 1.0 / 32.0**2, abs_tol=1e-12)

    w = dpbloom.dist_w(32, 3, 5)
    assert math.isclose(w.cdf[-1], 1.0, abs_tol=1e-9)
    assert dpbloom.quantile_n(w, 0.05) >= 1

    oracle = dpbloom.enumerate_y(5, 3)
    analytic = dpbloom.dist_y(5, 3)
    for v in range(1, 4):
        assert math.isclose(oracle.prob(v), analytic.prob(v), abs_tol=1e-12)


def test_bounds_match_reference_values():
    assert math.isclose(dpbloom.fpr_exact(1024, 4, 100), 0.0109514547034, abs_tol=1e-9)
    assert dpbloom.random_guess_rate(4) == 0.0625
    exact, approx, bound = dpbloom.fpr_forms(1024, 4, 100)
    assert exact < bound


def test_file_round_trip(tmp_path):
    params = dpbloom.FilterParams(m=128, k=2, n=1 << 16, seed=9)
    filt = dpbloom.bloom_init([5, 6, 7], params)
    path = str(tmp_path / "f.bloom")
    filt.save(path)
    loaded = dpbloom.load_filter(path)
    assert isinstance(loaded, dpbloom.BloomFilter)
    assert loaded.bits == filt.bits

    budget = dpbloom.derive_budget(2.0, 0.1, 128, 2, 3)
    noisy = dpbloom.privatize(filt, budget, 11)
    noisy_path = str(tmp_path / "p.bloom")
    noisy.save(noisy_path)
    loaded_noisy = dpbloom.load_filter(noisy_path)
    assert isinstance(loaded_noisy, dpbloom.PrivateBloomFilter)
    assert loaded_noisy.bits == noisy.bits
    assert loaded_noisy.budget.N == budget.N


def test_domain_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        dpbloom.FilterParams(m=1, k=2, n=10)
    with pytest.raises(ValueError):
        dpbloom.derive_budget(-1.0, 0.05, 32, 3, 5)
