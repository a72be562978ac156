"""Sampling oracle: exactness of the IG sampler, determinism, and agreement
between empirical statistics and the closed forms."""

import math

import numpy as np
import pytest

from satosub import (
    DomainError,
    McConfig,
    correlation,
    correlation_limits,
    empirical_cf,
    empirical_correlation,
    empirical_mean_var,
    ig_cf,
    make_sato,
    mc_check_report,
    nig_model_cf,
    sample_ig,
    sample_process,
    sample_subordinator,
    subordinator_moments,
)

from conftest import make_model


class TestSampleIg:
    def test_unit_parameters_mean(self):
        n = 1_000_000
        x = sample_ig(1.0, 1.0, n, seed=7)
        # IG(1,1) has mean 1 and variance 1
        assert abs(x.mean() - 1.0) < 4.0 / math.sqrt(n)

    def test_common_factor_parameters(self):
        n = 400_000
        a = 0.5671
        x = sample_ig(a, 1.0, n, seed=11)
        mean, se_mean, var, se_var = empirical_mean_var(x)
        assert abs(mean - a) < 4.0 * se_mean
        assert abs(var - a) < 4.0 * se_var

    def test_empirical_cf_matches_closed_form(self):
        x = sample_ig(1.0, 1.0, 400_000, seed=3)
        est, (se_re, se_im) = empirical_cf(x[:, None], [0.7])
        ref = ig_cf(1.0, 1.0, 0.7)
        assert abs(est.real - ref.real) < 4.0 * se_re
        assert abs(est.imag - ref.imag) < 4.0 * se_im

    def test_strictly_positive(self):
        x = sample_ig(0.3, 2.0, 100_000, seed=5)
        assert np.all(x > 0.0)

    def test_invalid_parameters(self):
        with pytest.raises(DomainError, match="InvalidParameters"):
            sample_ig(-1.0, 1.0, 10, seed=0)


class TestDeterminism:
    def test_worker_count_invariance(self):
        model = make_model()
        for workers in (1, 3, 8):
            cfg = McConfig(200_000, seed=99, worker_count=workers)
            y = sample_process(model, 1.0, cfg)
            if workers == 1:
                ref = y
            else:
                assert np.array_equal(ref, y)

    def test_repeat_runs_bit_identical(self):
        model = make_model()
        cfg = McConfig(50_000, seed=4, worker_count=2)
        r1 = mc_check_report(model, [0.5, 2.0], cfg, cf_points=2)
        r2 = mc_check_report(model, [0.5, 2.0], cfg, cf_points=2)
        assert r1.to_json() == r2.to_json()

    def test_ig_chunking_is_seamless(self):
        # crossing the chunk boundary must not change earlier draws
        a = sample_ig(1.0, 1.0, (1 << 16) + 10, seed=21)
        b = sample_ig(1.0, 1.0, 1 << 16, seed=21)
        assert np.array_equal(a[: 1 << 16], b)


class TestSubordinatorSampling:
    def test_mean_matches_closed_form(self):
        model = make_model()
        cfg = McConfig(400_000, seed=13)
        s = sample_subordinator(model, 1.0, cfg)
        m = subordinator_moments(model)
        for j in range(2):
            mean, se_mean, var, se_var = empirical_mean_var(s[:, j])
            assert abs(mean - m.asset_mean[j]) < 4.0 * se_mean
            assert abs(var - m.asset_var[j]) < 4.0 * se_var

    def test_correlation_is_time_invariant_limit(self):
        model = make_model()
        _, hi = correlation_limits(model, (0, 1))
        for t, seed in ((0.25, 31), (4.0, 32)):
            s = sample_subordinator(model, t, McConfig(400_000, seed=seed))
            r, se = empirical_correlation(s, (0, 1))
            assert abs(r - hi) < 4.0 * se

    def test_empirical_cf_matches_scaled_law(self):
        model = make_model()
        law = make_sato(model.factor_subordinator().distribution(), model.q)
        s = sample_subordinator(model, 2.0, McConfig(400_000, seed=17))
        for z in ([0.4, -0.2], [1.0, 0.5]):
            est, (se_re, se_im) = empirical_cf(s, z)
            ref = law.cf(2.0, z)
            assert abs(est.real - ref.real) < 4.0 * se_re
            assert abs(est.imag - ref.imag) < 4.0 * se_im

    def test_strictly_positive(self):
        s = sample_subordinator(make_model(), 0.5, McConfig(100_000, seed=23))
        assert np.all(s > 0.0)


class TestProcessSampling:
    def test_correlation_reference_value(self):
        model = make_model(a=0.5671, rho=0.5, q=0.5)
        y = sample_process(model, 1.0, McConfig(1_000_000, seed=42))
        r, se = empirical_correlation(y, (0, 1))
        assert abs(r - 0.4175) < 4.0 * se

    def test_empirical_cf_matches_model_cf(self):
        model = make_model()
        y = sample_process(model, 2.0, McConfig(400_000, seed=19))
        z = np.array([0.5, -0.5]) / (model.vols() * 10)  # probe where CF varies
        est, (se_re, se_im) = empirical_cf(y, z)
        ref = nig_model_cf(model, 2.0, z)
        assert abs(est.real - ref.real) < 4.0 * se_re
        assert abs(est.imag - ref.imag) < 4.0 * se_im

    def test_empirical_cf_unit_point(self):
        model = make_model()
        y = sample_process(model, 1.0, McConfig(1_000_000, seed=42))
        est, (se_re, se_im) = empirical_cf(y, [1.0, 1.0])
        ref = nig_model_cf(model, 1.0, [1.0, 1.0])
        assert abs(est.real - ref.real) < 4.0 * se_re
        assert abs(est.imag - ref.imag) < 4.0 * se_im

    def test_symmetric_case_correlation_constant(self):
        from satosub import NigFactorModel, NigMarginal
        model = make_model()
        sym = NigFactorModel(
            tuple(NigMarginal(m.gamma, 0.0, m.delta) for m in model.marginals),
            model.a, model.rho, model.q).validate()
        target = correlation(sym, 1.0, (0, 1))
        for t, seed in ((0.25, 51), (1.0, 52), (4.0, 53)):
            y = sample_process(sym, t, McConfig(300_000, seed=seed))
            r, se = empirical_correlation(y, (0, 1))
            assert abs(r - target) < 4.0 * se


class TestEmpiricalStatistics:
    def test_constant_sample_cf(self):
        samples = np.tile([1.5, -2.0], (100, 1))
        est, (se_re, se_im) = empirical_cf(samples, [0.3, 0.7])
        assert est == pytest.approx(np.exp(1j * (0.3 * 1.5 - 0.7 * 2.0)), abs=1e-15)
        assert se_re == 0.0 and se_im == 0.0

    def test_cf_at_zero(self):
        samples = np.random.default_rng(0).standard_normal((50, 2))
        est, (se_re, se_im) = empirical_cf(samples, [0.0, 0.0])
        assert est == 1.0 + 0j and se_re == 0.0 and se_im == 0.0

    def test_duplicated_columns_correlation(self):
        x = np.random.default_rng(1).standard_normal(500)
        r, _ = empirical_correlation(np.column_stack([x, x]), (0, 1))
        assert r == pytest.approx(1.0, abs=1e-12)

    def test_empty_sample_rejected(self):
        with pytest.raises(DomainError, match="EmptySample"):
            empirical_cf(np.empty((0, 2)), [1.0, 1.0])


class TestReport:
    def test_report_passes_and_serializes(self):
        model = make_model()
        report = mc_check_report(model, [1.0], McConfig(100_000, seed=8), cf_points=3)
        assert report.all_passed()
        data = report.to_dict()
        assert data["sample_count"] == 100_000 and data["seed"] == 8
        assert all(c["std_error"][0] >= 0.0 for c in data["checks"])

    def test_correlation_estimates_in_range(self):
        model = make_model(rho=0.99)
        report = mc_check_report(model, [0.5], McConfig(50_000, seed=9), cf_points=1)
        for check in report.checks:
            if check.name.startswith("correlation"):
                assert -1.0 <= check.estimate[0] <= 1.0
