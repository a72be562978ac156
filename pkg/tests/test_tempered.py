"""Core tempered stable law: validation, CF, Levy densities, moments, closure."""

import math

import numpy as np
import pytest
from scipy.special import gamma as sgamma

from satosub import (
    Atom,
    DomainError,
    ExpTemperedStable,
    ValidationError,
    VariationClass,
    convolve,
    scale,
)

from conftest import identity_distribution, pole_safe_alpha, random_distribution
from oracles import fd_mean, lk_char_exponent_multi, radial_integrability

SQRT_2PI = math.sqrt(2.0 * math.pi)


def one_d(alpha, beta, lam, direction=1.0):
    return ExpTemperedStable(alpha, (Atom(np.array([direction]), beta, lam),)).validate()


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

class TestValidation:
    def test_minimal_legal_input(self):
        dist = one_d(0.5, 1.0, 1.0)
        assert dist.violations() == []

    def test_alpha_two_rejected(self):
        dist = ExpTemperedStable(2.0, (Atom(np.array([1.0]), 1.0, 1.0),))
        codes = [v.code for v in dist.violations()]
        assert codes == ["AlphaOutOfRange"]

    def test_alpha_zero_rejected(self):
        dist = ExpTemperedStable(0.0, (Atom(np.array([1.0]), 1.0, 1.0),))
        assert [v.code for v in dist.violations()] == ["AlphaOutOfRange"]

    def test_non_unit_direction(self):
        dist = ExpTemperedStable(0.5, (Atom(np.array([0.6, 0.6]), 1.0, 1.0),))
        assert "NonUnitDirection" in [v.code for v in dist.violations()]

    def test_bad_tempering_and_mass(self):
        dist = ExpTemperedStable(0.5, (Atom(np.array([1.0]), -1.0, 0.0),))
        codes = {v.code for v in dist.violations()}
        assert {"NonPositiveTempering", "NonPositiveMass"} <= codes

    def test_dimension_mismatch(self):
        dist = ExpTemperedStable(
            0.5, (Atom(np.array([1.0]), 1.0, 1.0), Atom(np.array([1.0, 0.0]), 1.0, 1.0)))
        assert "DimensionMismatch" in [v.code for v in dist.violations()]

    def test_validate_raises_with_report(self):
        dist = ExpTemperedStable(2.5, (Atom(np.array([0.5, 0.5]), 1.0, 1.0),))
        with pytest.raises(ValidationError) as err:
            dist.validate()
        assert {v.code for v in err.value.violations} == {"AlphaOutOfRange", "NonUnitDirection"}

    def test_near_unit_direction_renormalized(self):
        w = np.array([1.0 + 5e-13])
        atom = Atom(w, 1.0, 1.0)
        assert atom.direction[0] == 1.0


# ---------------------------------------------------------------------------
# characteristic function
# ---------------------------------------------------------------------------

class TestCharFunction:
    def test_exponent_zero_at_origin(self, rng):
        for _ in range(25):
            dist = random_distribution(rng)
            assert dist.char_exponent(np.zeros(dist.dim)) == 0j
            assert dist.char_function(np.zeros(dist.dim)) == 1.0 + 0j

    def test_ig_identity(self):
        # beta = b^2/2, lam = a/sqrt(2*pi) at alpha = 1/2 is the IG law
        # with log CF -a*(sqrt(b^2 - 2iu) - b).
        a, b = 1.0, 1.0
        dist = one_d(0.5, b * b / 2.0, a / SQRT_2PI)
        for u in (0.3, 1.7):
            expected = -a * (np.sqrt(b * b - 2j * u) - b)
            assert abs(dist.char_exponent([u]) - expected) < 1e-14

    def test_exponent_matches_quadrature_frozen(self):
        # independent jump-integral quadrature of exp(-r)/r^1.5 at z=1
        # (oracles.lk_char_exponent, 30 digits)
        dist = one_d(0.5, 1.0, 1.0)
        frozen = complex(-0.34982607387843334, 1.6132515517231483)
        got = dist.char_exponent([1.0])
        assert abs(got - frozen) / abs(frozen) < 1e-12

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9, 1.0, 1.5])
    def test_exponent_matches_quadrature_live(self, alpha):
        dist = one_d(alpha, 1.0, 1.0)
        for z in range(-5, 6):
            if z == 0:
                assert dist.char_exponent([0.0]) == 0j
                continue
            mine = dist.char_exponent([float(z)])
            oracle = lk_char_exponent_multi(dist, [float(z)])
            assert abs(mine - oracle) / abs(oracle) < 1e-7

    def test_hermitian_symmetry_and_modulus(self, rng):
        for _ in range(1000):
            dist = random_distribution(rng)
            z = rng.uniform(-5.0, 5.0, dist.dim)
            f, g = dist.char_function(z), dist.char_function(-z)
            assert abs(g - np.conj(f)) <= 1e-13
            assert abs(f) <= 1.0 + 1e-13


# ---------------------------------------------------------------------------
# Levy measure
# ---------------------------------------------------------------------------

class TestLevyMeasure:
    def test_radial_density_value(self):
        dist = one_d(0.5, 1.0, 1.0)
        assert dist.levy_radial_density(0, 1.0) == pytest.approx(math.exp(-1.0))

    def test_small_radius_power_law(self):
        dist = one_d(0.5, 1.0, 1.0)
        r = 1e-6
        assert dist.levy_radial_density(0, r) * r**1.5 == pytest.approx(1.0, rel=1e-6)

    def test_nonpositive_radius_rejected(self):
        dist = one_d(0.5, 1.0, 1.0)
        with pytest.raises(DomainError, match="NonPositiveRadius"):
            dist.levy_radial_density(0, 0.0)

    @pytest.mark.parametrize("alpha", [0.4, 1.0, 1.7])
    def test_integrability(self, alpha):
        dist = one_d(alpha, 1.3, 0.8)
        assert np.isfinite(radial_integrability(dist, 0))

    def test_variation_class(self):
        assert one_d(0.5, 1, 1).variation_class() is VariationClass.FINITE_VARIATION_INFINITE_ACTIVITY
        assert one_d(1.0, 1, 1).variation_class() is VariationClass.INFINITE_VARIATION
        assert one_d(1.5, 1, 1).variation_class() is VariationClass.INFINITE_VARIATION


# ---------------------------------------------------------------------------
# spectral atoms
# ---------------------------------------------------------------------------

class TestSpectral:
    def test_single_atom(self):
        e1 = np.array([1.0, 0.0])
        dist = ExpTemperedStable(0.5, (Atom(e1, 2.0, 3.0),)).validate()
        (spec,) = dist.spectral_atoms()
        assert np.allclose(spec.location, e1 / 2.0)
        assert spec.weight == pytest.approx(3.0 * math.sqrt(2.0))
        # mass identity: ||x||^alpha * weight recovers the spherical mass
        total = np.linalg.norm(spec.location) ** 0.5 * spec.weight
        assert total == pytest.approx(3.0, abs=1e-12)

    def test_mass_identity_multi_atom(self, rng):
        for _ in range(50):
            dist = random_distribution(rng)
            total = sum(
                np.linalg.norm(s.location) ** dist.alpha * s.weight
                for s in dist.spectral_atoms()
            )
            assert total == pytest.approx(sum(a.mass for a in dist.atoms), rel=1e-12)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

class TestMoments:
    def test_moment_exists_discrete(self, rng):
        dist = random_distribution(rng)
        for k in (1.0, dist.alpha, 10.0):
            assert dist.moment_exists(k) is True

    def test_mean_cov_unit_atom(self):
        dist = one_d(0.5, 1.0, 1.0)
        mean, cov = dist.mean_and_covariance()
        assert mean[0] == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert cov[0, 0] == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-14)

    def test_mean_cov_rejected_above_one(self):
        with pytest.raises(DomainError, match="AlphaOutOfRangeForMoments"):
            one_d(1.5, 1.0, 1.0).mean_and_covariance()

    def test_gamma_minus_half_identity(self):
        assert abs(sgamma(-0.5) + 2.0 * math.sqrt(math.pi)) < 1e-14

    def test_mean_matches_finite_differences(self, rng):
        for _ in range(25):
            dist = random_distribution(rng, alpha=float(rng.uniform(0.1, 0.9)))
            mean, _ = dist.mean_and_covariance()
            approx = fd_mean(dist, step=1e-5)
            assert np.max(np.abs(approx - mean)) < 1e-6 * max(1e-12, np.linalg.norm(mean))

    def test_covariance_psd(self, rng):
        for _ in range(100):
            dist = random_distribution(rng, alpha=float(rng.uniform(0.05, 0.95)))
            _, cov = dist.mean_and_covariance()
            assert np.min(np.linalg.eigvalsh(cov)) >= -1e-10


# ---------------------------------------------------------------------------
# closure operations
# ---------------------------------------------------------------------------

class TestClosure:
    def test_self_convolution_doubles_mass(self, rng):
        dist = random_distribution(rng)
        both = dist.convolve(dist)
        assert len(both.atoms) == len(dist.atoms)
        for a, b in zip(both.atoms, dist.atoms):
            assert a.mass == pytest.approx(2.0 * b.mass)

    def test_convolution_cf_product_law(self, rng):
        for _ in range(1000):
            d = int(rng.integers(1, 4))
            alpha = pole_safe_alpha(rng)
            p1 = identity_distribution(rng, d=d, alpha=alpha)
            p2 = identity_distribution(rng, d=d, alpha=alpha)
            z = rng.uniform(-2.0, 2.0, d)
            lhs = p1.convolve(p2).char_function(z)
            rhs = p1.char_function(z) * p2.char_function(z)
            assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(rhs))

    def test_convolution_mismatches(self, rng):
        p1 = random_distribution(rng, d=2, alpha=0.5)
        with pytest.raises(DomainError, match="AlphaMismatch"):
            p1.convolve(random_distribution(rng, d=2, alpha=0.7))
        with pytest.raises(DomainError, match="DimensionMismatch"):
            p1.convolve(random_distribution(rng, d=3, alpha=0.5))

    def test_scaling_cf_law(self, rng):
        for _ in range(1000):
            dist = identity_distribution(rng)
            c = float(rng.uniform(0.5, 2.0))
            z = rng.uniform(-2.0, 2.0, dist.dim)
            lhs = dist.scaled(c).char_function(z)
            rhs = dist.char_function(c * z)
            assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(rhs))

    def test_scale_identity_and_composition(self, rng):
        dist = random_distribution(rng)
        same = dist.scaled(1.0)
        for a, b in zip(same.atoms, dist.atoms):
            assert a.tempering == b.tempering and a.mass == b.mass
        ab = dist.scaled(1.7).scaled(0.4)
        direct = dist.scaled(1.7 * 0.4)
        for a, b in zip(ab.atoms, direct.atoms):
            assert a.tempering == pytest.approx(b.tempering, rel=1e-14)
            assert a.mass == pytest.approx(b.mass, rel=1e-14)

    def test_scale_rejects_nonpositive(self, rng):
        with pytest.raises(DomainError, match="NonPositiveScale"):
            random_distribution(rng).scaled(0.0)

    def test_module_level_aliases(self, rng):
        dist = random_distribution(rng)
        assert len(convolve(dist, dist).atoms) == len(dist.atoms)
        assert scale(dist, 2.0).atoms[0].tempering == dist.atoms[0].tempering / 2.0


# ---------------------------------------------------------------------------
# support predicates
# ---------------------------------------------------------------------------

class TestSupport:
    def test_axes_d2(self):
        dist = ExpTemperedStable(0.5, (
            Atom(np.array([1.0, 0.0]), 1.0, 1.0),
            Atom(np.array([0.0, 1.0]), 2.0, 1.0),
        )).validate()
        props = dist.support_properties()
        assert props.independent_components and props.full_dimensional
        assert props.positive_orthant

    def test_single_diagonal_atom(self):
        w = np.array([1.0, 1.0]) / math.sqrt(2.0)
        dist = ExpTemperedStable(0.5, (Atom(w, 1.0, 1.0),)).validate()
        props = dist.support_properties()
        assert not props.independent_components
        assert not props.full_dimensional
        assert props.positive_orthant

    def test_factor_support(self):
        w = np.array([1.0, 1.0]) / math.sqrt(2.0)
        dist = ExpTemperedStable(0.5, (
            Atom(np.array([1.0, 0.0]), 1.0, 1.0),
            Atom(np.array([0.0, 1.0]), 2.0, 1.0),
            Atom(w, 1.5, 0.5),
        )).validate()
        props = dist.support_properties()
        assert not props.independent_components
        assert props.full_dimensional

    def test_negative_axis_counts_as_axis(self):
        # jumps along -e_1 still live on a coordinate axis
        dist = ExpTemperedStable(0.5, (Atom(np.array([-1.0, 0.0]), 1.0, 1.0),)).validate()
        props = dist.support_properties()
        assert props.independent_components
        assert not props.positive_orthant
