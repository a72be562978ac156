"""Factor-based subordinators, subordinated Brownian motions, and the NIG model.

The dependence structure is a one-factor decomposition of the subordinator,
S_j = X_j + a_j * Z, with independent idiosyncratic components X_j and a common
component Z.  Subordinating a multiparameter Brownian motion (independent
per-asset motions plus a correlated motion driven by the common time) yields a
process whose instantaneous correlation moves between two analytic limits as a
function of time; both limits and the whole curve are in closed form.

The normal inverse Gaussian specification fixes alpha = 1/2 (inverse Gaussian
components) and pins the Brownian drift/volatility to the marginal parameters
(gamma, beta, delta) so that each one-dimensional margin is NIG at unit time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from .errors import DomainError, ValidationError, Violation
from .sato import SatoSubordinator
from .tempered import Atom, ExpTemperedStable

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_RHO_PSD_TOL = 1e-10
_RHO_SYM_TOL = 1e-12


# ---------------------------------------------------------------------------
# factor-based tempered stable subordinators
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FactorSubordinator:
    """Components of S_j = X_j + a_j * Z with tempered stable X_j and Z.

    ``idiosyncratic`` holds one (tempering, mass) pair per coordinate,
    ``common`` the pair for Z, and ``loadings`` the strictly positive a_j.
    """

    alpha: float
    idiosyncratic: tuple[tuple[float, float], ...]
    common: tuple[float, float]
    loadings: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(
            self, "idiosyncratic",
            tuple((float(b), float(l)) for b, l in self.idiosyncratic),
        )
        b, l = self.common
        object.__setattr__(self, "common", (float(b), float(l)))
        a = np.array(self.loadings, dtype=float).reshape(-1)
        a.setflags(write=False)
        object.__setattr__(self, "loadings", a)

    @property
    def dim(self) -> int:
        return len(self.idiosyncratic)

    def violations(self) -> list[Violation]:
        out: list[Violation] = []
        if not (np.isfinite(self.alpha) and 0.0 < self.alpha < 1.0):
            out.append(Violation(
                "AlphaNotInZeroOne", f"alpha must lie in (0,1); got {self.alpha!r}"))
        if self.dim < 1:
            out.append(Violation("EmptyAtomList", "at least one idiosyncratic component"))
        for j, (b, l) in enumerate(self.idiosyncratic):
            if not (np.isfinite(b) and b > 0.0):
                out.append(Violation("NonPositiveTempering",
                                     f"idiosyncratic tempering {j} must be > 0; got {b!r}"))
            if not (np.isfinite(l) and l > 0.0):
                out.append(Violation("NonPositiveMass",
                                     f"idiosyncratic mass {j} must be > 0; got {l!r}"))
        b, l = self.common
        if not (np.isfinite(b) and b > 0.0):
            out.append(Violation("NonPositiveTempering",
                                 f"common tempering must be > 0; got {b!r}"))
        if not (np.isfinite(l) and l > 0.0):
            out.append(Violation("NonPositiveMass", f"common mass must be > 0; got {l!r}"))
        if self.loadings.size != self.dim:
            out.append(Violation("DimensionMismatch",
                                 f"{self.loadings.size} loadings for {self.dim} components"))
        if not np.all(np.isfinite(self.loadings) & (self.loadings > 0.0)):
            out.append(Violation("NonPositiveMass", "all loadings must be finite and > 0"))
        return out

    def validate(self) -> "FactorSubordinator":
        v = self.violations()
        if v:
            raise ValidationError(v)
        return self

    def distribution(self) -> ExpTemperedStable:
        """Joint law of (S_1, ..., S_d) as a d-dimensional tempered stable law.

        One atom per axis for the idiosyncratic parts plus a single atom in the
        loading direction a/||a|| with tempering beta_Z/||a|| and mass
        lam_Z*||a||**alpha (the scaling a law picks up under multiplication by
        ||a||).
        """
        self.validate()
        d = self.dim
        atoms = []
        for j, (b, l) in enumerate(self.idiosyncratic):
            e = np.zeros(d)
            e[j] = 1.0
            atoms.append(Atom(e, b, l))
        norm_a = float(np.linalg.norm(self.loadings))
        b_z, l_z = self.common
        atoms.append(Atom(self.loadings / norm_a, b_z / norm_a, l_z * norm_a**self.alpha))
        return ExpTemperedStable(self.alpha, tuple(atoms)).validate()

    def component_law(self) -> ExpTemperedStable:
        """Law of the independent component vector (X_1, ..., X_d, Z) on R^(d+1)."""
        self.validate()
        m = self.dim + 1
        pairs = list(self.idiosyncratic) + [self.common]
        atoms = []
        for i, (b, l) in enumerate(pairs):
            e = np.zeros(m)
            e[i] = 1.0
            atoms.append(Atom(e, b, l))
        return ExpTemperedStable(self.alpha, tuple(atoms)).validate()

    def component_sato(self, q: float) -> SatoSubordinator:
        return SatoSubordinator(self.component_law(), q).validate()

    def sato(self, q: float) -> SatoSubordinator:
        return SatoSubordinator(self.distribution(), q).validate()


# ---------------------------------------------------------------------------
# subordinated Brownian motion, general closed-form CF
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BrownianFactor:
    """Unit-time drift vector and covariance of one Brownian component in R^n."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(-1)
        cov = np.array(self.cov, dtype=float)
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    def log_cf(self, z: np.ndarray) -> complex:
        """Unit-time Brownian log characteristic function i<mean,z> - z'cov z/2."""
        return complex(1j * (self.mean @ z) - 0.5 * (z @ self.cov @ z))


def subordinated_bm_cf(law: SatoSubordinator, factors, t: float, z) -> complex:
    """CF at time t of a Brownian mixture time-changed by a Sato subordinator.

    ``law`` drives an m-dimensional subordinator; ``factors`` gives the m
    Brownian components (each a BrownianFactor on R^n).  With eta_i(z) the
    unit-time Brownian log-CFs, the exponent per atom (w, beta, lam) is

        Gamma(-alpha) * lam * [(beta - t**q * <eta(z), w>)**alpha - beta**alpha].

    Re <eta, w> <= 0 and w >= 0 keep the power argument in the right half plane.
    """
    if not t > 0.0:
        raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
    a = law.base.alpha
    if not (0.0 < a < 1.0):
        raise DomainError(
            "InvalidSubordinator", f"subordination requires alpha in (0,1); got {a!r}")
    factors = list(factors)
    if len(factors) != law.dim:
        raise DomainError(
            "DimensionMismatch",
            f"{len(factors)} Brownian factors for a {law.dim}-dimensional subordinator")
    z = np.atleast_1d(np.asarray(z, dtype=float))
    eta = np.array([f.log_cf(z) for f in factors])
    tq = t**law.q
    w = law.base.directions()
    beta = law.base.temperings()
    lam = law.base.masses()
    acc = np.sum(lam * ((beta - tq * (w @ eta)) ** a - beta**a))
    return complex(np.exp(_gamma(-a) * acc))


def factor_brownian_factors(loadings, drifts, vols, correlation) -> list[BrownianFactor]:
    """Brownian components of the factor construction on R^d.

    Component j (j < d) is the one-dimensional motion mu_j, sigma_j embedded in
    coordinate j; the last component is the correlated motion with drift
    mu_j * a_j and covariance rho_ij * sigma_i * sigma_j * sqrt(a_i * a_j).
    """
    a = np.asarray(loadings, dtype=float).reshape(-1)
    mu = np.asarray(drifts, dtype=float).reshape(-1)
    sig = np.asarray(vols, dtype=float).reshape(-1)
    rho = np.asarray(correlation, dtype=float)
    d = a.size
    factors = []
    for j in range(d):
        e = np.zeros(d)
        e[j] = 1.0
        factors.append(BrownianFactor(mu[j] * e, sig[j] ** 2 * np.outer(e, e)))
    scaled = sig * np.sqrt(a)
    factors.append(BrownianFactor(mu * a, rho * np.outer(scaled, scaled)))
    return factors


def factor_subordinated_bm_cf(spec: FactorSubordinator, drifts, vols, correlation,
                              q: float, t: float, z) -> complex:
    """Closed-form CF of the factor-based Sato-subordinated Brownian motion."""
    law = spec.component_sato(q)
    factors = factor_brownian_factors(spec.loadings, drifts, vols, correlation)
    return subordinated_bm_cf(law, factors, t, z)


# ---------------------------------------------------------------------------
# inverse Gaussian building blocks
# ---------------------------------------------------------------------------

def ig_cf(a: float, b: float, u) -> complex:
    """Inverse Gaussian characteristic function exp(-a*(sqrt(b^2 - 2iu) - b))."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError("InvalidParameters", f"IG parameters must be > 0; got a={a!r}, b={b!r}")
    return complex(np.exp(-a * (np.sqrt(b * b - 2j * u) - b)))


def _ig_laplace_exponent(a: float, b: float, s) -> complex:
    # log E[exp(-s X)] for X ~ IG(a, b); valid for Re(s) > -b^2/2.
    return -a * (np.sqrt(b * b + 2.0 * s) - b)


# ---------------------------------------------------------------------------
# NIG factor model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NigMarginal:
    """NIG marginal parameters (gamma, beta, delta) with gamma > |beta|, delta > 0."""

    gamma: float
    beta: float
    delta: float

    @property
    def zeta(self) -> float:
        """delta * sqrt(gamma^2 - beta^2); reciprocal square root of the loading."""
        return self.delta * math.sqrt(self.gamma**2 - self.beta**2)

    @property
    def loading(self) -> float:
        return 1.0 / self.zeta**2

    @property
    def drift(self) -> float:
        """Brownian drift beta * delta^2 of the subordinated representation."""
        return self.beta * self.delta**2

    @property
    def vol(self) -> float:
        return self.delta


def a_max(marginals) -> float:
    """Largest admissible common parameter: min_j zeta_j (strict upper bound)."""
    marginals = list(marginals)
    if not marginals:
        raise DomainError("InvalidParameters", "at least one marginal is required")
    return min(m.zeta for m in marginals)


@dataclass(frozen=True, eq=False)
class NigFactorModel:
    """NIG marginals, common parameter a, Brownian correlation matrix, exponent q.

    Unit-time margins are NIG(gamma_j, beta_j, delta_j); the common inverse
    Gaussian factor carries dependence and 0 < a < min_j zeta_j.
    """

    marginals: tuple[NigMarginal, ...]
    a: float
    rho: np.ndarray
    q: float

    def __post_init__(self):
        object.__setattr__(self, "marginals", tuple(self.marginals))
        object.__setattr__(self, "a", float(self.a))
        rho = np.array(self.rho, dtype=float)
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "q", float(self.q))

    @property
    def dim(self) -> int:
        return len(self.marginals)

    def violations(self) -> list[Violation]:
        out: list[Violation] = []
        finite_marginals = True
        for j, m in enumerate(self.marginals):
            if not (np.isfinite(m.gamma) and m.gamma > 0.0):
                out.append(Violation("MarginalGammaNotPositive",
                                     f"marginal {j}: gamma must be > 0; got {m.gamma!r}"))
                finite_marginals = False
            elif not (np.isfinite(m.beta) and abs(m.beta) < m.gamma):
                out.append(Violation("MarginalBetaOutOfRange",
                                     f"marginal {j}: need -gamma < beta < gamma; got {m.beta!r}"))
                finite_marginals = False
            if not (np.isfinite(m.delta) and m.delta > 0.0):
                out.append(Violation("MarginalDeltaNotPositive",
                                     f"marginal {j}: delta must be > 0; got {m.delta!r}"))
                finite_marginals = False
        if self.dim == 0:
            out.append(Violation("EmptyAtomList", "at least one marginal is required"))
            finite_marginals = False
        if finite_marginals:
            bound = a_max(self.marginals)
            if not (np.isfinite(self.a) and 0.0 < self.a < bound):
                out.append(Violation(
                    "CommonParameterOutOfRange",
                    f"a must satisfy 0 < a < {bound:.6g} (min zeta over marginals); "
                    f"got {self.a!r}"))
        d = self.dim
        if self.rho.shape != (d, d):
            out.append(Violation("RhoShapeInvalid",
                                 f"correlation matrix must be {d}x{d}; got {self.rho.shape}"))
        else:
            if not np.all(np.isfinite(self.rho)):
                out.append(Violation("RhoShapeInvalid", "correlation entries must be finite"))
            else:
                if np.max(np.abs(self.rho - self.rho.T)) > _RHO_SYM_TOL:
                    out.append(Violation("RhoNotSymmetric",
                                         "correlation matrix must be symmetric"))
                if np.max(np.abs(np.diag(self.rho) - 1.0)) > _RHO_SYM_TOL:
                    out.append(Violation("RhoDiagonalNotOne",
                                         "correlation matrix must have unit diagonal"))
                if np.min(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.T))) < -_RHO_PSD_TOL:
                    out.append(Violation("RhoNotPositiveSemidefinite",
                                         "correlation matrix must be positive semidefinite"))
        if not (np.isfinite(self.q) and self.q > 0.0):
            out.append(Violation("NonPositiveExponent",
                                 f"self-similarity exponent must be > 0; got {self.q!r}"))
        return out

    def validate(self) -> "NigFactorModel":
        v = self.violations()
        if v:
            raise ValidationError(v)
        return self

    # -- derived parameter vectors -------------------------------------------

    def zetas(self) -> np.ndarray:
        return np.array([m.zeta for m in self.marginals])

    def loadings(self) -> np.ndarray:
        return np.array([m.loading for m in self.marginals])

    def drifts(self) -> np.ndarray:
        return np.array([m.drift for m in self.marginals])

    def vols(self) -> np.ndarray:
        return np.array([m.vol for m in self.marginals])

    def common_drift(self) -> np.ndarray:
        """Drift of the correlated Brownian component: mu_j * a_j."""
        return self.drifts() * self.loadings()

    def common_cov(self) -> np.ndarray:
        """Covariance of the correlated component: rho_ij sigma_i sigma_j sqrt(a_i a_j)."""
        s = self.vols() * np.sqrt(self.loadings())
        return self.rho * np.outer(s, s)

    def factor_subordinator(self) -> FactorSubordinator:
        """Inverse Gaussian components as alpha = 1/2 tempered stable factors.

        IG(kappa, b) maps to a single atom with tempering b^2/2 and spherical
        mass kappa / sqrt(2*pi); here X_j ~ IG(1 - a/zeta_j, zeta_j) and
        Z ~ IG(a, 1).
        """
        z = self.zetas()
        idio = tuple(
            (0.5 * z[j] ** 2, (1.0 - self.a / z[j]) / _SQRT_2PI) for j in range(self.dim)
        )
        return FactorSubordinator(0.5, idio, (0.5, self.a / _SQRT_2PI), self.loadings())

    # -- closed-form characteristic function ----------------------------------

    def cf(self, t: float, z) -> complex:
        """CF of the return vector at time t, assembled from IG Laplace transforms.

        Per asset the idiosyncratic contribution is the IG(1 - a/zeta_j, zeta_j)
        Laplace transform at -t**q * eta_j(z), eta_j(z) = i*mu_j*z_j - sigma_j^2*z_j^2/2;
        the common contribution is the IG(a, 1) transform at -t**q * eta_Z(z)
        with the correlated drift/covariance pair.
        """
        if not t > 0.0:
            raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if z.size != self.dim:
            raise DomainError("DimensionMismatch",
                              f"z must have length {self.dim}; got {z.size}")
        mu, sig, zeta = self.drifts(), self.vols(), self.zetas()
        tq = t**self.q
        eta = 1j * mu * z - 0.5 * sig**2 * z**2
        log_cf = 0j
        for j in range(self.dim):
            log_cf += _ig_laplace_exponent(1.0 - self.a / zeta[j], zeta[j], -tq * eta[j])
        eta_z = 1j * (z @ self.common_drift()) - 0.5 * (z @ self.common_cov() @ z)
        log_cf += _ig_laplace_exponent(self.a, 1.0, -tq * eta_z)
        return complex(np.exp(log_cf))


def nig_model_cf(model: NigFactorModel, t: float, z) -> complex:
    return model.cf(t, z)


def model_subordinated_bm_cf(model: NigFactorModel, t: float, z) -> complex:
    """Same CF through the general tempered stable subordination route.

    Independent of NigFactorModel.cf: goes through the alpha = 1/2 atom
    representation and complex powers rather than IG square-root transforms.
    """
    return factor_subordinated_bm_cf(
        model.factor_subordinator(), model.drifts(), model.vols(), model.rho,
        model.q, t, z,
    )


# ---------------------------------------------------------------------------
# moments and the correlation term structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubordinatorMoments:
    """Unit-time means/variances of the factor subordinator components."""

    idiosyncratic_mean: np.ndarray
    idiosyncratic_var: np.ndarray
    asset_mean: np.ndarray
    asset_var: np.ndarray
    common_mean: float
    common_var: float


def subordinator_moments(model: NigFactorModel) -> SubordinatorMoments:
    """E and V of X_j, S_j = X_j + a_j Z, and Z at unit time.

    IG(kappa, b) has mean kappa/b and variance kappa/b^3, so E[Z] = V[Z] = a,
    E[S_j] = sqrt(a_j) and V[S_j] = a_j**1.5 regardless of a.
    """
    a_j = model.loadings()
    kappa = 1.0 - model.a * np.sqrt(a_j)
    x_mean = kappa * np.sqrt(a_j)
    x_var = kappa * a_j**1.5
    return SubordinatorMoments(
        idiosyncratic_mean=x_mean,
        idiosyncratic_var=x_var,
        asset_mean=np.sqrt(a_j),
        asset_var=a_j**1.5,
        common_mean=model.a,
        common_var=model.a,
    )


def process_std(model: NigFactorModel, t: float) -> np.ndarray:
    """Per-asset standard deviation of the return vector at time t."""
    if not t > 0.0:
        raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
    m = subordinator_moments(model)
    mu, sig = model.drifts(), model.vols()
    tq = t**model.q
    return np.sqrt(sig**2 * tq * m.asset_mean + mu**2 * tq**2 * m.asset_var)


def correlation(model: NigFactorModel, t: float, pair: tuple[int, int]) -> float:
    """Instantaneous correlation of assets (h, j) at time t.

    numerator:   rho_hj sigma_h sigma_j sqrt(a_h a_j) t^q E[Z]
               + mu_h mu_j a_h a_j t^{2q} V[Z]
    denominator: product of per-asset standard deviations at time t.
    """
    h, j = pair
    if h == j:
        raise DomainError("InvalidParameters", "correlation pair must be two distinct assets")
    if not t > 0.0:
        raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
    m = subordinator_moments(model)
    mu, sig, a_j = model.drifts(), model.vols(), model.loadings()
    tq = t**model.q
    num = (
        model.rho[h, j] * sig[h] * sig[j] * math.sqrt(a_j[h] * a_j[j]) * tq * m.common_mean
        + mu[h] * mu[j] * a_j[h] * a_j[j] * tq**2 * m.common_var
    )
    std = process_std(model, t)
    return float(num / (std[h] * std[j]))


def correlation_limits(model: NigFactorModel, pair: tuple[int, int]) -> tuple[float, float]:
    """Analytic t -> 0 and t -> infinity correlation limits for a pair.

    The long-horizon limit is the subordinator correlation a / sqrt(zeta_h zeta_j);
    the short-horizon limit is rho_hj times it.
    """
    h, j = pair
    if h == j:
        raise DomainError("InvalidParameters", "correlation pair must be two distinct assets")
    z = model.zetas()
    limit_inf = model.a / math.sqrt(z[h] * z[j])
    return float(model.rho[h, j] * limit_inf), float(limit_inf)


@dataclass(frozen=True, eq=False)
class CorrelationCurve:
    """Sampled correlation term structure with its two analytic limits."""

    times: np.ndarray
    values: np.ndarray
    limit_zero: float
    limit_infinity: float

    def to_csv(self, label: str = "rho_hj") -> str:
        lines = [f"t,{label}"]
        for t, v in zip(self.times, self.values):
            lines.append(f"{t:.17g},{v:.17g}")
        lines.append(f"# limit_zero,{self.limit_zero:.17g}")
        lines.append(f"# limit_infinity,{self.limit_infinity:.17g}")
        return "\n".join(lines) + "\n"


def correlation_curve(model: NigFactorModel, pair: tuple[int, int], times) -> CorrelationCurve:
    """Evaluate the correlation term structure on an increasing positive grid."""
    times = np.asarray(times, dtype=float).reshape(-1)
    if times.size == 0:
        raise DomainError("EmptyGrid", "time grid must be nonempty")
    if not (np.all(times > 0.0) and np.all(np.diff(times) > 0.0)):
        raise DomainError("GridNotIncreasing", "time grid must be positive and increasing")
    values = np.array([correlation(model, float(t), pair) for t in times])
    lo, hi = correlation_limits(model, pair)
    return CorrelationCurve(times, values, lo, hi)


def baseline_levy_correlation(model: NigFactorModel, pair: tuple[int, int]) -> float:
    """Correlation of the stationary-increment counterpart: constant in t, equal
    to the subordinated model's unit-time value."""
    return correlation(model, 1.0, pair)


def baseline_marginal_sato_correlation(model: NigFactorModel, pair: tuple[int, int],
                                       exponents=None) -> float:
    """Correlation of the per-asset-scaled counterpart.

    ``exponents`` (one scaling exponent per asset) is accepted for interface
    completeness but cannot move correlations: deterministic per-asset scaling
    cancels from the correlation, which stays at the unit-time value for all t.
    """
    if exponents is not None:
        e = np.asarray(exponents, dtype=float).reshape(-1)
        if e.size != model.dim:
            raise DomainError("DimensionMismatch",
                              f"expected {model.dim} exponents; got {e.size}")
    return correlation(model, 1.0, pair)
