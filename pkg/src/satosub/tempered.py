"""Multivariate exponentially tempered stable laws with a discrete spherical measure.

A law is described by a stability index ``alpha`` in (0, 2) and a finite set of
atoms ``(w, beta, lam)``: a jump direction ``w`` on the unit sphere, an
exponential tempering rate ``beta > 0`` and a spherical mass ``lam > 0``.  Along
the ray through ``w`` the Levy measure has radial density

    lam * exp(-beta * r) / r**(alpha + 1),   r > 0,

so the whole Levy measure is a finite sum of tempered one-sided stable rays.
Everything exposed here (characteristic function, moments, closure under
convolution and scaling, spectral reparametrization) is exact arithmetic over
the atoms; no quadrature is involved.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from .errors import DomainError, ValidationError, Violation

# Directions within this distance of unit norm are silently renormalized;
# anything farther off is rejected so badly scaled inputs surface caller bugs.
UNIT_NORM_TOL = 1e-12

_ORTHANT_TOL = 1e-12
_AXIS_TOL = 1e-12
_RANK_TOL = 1e-10


class VariationClass(enum.Enum):
    FINITE_VARIATION_INFINITE_ACTIVITY = "finite_variation_infinite_activity"
    INFINITE_VARIATION = "infinite_variation"


@dataclass(frozen=True, eq=False)
class Atom:
    """One atom of the spherical measure: direction, tempering rate, mass."""

    direction: np.ndarray
    tempering: float
    mass: float

    def __post_init__(self):
        w = np.array(self.direction, dtype=float).reshape(-1)
        n = float(np.linalg.norm(w))
        if np.isfinite(n) and n > 0.0 and abs(n - 1.0) <= UNIT_NORM_TOL:
            w = w / n
        w.setflags(write=False)
        object.__setattr__(self, "direction", w)
        object.__setattr__(self, "tempering", float(self.tempering))
        object.__setattr__(self, "mass", float(self.mass))

    @property
    def dim(self) -> int:
        return self.direction.size


@dataclass(frozen=True)
class SpectralAtom:
    """Atom of the spectral reparametrization: mass beta**alpha * lam at w / beta."""

    location: np.ndarray
    weight: float


@dataclass(frozen=True)
class SupportProperties:
    independent_components: bool
    full_dimensional: bool
    positive_orthant: bool


@dataclass(frozen=True, eq=False)
class ExpTemperedStable:
    """Exponentially tempered stable law on R^d given by discrete spherical atoms.

    Atoms may repeat a direction with different tempering rates; that keeps the
    family closed under convolution of independent copies with unequal rates.
    """

    alpha: float
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "atoms", tuple(self.atoms))

    # -- structure ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.atoms[0].dim if self.atoms else 0

    def directions(self) -> np.ndarray:
        """Atom directions stacked as an (n_atoms, d) matrix."""
        return np.array([a.direction for a in self.atoms], dtype=float)

    def temperings(self) -> np.ndarray:
        return np.array([a.tempering for a in self.atoms], dtype=float)

    def masses(self) -> np.ndarray:
        return np.array([a.mass for a in self.atoms], dtype=float)

    # -- validation ---------------------------------------------------------

    def violations(self) -> list[Violation]:
        """All violated invariants; empty list means the law is valid."""
        out: list[Violation] = []
        if not (np.isfinite(self.alpha) and 0.0 < self.alpha < 2.0):
            out.append(Violation(
                "AlphaOutOfRange",
                f"alpha must lie in (0, 2) (alpha = 0 is unsupported); got {self.alpha!r}",
            ))
        if not self.atoms:
            out.append(Violation("EmptyAtomList", "at least one spherical atom is required"))
            return out
        d = self.atoms[0].dim
        for k, atom in enumerate(self.atoms):
            if atom.dim != d:
                out.append(Violation(
                    "DimensionMismatch",
                    f"atom {k} has dimension {atom.dim}, expected {d}",
                ))
            n = float(np.linalg.norm(atom.direction))
            if not (np.isfinite(n) and abs(n - 1.0) <= UNIT_NORM_TOL):
                out.append(Violation(
                    "NonUnitDirection",
                    f"atom {k} direction has norm {n!r}, outside 1 +/- {UNIT_NORM_TOL}",
                ))
            if not (np.isfinite(atom.tempering) and atom.tempering > 0.0):
                out.append(Violation(
                    "NonPositiveTempering",
                    f"atom {k} tempering must be finite and > 0; got {atom.tempering!r}",
                ))
            if not (np.isfinite(atom.mass) and atom.mass > 0.0):
                out.append(Violation(
                    "NonPositiveMass",
                    f"atom {k} mass must be finite and > 0; got {atom.mass!r}",
                ))
        total = float(sum(a.mass for a in self.atoms))
        if not (np.isfinite(total) and total > 0.0):
            out.append(Violation(
                "NonPositiveMass", f"total spherical mass must be finite and > 0; got {total!r}",
            ))
        return out

    def validate(self) -> "ExpTemperedStable":
        """Return self if every invariant holds, else raise ValidationError."""
        v = self.violations()
        if v:
            raise ValidationError(v)
        return self

    # -- characteristic function --------------------------------------------

    def char_exponent(self, z) -> complex:
        """Log characteristic function at a real point z.

        Per atom, with u = <w, z> and s = beta - i*u (always Re s = beta > 0, so
        principal-branch powers and logs never touch the cut):

          alpha in (0,1):  Gamma(-alpha) * [s**alpha - beta**alpha]
          alpha in (1,2):  Gamma(-alpha) * [s**alpha - beta**alpha + i*u*alpha*beta**(alpha-1)]
          alpha = 1:       s*(log s - log beta) + i*u

        The alpha >= 1 branches use the fully compensated jump integral
        (e^{iur} - 1 - iur), which is the convention that makes the exponent
        vanish at z = 0.
        """
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if z.ndim != 1 or z.size != self.dim:
            raise DomainError(
                "DimensionMismatch", f"z must be a length-{self.dim} vector; got shape {z.shape}"
            )
        a = self.alpha
        u = self.directions() @ z
        beta = self.temperings()
        lam = self.masses()
        s = beta - 1j * u
        if a == 1.0:
            terms = s * (np.log(s) - np.log(beta)) + 1j * u
            terms = np.where(u == 0.0, 0.0, terms)  # exact normalization at z = 0
            return complex(np.sum(lam * terms))
        terms = s**a - beta**a
        if a > 1.0:
            terms = terms + 1j * u * a * beta ** (a - 1.0)
        terms = np.where(u == 0.0, 0.0, terms)
        return complex(_gamma(-a) * np.sum(lam * terms))

    def char_function(self, z) -> complex:
        """Characteristic function exp(char_exponent(z)); modulus never exceeds 1."""
        return complex(np.exp(self.char_exponent(z)))

    def cumulant_function(self, z) -> float:
        """Real cumulant function log E[exp(<z, X>)] for alpha in (0,1).

        Defined where beta - <w, z> > 0 for every atom.
        """
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(
                "AlphaOutOfRangeForMoments",
                f"cumulant function implemented for alpha in (0,1); got {self.alpha}",
            )
        z = np.atleast_1d(np.asarray(z, dtype=float))
        u = self.directions() @ z
        beta = self.temperings()
        if np.any(beta - u <= 0.0):
            raise DomainError("DimensionMismatch", "z outside the cumulant domain <w,z> < beta")
        a = self.alpha
        return float(_gamma(-a) * np.sum(self.masses() * ((beta - u) ** a - beta**a)))

    # -- Levy measure -------------------------------------------------------

    def levy_radial_density(self, atom_index: int, r: float) -> float:
        """Radial Levy density lam * exp(-beta*r) / r**(alpha+1) of one atom."""
        if not r > 0.0:
            raise DomainError("NonPositiveRadius", f"radius must be > 0; got {r!r}")
        atom = self.atoms[atom_index]
        return atom.mass * math.exp(-atom.tempering * r) / r ** (self.alpha + 1.0)

    def variation_class(self) -> VariationClass:
        """Finite variation (with infinite activity) iff alpha < 1."""
        if self.alpha < 1.0:
            return VariationClass.FINITE_VARIATION_INFINITE_ACTIVITY
        return VariationClass.INFINITE_VARIATION

    def spectral_atoms(self) -> tuple[SpectralAtom, ...]:
        """Spectral reparametrization: weight beta**alpha * lam placed at w / beta.

        Satisfies sum_k ||location_k||**alpha * weight_k == total spherical mass.
        """
        return tuple(
            SpectralAtom(location=a.direction / a.tempering,
                         weight=a.tempering**self.alpha * a.mass)
            for a in self.atoms
        )

    # -- moments --------------------------------------------------------------

    def moment_exists(self, k: float) -> bool:
        """Whether E||X||^k is finite.

        For k < alpha this is unconditional; for k >= alpha the criterion is a
        spherical integral that reduces to a finite sum over atoms, hence is
        always finite for this discrete representation.
        """
        if not k > 0.0:
            raise DomainError("InvalidParameters", f"moment order must be > 0; got {k!r}")
        a = self.alpha
        beta = self.temperings()
        lam = self.masses()
        if k < a:
            return True
        if k == a:
            crit = np.sum(np.where(beta > 1.0, beta**a * np.log(beta), 0.0) * lam)
        else:
            crit = np.sum(beta ** (-(k + a)) * lam)
        return bool(np.isfinite(crit))

    def mean_and_covariance(self) -> tuple[np.ndarray, np.ndarray]:
        """Mean vector and covariance matrix, valid for alpha in (0, 1).

        mean  = sum_w Gamma(1-alpha) * beta**(alpha-1) * lam * w
        cov   = sum_w Gamma(2-alpha) * beta**(alpha-2) * lam * w w^T
        """
        a = self.alpha
        if not (0.0 < a < 1.0):
            raise DomainError(
                "AlphaOutOfRangeForMoments",
                f"closed-form mean/covariance requires alpha in (0,1); got {a}",
            )
        w = self.directions()
        beta = self.temperings()
        lam = self.masses()
        mean = _gamma(1.0 - a) * (lam * beta ** (a - 1.0)) @ w
        cov = _gamma(2.0 - a) * (w.T * (lam * beta ** (a - 2.0))) @ w
        cov = 0.5 * (cov + cov.T)  # symmetrize roundoff
        return mean, cov

    # -- closure operations ---------------------------------------------------

    def convolve(self, other: "ExpTemperedStable") -> "ExpTemperedStable":
        """Law of the sum of independent draws: spherical masses add.

        Atoms sharing direction and tempering exactly are merged; all others are
        kept distinct.
        """
        if self.alpha != other.alpha:
            raise DomainError(
                "AlphaMismatch", f"alpha differs: {self.alpha} vs {other.alpha}"
            )
        if self.dim != other.dim:
            raise DomainError(
                "DimensionMismatch", f"dimension differs: {self.dim} vs {other.dim}"
            )
        merged: list[Atom] = []
        for atom in self.atoms + other.atoms:
            for i, m in enumerate(merged):
                if m.tempering == atom.tempering and np.array_equal(m.direction, atom.direction):
                    merged[i] = Atom(m.direction, m.tempering, m.mass + atom.mass)
                    break
            else:
                merged.append(atom)
        return ExpTemperedStable(self.alpha, tuple(merged))

    def scaled(self, c: float) -> "ExpTemperedStable":
        """Law of c * X for c > 0: tempering divides by c, mass picks up c**alpha."""
        if not c > 0.0:
            raise DomainError("NonPositiveScale", f"scale must be > 0; got {c!r}")
        return ExpTemperedStable(
            self.alpha,
            tuple(Atom(a.direction, a.tempering / c, a.mass * c**self.alpha)
                  for a in self.atoms),
        )

    # -- support ----------------------------------------------------------------

    def support_properties(self) -> SupportProperties:
        """Structural predicates on the spherical support.

        independent_components: every direction is axis-aligned (a signed
        canonical basis vector), i.e. the Levy measure lives on the coordinate
        axes.  full_dimensional: directions span R^d.  positive_orthant: no
        strictly negative direction component.
        """
        w = self.directions()
        axis = True
        for row in w:
            k = int(np.argmax(np.abs(row)))
            rest = np.delete(np.abs(row), k)
            if abs(abs(row[k]) - 1.0) > _AXIS_TOL or np.any(rest > _AXIS_TOL):
                axis = False
                break
        d = self.dim
        sv = np.linalg.svd(w, compute_uv=False)
        full = bool(w.shape[0] >= d and sv.size >= d and sv[d - 1] > _RANK_TOL)
        positive = bool(np.all(w >= -_ORTHANT_TOL))
        return SupportProperties(axis, full, positive)


def convolve(p1: ExpTemperedStable, p2: ExpTemperedStable) -> ExpTemperedStable:
    return p1.convolve(p2)


def scale(p: ExpTemperedStable, c: float) -> ExpTemperedStable:
    return p.scaled(c)
