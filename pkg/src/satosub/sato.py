"""Sato subordinators: self-similar additive processes with increasing paths.

The time-t law of a Sato process with exponent q is the t**q scaling of its
unit-time law, so the characteristic function at time t is the unit-time one
evaluated at t**q * z.  A tempered stable law drives a valid subordinator
exactly when alpha in (0, 1) and every jump direction lies in the closed
positive orthant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError, Violation
from .tempered import ExpTemperedStable, _ORTHANT_TOL


@dataclass(frozen=True, eq=False)
class SatoSubordinator:
    """Unit-time tempered stable law plus the self-similarity exponent q > 0.

    Zero drift throughout: the process is the pure-jump Sato process of ``base``.
    """

    base: ExpTemperedStable
    q: float

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q))

    @property
    def dim(self) -> int:
        return self.base.dim

    def violations(self) -> list[Violation]:
        out = list(self.base.violations())
        if not (0.0 < self.base.alpha < 1.0):
            out.append(Violation(
                "AlphaNotInZeroOne",
                f"a subordinator requires alpha in (0,1); got {self.base.alpha!r}",
            ))
        if self.base.atoms and not all(
            np.all(a.direction >= -_ORTHANT_TOL) for a in self.base.atoms
        ):
            out.append(Violation(
                "SupportNotPositiveOrthant",
                "every jump direction must lie in the closed positive orthant",
            ))
        if not (np.isfinite(self.q) and self.q > 0.0):
            out.append(Violation(
                "NonPositiveExponent", f"self-similarity exponent must be > 0; got {self.q!r}",
            ))
        return out

    def validate(self) -> "SatoSubordinator":
        v = self.violations()
        if v:
            raise ValidationError(v)
        return self

    # -- marginal law ---------------------------------------------------------

    def cf(self, t: float, z) -> complex:
        """Characteristic function at time t: unit-time CF evaluated at t**q * z."""
        if not t > 0.0:
            raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
        z = np.atleast_1d(np.asarray(z, dtype=float))
        return self.base.char_function(t**self.q * z)

    def char_exponent(self, t: float, z) -> complex:
        if not t > 0.0:
            raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
        z = np.atleast_1d(np.asarray(z, dtype=float))
        return self.base.char_exponent(t**self.q * z)

    # -- time-t and differential Levy measures --------------------------------

    def levy_radial_at(self, t: float, atom_index: int, r: float) -> float:
        """Radial density of the time-t Levy measure of one atom:

        lam * t**(alpha*q) * exp(-beta * r * t**(-q)) / r**(alpha+1)
        """
        if not t > 0.0:
            raise DomainError("NonPositiveTime", f"time must be > 0; got {t!r}")
        if not r > 0.0:
            raise DomainError("NonPositiveRadius", f"radius must be > 0; got {r!r}")
        atom = self.base.atoms[atom_index]
        a, q = self.base.alpha, self.q
        return (
            atom.mass * t ** (a * q)
            * math.exp(-atom.tempering * r * t**-q) / r ** (a + 1.0)
        )

    def differential_levy_radial(self, u: float, atom_index: int, r: float) -> float:
        """Time derivative of the time-t radial Levy density, evaluated at time u:

        lam * exp(-beta*r*u**(-q)) * q * u**(alpha*q - 1) * (beta*r*u**(-q) + alpha) / r**(alpha+1)

        Integrating this over u in [0, t] recovers levy_radial_at(t, ...).
        """
        if not u > 0.0:
            raise DomainError("NonPositiveTime", f"time must be > 0; got {u!r}")
        if not r > 0.0:
            raise DomainError("NonPositiveRadius", f"radius must be > 0; got {r!r}")
        atom = self.base.atoms[atom_index]
        a, q = self.base.alpha, self.q
        x = atom.tempering * r * u**-q
        return atom.mass * math.exp(-x) * q * u ** (a * q - 1.0) * (x + a) / r ** (a + 1.0)


def make_sato(dist: ExpTemperedStable, q: float) -> SatoSubordinator:
    """Build and validate a Sato subordinator driven by ``dist``."""
    return SatoSubordinator(dist, q).validate()
