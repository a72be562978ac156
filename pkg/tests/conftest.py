import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from satosub import Atom, ExpTemperedStable, NigFactorModel, NigMarginal

# Bundled CD/CS marginal parameters used throughout the suite.
CD = NigMarginal(gamma=51.7708, beta=-5.0441, delta=0.0112)
CS = NigMarginal(gamma=108.3392, beta=-12.8277, delta=0.0076)


def make_model(a=0.5671, rho=0.5, q=0.5, marginals=(CD, CS)) -> NigFactorModel:
    d = len(marginals)
    corr = np.full((d, d), float(rho))
    np.fill_diagonal(corr, 1.0)
    return NigFactorModel(tuple(marginals), a, corr, q).validate()


def random_direction(rng, d: int) -> np.ndarray:
    v = rng.standard_normal(d)
    while np.linalg.norm(v) < 1e-6:
        v = rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_distribution(rng, d=None, alpha=None, n_atoms=None,
                        positive=False) -> ExpTemperedStable:
    d = d if d is not None else int(rng.integers(1, 4))
    alpha = alpha if alpha is not None else float(rng.uniform(0.05, 1.95))
    n_atoms = n_atoms if n_atoms is not None else int(rng.integers(1, 5))
    atoms = []
    for _ in range(n_atoms):
        w = random_direction(rng, d)
        if positive:
            w = np.abs(w)
        atoms.append(Atom(w, float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.2, 3.0))))
    return ExpTemperedStable(alpha, tuple(atoms)).validate()


def pole_safe_alpha(rng) -> float:
    """Stability index for exact-identity tests.

    Near alpha = 1 the Gamma(-alpha) pole makes the exponent itself diverge, so
    float roundoff in the CF grows like eps/|1 - alpha|; exactly 1 uses its own
    closed form and stays well conditioned, so it is drawn with positive mass.
    """
    if rng.random() < 0.15:
        return 1.0
    a = float(rng.uniform(0.1, 1.9))
    while 0.95 < a < 1.05:
        a = float(rng.uniform(0.1, 1.9))
    return a


def identity_distribution(rng, d=None, alpha=None) -> ExpTemperedStable:
    """Moderate-scale law for which CF identities hold to 1e-13 in float64."""
    d = d if d is not None else int(rng.integers(1, 4))
    alpha = alpha if alpha is not None else pole_safe_alpha(rng)
    atoms = tuple(
        Atom(random_direction(rng, d), float(rng.uniform(0.3, 2.0)),
             float(rng.uniform(0.2, 1.5)))
        for _ in range(int(rng.integers(1, 4)))
    )
    return ExpTemperedStable(alpha, atoms).validate()


def random_model(rng, d: int = 2) -> NigFactorModel:
    marginals = tuple(
        NigMarginal(
            gamma=float(rng.uniform(5.0, 120.0)),
            beta=float(rng.uniform(-4.0, 4.0)),
            delta=float(rng.uniform(0.005, 0.1)),
        )
        for _ in range(d)
    )
    bound = min(m.zeta for m in marginals)
    a = float(rng.uniform(0.1, 0.95)) * bound
    # equicorrelation stays positive semidefinite only above -1/(d-1)
    low = max(-0.95, -1.0 / (d - 1) + 0.05) if d > 1 else 0.0
    r = float(rng.uniform(low, 0.95))
    rho = np.full((d, d), r)
    np.fill_diagonal(rho, 1.0)
    q = float(rng.uniform(0.2, 1.8))
    return NigFactorModel(marginals, a, rho, q).validate()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
