# Sato subordinators: which tempered stable laws drive one, how the marginal
# law scales in time, and what the time-t and differential Levy measures look
# like.

import numpy as np

from satosub import Atom, ExpTemperedStable, ValidationError, make_sato

print("=== admissibility: alpha in (0,1) and positive-orthant directions ===")
good = ExpTemperedStable(0.5, (
    Atom(np.array([1.0, 0.0]), 1.0, 0.5),
    Atom(np.array([0.0, 1.0]), 2.0, 0.7),
))
law = make_sato(good, q=0.5)
print("alpha = 0.5 on the axes: accepted")

for alpha, direction in ((1.5, np.array([1.0])), (0.5, np.array([-1.0]))):
    try:
        make_sato(ExpTemperedStable(alpha, (Atom(direction, 1.0, 1.0),)), q=0.5)
    except ValidationError as err:
        print(f"alpha={alpha}, direction={direction}: rejected "
              f"({', '.join(v.code for v in err.violations)})")

print()
print("=== the time-t law is the t^q scaling of the unit-time law ===")
z = np.array([0.8, -0.3])
for t in (0.25, 1.0, 4.0):
    lhs = law.cf(t, z)
    rhs = law.base.char_function(t**law.q * z)
    print(f"t={t:>5}: cf = {lhs:.10f}   scaled base cf = {rhs:.10f}")

print()
print("=== time-t radial Levy density along the first axis ===")
one_ray = make_sato(ExpTemperedStable(0.5, (Atom(np.array([1.0]), 1.0, 1.0),)), q=0.5)
rs = np.geomspace(0.1, 4.0, 6)
header = "r      " + "".join(f"t={t:<12}" for t in (0.5, 1.0, 4.0))
print(header)
for r in rs:
    row = f"{r:6.3f} "
    for t in (0.5, 1.0, 4.0):
        row += f"{one_ray.levy_radial_at(t, 0, float(r)):<12.6f}"
    print(row)

print()
print("=== the differential measure integrates to the time-t measure ===")
from scipy.integrate import quad

t, r = 2.0, 0.8
integrated, _ = quad(lambda u: one_ray.differential_levy_radial(u, 0, r), 0.0, t)
direct = one_ray.levy_radial_at(t, 0, r)
print(f"integral of the differential density over (0, {t}] at r={r}: {integrated:.12f}")
print(f"time-{t} density at r={r}:                                 {direct:.12f}")
