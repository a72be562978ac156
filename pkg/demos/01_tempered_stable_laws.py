# Building multivariate exponentially tempered stable laws and evaluating
# their closed forms: characteristic function, Levy densities, moments,
# spectral reparametrization, and closure under convolution and scaling.

import math

import numpy as np

from satosub import Atom, ExpTemperedStable

print("=== one-dimensional law with two-sided jumps (CGMY-style) ===")
# positive jumps tempered at rate M, negative jumps at rate G
C, G, M, Y = 0.5, 3.0, 5.0, 0.8
cgmy = ExpTemperedStable(Y, (
    Atom(np.array([1.0]), M, C),
    Atom(np.array([-1.0]), G, C),
)).validate()
print(f"variation class: {cgmy.variation_class().value}")
for z in (0.5, 2.0):
    print(f"cf({z:>4}) = {cgmy.char_function([z]):.10f}")

print()
print("=== inverse Gaussian as the alpha = 1/2 special case ===")
# a single atom with tempering b^2/2 and mass a/sqrt(2*pi) is IG(a, b)
a, b = 1.0, 2.0
ig = ExpTemperedStable(0.5, (Atom(np.array([1.0]), b * b / 2, a / math.sqrt(2 * math.pi)),))
ig = ig.validate()
u = 0.7
closed = np.exp(-a * (np.sqrt(b * b - 2j * u) - b))
print(f"atom route:   {ig.char_function([u]):.12f}")
print(f"IG formula:   {closed:.12f}")

print()
print("=== a two-dimensional law with a common direction ===")
w = np.array([1.0, 1.0]) / math.sqrt(2.0)
joint = ExpTemperedStable(0.5, (
    Atom(np.array([1.0, 0.0]), 1.0, 0.6),
    Atom(np.array([0.0, 1.0]), 2.0, 0.8),
    Atom(w, 1.5, 0.4),
)).validate()
props = joint.support_properties()
print(f"independent components: {props.independent_components}")
print(f"full dimensional:       {props.full_dimensional}")
print(f"positive orthant:       {props.positive_orthant}")

mean, cov = joint.mean_and_covariance()
print(f"mean = {mean}")
print(f"covariance =\n{cov}")

print()
print("=== spectral atoms and the mass identity ===")
total = 0.0
for s in joint.spectral_atoms():
    total += np.linalg.norm(s.location) ** joint.alpha * s.weight
    print(f"location {s.location}, weight {s.weight:.6f}")
print(f"sum ||x||^alpha * weight = {total:.12f}  "
      f"(spherical mass = {sum(at.mass for at in joint.atoms):.12f})")

print()
print("=== closure: convolution adds masses, scaling shifts tempering ===")
double = joint.convolve(joint)
print(f"masses after self-convolution: {[round(at.mass, 3) for at in double.atoms]}")
half = joint.scaled(0.5)
print(f"temperings after scaling by 0.5: {[round(at.tempering, 3) for at in half.atoms]}")
z = np.array([0.4, -0.9])
print(f"cf identity check: {joint.scaled(0.5).char_function(z):.10f} "
      f"== {joint.char_function(0.5 * z):.10f}")
