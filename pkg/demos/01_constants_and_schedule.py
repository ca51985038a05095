"""
Scaling constants, phase schedules and the incremental ordering
===============================================================

Walk through how the scaling algorithm turns an XOS instance into a single
packing order that works for every knapsack capacity at once.
"""
import numpy as np

import inckap as ik
from inckap.algscale import SCALING_POLY, polynomial_residual

# The growth factor lambda is the real root of a degree-7 polynomial.
c = ik.compute_constants()
print("polynomial coefficients:", SCALING_POLY)
print(f"lambda = {c.lam:.15f}   |p(lambda)| = {abs(polynomial_residual(c.lam)):.1e}")
print(f"delta  = {c.delta:.15f}")

# numpy agrees: exactly one root is real
roots = np.roots(SCALING_POLY)
print("real roots:", roots[np.abs(roots.imag) < 1e-9].real)

# rho(M) switches from lambda*sqrt(M) to 2M once M exceeds (lambda/2)^2.
for M in (1, 2, 2.71, 4, 8):
    print(f"rho({M}) = {c.rho(M):.4f}")

# A small random instance: 8 elements, 3 clauses, singleton values in [1, 2].
inst = ik.gen_random_xos(8, 3, 2.0, seed=11)
print("\nweights:", np.round(inst.weights, 2))
print("clauses:\n", np.round(inst.clauses, 2))
print("M =", round(inst.M, 3))

# The optimum value as a function of capacity is a step function.
table = ik.breakpoints(inst)
print("\nfirst breakpoints of f*:")
for C, v in list(zip(table.capacities, table.values))[:8]:
    print(f"  C = {C:7.3f}   f* = {v:.3f}")

# The schedule grows capacity by at least delta and value by at least rho.
sched = ik.phase_schedule(inst)
print("\nphase capacities:", np.round(sched.capacities, 3))
print("phase values:    ", np.round(sched.values, 3))

ordering = ik.build_ordering(inst)
curve = ik.competitive_ratio(inst, ordering)
print("\norder:", ordering.order)
print(f"worst ratio {curve.overall:.4f} at C = {curve.worst_capacity:.3f}; rho = {c.rho(inst.M):.4f}")
print(curve.to_csv().splitlines()[:6])
