"""
Why no ordering can be perfect
==============================

Two tiny instances where every packing order has a bad capacity, found by
exhaustive branch and bound over all orderings.
"""
import math

import inckap as ik

# Two elements: a light one worth 1 and a heavy one worth M.  Whatever comes
# first, some capacity punishes it by a factor of M.
for M in (1, 2, 4):
    inst = ik.gen_m_bound(M)
    forward = ik.competitive_ratio(inst, (0, 1)).overall
    backward = ik.competitive_ratio(inst, (1, 0)).overall
    best, r = ik.best_ordering(inst)
    print(f"M={M}: light-first {forward}, heavy-first {backward}, best {r} via {best.order}")

# Ten unit-valued elements in three weight groups.  Searching all 10!
# orderings shows nothing beats sqrt(6) even though every element is worth 1.
inst = ik.gen_sqrt6()
best, r = ik.best_ordering(inst)
print(f"\nsqrt6 instance: best ratio {r:.12f} (sqrt 6 = {math.sqrt(6):.12f})")
print("an optimal order:", [e + 1 for e in best.order])

curve = ik.competitive_ratio(inst, best)
for C, o, a, q in curve.rows():
    if q >= 2:
        print(f"  tight at C = {C:g}: opt {o:.4f}, alg {a:.4f}, ratio {q:.4f}")

# The scaling ordering stays within its guarantee on the same instance.
alg = ik.build_ordering(inst)
print("scaling ordering ratio:", round(ik.competitive_ratio(inst, alg).overall, 4))
