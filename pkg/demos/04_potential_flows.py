"""
Potential-driven flows on parallel pipes
========================================

With a shared potential difference p, pipe e carries psi^-1(p / beta_e) and
breaks if that exceeds its capacity mu_e.  The best total flow from a set
of pipes is an XOS function, so the knapsack machinery applies directly.
"""
import itertools

import numpy as np

import inckap as ik
from inckap.flows import potential_value_at

pi = ik.PotentialInstance(beta=(1.0, 2.0, 0.5), mu=(1.5, 1.0, 2.0), psi="quadratic")
print("candidate potentials:", np.round(pi.candidate_potentials(), 3))

inst = ik.potential_to_xos(pi)
print("clauses (one per candidate potential):\n", np.round(inst.clauses, 3))

# Compare the compiled XOS value with a brute-force sweep over p.
grid = np.linspace(0, 10, 2001)
for size in range(1, 4):
    for S in itertools.combinations(range(3), size):
        sweep = max(
            potential_value_at(pi, sub, p)
            for k in range(1, size + 1)
            for sub in itertools.combinations(S, k)
            for p in grid
        )
        print(f"S={S}: xos {ik.evaluate(inst, S):.4f}   oracle {ik.potential_eval_oracle(pi, S):.4f}   grid {sweep:.4f}")

# Give the pipes construction costs and ask for an incremental build order.
pi = ik.PotentialInstance(beta=(1.0, 2.0, 0.5, 1.2), mu=(1.5, 1.0, 2.0, 1.8), weights=(2.0, 1.0, 3.0, 2.5))
inst = ik.potential_to_xos(pi)
ordering = ik.build_ordering(inst)
curve = ik.competitive_ratio(inst, ordering)
print("\nbuild order:", ordering.order, "ratio", round(curve.overall, 4), "M", round(inst.M, 3))
