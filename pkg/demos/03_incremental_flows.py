"""
Building a network one edge at a time
=====================================

Quickest-Increment repeatedly buys the fewest new edges that raise the
maximum s-t flow by one unit.  Its order is never worse than a factor 2
from the best subgraph of the same size.
"""
import inckap as ik
from inckap.flows import gen_random_graph, batch_bound_violations, optimum_by_count

# Two disjoint four-edge paths and a chord that makes a three-edge path.
fi = ik.fig1_graph()
for i, (u, v) in enumerate(fi.edges):
    print(f"edge {i}: {u} -> {v}")

trace = ik.quickest_increment(fi)
print("\nbatches:", trace.batches)
print("fewest edges for flow j:", trace.c)
print("f*(k) for k = 0..9:", optimum_by_count(fi).astype(int).tolist())

curve = ik.flow_ratio(fi, trace.order)
print(curve.to_csv(label="k", skip_empty=False))

# The chord path is the only cheap way to get one unit, but it blocks both
# long paths from being completed cheaply later.  Nothing does better than 2.
order, r = ik.best_flow_ordering(fi)
print("best ordering", order, "ratio", r)

# A few random DAGs: ratio at most 2 and the batch-size bound holds.
for seed in range(5):
    g = gen_random_graph(7, 14, seed)
    t = ik.quickest_increment(g)
    print(
        f"seed {seed}: max flow {t.x_max}, batch sizes {t.sizes}, "
        f"ratio {ik.flow_ratio(g, t.order).overall:.3f}, bound violations {len(batch_bound_violations(t))}"
    )
