"""The constructive hardness reduction from Exact 3-Set Cover.

An X3C family becomes a diameter-4 tree-search instance whose optimal
strategies are exactly the "realizations": per set either an A-configuration
(query the set's hub first) or a B-configuration (query its heavy twin t_i
first). The weights are engineered so the cost saved by B-configuring a
family Y reaches half the total element weight iff Y is an exact cover --
that threshold is the whole NP-hardness argument, and it is checkable.
"""

from treesearch import (
    X3CInstance,
    build_T,
    build_Tb,
    cost_gap,
    cover_threshold,
    decide_cover,
    gamma,
    pi_names,
    tree_diameter,
    x3c_brute,
)

# The running example: U = {a..f}, sets {a,b,c}, {b,c,d}, {d,e,f}, {b,e,f}.
inst = X3CInstance.of(6, [(0, 1, 2), (1, 2, 3), (3, 4, 5), (1, 4, 5)])
print("Pi:", " ".join(pi_names(inst)))
print("gamma(1,j):", [gamma(inst, 0, j) for j in range(3)],
      " gamma(4,j):", [gamma(inst, 3, j) for j in range(3)])

red = build_T(inst)
print("\ndiameter-4 tree: n =", red.instance.n, " diameter =", tree_diameter(red.instance))
print("element weights (stored doubled):", red.element_weight)
print("largest weight has", max(red.instance.weight).bit_length(), "bits")

redb = build_Tb(inst)
degrees = [len(redb.instance.children[v]) + (0 if v == redb.instance.root else 1)
           for v in range(redb.instance.n)]
print("degree-16 variant: n =", redb.instance.n, " max degree =", max(degrees))

# Sweep all 16 realizations; cost_gap also re-derives each gap through the
# level-accounting identities and raises if they ever disagree.
print("\n  Y             gap reaches threshold?")
threshold = cover_threshold(red)
for bits in range(16):
    spec = frozenset(i for i in range(4) if bits >> i & 1)
    gap = cost_gap(red, spec)
    mark = "<- exact cover" if gap >= threshold else ""
    print(f"  {str(sorted(i + 1 for i in spec)):<14}{gap:>24,} {mark}")
print(f"  threshold: {threshold:>36,}")

print("\ndecide_cover(T):", decide_cover(red),
      "  decide_cover(T^b):", decide_cover(redb),
      "  brute force:", x3c_brute(inst))

# A no-instance for contrast: three pairwise-overlapping sets.
no = X3CInstance.of(6, [(0, 1, 2), (2, 3, 4), (1, 3, 5)])
print("overlapping family ->", decide_cover(build_T(no)), "/ brute:", x3c_brute(no))
