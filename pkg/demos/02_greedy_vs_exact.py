"""The greedy 2-approximation against the exact oracle.

Greedy always queries the node splitting the remaining weight most evenly.
Its cost never exceeds twice the optimum; this sweep measures how tight that
is in practice on every tree shape with up to 8 nodes.
"""

import random

from treesearch import InputTree, cost, greedy, opt_cost
from treesearch.gen import all_tree_shapes, unit_weights

rng = random.Random(0)
worst = (1.0, None)
total = 0
for n in range(2, 9):
    for parents in all_tree_shapes(n):
        for w in (unit_weights(n), [rng.randint(1, 10) for _ in range(n)]):
            tree = InputTree(parents, w)
            best, _ = opt_cost(tree)
            g = cost(greedy(tree), tree, check=False)
            total += 1
            ratio = g / best
            if ratio > worst[0]:
                worst = (ratio, (parents, tuple(w), g, best))

print(f"checked {total} instances (all shapes n <= 8, two weight profiles)")
print(f"worst greedy/OPT ratio: {worst[0]:.4f}")
parents, w, g, best = worst[1]
print(f"  on parents={parents} weights={w}: greedy {g} vs optimal {best}")

# A star where greedy is exactly optimal: split weights pair up evenly.
star = InputTree([-1, 0, 0, 0], [0, 3, 2, 1])
print("\nstar with leaf weights 3,2,1: greedy", cost(greedy(star), star),
      "oracle", opt_cost(star)[0])
