"""Instances, strategies, costs, and restriction.

An instance is a rooted tree with nonnegative node weights. A strategy is a
binary decision tree of edge queries: "is the marked node inside the subtree
below this edge?" -- YES goes right, NO goes left, and every leaf names the
node pinned down by the answers. The cost is the weighted sum of leaf
depths, i.e. the expected number of queries up to normalization.
"""

from treesearch import (
    Leaf,
    NodePiece,
    Query,
    cost,
    format_decision_tree,
    format_instance,
    leaf_depths,
    parse_instance,
    restrict,
    uninformative_ancestor_counts,
    validate,
)

# The path 0 -> 1 -> 2 with unit weights, in the text format the CLI uses.
path = parse_instance("""\
3 0
0 -1 1
1 0 1
2 1 1
""")
print("instance:")
print(format_instance(path))

# Query node 1 first ("is the marked node below edge (0,1)?"), then node 2.
strategy = Query(1, no=Leaf(0), yes=Query(2, no=Leaf(1), yes=Leaf(2)))
print("strategy:")
print(format_decision_tree(strategy))
print("valid:", validate(strategy, path).ok)
print("cost:", cost(strategy, path), "(leaf depths:", leaf_depths(strategy), ")")

# An invalid strategy is rejected with diagnostics, not silently costed.
swapped = Query(1, no=Leaf(1), yes=Query(2, no=Leaf(0), yes=Leaf(2)))
print("\nswapped leaves ->", validate(swapped, path).violations)

# Restriction prunes a strategy down to a connected piece of the instance.
# Surviving leaves rise by exactly the number of ancestors whose query said
# nothing about the piece (outside queries, plus the piece's own top).
piece = NodePiece.of(path, [1, 2])
pruned = restrict(strategy, path, piece)
print("\nrestricted to {1, 2}:")
print(format_decision_tree(pruned))
print("depth drops:", uninformative_ancestor_counts(strategy, piece))
