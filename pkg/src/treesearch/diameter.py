"""Polynomial exact solvers for the easy diameter classes.

Diameter <= 2 (stars): query the edges in decreasing weight of the node they
isolate; the center is pinned to the deepest level by structure, so the
exchange argument gives optimality in O(n log n).

Diameter 3: two adjacent centers r, r' with every other node a leaf on one
of them. The root of an optimal strategy queries the edge between the
centers, the heaviest remaining r-leaf, or the heaviest remaining r'-leaf,
so a dynamic program over (heaviest-leaves-removed-from-r,
heaviest-leaves-removed-from-r') counts O(n^2) states; querying the center
edge leaves two stars.

Both solvers work on the unrooted structure; queries are encoded against the
instance's rooting (an edge is queried by its child endpoint).
"""

from __future__ import annotations

from typing import Optional

from .errors import InvalidInstanceError
from .model import DecisionNode, InputTree, Leaf, Query


def _adjacency(tree: InputTree) -> list[list[int]]:
    adj = [[] for _ in range(tree.n)]
    for v in range(tree.n):
        if v != tree.root:
            adj[v].append(tree.parent[v])
            adj[tree.parent[v]].append(v)
    return adj


def _farthest(adj, start: int) -> tuple[int, int, list[int]]:
    prev = [-1] * len(adj)
    prev[start] = start
    frontier = [start]
    last, dist = start, 0
    d = 0
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if prev[v] == -1:
                    prev[v] = u
                    nxt.append(v)
        if nxt:
            d += 1
            last, dist = nxt[0], d
        frontier = nxt
    return last, dist, prev


def tree_diameter(tree: InputTree) -> int:
    """Diameter of the unrooted tree (longest path, in edges)."""
    if tree.n == 1:
        return 0
    adj = _adjacency(tree)
    a, _, _ = _farthest(adj, 0)
    _, d, _ = _farthest(adj, a)
    return d


def _diameter_path(tree: InputTree) -> list[int]:
    adj = _adjacency(tree)
    a, _, _ = _farthest(adj, 0)
    b, _, prev = _farthest(adj, a)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path


def _isolating_query(tree: InputTree, center: int, x: int, rest: DecisionNode) -> DecisionNode:
    """Query the edge {center, x} so that x lands on a leaf and the rest continues."""
    if tree.parent[x] == center:
        return Query(x, no=rest, yes=Leaf(x))
    # x is the center's parent: the query names the center and x is the NO side.
    return Query(center, no=Leaf(x), yes=rest)


def _sequential_star(tree: InputTree, center: int, leaves: list[int]) -> DecisionNode:
    node: DecisionNode = Leaf(center)
    for x in reversed(leaves):
        node = _isolating_query(tree, center, x, node)
    return node


def _star_cost(tree: InputTree, center: int, leaves: list[int]) -> int:
    total = sum((i + 1) * tree.weight[x] for i, x in enumerate(leaves))
    return total + len(leaves) * tree.weight[center]


def solve_star(tree: InputTree) -> tuple[int, DecisionNode]:
    """Exact optimum for diameter <= 2: isolate nodes in decreasing weight."""
    if tree.n == 1:
        return 0, Leaf(tree.root)
    if tree_diameter(tree) > 2:
        raise InvalidInstanceError("solve_star requires diameter <= 2")
    adj = _adjacency(tree)
    degrees = [len(a) for a in adj]
    center = max(range(tree.n), key=lambda v: (degrees[v], -v))
    others = sorted((v for v in range(tree.n) if v != center),
                    key=lambda v: (-tree.weight[v], v))
    strategy = _sequential_star(tree, center, others)
    return _star_cost(tree, center, others), strategy


def solve_diam3(tree: InputTree, stats: Optional[dict] = None) -> tuple[int, DecisionNode]:
    """Exact optimum for diameter <= 3 by the two-center dynamic program.

    ``stats``, when given, receives {"states": <number of DP states evaluated>}.
    """
    steps = 0
    diam = tree_diameter(tree)
    if diam > 3:
        raise InvalidInstanceError("solve_diam3 requires diameter <= 3")
    if diam <= 2:
        c, strategy = solve_star(tree)
        if stats is not None:
            stats["states"] = tree.n
        return c, strategy

    path = _diameter_path(tree)  # 4 nodes: leaf, center, center, leaf
    c1, c2 = path[1], path[2]
    r, rp = (c1, c2) if c1 < c2 else (c2, c1)
    w = tree.weight
    adj = _adjacency(tree)
    r_leaves = sorted((v for v in adj[r] if v != rp), key=lambda v: (-w[v], v))
    rp_leaves = sorted((v for v in adj[rp] if v != r), key=lambda v: (-w[v], v))

    # Suffix sums over the sorted leaf lists: weight and sequential cost of
    # the star piece that remains after dropping the a heaviest leaves.
    def suffixes(leaves):
        ws = [0] * (len(leaves) + 1)
        seq = [0] * (len(leaves) + 1)
        for a in range(len(leaves) - 1, -1, -1):
            ws[a] = ws[a + 1] + w[leaves[a]]
            # dropping a leaves: ranks shift, cost = sum (k-a) * w_k
            seq[a] = seq[a + 1] + ws[a]
        return ws, seq

    r_ws, r_seq = suffixes(r_leaves)
    rp_ws, rp_seq = suffixes(rp_leaves)

    def star_r(a: int) -> int:
        return r_seq[a] + (len(r_leaves) - a) * w[r]

    def star_rp(b: int) -> int:
        return rp_seq[b] + (len(rp_leaves) - b) * w[rp]

    memo: dict[tuple[int, int], tuple[int, str]] = {}

    def solve(a: int, b: int) -> tuple[int, str]:
        nonlocal steps
        hit = memo.get((a, b))
        if hit is not None:
            return hit
        steps += 1
        piece_w = w[r] + w[rp] + r_ws[a] + rp_ws[b]
        # Candidate roots: split the centers, or isolate the heaviest leaf.
        best = piece_w + star_r(a) + star_rp(b)
        tag = "split"
        if a < len(r_leaves):
            c = piece_w + solve(a + 1, b)[0]
            if c < best:
                best, tag = c, "r"
        if b < len(rp_leaves):
            c = piece_w + solve(a, b + 1)[0]
            if c < best:
                best, tag = c, "rp"
        memo[(a, b)] = (best, tag)
        return memo[(a, b)]

    total, _ = solve(0, 0)

    def build(a: int, b: int) -> DecisionNode:
        tag = memo[(a, b)][1]
        if tag == "r":
            x = r_leaves[a]
            return _isolating_query(tree, r, x, build(a + 1, b))
        if tag == "rp":
            x = rp_leaves[b]
            return _isolating_query(tree, rp, x, build(a, b + 1))
        # Query the center edge; each side is a star.
        r_star = _sequential_star(tree, r, r_leaves[a:])
        rp_star = _sequential_star(tree, rp, rp_leaves[b:])
        if tree.parent[rp] == r:
            return Query(rp, no=r_star, yes=rp_star)
        return Query(r, no=rp_star, yes=r_star)

    strategy = build(0, 0)
    if stats is not None:
        stats["states"] = steps
    return total, strategy
