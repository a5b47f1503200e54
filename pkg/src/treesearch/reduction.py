"""Constructive hardness reduction: Exact 3-Set Cover (multiplicity <= 3)
instances into tree-search instances, plus the realization machinery and the
cost-gap identities that certify the construction.

Ordering. Elements 0..n-1 carry their natural order; a set {x1<x2<x3}
precedes {y1<y2<y3} iff (x3,x2,x1) < (y3,y2,y1) lexicographically, and an
element u precedes a set iff u <= x3. The merged order Pi lists all elements
and sets; each set lands right after its maximum element, and multiplicity
<= 3 keeps runs of consecutive sets at length <= 3.

Construction (diameter-4 variant). A root r; per set i a height-1 subtree
with root r_i and leaves t_i, s_i1, s_i2, s_i3 (s_ij stands for the j-th
smallest element of the set), plus four leaves a_i1..a_i4 under r. Weights
follow the recurrence along Pi:

    w(u_1) = 1
    w(u_j) = 1 + 6 * max(|T|^3 * w(u_{j-1}), W_{u_j})
    w(a_i*) = W_{u_i1} + W_{u_i2} + W_{u_i3} + sum_j gamma(i,j) * w(u_ij)
    w(t_i)  = w(a_i1) + w(X_i) / 2

with W_u the total leaf weight of the sets preceding u in Pi. w(X_i)/2 need
not be integral, so every stored weight is doubled (a global rescale; optima
and the decision threshold scale along). The degree-16 variant T^b groups
Pi-consecutive sets under hub nodes h_i strung on a spine z_1..z_p.

A realization w.r.t. Y walks Pi right to left and stacks blocks: per set its
A-configuration (query r_i; YES side resolves t_i, s_i3.. s_i1; NO side runs
a_i1..a_i4) or, when the set is in Y, its B-configuration (query t_i, then
a_i1..a_i4); per element a run of queries for its still-unresolved s-leaves.
Zero-weight structural nodes are resolved at the bottom. The construction's
guarantees (gamma >= 3, the level-accounting gap identities, the cover
threshold) are all checkable and checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInstanceError, ResourceLimitError, TreeSearchError
from .exact import opt_cost
from .model import DecisionNode, InputTree, Leaf, Query, cost, query_depths


@dataclass(frozen=True)
class X3CInstance:
    """An Exact 3-Set Cover instance with multiplicity <= 3.

    Construction canonicalizes: each triple is sorted ascending and the
    family is sorted by the reverse-lexicographic set order, so ``sets[i]``
    is the i-th set in that order (displayed as X_{i+1}). Duplicates are
    kept; they end up adjacent.
    """

    universe_size: int
    sets: tuple[tuple[int, int, int], ...]

    @staticmethod
    def of(universe_size: int, family: Iterable[Sequence[int]]) -> "X3CInstance":
        n = universe_size
        if n <= 0 or n % 3:
            raise InvalidInstanceError("universe size must be a positive multiple of 3")
        count = [0] * n
        for s in family:
            trip = tuple(sorted(int(e) for e in s))
            if len(trip) != 3 or len(set(trip)) != 3:
                raise InvalidInstanceError(f"not a 3-element set: {tuple(s)}")
            for e in trip:
                if not 0 <= e < n:
                    raise InvalidInstanceError(f"element {e} out of range 0..{n - 1}")
                count[e] += 1
        for e, k in enumerate(count):
            if k > 3:
                raise InvalidInstanceError(f"element {e} appears in {k} > 3 sets")
        canon = sorted((tuple(sorted(s)) for s in family),
                       key=lambda t: (t[2], t[1], t[0]))
        return X3CInstance(n, tuple(canon))

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def k(self) -> int:
        return self.universe_size // 3


PiItem = tuple[str, int]  # ("u", element) or ("X", set index)


def pi_sequence(inst: X3CInstance) -> tuple[PiItem, ...]:
    """The merged order over elements and sets: each set follows its maximum."""
    by_max: dict[int, list[int]] = {}
    for i, s in enumerate(inst.sets):
        by_max.setdefault(s[2], []).append(i)
    out: list[PiItem] = []
    for j in range(inst.universe_size):
        out.append(("u", j))
        for i in by_max.get(j, ()):
            out.append(("X", i))
    return tuple(out)


def pi_names(inst: X3CInstance) -> list[str]:
    """Display names along Pi: letters a.. for small universes, X1..Xm for sets."""
    names = []
    for kind, idx in pi_sequence(inst):
        if kind == "u":
            names.append(chr(ord("a") + idx) if inst.universe_size <= 26 else f"u{idx + 1}")
        else:
            names.append(f"X{idx + 1}")
    return names


def gamma(inst: X3CInstance, i: int, j: int) -> int:
    """Level-accounting quantity gamma(i, j); i is a 0-based set index and
    j in {0,1,2} picks the j-th smallest element of the set. Always >= 3."""
    if not 0 <= i < inst.m:
        raise InvalidInstanceError(f"set index {i} out of range")
    if j not in (0, 1, 2):
        raise InvalidInstanceError(f"element position {j} must be 0, 1 or 2")
    pi = pi_sequence(inst)
    u = inst.sets[i][j]
    pos_u = pi.index(("u", u))
    pos_x = pi.index(("X", i))
    elems_between = sum(1 for kind, _ in pi[pos_u + 1:pos_x] if kind == "u")
    sets_upto = sum(1 for kind, _ in pi[pos_u + 1:pos_x + 1] if kind == "X")
    return (j + 1) - 5 + elems_between + 5 * sets_upto


@dataclass
class ReductionOutput:
    """A generated tree-search instance with its role bookkeeping.

    All weights stored on the instance are twice the recurrence's values
    (``weights_doubled``), which keeps w(t_i) integral; costs, gaps and the
    cover threshold scale by the same factor, so decisions are unchanged.
    """

    instance: InputTree
    variant: str  # "diam4" or "deg16"
    x3c: X3CInstance
    pi: tuple[PiItem, ...]
    root: int
    r_nodes: tuple[int, ...]
    t_nodes: tuple[int, ...]
    s_nodes: tuple[tuple[int, int, int], ...]
    a_nodes: tuple[tuple[int, int, int, int], ...]
    h_nodes: tuple[int, ...]
    z_nodes: tuple[int, ...]
    element_weight: tuple[int, ...]  # doubled w(u_j)
    element_leaves: tuple[tuple[int, ...], ...]
    big_w: tuple[int, ...]  # doubled W_{u_j}
    gammas: tuple[tuple[int, int, int], ...]
    weights_doubled: bool = True

    def set_weight(self, i: int) -> int:
        """Doubled w(X_i): total element weight of set i."""
        return sum(self.element_weight[u] for u in self.x3c.sets[i])


def _reduction_weights(inst: X3CInstance, tree_size: int):
    """Doubled weights along Pi: element weights, W_u, a- and t-weights."""
    n, m = inst.universe_size, inst.m
    cube = tree_size ** 3
    ew = [0] * n
    big_w = [0] * n
    wa = [0] * m
    wt = [0] * m
    gammas = [tuple(gamma(inst, i, j) for j in range(3)) for i in range(m)]
    running = 0  # doubled total weight of the leaf sets placed so far
    for kind, idx in pi_sequence(inst):
        if kind == "u":
            big_w[idx] = running
            ew[idx] = 2 if idx == 0 else 2 + 6 * max(cube * ew[idx - 1], running)
        else:
            u1, u2, u3 = inst.sets[idx]
            g = gammas[idx]
            wa[idx] = (big_w[u1] + big_w[u2] + big_w[u3]
                       + g[0] * ew[u1] + g[1] * ew[u2] + g[2] * ew[u3])
            wx = ew[u1] + ew[u2] + ew[u3]
            wt[idx] = wa[idx] + wx // 2  # wx is the doubled w(X_i), so wx//2 adds w(X_i)/2
            running += wt[idx] + wx + 4 * wa[idx]
    return ew, big_w, wa, wt, gammas


def build_T(inst: X3CInstance) -> ReductionOutput:
    """The diameter-4 instance: per-set subtrees and a-leaves under one root."""
    n, m = inst.universe_size, inst.m
    size = 1 + 9 * m
    ew, big_w, wa, wt, gammas = _reduction_weights(inst, size)
    parent = [-1] * size
    weight = [0] * size
    r_nodes, t_nodes, s_nodes, a_nodes = [], [], [], []
    for i in range(m):
        base = 1 + 9 * i
        r_i, t_i = base, base + 1
        s_i = (base + 2, base + 3, base + 4)
        a_i = (base + 5, base + 6, base + 7, base + 8)
        parent[r_i] = 0
        parent[t_i] = r_i
        weight[t_i] = wt[i]
        for j in range(3):
            parent[s_i[j]] = r_i
            weight[s_i[j]] = ew[inst.sets[i][j]]
        for k in range(4):
            parent[a_i[k]] = 0
            weight[a_i[k]] = wa[i]
        r_nodes.append(r_i)
        t_nodes.append(t_i)
        s_nodes.append(s_i)
        a_nodes.append(a_i)
    element_leaves = _element_leaves(inst, s_nodes)
    return ReductionOutput(
        instance=InputTree(parent, weight),
        variant="diam4",
        x3c=inst,
        pi=pi_sequence(inst),
        root=0,
        r_nodes=tuple(r_nodes),
        t_nodes=tuple(t_nodes),
        s_nodes=tuple(s_nodes),
        a_nodes=tuple(a_nodes),
        h_nodes=(),
        z_nodes=(),
        element_weight=tuple(ew),
        element_leaves=element_leaves,
        big_w=tuple(big_w),
        gammas=tuple(gammas),
    )


def _element_leaves(inst: X3CInstance, s_nodes) -> tuple[tuple[int, ...], ...]:
    out = [[] for _ in range(inst.universe_size)]
    for i, s in enumerate(inst.sets):
        for j, u in enumerate(s):
            out[u].append(s_nodes[i][j])
    return tuple(tuple(x) for x in out)


def pi_set_groups(inst: X3CInstance) -> list[list[int]]:
    """Maximal runs of Pi-consecutive sets (each has <= 3 sets)."""
    groups: list[list[int]] = []
    prev_was_set = False
    for kind, idx in pi_sequence(inst):
        if kind == "X":
            if prev_was_set:
                groups[-1].append(idx)
            else:
                groups.append([idx])
            prev_was_set = True
        else:
            prev_was_set = False
    return groups


def build_Tb(inst: X3CInstance) -> ReductionOutput:
    """The degree-<=16 instance: Pi-adjacent sets grouped under hubs h_i,
    hubs strung on a spine z_1..z_p rooted at z_p. Weights are those of the
    diameter-4 tree (the recurrence still uses that tree's size)."""
    m = inst.m
    size_T = 1 + 9 * m
    ew, big_w, wa, wt, gammas = _reduction_weights(inst, size_T)
    groups = pi_set_groups(inst)
    p = len(groups)
    size = 9 * m + 2 * p  # 9 nodes per set plus the hubs and the spine
    parent = [-1] * size
    weight = [0] * size
    z_nodes = [0] * p
    h_nodes = [0] * p
    r_nodes = [0] * m
    t_nodes = [0] * m
    s_nodes: list[tuple[int, int, int]] = [None] * m
    a_nodes: list[tuple[int, int, int, int]] = [None] * m
    nxt = 0

    def alloc() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    # Root z_p first, then down the spine.
    z_nodes[p - 1] = alloc()
    for g in range(p - 2, -1, -1):
        z_nodes[g] = alloc()
        parent[z_nodes[g]] = z_nodes[g + 1]
    for g, members in enumerate(groups):
        h = alloc()
        h_nodes[g] = h
        parent[h] = z_nodes[g]
        for i in members:
            r_i = alloc()
            parent[r_i] = h
            t_i = alloc()
            parent[t_i] = r_i
            weight[t_i] = wt[i]
            s_i = []
            for j in range(3):
                s = alloc()
                parent[s] = r_i
                weight[s] = ew[inst.sets[i][j]]
                s_i.append(s)
            a_i = []
            for _ in range(4):
                a = alloc()
                parent[a] = h
                weight[a] = wa[i]
                a_i.append(a)
            r_nodes[i] = r_i
            t_nodes[i] = t_i
            s_nodes[i] = tuple(s_i)
            a_nodes[i] = tuple(a_i)
    assert nxt == size
    element_leaves = _element_leaves(inst, s_nodes)
    return ReductionOutput(
        instance=InputTree(parent, weight),
        variant="deg16",
        x3c=inst,
        pi=pi_sequence(inst),
        root=z_nodes[p - 1],
        r_nodes=tuple(r_nodes),
        t_nodes=tuple(t_nodes),
        s_nodes=tuple(s_nodes),
        a_nodes=tuple(a_nodes),
        h_nodes=tuple(h_nodes),
        z_nodes=tuple(z_nodes),
        element_weight=tuple(ew),
        element_leaves=element_leaves,
        big_w=tuple(big_w),
        gammas=tuple(gammas),
    )


def build(inst: X3CInstance, variant: str) -> ReductionOutput:
    if variant == "diam4":
        return build_T(inst)
    if variant == "deg16":
        return build_Tb(inst)
    raise InvalidInstanceError(f"unknown reduction variant {variant!r}")


RealizationSpec = frozenset  # the sets realized in B-configuration


def realization(red: ReductionOutput, spec: Iterable[int]) -> DecisionNode:
    """The realization of Pi w.r.t. the B-configured sets in ``spec``.

    Built bottom-up: the completion for zero-weight structural nodes, then
    one block per Pi item from first to last, so the last item ends up at
    the top. Within an element's block the pending s-leaves run in ascending
    set order (their weights are equal, so the cost is order-free).
    """
    inst = red.x3c
    chosen = frozenset(spec)
    for i in chosen:
        if not 0 <= i < inst.m:
            raise InvalidInstanceError(f"set index {i} out of range")
    tree = red.instance

    def isolate(v: int, rest: DecisionNode) -> DecisionNode:
        return Query(v, no=rest, yes=Leaf(v))

    # Zero-weight leftovers, deepest first so each query isolates a singleton:
    # r_i of B-configured sets, plus hubs and spine for the bounded variant.
    leftovers = [red.r_nodes[i] for i in sorted(chosen)]
    leftovers += list(red.h_nodes) + [z for z in red.z_nodes if z != red.root]
    leftovers.sort(key=lambda v: (-tree.depth[v], v))
    node: DecisionNode = Leaf(red.root)
    for v in reversed(leftovers):
        node = isolate(v, node)

    for kind, idx in red.pi:
        if kind == "u":
            for i in sorted(i for i in chosen if idx in inst.sets[i]):
                j = inst.sets[i].index(idx)
                node = isolate(red.s_nodes[i][j], node)
        else:
            i = idx
            a1, a2, a3, a4 = red.a_nodes[i]
            a_chain = isolate(a1, isolate(a2, isolate(a3, isolate(a4, node))))
            t_i = red.t_nodes[i]
            if i in chosen:
                node = Query(t_i, no=a_chain, yes=Leaf(t_i))
            else:
                s1, s2, s3 = red.s_nodes[i]
                right = Query(t_i, yes=Leaf(t_i), no=Query(
                    s3, yes=Leaf(s3), no=Query(
                        s2, yes=Leaf(s2), no=Query(
                            s1, yes=Leaf(s1), no=Leaf(red.r_nodes[i])))))
                node = Query(red.r_nodes[i], no=a_chain, yes=right)
    return node


def measured_level_drops(red: ReductionOutput, spec: frozenset, i: int,
                         levels_full: dict[int, int]) -> tuple[int, int, int]:
    """d^A_B per element position of set i: how much deeper each s_ij query
    sits in the realization w.r.t. ``spec`` than in the one w.r.t.
    ``spec - {i}``."""
    base = query_depths(realization(red, spec - {i}))
    return tuple(levels_full[red.s_nodes[i][j]] - base[red.s_nodes[i][j]] for j in range(3))


def cost_gap(red: ReductionOutput, spec: Iterable[int]) -> int:
    """cost(D^A) - cost(realization w.r.t. spec), computed directly, and
    cross-checked against two forms of the level accounting: one through the
    t-weights and W_u, one through the gamma terms, both using level
    differences measured from the constructed trees. Raises if either
    bookkeeping disagrees with the direct value."""
    chosen = frozenset(spec)
    tree = red.instance
    d_a = realization(red, frozenset())
    d_y = realization(red, chosen)
    direct = cost(d_a, tree) - cost(d_y, tree)

    levels_full = query_depths(d_y)
    inst = red.x3c
    eq1 = 0
    eq2 = 0
    for i in sorted(chosen):
        u1, u2, u3 = inst.sets[i]
        d = measured_level_drops(red, chosen, i, levels_full)
        ws = [red.element_weight[u] for u in (u1, u2, u3)]
        eq1 += (red.instance.weight[red.t_nodes[i]]
                - (red.big_w[u1] + red.big_w[u2] + red.big_w[u3])
                - sum(d[j] * ws[j] for j in range(3)))
        eq2 += red.set_weight(i) // 2 + sum(
            (red.gammas[i][j] - d[j]) * ws[j] for j in range(3))
    if not direct == eq1 == eq2:
        raise TreeSearchError(
            f"cost-gap bookkeeping mismatch: direct={direct} eq1={eq1} eq2={eq2}"
        )
    return direct


def cover_threshold(red: ReductionOutput) -> int:
    """The doubled form of half the total element weight."""
    return sum(red.element_weight) // 2


def decide_cover(red: ReductionOutput, enumerate_limit: int = 20,
                 oracle_limit: int = 20) -> bool:
    """True iff the best realization's gap meets the cover threshold, i.e.
    iff the X3C instance has an exact cover. When the instance is small
    enough the realization minimum is cross-checked against the exhaustive
    solver (optimal strategies are realizations)."""
    m = red.x3c.m
    if m > enumerate_limit:
        raise ResourceLimitError(f"{m} sets: 2^m realization sweep above the limit")
    tree = red.instance
    d_a_cost = cost(realization(red, frozenset()), tree)
    best = None
    for bits in range(1 << m):
        spec = frozenset(i for i in range(m) if bits >> i & 1)
        c = cost(realization(red, spec), tree, check=False)
        if best is None or c < best:
            best = c
    if tree.n <= oracle_limit:
        oracle_best, _ = opt_cost(tree, limit=oracle_limit)
        if oracle_best != best:
            raise TreeSearchError(
                f"realization minimum {best} disagrees with the oracle {oracle_best}"
            )
    return d_a_cost - best >= cover_threshold(red)


def x3c_brute(inst: X3CInstance, limit: int = 25) -> bool:
    """Exhaustive exact-cover search (the independent referee for
    decide_cover)."""
    if inst.m > limit:
        raise ResourceLimitError(f"{inst.m} sets exceed the brute-force limit {limit}")
    n = inst.universe_size
    masks = []
    for s in inst.sets:
        m = 0
        for e in s:
            m |= 1 << e
        masks.append(m)
    full = (1 << n) - 1

    def dfs(covered: int) -> bool:
        if covered == full:
            return True
        # Branch on the smallest uncovered element.
        low = (~covered & full) & -(~covered & full)
        for m in masks:
            if m & low and not m & covered:
                if dfs(covered | m):
                    return True
        return False

    return dfs(0)
