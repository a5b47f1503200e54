"""Text formats for instances, decision trees, and X3C families.

Instance files: first line ``n root_id``, then one ``id parent_id weight``
line per node with ``parent_id = -1`` for the root; children order is the
order child lines appear. Decision trees are JSON with records
``{"query": v, "no": ..., "yes": ...}`` and ``{"leaf": v}``. X3C files:
first line ``n m``, then m lines of three 0-based element indices.
"""

from __future__ import annotations

import json
import sys

from .errors import InvalidDecisionTreeError, InvalidInstanceError
from .model import DecisionNode, InputTree, Leaf, Query


def parse_instance(text: str) -> InputTree:
    lines = [ln for ln in text.splitlines()]
    rows: list[tuple[int, str]] = [
        (i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not rows:
        raise InvalidInstanceError("empty instance file")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise InvalidInstanceError(f"line {lineno}: expected 'n root_id'")
    try:
        n, root = int(parts[0]), int(parts[1])
    except ValueError:
        raise InvalidInstanceError(f"line {lineno}: expected integers 'n root_id'") from None
    if n <= 0:
        raise InvalidInstanceError(f"line {lineno}: n must be positive")
    if len(rows) - 1 != n:
        raise InvalidInstanceError(f"expected {n} node lines, found {len(rows) - 1}")
    parent = [None] * n
    weight = [0] * n
    children = [[] for _ in range(n)]
    for lineno, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise InvalidInstanceError(f"line {lineno}: expected 'id parent_id weight'")
        try:
            v, p, w = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise InvalidInstanceError(f"line {lineno}: expected integers 'id parent_id weight'") from None
        if not 0 <= v < n:
            raise InvalidInstanceError(f"line {lineno}: node id {v} out of range 0..{n - 1}")
        if parent[v] is not None:
            raise InvalidInstanceError(f"line {lineno}: node {v} defined twice")
        if w < 0:
            raise InvalidInstanceError(f"line {lineno}: negative weight")
        if p == -1:
            if v != root:
                raise InvalidInstanceError(f"line {lineno}: node {v} has parent -1 but root is {root}")
        else:
            if not 0 <= p < n:
                raise InvalidInstanceError(f"line {lineno}: parent id {p} out of range")
            children[p].append(v)
        parent[v] = p
        weight[v] = w
    if parent[root] != -1:
        raise InvalidInstanceError(f"root {root} must have parent -1")
    return InputTree(parent, weight, children)


def format_instance(tree: InputTree) -> str:
    out = [f"{tree.n} {tree.root}"]
    # Preorder emission keeps each node's children in children-order, so the
    # file round-trips exactly.
    stack = [tree.root]
    while stack:
        v = stack.pop()
        out.append(f"{v} {tree.parent[v]} {tree.weight[v]}")
        for c in reversed(tree.children[v]):
            stack.append(c)
    return "\n".join(out) + "\n"


def _tree_to_obj(node: DecisionNode):
    if isinstance(node, Leaf):
        return {"leaf": node.node}
    if isinstance(node, Query):
        if node.no is None or node.yes is None:
            raise InvalidDecisionTreeError([f"query {node.query} is missing a child"])
        return {"query": node.query, "no": _tree_to_obj(node.no), "yes": _tree_to_obj(node.yes)}
    raise InvalidDecisionTreeError([f"unexpected node {node!r}"])


def format_decision_tree(root: DecisionNode) -> str:
    from .model import tree_height

    need = 4 * tree_height(root) + 100
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)
    return json.dumps(_tree_to_obj(root), indent=2) + "\n"


def _obj_to_tree(obj) -> DecisionNode:
    if not isinstance(obj, dict):
        raise InvalidDecisionTreeError([f"expected an object, got {type(obj).__name__}"])
    if set(obj) == {"leaf"}:
        if not isinstance(obj["leaf"], int):
            raise InvalidDecisionTreeError(["leaf id must be an integer"])
        return Leaf(obj["leaf"])
    if set(obj) == {"query", "no", "yes"}:
        if not isinstance(obj["query"], int):
            raise InvalidDecisionTreeError(["query id must be an integer"])
        return Query(obj["query"], _obj_to_tree(obj["no"]), _obj_to_tree(obj["yes"]))
    raise InvalidDecisionTreeError([f"bad record keys {sorted(obj)}"])


def parse_decision_tree(text: str) -> DecisionNode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidDecisionTreeError([f"bad JSON: {e}"]) from None
    return _obj_to_tree(obj)


def parse_x3c(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    rows = [
        (i + 1, ln) for i, ln in enumerate(text.splitlines())
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not rows:
        raise InvalidInstanceError("empty X3C file")
    lineno, header = rows[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise InvalidInstanceError(f"line {lineno}: expected 'n m'") from None
    if len(rows) - 1 != m:
        raise InvalidInstanceError(f"expected {m} set lines, found {len(rows) - 1}")
    fam = []
    for lineno, ln in rows[1:]:
        try:
            trip = tuple(int(x) for x in ln.split())
        except ValueError:
            raise InvalidInstanceError(f"line {lineno}: expected three element indices") from None
        if len(trip) != 3:
            raise InvalidInstanceError(f"line {lineno}: a set must have exactly 3 elements")
        for e in trip:
            if not 0 <= e < n:
                raise InvalidInstanceError(f"line {lineno}: element {e} out of range 0..{n - 1}")
        fam.append(trip)
    return n, fam


def format_x3c(n: int, sets) -> str:
    out = [f"{n} {len(sets)}"]
    for s in sets:
        out.append(" ".join(str(e) for e in s))
    return "\n".join(out) + "\n"
