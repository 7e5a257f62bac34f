"""Explicit rooted ordered trees.

A tree is stored as a single parent array in breadth-first numbering: node 0
is the root, ``parent[v] < v`` for every other node, and the parent array is
non-decreasing, which makes every sibling group a contiguous index range.
Children lists, degrees and first-child offsets are derived from it.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DisconnectedNode,
    DuplicateChild,
    EmptyInput,
    InvalidCharacter,
    InvalidSize,
    MultipleRoots,
    TrailingGarbage,
    UnbalancedParens,
)

NO_PARENT = -1


@dataclass(frozen=True, eq=False)
class RootedOrderedTree:
    """Rooted tree with ordered children, labelled 0..n-1 in BFS order."""

    parent: np.ndarray

    def __post_init__(self):
        parent = np.array(self.parent, dtype=np.int64).reshape(-1)
        n = parent.size
        if n == 0:
            raise InvalidSize("a tree has at least one node")
        if parent[0] != NO_PARENT:
            raise ValueError("node 0 must be the root")
        rest = parent[1:]
        if rest.size:
            if rest.min() < 0 or np.any(rest >= np.arange(1, n)):
                raise ValueError("parent[v] must lie in [0, v) for every non-root node")
            if np.any(np.diff(rest) < 0):
                raise ValueError("parent array is not in breadth-first order")
        parent.setflags(write=False)
        object.__setattr__(self, "parent", parent)

    @classmethod
    def single(cls) -> RootedOrderedTree:
        return cls(np.array([NO_PARENT]))

    @classmethod
    def _unchecked(cls, parent: np.ndarray) -> RootedOrderedTree:
        # For parent arrays built here in BFS form; skips the O(n) checks.
        tree = object.__new__(cls)
        parent.setflags(write=False)
        object.__setattr__(tree, "parent", parent)
        return tree

    @property
    def node_count(self) -> int:
        return int(self.parent.size)

    def __len__(self):
        return self.node_count

    def __eq__(self, other):
        if not isinstance(other, RootedOrderedTree):
            return NotImplemented
        return np.array_equal(self.parent, other.parent)

    def __hash__(self):
        return hash(self.parent.tobytes())

    def __repr__(self):
        if self.node_count <= 32:
            return f"RootedOrderedTree(parent={self.parent.tolist()})"
        return f"RootedOrderedTree(<{self.node_count} nodes>)"

    @cached_property
    def degree(self) -> np.ndarray:
        deg = np.bincount(self.parent[1:], minlength=self.node_count)
        deg.setflags(write=False)
        return deg

    @cached_property
    def first_child(self) -> np.ndarray:
        first = np.empty(self.node_count, dtype=np.int64)
        first[0] = 1
        np.cumsum(self.degree[:-1], out=first[1:])
        first[1:] += 1
        first.setflags(write=False)
        return first

    def children(self, v: int) -> range:
        start = int(self.first_child[v])
        return range(start, start + int(self.degree[v]))

    def is_last_child(self) -> np.ndarray:
        """Boolean mask: node is the final child of its parent (False for the root)."""
        n = self.node_count
        last = np.zeros(n, dtype=bool)
        if n > 1:
            last[1:-1] = self.parent[1:-1] != self.parent[2:]
            last[-1] = True
        return last

    def depth(self) -> int:
        """Number of edges on the longest root-to-leaf path."""
        depth = 0
        end = 1
        # BFS numbering makes every level a contiguous block.
        while end < self.node_count:
            deepest = int(np.searchsorted(self.parent, end, side="left"))
            if deepest == end:
                break
            end = deepest
            depth += 1
        return depth

    def leaf_count(self) -> int:
        return int(np.count_nonzero(self.degree == 0))

    def nested(self, v: int = 0) -> tuple:
        """Shape of the subtree at ``v`` as nested tuples of children."""
        built = {}
        for u in reversed(self.preorder_nodes(v)):
            built[u] = tuple(built.pop(c) for c in self.children(u))
        return built[v]

    def preorder_nodes(self, v: int = 0) -> list[int]:
        out = []
        stack = [v]
        first, degree = self.first_child.tolist(), self.degree.tolist()
        while stack:
            u = stack.pop()
            out.append(u)
            f = first[u]
            stack.extend(range(f + degree[u] - 1, f - 1, -1))
        return out


def tree_from_children(children: Sequence[Sequence[int]], root: int = 0) -> RootedOrderedTree:
    """Relabel an arbitrary children-list tree into BFS numbering."""
    degrees = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        kids = children[v]
        degrees.append(len(kids))
        queue.extend(kids)
    return tree_from_bfs_degrees(degrees, check=False)


def tree_from_preorder(depths, degrees) -> RootedOrderedTree:
    """Tree from per-node depth and child count listed in preorder.

    Within one level preorder and BFS agree, so a stable sort by depth
    puts the nodes in BFS order.
    """
    order = np.argsort(np.asarray(depths, dtype=np.int64), kind="stable")
    return tree_from_bfs_degrees(np.asarray(degrees, dtype=np.int64)[order], check=False)


def tree_from_bfs_degrees(degrees, check: bool = True) -> RootedOrderedTree:
    """Tree whose nodes, in BFS order, have the given child counts."""
    degrees = np.asarray(degrees, dtype=np.int64)
    if check and (degrees.size == 0 or degrees.min() < 0 or degrees.sum() != degrees.size - 1):
        raise ValueError("child counts do not describe a single tree")
    parent = np.empty(degrees.size, dtype=np.int64)
    parent[0] = NO_PARENT
    parent[1:] = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    if check:
        return RootedOrderedTree(parent)
    return RootedOrderedTree._unchecked(parent)


# -- node orders ------------------------------------------------------------------

class OrderKind(enum.Enum):
    BFS = "bfs"
    PREORDER = "preorder"


@dataclass(frozen=True)
class NodeOrder:
    nodes: tuple[int, ...]
    kind: OrderKind

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)

    def __len__(self):
        return len(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]


def bfs_order(tree: RootedOrderedTree) -> NodeOrder:
    # Labels already are BFS positions.
    return NodeOrder(tuple(range(tree.node_count)), OrderKind.BFS)


def preorder(tree: RootedOrderedTree) -> NodeOrder:
    return NodeOrder(tuple(tree.preorder_nodes()), OrderKind.PREORDER)


# -- parenthesis text -----------------------------------------------------------------

def from_parentheses(text: str) -> RootedOrderedTree:
    """Parse nested parentheses, one ``( ... )`` pair per node; whitespace is ignored."""
    depths: list[int] = []
    degrees: list[int] = []
    stack: list[int] = []  # preorder index of each open node
    opens: list[int] = []
    closed_at = None
    for pos, ch in enumerate(text):
        if ch == "(":
            if closed_at is not None:
                raise TrailingGarbage(pos)
            if stack:
                degrees[stack[-1]] += 1
            stack.append(len(depths))
            depths.append(len(opens))
            degrees.append(0)
            opens.append(pos)
        elif ch == ")":
            if closed_at is not None:
                raise TrailingGarbage(pos)
            if not stack:
                raise UnbalancedParens(pos)
            stack.pop()
            opens.pop()
            if not stack:
                closed_at = pos
        elif ch.isspace():
            continue
        elif closed_at is not None:
            raise TrailingGarbage(pos)
        else:
            raise InvalidCharacter(ch, pos)
    if not depths:
        raise EmptyInput()
    if stack:
        raise UnbalancedParens(opens[-1])
    return tree_from_preorder(depths, degrees)


def to_parentheses(tree: RootedOrderedTree) -> str:
    out = []
    first, degree = tree.first_child.tolist(), tree.degree.tolist()
    # Stack entries: node index, or -1 for a pending close.
    stack = [0]
    while stack:
        v = stack.pop()
        if v < 0:
            out.append(")")
            continue
        out.append("(")
        stack.append(-1)
        f = first[v]
        stack.extend(range(f + degree[v] - 1, f - 1, -1))
    return "".join(out)


# -- edge lists -----------------------------------------------------------------------

def from_edge_list(pairs: Iterable[tuple[Hashable, Hashable]], root: Hashable = None) -> RootedOrderedTree:
    """Build a tree from ``(parent, child)`` pairs with arbitrary hashable labels.

    Sibling order is the order in which each child is first mentioned. An
    empty edge list needs an explicit ``root`` to describe the 1-node tree.
    """
    children: dict = {}
    parent_of: dict = {}
    for p, c in pairs:
        if p == c:
            raise CycleDetected(c)
        if c in parent_of:
            raise DuplicateChild(c)
        parent_of[c] = p
        children.setdefault(p, []).append(c)
        children.setdefault(c, [])
    if not children:
        if root is None:
            raise EmptyInput("empty edge list and no root declared")
        return RootedOrderedTree.single()
    if root is not None:
        children.setdefault(root, [])

    roots = [v for v in children if v not in parent_of]
    if root is not None:
        for v in roots:
            if v != root:
                raise DisconnectedNode(v)
        if root in parent_of:
            raise CycleDetected(root)
    elif not roots:
        raise CycleDetected()
    elif len(roots) > 1:
        raise MultipleRoots(roots)
    else:
        root = roots[0]

    index = {}
    order = [root]
    index[root] = 0
    i = 0
    while i < len(order):
        for c in children[order[i]]:
            index[c] = len(order)
            order.append(c)
        i += 1
    if len(order) != len(children):
        # Every node has one parent, so anything unreachable sits on a cycle.
        stray = next(v for v in children if v not in index)
        raise CycleDetected(stray)
    return tree_from_children([[index[c] for c in children[v]] for v in order])


def parse_edge_list(text: str) -> RootedOrderedTree:
    """Parse the line format: ``parent child`` per line, or ``root <label>``.

    Blank lines and ``#`` comments are skipped.
    """
    pairs = []
    root = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise InvalidCharacter(line, lineno)
        if tokens[0] == "root":
            root = tokens[1]
        else:
            pairs.append((tokens[0], tokens[1]))
    return from_edge_list(pairs, root=root)


def to_edge_list(tree: RootedOrderedTree) -> str:
    if tree.node_count == 1:
        return "root 0\n"
    return "".join(f"{p} {v}\n" for v, p in enumerate(tree.parent.tolist()) if v)


# -- random generation ------------------------------------------------------------------

def random_ordered_tree(n: int, seed: int) -> RootedOrderedTree:
    """Uniformly random ordered tree with ``n`` nodes, deterministic in ``(n, seed)``.

    Draws a random arrangement of n-1 opening and n closing steps, rotates
    it into the unique valid form (cycle lemma), and reads the number of
    openings before each close as the BFS child count of one node.
    """
    if n < 1:
        raise InvalidSize(f"tree size must be positive, got {n}")
    if n == 1:
        return RootedOrderedTree.single()
    rng = np.random.default_rng(np.uint64(seed & 0xFFFF_FFFF_FFFF_FFFF))
    length = 2 * n - 1
    steps = np.full(length, -1, dtype=np.int64)
    steps[rng.choice(length, size=n - 1, replace=False)] = 1
    start = int(np.argmin(np.cumsum(steps))) + 1
    steps = np.roll(steps, -start)
    opens_before = np.cumsum(steps == 1)[steps == -1]
    degrees = np.diff(opens_before, prepend=0)
    return tree_from_bfs_degrees(degrees, check=False)
