"""Rooted phylogenetic trees with branch lengths.

Trees are stored as parallel arrays indexed by node id, numbered in
pre-order so that ``parent[i] < i`` for every non-root node (root is node 0
with parent -1).  Tips keep their left-to-right order from the source, which
is the column order expected of any data matrix paired with the tree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError

DEFAULT_BRANCH_LENGTH = 1.0

# Guard against pathological depth requests; 2^25 tips is far past desk scale.
MAX_BALANCED_DEPTH = 25


@dataclass(frozen=True, eq=False)
class PhyloTree:
    """A rooted tree: parent pointers, branch lengths, tip labels.

    parent[i] is the node id of i's parent (-1 for the root, which is node 0);
    length[i] is the branch length from i to its parent (0.0 for the root,
    whose branch does not exist); label[i] is the tip label ('' for internal
    nodes).  tip_order lists tip labels left-to-right and tip_ids the matching
    node ids.  n_defaulted_lengths counts branch lengths that were missing in
    the source and replaced by DEFAULT_BRANCH_LENGTH.
    """

    parent: np.ndarray
    length: np.ndarray
    label: list[str]
    tip_order: list[str] = field(init=False)
    tip_ids: np.ndarray = field(init=False)
    n_defaulted_lengths: int = 0

    def __post_init__(self):
        parent = np.asarray(self.parent, dtype=np.int64)
        length = np.asarray(self.length, dtype=np.float64)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "length", length)
        n = parent.shape[0]
        if n == 0:
            raise ValidationError("tree has no nodes")
        if length.shape != (n,) or len(self.label) != n:
            raise ValidationError("parent, length and label must have equal length")
        roots = np.flatnonzero(parent < 0)
        if roots.shape[0] != 1 or roots[0] != 0:
            raise ValidationError("tree must have exactly one root at node 0")
        if np.any(parent[1:] >= np.arange(1, n)):
            raise ValidationError("parent ids must decrease toward the root")
        if np.any(length < 0):
            raise ValidationError("branch lengths must be non-negative")
        is_parent = np.zeros(n, dtype=bool)
        is_parent[parent[1:]] = True
        tip_ids = np.flatnonzero(~is_parent)
        tips = [self.label[i] for i in tip_ids]
        if any(t == "" for t in tips):
            raise ValidationError("every tip must carry a label")
        if len(set(tips)) != len(tips):
            dup = sorted({t for t in tips if tips.count(t) > 1})
            raise ValidationError(f"duplicate tip labels: {dup}")
        object.__setattr__(self, "tip_order", tips)
        object.__setattr__(self, "tip_ids", tip_ids)

    @property
    def n_nodes(self) -> int:
        return self.parent.shape[0]

    @property
    def n_tips(self) -> int:
        return len(self.tip_order)

    @property
    def n_branches(self) -> int:
        """Branches = nodes minus the root (the root has no branch)."""
        return self.n_nodes - 1

    def children(self) -> list[list[int]]:
        """Child lists per node, in node-id (hence left-to-right) order."""
        out: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for i in range(1, self.n_nodes):
            out[self.parent[i]].append(i)
        return out


@dataclass(frozen=True, eq=False)
class BranchIncidence:
    """0/1 branch-by-tip membership plus branch lengths.

    Row b corresponds to the branch above node ``node_ids[b]``; entry (b, i)
    is 1 iff tip i (in tip_order) descends from that branch.  Pendant branch
    rows are standard basis rows.
    """

    matrix: np.ndarray
    branch_lengths: np.ndarray
    node_ids: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.uint8)
        object.__setattr__(self, "matrix", m)
        if np.any(m.sum(axis=0) == 0):
            raise ValidationError("every tip must descend from at least one branch")

    @property
    def n_branches(self) -> int:
        return self.matrix.shape[0]


def branch_incidence(tree: PhyloTree) -> BranchIncidence:
    """Build the branch-by-tip incidence structure UniFrac sums over.

    Branches are all non-root nodes, ordered by node id.  Column order is
    tree.tip_order.
    """
    n, p = tree.n_nodes, tree.n_tips
    tip_col = np.full(n, -1, dtype=np.int64)
    tip_col[tree.tip_ids] = np.arange(p)
    # desc[i] accumulates tips under node i; children have larger ids, so a
    # reverse sweep pushes each node's tips into its parent.
    desc = np.zeros((n, p), dtype=np.uint8)
    for i in range(n - 1, -1, -1):
        if tip_col[i] >= 0:
            desc[i, tip_col[i]] = 1
        if i > 0:
            desc[tree.parent[i]] |= desc[i]
    node_ids = np.arange(1, n, dtype=np.int64)
    return BranchIncidence(
        matrix=desc[1:],
        branch_lengths=tree.length[1:].copy(),
        node_ids=node_ids,
    )


def parse_newick(text: str) -> PhyloTree:
    """Parse a single Newick tree with branch lengths.

    Tip labels are required and must be unique; internal labels are accepted
    and ignored.  Missing branch lengths default to 1.0 and the total count is
    reported through a warning.  Errors carry the character offset.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty Newick input")
    if not s.endswith(";"):
        raise ParseError("missing trailing semicolon", offset=len(text.rstrip()))
    body = s[:-1]

    pos = 0
    defaulted = 0

    def skip_ws():
        nonlocal pos
        while pos < len(body) and body[pos] in " \t\r\n":
            pos += 1

    def read_label() -> str:
        nonlocal pos
        start = pos
        if pos < len(body) and body[pos] in ("'", '"'):
            quote = body[pos]
            pos += 1
            while pos < len(body) and body[pos] != quote:
                pos += 1
            if pos >= len(body):
                raise ParseError("unterminated quoted label", offset=start)
            label = body[start + 1 : pos]
            pos += 1
            return label
        while pos < len(body) and body[pos] not in "():,;'\" \t\r\n":
            pos += 1
        return body[start:pos]

    def read_length() -> tuple[float, bool]:
        nonlocal pos
        skip_ws()
        if pos < len(body) and body[pos] == ":":
            pos += 1
            skip_ws()
            start = pos
            while pos < len(body) and body[pos] not in "(),;: \t\r\n":
                pos += 1
            token = body[start:pos]
            try:
                value = float(token)
            except ValueError:
                raise ParseError(f"bad branch length {token!r}", offset=start) from None
            if value < 0:
                raise ParseError("negative branch length", offset=start)
            return value, True
        return DEFAULT_BRANCH_LENGTH, False

    # node = (label, length, had_explicit_length, children)
    def read_node():
        nonlocal pos
        skip_ws()
        if pos < len(body) and body[pos] == "(":
            open_at = pos
            pos += 1
            kids = [read_node()]
            skip_ws()
            while pos < len(body) and body[pos] == ",":
                pos += 1
                kids.append(read_node())
                skip_ws()
            if pos >= len(body) or body[pos] != ")":
                raise ParseError("unbalanced parentheses", offset=open_at)
            pos += 1
            skip_ws()
            read_label()  # internal label: accepted and ignored
            length, explicit = read_length()
            return ("", length, explicit, kids)
        label = read_label()
        if label == "":
            raise ParseError("tip without a label", offset=pos)
        length, explicit = read_length()
        return (label, length, explicit, [])

    root = read_node()
    skip_ws()
    if pos != len(body):
        raise ParseError("trailing characters after tree", offset=pos)

    # Renumber in pre-order so parent[i] < i.  The root's length slot is
    # conventional filler (its branch does not exist), so a missing root
    # length is not a defect.
    parents: list[int] = []
    lengths: list[float] = []
    labels: list[str] = []
    stack = [(root, -1)]
    while stack:
        (label, length, explicit, kids), par = stack.pop()
        idx = len(parents)
        parents.append(par)
        lengths.append(length if par >= 0 else 0.0)
        labels.append(label)
        if par >= 0 and not explicit:
            defaulted += 1
        for kid in reversed(kids):
            stack.append((kid, idx))

    if defaulted:
        warnings.warn(
            f"{defaulted} missing branch length(s) defaulted to {DEFAULT_BRANCH_LENGTH}",
            stacklevel=2,
        )
    try:
        return PhyloTree(
            parent=np.array(parents, dtype=np.int64),
            length=np.array(lengths, dtype=np.float64),
            label=labels,
            n_defaulted_lengths=defaulted,
        )
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def to_newick(tree: PhyloTree) -> str:
    """Serialise a PhyloTree back to Newick (tips keep left-to-right order)."""
    kids = tree.children()

    def fmt(i: int) -> str:
        if not kids[i]:
            inner = tree.label[i]
        else:
            inner = "(" + ",".join(fmt(c) for c in kids[i]) + ")"
        if i == 0:
            return inner
        return f"{inner}:{format(float(tree.length[i]), '.17g')}"

    return fmt(0) + ";"


def build_balanced_tree(depth: int, branch_length: float = 1.0) -> PhyloTree:
    """Full binary tree with 2**depth tips labeled t1..tp left to right."""
    if depth < 1:
        raise ValidationError("depth must be >= 1")
    if depth > MAX_BALANCED_DEPTH:
        raise ValidationError(f"depth {depth} exceeds the supported maximum {MAX_BALANCED_DEPTH}")
    if branch_length <= 0:
        raise ValidationError("branch_length must be positive")

    parents = [-1]
    labels = [""]
    next_tip = [1]

    # Pre-order growth: the left subtree is fully numbered before the right.
    def grow(node: int, level: int):
        for _ in range(2):
            child = len(parents)
            parents.append(node)
            if level + 1 == depth:
                labels.append(f"t{next_tip[0]}")
                next_tip[0] += 1
            else:
                labels.append("")
                grow(child, level + 1)

    grow(0, 0)
    n = len(parents)
    lengths = np.full(n, float(branch_length))
    lengths[0] = 0.0
    return PhyloTree(parent=np.array(parents), length=lengths, label=labels)
