"""Rooted-tree combinatorics behind the versal deformation equations.

Trees are encoded as nested tuples of children.  A node *is* the tuple of
its child subtrees, listed bottom-to-top; the empty tuple is a leaf.  The
vertical order of siblings is meaningful (the trees are planar), so no
quotient by sibling permutations is taken anywhere.

Nodes are addressed by paths: the root is ``()`` and ``path + (m,)`` is the
m-th lowest child of ``path``.  The column of a node is its edge distance
from the root; within a column, nodes are ordered bottom-to-top, which for
paths coincides with lexicographic order.

Every node carries a label (i, j): j counts its children, and i counts
nodes in the parent column between the node's parent and the parent of the
next node up in the same column (both endpoints included), or the nodes
at-or-above the parent when the node is topmost in its column.  The top
node of a column is a Z-factor, all others are sigma-factors; evaluating
a tree's factors and multiplying gives one term of a reduced quasi-minor.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, NamedTuple

Tree = tuple  # nested tuples of children, bottom-to-top


class NotGammaTree(ValueError):
    """Raised when a tree operation needs the unpruned-remainder shape."""


class ModeMismatch(ValueError):
    """Raised for an unknown term mode, or mode R on an unsuitable tree."""


# ---------------------------------------------------------------------------
# basic shape queries


def height(tree: Tree) -> int:
    """Edge distance from the root to a deepest node (0 for a leaf)."""
    return 1 + max(map(height, tree)) if tree else 0


def node_count(tree: Tree) -> int:
    return 1 + sum(map(node_count, tree))


def subtree(tree: Tree, path: tuple) -> Tree:
    for m in path:
        tree = tree[m]
    return tree


def paths(tree: Tree) -> Iterator[tuple]:
    """All node paths in depth-first order (lexicographic)."""
    yield ()
    for m, child in enumerate(tree):
        for p in paths(child):
            yield (m,) + p


def columns(tree: Tree) -> list:
    """Node paths grouped by distance from the root, bottom-to-top.

    Depth-first traversal already visits the nodes of a fixed distance in
    lexicographic path order, which is the vertical order of the planar
    drawing, so each column comes out sorted.
    """
    cols: list = []
    for p in paths(tree):
        d = len(p)
        if d == len(cols):
            cols.append([])
        cols[d].append(p)
    return cols


def encode(tree: Tree) -> str:
    """Canonical bracket string; leaves are ``()``, children concatenated."""
    return "(" + "".join(encode(c) for c in tree) + ")"


def decode(text: str) -> Tree:
    """Inverse of :func:`encode`; accepts whitespace between brackets."""
    stack: list = [[]]
    for ch in text:
        if ch == "(":
            stack.append([])
        elif ch == ")":
            done = tuple(stack.pop())
            if not stack:
                raise ValueError("unbalanced tree encoding %r" % text)
            stack[-1].append(done)
        elif not ch.isspace():
            raise ValueError("bad character %r in tree encoding" % ch)
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError("unbalanced tree encoding %r" % text)
    return stack[0][0]


# ---------------------------------------------------------------------------
# alpha-trees


def is_alpha_tree(tree: Tree) -> bool:
    """Above a sibling, subtrees must get strictly shorter."""
    hs = [height(c) for c in tree]
    if any(hs[m] <= hs[m + 1] for m in range(len(hs) - 1)):
        return False
    return all(is_alpha_tree(c) for c in tree)


@lru_cache(maxsize=None)
def enumerate_alpha_trees(h: int) -> tuple:
    """All alpha-trees of height h, in a fixed deterministic order.

    The enumerator follows the unique decomposition: lowest child of
    height h-1, remaining children copied from an alpha-tree of smaller
    height.  Both directions of that bijection are exercised in the tests.
    """
    if h < 0:
        raise ValueError("height must be non-negative")
    if h == 0:
        return ((),)
    out = []
    for lowest in enumerate_alpha_trees(h - 1):
        for i in range(h):
            for rest in enumerate_alpha_trees(i):
                out.append((lowest,) + rest)
    return tuple(out)


def alpha_tree_count(h: int) -> int:
    """#A(h) by the product recursion, independent of the enumerator."""
    counts = [1]
    for k in range(1, h + 1):
        counts.append(counts[k - 1] * sum(counts))
    return counts[h]


# ---------------------------------------------------------------------------
# node labels and symbolic factors


def label_nodes(tree: Tree) -> dict:
    """Map each node path to its label (i, j).

    The root gets i = 0.  For another node a, let b be the next node up in
    a's column.  If b exists, i counts the nodes in the parent column from
    parent(a) to parent(b) inclusive; otherwise it counts parent(a) and
    everything above it in its column.
    """
    cols = columns(tree)
    labels = {(): (0, len(tree))}
    for d in range(1, len(cols)):
        col, parents = cols[d], cols[d - 1]
        pos = {p: k for k, p in enumerate(parents)}
        for k, p in enumerate(col):
            j = len(subtree(tree, p))
            if k + 1 < len(col):
                i = pos[col[k + 1][:-1]] - pos[p[:-1]] + 1
            else:
                i = len(parents) - pos[p[:-1]]
            labels[p] = (i, j)
    return labels


class Factor(NamedTuple):
    """One symbol of a tree term: Z or sigma at position eps - offset."""

    family: str  # "Z" or "s"
    offset: int  # distance from the root; the factor sits at index eps-offset
    i: int
    j: int


def top_chain_count(tree: Tree) -> int:
    """Nodes on the open chain: the root plus its highest child's subtree.

    Only meaningful when that subtree is unbranched, as it is for gamma
    trees; the count is what selects the cofactor L_{eps-l}.
    """
    return 1 + (node_count(tree[-1]) if tree else 0)


def open_paths(tree: Tree) -> frozenset:
    """Paths drawn as open dots in remainder mode: root and top subtree."""
    opens = {()}
    if tree:
        top = len(tree) - 1
        opens.update((top,) + p for p in paths(tree[-1]))
    return frozenset(opens)


def symbolic_term(tree: Tree, mode: str = "P", restrict_to=None) -> tuple:
    """The factor list of the tree's term, leftmost column first.

    mode "P" keeps Z-factors, "lambda" substitutes every Z^(ij) by
    sigma^(i+1,j), "rho" by sigma^(i,j+1).  Mode "R" builds the remainder
    term of a gamma-tree: the root becomes sigma^(0,j) and the other open
    nodes contribute no factor, though they still count for the i-labels.
    ``restrict_to`` keeps only factors whose node path is in the given set
    (used for the R(T|T(a)) comparisons); labels always come from the full
    tree.
    """
    if mode not in ("P", "lambda", "rho", "R"):
        raise ModeMismatch("unknown term mode %r" % mode)
    opens: frozenset = frozenset()
    if mode == "R":
        if not is_gamma_tree(tree):
            raise ModeMismatch("remainder terms need a gamma-tree")
        opens = open_paths(tree)
    labels = label_nodes(tree)
    factors = []
    for d, col in reversed(list(enumerate(columns(tree)))):
        for k, p in enumerate(col):
            if restrict_to is not None and p not in restrict_to:
                continue
            i, j = labels[p]
            if p in opens:
                if p == ():
                    factors.append(Factor("s", 0, 0, j))
                continue
            # opens sit at the top of their columns, so the positional
            # check hands Z only to a closed top dot
            family = "Z" if k == len(col) - 1 else "s"
            if mode == "lambda" and family == "Z":
                family, i = "s", i + 1
            elif mode == "rho" and family == "Z":
                family, j = "s", j + 1
            factors.append(Factor(family, d, i, j))
    return tuple(factors)


# ---------------------------------------------------------------------------
# gamma-trees


def is_gamma_tree(tree: Tree) -> bool:
    """The four conditions for remainder trees.

    (i) a single deepest node, reached by always taking the lowest child;
    (ii) at distance d from the root, at most height-d children;
    (iii) a node with a sibling above it has a child;
    (iv) at least two root children, the highest root subtree unbranched.
    """
    k = height(tree)
    if len(tree) < 2:
        return False
    if not _unbranched(tree[-1]):
        return False
    deepest = [p for p in paths(tree) if len(p) == k]
    if len(deepest) != 1 or any(deepest[0]):
        return False
    for p in paths(tree):
        node = subtree(tree, p)
        if len(node) > k - len(p):
            return False
        if any(node[m] == () for m in range(len(node) - 1)):
            return False
    return True


def _unbranched(tree: Tree) -> bool:
    while tree:
        if len(tree) > 1:
            return False
        tree = tree[0]
    return True


def is_alpha_gamma_tree(tree: Tree) -> bool:
    return (
        len(tree) >= 2 and _unbranched(tree[-1]) and is_alpha_tree(tree)
    )


def _chain(h: int) -> Tree:
    tree: Tree = ()
    for _ in range(h):
        tree = (tree,)
    return tree


@lru_cache(maxsize=None)
def _free_trees(d: int, hmax: int, k: int) -> tuple:
    """Subtrees at distance d with height <= hmax obeying (ii) and (iii)."""
    if hmax < 0:
        return ()
    out = [()]
    subs = _free_trees(d + 1, hmax - 1, k)
    branched = [t for t in subs if t]
    for m in range(1, k - d + 1):
        for mids in product(branched, repeat=m - 1):
            for top in subs:
                out.append(mids + (top,))
    return tuple(out)


@lru_cache(maxsize=None)
def _spine_trees(d: int, k: int) -> tuple:
    """Subtrees at distance d whose unique deepest node sits at distance k
    on the bottom line, again obeying (ii) and (iii)."""
    if d == k:
        return ((),)
    out = []
    frees = _free_trees(d + 1, k - d - 2, k)
    branched = [t for t in frees if t]
    for lowest in _spine_trees(d + 1, k):
        out.append((lowest,))
        if lowest == ():
            continue  # a childless lowest sibling would violate (iii)
        for m in range(2, k - d + 1):
            for mids in product(branched, repeat=m - 2):
                for top in frees:
                    out.append((lowest,) + mids + (top,))
    return tuple(out)


def enumerate_gamma_trees(h: int, l: int) -> tuple:
    """All gamma-trees of height h with an open chain of l nodes.

    l counts the root together with the highest root subtree, so it ranges
    over 2..h; anything else returns no trees.
    """
    if h < 1:
        raise ValueError("height must be at least 1")
    if not 2 <= l <= h:
        return ()
    out = []
    top = _chain(l - 2)
    frees = _free_trees(1, h - 2, h)
    branched = [t for t in frees if t]
    for lowest in _spine_trees(1, h):
        if lowest == ():
            continue  # (iii): the lowest root child has siblings above
        for extra in range(h - 1):
            for mids in product(branched, repeat=extra):
                out.append((lowest,) + mids + (top,))
    return tuple(out)


def enumerate_alpha_gamma_trees(h: int, l: int) -> tuple:
    """The alpha-trees among enumerate_gamma_trees(h, l), in A(h) order."""
    return tuple(
        t
        for t in enumerate_alpha_trees(h)
        if is_alpha_gamma_tree(t) and top_chain_count(t) == l
    )


# ---------------------------------------------------------------------------
# the pruning G(T)


def g_transform(tree: Tree) -> Tree:
    """Remove, per column, the highest child of the highest retained node.

    The levels are processed from the root downward; whatever was cut at
    one level no longer counts at the next.  The result is a subtree with
    the same root.
    """
    if not is_gamma_tree(tree):
        raise NotGammaTree("G(T) is defined for gamma-trees")
    kept_children: dict = {}
    level = [((), tree)]
    while level:
        nxt = []
        for k, (p, node) in enumerate(level):
            keep = len(node)
            if k == len(level) - 1 and keep:
                keep -= 1
            kept_children[p] = keep
            nxt.extend(((p + (m,), node[m]) for m in range(keep)))
        level = nxt

    def build(p: tuple, node: Tree) -> Tree:
        return tuple(
            build(p + (m,), node[m]) for m in range(kept_children[p])
        )

    return build((), tree)


def g_paths(tree: Tree) -> frozenset:
    """Node paths of T that survive in G(T)."""
    if not is_gamma_tree(tree):
        raise NotGammaTree("G(T) is defined for gamma-trees")
    kept = set()
    level = [((), tree)]
    while level:
        nxt = []
        for k, (p, node) in enumerate(level):
            kept.add(p)
            keep = len(node)
            if k == len(level) - 1 and keep:
                keep -= 1
            nxt.extend(((p + (m,), node[m]) for m in range(keep)))
        level = nxt
    return frozenset(kept)


# ---------------------------------------------------------------------------
# drawing


def ascii_art(tree: Tree, opens=None) -> str:
    """Horizontal picture with the root at the right, open dots as ``o``.

    Columns sit 4 characters apart with the bottom line straight; edges
    are approximated with dashes and diagonal ticks, close enough to the
    source pictures to eyeball a tree.
    """
    if opens is None:
        opens = frozenset()
    k = height(tree)
    cols = columns(tree)
    row: dict = {}
    for d, col in enumerate(cols):
        for r, p in enumerate(col):
            row[p] = r
    depth = max(row.values()) + 1
    grid = [[" "] * (4 * k + 1) for _ in range(depth)]
    for p in paths(tree):
        if not p:
            continue
        x, y = 4 * (k - len(p)), row[p]
        py = row[p[:-1]]
        if py == y:
            for xx in range(x + 1, x + 4):
                grid[y][xx] = "-"
        else:
            mark = "\\" if py < y else "/"
            for step in range(1, 4):
                yy = y + (py - y) * step / 3.0
                grid[round(yy)][x + step] = mark
    for p in paths(tree):
        grid[row[p]][4 * (k - len(p))] = "o" if p in opens else "*"
    lines = ["".join(r).rstrip() for r in reversed(grid)]
    return "\n".join(line for line in lines if line)
