"""Encoding of the Presenter strategy tree into rectangular frames.

Every interval that can occur in some branch of the shortest forcing
strategy becomes one node of a tree (branches diverge where Painter's
canonical color choices lead to different continuations).  Each node I
receives a y-slot [c, d] strictly inside its parent's slot, siblings
strictly interleaved, and is drawn as the boundary of I x [c, d].

Two frames then intersect exactly when their intervals overlap and one
node is an ancestor of the other, so cliques of the frame family are
cliques of a single branch's overlap graph: the family stays
triangle-free while inheriting the game's forced color count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConstructionError
from .game import Interval, _replay, overlaps
from .geometry import Rat, Rect, XYTransform
from .graphs import ChromaticResult, chromatic_number, intersection_graph, is_triangle_free
from .shapes import ShapeDef, TransformedCopy, catalog, copies_intersect

DEFAULT_TREE_LIMIT = 3


@dataclass
class TreeNode:
    interval: Interval
    children: list["TreeNode"] = field(default_factory=list)
    slot: Optional[tuple[Rat, Rat]] = None

    def child_for(self, iv: Interval) -> "TreeNode":
        for child in self.children:
            if child.interval == iv:
                return child
        child = TreeNode(iv)
        self.children.append(child)
        return child


@dataclass(frozen=True)
class StrategyTree:
    k: int
    color_budget: int
    root: TreeNode
    histories: tuple[tuple[int, ...], ...]  # one complete color sequence per leaf path

    def nodes(self) -> list[TreeNode]:
        out: list[TreeNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(node.children))
        return out


def expand_tree(k: int, color_budget: Optional[int] = None, *,
                limit: int = DEFAULT_TREE_LIMIT) -> StrategyTree:
    """The complete tree of the shortest k-strategy over canonical Painter
    responses within the color budget (default k+1).

    Canonical responses try colors 1..min(max_used+1, budget); a branch
    where no legal color remains ends at the presented interval.  Every
    explored history is replayed through full game-rule validation.
    """
    if k > limit:
        raise ValueError(f"tree expansion capped at k <= {limit}; raise limit explicitly")
    budget = color_budget if color_budget is not None else k + 1
    sequences: list[tuple[tuple[Interval, ...], tuple[int, ...]]] = []

    def explore(colors: tuple[int, ...], path: tuple[Interval, ...]) -> None:
        transcript, iv = _replay(k, colors, Interval(0, 1))
        if iv is None:
            sequences.append((path, colors))
            return
        path = path + (iv,)
        forbidden = transcript.neighbor_colors(iv)
        top = min(max(colors, default=0) + 1, budget)
        legal = [c for c in range(1, top + 1) if c not in forbidden]
        if not legal:
            sequences.append((path, colors))
            return
        for c in legal:
            explore(colors + (c,), path)

    explore((), ())
    first = sequences[0][0][0]
    root = TreeNode(first)
    for path, _ in sequences:
        if path[0] != first:
            raise ConstructionError("strategy produced diverging first intervals")
        node = root
        for iv in path[1:]:
            node = node.child_for(iv)

    def assign_slots(node: TreeNode, lo: Rat, hi: Rat) -> None:
        node.slot = (lo, hi)
        r = len(node.children)
        if r == 0:
            return
        step = (hi - lo) / (2 * r + 1)
        for i, child in enumerate(node.children, start=1):
            assign_slots(child, lo + (2 * i - 1) * step, lo + 2 * i * step)

    assign_slots(root, Fraction(0), Fraction(1))
    return StrategyTree(k, budget, root, tuple(colors for _, colors in sequences))


@dataclass(frozen=True)
class FrameNode:
    index: int
    parent: Optional[int]
    interval: Interval
    slot: tuple[Rat, Rat]


@dataclass(frozen=True)
class FrameFamily:
    frames: tuple[Rect, ...]
    copies: tuple[TransformedCopy, ...]
    nodes: tuple[FrameNode, ...]

    def ancestors(self, i: int) -> set[int]:
        out: set[int] = set()
        node = self.nodes[i]
        while node.parent is not None:
            out.add(node.parent)
            node = self.nodes[node.parent]
        return out


def encode(tree: StrategyTree, shape: Optional[ShapeDef] = None) -> FrameFamily:
    """One rectangular frame per tree node, with the intersection law
    verified exhaustively: frames meet iff their intervals overlap and
    the nodes lie on a common branch."""
    frame_shape = shape if shape is not None else catalog()["frame"]
    nodes: list[FrameNode] = []
    copies: list[TransformedCopy] = []
    rects: list[Rect] = []

    def walk(node: TreeNode, parent: Optional[int]) -> None:
        assert node.slot is not None
        idx = len(nodes)
        lo, hi = node.slot
        nodes.append(FrameNode(idx, parent, node.interval, node.slot))
        box = Rect(node.interval.lo, node.interval.hi, lo, hi)
        rects.append(box)
        t = XYTransform(box.width, box.height, box.x_lo, box.y_lo)
        copies.append(TransformedCopy(frame_shape.name, frame_shape.shape, t,
                                      f"frame(node{idx})"))
        for child in node.children:
            walk(child, idx)

    walk(tree.root, None)
    family = FrameFamily(tuple(rects), tuple(copies), tuple(nodes))

    for i in range(len(nodes)):
        anc_i = family.ancestors(i)
        for j in range(i + 1, len(nodes)):
            same_branch = i in family.ancestors(j) or j in anc_i
            expected = same_branch and overlaps(nodes[i].interval, nodes[j].interval)
            actual = copies_intersect(copies[i], copies[j])
            if expected != actual:
                raise ConstructionError(
                    f"encoding law violated at nodes {i}, {j}: "
                    f"expected {'meet' if expected else 'disjoint'}")
    return family


@dataclass(frozen=True)
class CertifyReport:
    k: int
    n: int
    triangle_free: bool
    chi: ChromaticResult

    @property
    def ok(self) -> bool:
        bound = self.chi.upper if self.chi.exact else self.chi.lower
        return self.triangle_free and bound >= self.k + 1


def certify(family: FrameFamily, k: int,
            timeout: Optional[float] = None) -> CertifyReport:
    """Triangle-freeness and the exact chromatic number of the encoded family."""
    g = intersection_graph(family.copies)
    return CertifyReport(k, g.n, is_triangle_free(g), chromatic_number(g, timeout))
