"""JSON persistence for families, strategy trees, and game transcripts.

Rationals travel as 'p/q' strings (integers may omit '/1'), so a parse
of a serialize reproduces every coordinate bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .encoding import FrameFamily, StrategyTree, TreeNode
from .game import GameResult, Interval
from .geometry import Rat, Rect, Seg, XYTransform, as_rat, rat_str
from .independent import ConstructionLevel, Probe
from .shapes import ShapeDef, TransformedCopy, catalog
from .uniform import EpsProbe, UniformLevel


def seg_to_json(s: Seg) -> dict:
    return {"o": s.orientation, "fixed": rat_str(s.fixed),
            "lo": rat_str(s.lo), "hi": rat_str(s.hi)}


def seg_from_json(d: dict) -> Seg:
    return Seg(d["o"], as_rat(d["fixed"]), as_rat(d["lo"]), as_rat(d["hi"]))


def rect_to_json(r: Rect) -> dict:
    return {"x_lo": rat_str(r.x_lo), "x_hi": rat_str(r.x_hi),
            "y_lo": rat_str(r.y_lo), "y_hi": rat_str(r.y_hi)}


def rect_from_json(d: dict) -> Rect:
    return Rect(as_rat(d["x_lo"]), as_rat(d["x_hi"]),
                as_rat(d["y_lo"]), as_rat(d["y_hi"]))


def shape_to_json(shape: ShapeDef, *, anchored: bool) -> dict:
    base = shape.anchor.shape if anchored else shape.shape
    doc: dict[str, Any] = {
        "name": shape.name,
        "segments": [seg_to_json(s) for s in base.segments],
    }
    if not anchored:
        f = shape.features
        doc["features"] = {
            "bbox": rect_to_json(f.bbox),
            "empty_rect": rect_to_json(f.empty_rect),
            "left_stabber": [seg_to_json(s) for s in f.left_stabber],
            "right_stabber": [seg_to_json(s) for s in f.right_stabber],
            "w1": rat_str(f.w1),
            "w2": rat_str(f.w2),
        }
    doc["anchor"] = {"name": shape.name} if anchored else None
    return doc


def copy_to_json(c: TransformedCopy) -> dict:
    t = c.transform
    return {"sx": rat_str(t.sx), "sy": rat_str(t.sy),
            "tx": rat_str(t.tx), "ty": rat_str(t.ty), "lineage": c.lineage}


def _probe_to_json(rect: Rect, root: Rect, cut: Rat, pierced: Sequence[int]) -> dict:
    return {"rect": rect_to_json(rect), "root": rect_to_json(root),
            "root_cut_x": rat_str(cut), "pierced": list(pierced)}


def _tree_node_to_json(node: TreeNode) -> dict:
    assert node.slot is not None
    return {"lo": rat_str(node.interval.lo), "hi": rat_str(node.interval.hi),
            "slot_lo": rat_str(node.slot[0]), "slot_hi": rat_str(node.slot[1]),
            "children": [_tree_node_to_json(c) for c in node.children]}


def _tree_node_from_json(d: dict) -> TreeNode:
    node = TreeNode(Interval(as_rat(d["lo"]), as_rat(d["hi"])))
    node.slot = (as_rat(d["slot_lo"]), as_rat(d["slot_hi"]))
    node.children = [_tree_node_from_json(c) for c in d["children"]]
    return node


def independent_to_doc(level: ConstructionLevel, shape: ShapeDef,
                       augmented: Optional[Sequence[TransformedCopy]] = None) -> dict:
    copies = list(augmented) if augmented is not None else list(level.family)
    return {
        "shape": shape_to_json(shape, anchored=False),
        "mode": "independent",
        "k": level.k,
        "augmented": augmented is not None,
        "base_size": len(level.family),
        "copies": [copy_to_json(c) for c in copies],
        "probes": [_probe_to_json(p.rect, p.root, p.root_cut_x, p.pierced)
                   for p in level.probes],
    }


def uniform_to_doc(level: UniformLevel, shape: ShapeDef,
                   augmented: Optional[Sequence[TransformedCopy]] = None) -> dict:
    copies = list(augmented) if augmented is not None else list(level.family)
    doc = {
        "shape": shape_to_json(shape, anchored=True),
        "mode": "uniform",
        "k": level.k,
        "epsilon": rat_str(level.epsilon),
        "augmented": augmented is not None,
        "base_size": len(level.family),
        "copies": [copy_to_json(c) for c in copies],
        "probes": [_probe_to_json(p.rect, p.root, p.root.x_hi, p.pierced)
                   for p in level.probes],
    }
    if level.params is not None:
        p = level.params
        doc["params"] = {
            "s_min": rat_str(p.s_min), "s_max": rat_str(p.s_max),
            "m": rat_str(p.m), "eps1": rat_str(p.eps1),
            "s": rat_str(p.square_side), "t": rat_str(p.min_root),
        }
    return doc


def encoded_to_doc(tree: StrategyTree, family: FrameFamily, shape: ShapeDef) -> dict:
    return {
        "shape": shape_to_json(shape, anchored=False),
        "mode": "encoded-frames",
        "k": tree.k,
        "augmented": False,
        "copies": [copy_to_json(c) for c in family.copies],
        "probes": [],
        "tree": {"color_budget": tree.color_budget,
                 "root": _tree_node_to_json(tree.root),
                 "branch_colorings": [list(h) for h in tree.histories]},
    }


def transcript_to_doc(result: GameResult, painter: str) -> dict:
    return {
        "k": result.k,
        "painter": painter,
        "moves": [{"lo": rat_str(iv.lo), "hi": rat_str(iv.hi), "color": c}
                  for iv, c in result.transcript.moves],
        "intervals": result.intervals,
        "colors_used": result.colors_used,
        "certified_point": rat_str(result.certified_point),
    }


@dataclass(frozen=True)
class LoadedFamily:
    """A family document parsed back into exact objects."""

    mode: str
    k: int
    shape: ShapeDef
    augmented: bool
    base_size: int
    copies: tuple[TransformedCopy, ...]
    probes: tuple[Probe, ...]
    eps_probes: tuple[EpsProbe, ...]
    epsilon: Optional[Rat]
    tree_root: Optional[TreeNode]
    color_budget: Optional[int]


def doc_to_family(doc: dict) -> LoadedFamily:
    try:
        return _doc_to_family(doc)
    except KeyError as exc:
        raise ValueError(f"family document is missing field {exc}") from None


def _doc_to_family(doc: dict) -> LoadedFamily:
    mode = doc["mode"]
    if mode not in ("independent", "uniform", "encoded-frames"):
        raise ValueError(f"unknown mode: {mode!r}")
    name = doc["shape"]["name"]
    try:
        shape = catalog()[name]
    except KeyError:
        raise ValueError(f"unknown catalog shape: {name!r}") from None
    anchored = mode == "uniform"
    base = shape.anchor.shape if anchored else shape.shape
    stored = tuple(seg_from_json(s) for s in doc["shape"]["segments"])
    if stored != base.segments:
        raise ValueError(f"shape segments do not match catalog entry {name!r}")
    copies = tuple(
        TransformedCopy(name, base,
                        XYTransform(as_rat(c["sx"]), as_rat(c["sy"]),
                                    as_rat(c["tx"]), as_rat(c["ty"])),
                        c["lineage"])
        for c in doc["copies"])
    epsilon = as_rat(doc["epsilon"]) if "epsilon" in doc else None
    probes: tuple[Probe, ...] = ()
    eps_probes: tuple[EpsProbe, ...] = ()
    if mode == "independent":
        probes = tuple(Probe(rect_from_json(p["rect"]), rect_from_json(p["root"]),
                             as_rat(p["root_cut_x"]), tuple(p["pierced"]))
                       for p in doc["probes"])
    elif mode == "uniform":
        assert epsilon is not None
        eps_probes = tuple(EpsProbe(rect_from_json(p["rect"]), rect_from_json(p["root"]),
                                    epsilon, tuple(p["pierced"]))
                           for p in doc["probes"])
    tree_root = None
    color_budget = None
    if mode == "encoded-frames":
        tree_root = _tree_node_from_json(doc["tree"]["root"])
        color_budget = doc["tree"]["color_budget"]
    return LoadedFamily(
        mode=mode,
        k=doc["k"],
        shape=shape,
        augmented=doc.get("augmented", False),
        base_size=doc.get("base_size", len(copies)),
        copies=copies,
        probes=probes,
        eps_probes=eps_probes,
        epsilon=epsilon,
        tree_root=tree_root,
        color_budget=color_budget,
    )


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
