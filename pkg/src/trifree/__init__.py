"""Triangle-free families of axis-aligned shapes with large chromatic
number, built and certified with exact rational arithmetic, together
with the on-line interval coloring game the constructions come from."""

from .geometry import (
    HORIZONTAL,
    VERTICAL,
    Point,
    Rat,
    Rect,
    RectRelation,
    Seg,
    XYTransform,
    as_rat,
    clip_seg_to_rect,
    rect_relations,
    seg_intersect,
)
from .shapes import (
    RectilinearShape,
    ShapeDef,
    ShapeFeatures,
    TransformedCopy,
    catalog,
    copies_intersect,
    stabs_horizontally,
    stabs_vertically,
    validate_features,
)
from .independent import (
    ConstructionLevel,
    Probe,
    augment,
    build,
    make_diagonal,
    next_level,
    size_formulas,
    split_probe,
)
from .uniform import (
    EpsProbe,
    UniformLevel,
    augment_uniform,
    build_uniform,
    carve_probe,
    diagonal_checks,
)
from .game import (
    GameTranscript,
    Interval,
    PresenterSession,
    first_fit,
    make_minimax_painter,
    make_repl_painter,
    minimax_verify,
    overlaps,
    run_game,
)
from .encoding import FrameFamily, StrategyTree, certify, encode, expand_tree
from .graphs import (
    ChromaticResult,
    Graph,
    chromatic_number,
    clique_number,
    greedy_coloring,
    intersection_graph,
    is_triangle_free,
    parse_dimacs,
    to_dimacs,
)
from .verify import verify_family

__version__ = "0.1.0"
