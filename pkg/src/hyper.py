import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from .config import Caps, resolve_caps
from .grid import GridError, GridSubgraph, canonical_form

logger = logging.getLogger(__name__)

Label = Hashable


class HypergraphError(GridError):
    pass


class PropertyBError(HypergraphError):
    pass


def _sort_key(label: Label) -> Tuple[str, str]:
    return (type(label).__name__, str(label)) if not isinstance(label, int) else ("", f"{label:012d}")


@dataclass(frozen=True)
class ThreeGraph:
    """
    A 3-uniform hypergraph, optionally with an ordered Property-B bipartition.

    The order of X and Y fixes the column and row indices used by fg_to_grid.
    """
    vertices: FrozenSet[Label]
    edges: FrozenSet[FrozenSet[Label]]
    bipartition: Optional[Tuple[Tuple[Label, ...], Tuple[Label, ...]]] = None

    @classmethod
    def build(cls, vertices: Iterable[Label], edges: Iterable[Iterable[Label]],
              bipartition: Optional[Tuple[Sequence[Label], Sequence[Label]]] = None) -> "ThreeGraph":
        """
        Raises:
            HypergraphError: an edge is not 3 distinct known vertices
            PropertyBError: the bipartition is not a partition or an edge lies in one side
        """
        verts = frozenset(vertices)
        edge_set = set()
        for e in edges:
            e = frozenset(e)
            if len(e) != 3 or not e <= verts:
                raise HypergraphError(f"Edge {sorted(e, key=_sort_key)} is not 3 distinct vertices of the graph")
            edge_set.add(e)
        part = None
        if bipartition is not None:
            X, Y = tuple(bipartition[0]), tuple(bipartition[1])
            if set(X) & set(Y) or set(X) | set(Y) != verts or len(set(X)) != len(X) or len(set(Y)) != len(Y):
                raise PropertyBError("Bipartition must split the vertex set into two disjoint sides")
            for e in edge_set:
                if e <= set(X) or e <= set(Y):
                    raise PropertyBError(f"Edge {sorted(e, key=_sort_key)} lies inside one side")
            part = (X, Y)
        return cls(verts, frozenset(edge_set), part)

    def sorted_vertices(self) -> List[Label]:
        return sorted(self.vertices, key=_sort_key)

    def without_bipartition(self) -> "ThreeGraph":
        return ThreeGraph(self.vertices, self.edges, None)


def tight_cycle(t: int) -> ThreeGraph:
    """C_t^(3) on 1..t with the odd/even bipartition."""
    if t < 4:
        raise HypergraphError(f"Tight cycle needs t >= 4, got {t}")
    edges = [{i, i % t + 1, (i + 1) % t + 1} for i in range(1, t + 1)]
    X = tuple(range(1, t + 1, 2))
    Y = tuple(range(2, t + 1, 2))
    return ThreeGraph.build(range(1, t + 1), edges, (X, Y))


def star(k: int) -> ThreeGraph:
    """S_k^(3): center 0 and leaves 1..k, with the center alone on the Y side."""
    if k < 1:
        raise HypergraphError(f"Star needs k >= 1, got {k}")
    edges = [{0, a, b} for a, b in combinations(range(1, k + 1), 2)]
    return ThreeGraph.build(range(0, k + 1), edges, (tuple(range(1, k + 1)), (0,)))


def complete_3graph(n: int) -> ThreeGraph:
    return ThreeGraph.build(range(1, n + 1), combinations(range(1, n + 1), 3))


def fg_to_grid(h: ThreeGraph, spanning: bool = False) -> GridSubgraph:
    """
    Grid image of a Property-B 3-graph: X gives columns, Y gives rows.

    {x1, x2, y} becomes the horizontal edge (x1, x2, y) and {x, y1, y2} the
    vertical edge (x, y1, y2).

    Raises:
        PropertyBError: h has no bipartition
    """
    if h.bipartition is None:
        raise PropertyBError("fg_to_grid needs a Property-B bipartition")
    X, Y = h.bipartition
    col = {x: i for i, x in enumerate(X, start=1)}
    row = {y: j for j, y in enumerate(Y, start=1)}
    h_edges, v_edges = [], []
    for e in h.edges:
        xs = sorted((col[u] for u in e if u in col))
        ys = sorted((row[u] for u in e if u in row))
        if len(xs) == 2:
            h_edges.append((xs[0], xs[1], ys[0]))
        elif len(ys) == 2:
            v_edges.append((xs[0], ys[0], ys[1]))
        else:
            raise PropertyBError(f"Edge {sorted(e, key=_sort_key)} lies inside one side")
    return GridSubgraph.build(len(X), len(Y), h_edges, v_edges, spanning=spanning)


def fg_from_grid(g: GridSubgraph, column_labels: Optional[Sequence[Label]] = None,
                 row_labels: Optional[Sequence[Label]] = None) -> ThreeGraph:
    """Inverse of fg_to_grid; labels default to "x1".., "y1".."""
    X = tuple(column_labels) if column_labels is not None else tuple(f"x{i}" for i in range(1, g.columns + 1))
    Y = tuple(row_labels) if row_labels is not None else tuple(f"y{j}" for j in range(1, g.rows + 1))
    if len(X) != g.columns or len(Y) != g.rows:
        raise HypergraphError("Label lists must match the grid dimensions")
    edges = [{X[x1 - 1], X[x2 - 1], Y[y - 1]} for x1, x2, y in g.h_edges]
    edges += [{X[x - 1], Y[y1 - 1], Y[y2 - 1]} for x, y1, y2 in g.v_edges]
    return ThreeGraph.build(X + Y, edges, (X, Y))


def count_embeddings_3(H: ThreeGraph, G: ThreeGraph, respect_bipartition: bool = False,
                       caps: Optional[Caps] = None) -> int:
    """
    Number of injective maps V_H -> V_G sending every edge of H to an edge of G.

    With respect_bipartition, X must go into X and Y into Y; this is the
    count that equals t_g of the grid images.
    """
    caps = resolve_caps(caps)
    caps.check("embed_3_vertices", len(H.vertices))
    if respect_bipartition and (H.bipartition is None or G.bipartition is None):
        raise PropertyBError("Bipartition-respecting count needs both bipartitions")

    order = sorted(H.vertices, key=lambda u: (-sum(1 for e in H.edges if u in e), _sort_key(u)))
    allowed: Dict[Label, List[Label]] = {}
    for u in order:
        if respect_bipartition:
            side = 0 if u in H.bipartition[0] else 1
            allowed[u] = list(G.bipartition[side])
        else:
            allowed[u] = G.sorted_vertices()
    checks: Dict[Label, List[FrozenSet[Label]]] = {u: [] for u in order}
    position = {u: i for i, u in enumerate(order)}
    for e in H.edges:
        last = max(e, key=lambda u: position[u])
        checks[last].append(e)

    mapping: Dict[Label, Label] = {}
    used = set()

    def extend(i: int) -> int:
        if i == len(order):
            return 1
        u = order[i]
        total = 0
        for image in allowed[u]:
            if image in used:
                continue
            mapping[u] = image
            if all(frozenset(mapping[a] for a in e) in G.edges for e in checks[u]):
                used.add(image)
                total += extend(i + 1)
                used.discard(image)
            del mapping[u]
        return total

    return extend(0)


def _fresh_label(h: ThreeGraph, v: Label) -> Label:
    if isinstance(v, int):
        return max((u for u in h.vertices if isinstance(u, int)), default=0) + 1
    label = f"{v}'"
    while label in h.vertices:
        label += "'"
    return label


def vertex_bridge(h: ThreeGraph, v: Label, w: Label, new_label: Optional[Label] = None) -> ThreeGraph:
    """
    Blow v up into v and v', duplicating every edge through v, and add {v, v', w}.

    v' joins v's side of the bipartition and goes last in it. If w is on
    the same side as v the bipartition is dropped.
    """
    if v == w:
        raise HypergraphError("vertex_bridge needs two distinct vertices")
    for u in (v, w):
        if u not in h.vertices:
            raise HypergraphError(f"Vertex {u} is not in the graph")
    prime = _fresh_label(h, v) if new_label is None else new_label
    if prime in h.vertices:
        raise HypergraphError(f"Label {prime} is already used")
    edges = set(h.edges)
    edges |= {frozenset(prime if u == v else u for u in e) for e in h.edges if v in e}
    edges.add(frozenset((v, prime, w)))
    part = None
    if h.bipartition is not None:
        X, Y = h.bipartition
        v_in_x = v in X
        if v_in_x == (w in X):
            logger.warning(f"Bridging {v} with {w} on the same side drops the bipartition")
        else:
            part = (X + (prime,), Y) if v_in_x else (X, Y + (prime,))
    return ThreeGraph.build(h.vertices | {prime}, edges, part)


def replay_vertex_bridging(steps: Iterable) -> ThreeGraph:
    """
    Iterate vertex bridging from the graph with one X vertex and one Y vertex.

    Each step is a bridging.BridgeStep: a column step on column c at row y
    bridges x_c with w = y_y, a row step the other way round. The grid image
    of the result equals the replay of the same steps.
    """
    h = ThreeGraph.build(["x1", "y1"], [], (("x1",), ("y1",)))
    for step in steps:
        X, Y = h.bipartition
        if step.axis == "column":
            h = vertex_bridge(h, X[step.source_index - 1], Y[step.anchor - 1], f"x{len(X) + 1}")
        else:
            h = vertex_bridge(h, Y[step.source_index - 1], X[step.anchor - 1], f"y{len(Y) + 1}")
    return h


def find_property_b(h: ThreeGraph, caps: Optional[Caps] = None) -> Optional[Tuple[Tuple[Label, ...], Tuple[Label, ...]]]:
    """
    First bipartition (least vertex on the X side) in which every edge meets both sides.

    Raises:
        CapExceededError: above the bipartition_vertices cap
    """
    caps = resolve_caps(caps)
    caps.check("bipartition_vertices", len(h.vertices))
    verts = h.sorted_vertices()
    if not verts:
        return ((), ())
    first, rest = verts[0], verts[1:]
    for bits in product((0, 1), repeat=len(rest)):
        side = {first: 0, **{u: b for u, b in zip(rest, bits)}}
        if all(len({side[u] for u in e}) == 2 for e in h.edges):
            X = tuple(u for u in verts if side[u] == 0)
            Y = tuple(u for u in verts if side[u] == 1)
            return X, Y
    return None


@dataclass
class StarBoundReport:
    """R(H, S_k^(3)) <= 2 gr(f_g(H), K_k), with whatever is known about gr."""
    k: int
    grid: GridSubgraph
    gr_value: Optional[int] = None
    gr_lower_bound: Optional[int] = None
    gr_upper_bound: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    @property
    def star_bound(self) -> Optional[int]:
        if self.gr_value is not None:
            return 2 * self.gr_value
        if self.gr_upper_bound is not None:
            return 2 * self.gr_upper_bound
        return None

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "grid_columns": self.grid.columns,
            "grid_rows": self.grid.rows,
            "gr_value": self.gr_value,
            "gr_lower_bound": self.gr_lower_bound,
            "gr_upper_bound": self.gr_upper_bound,
            "star_ramsey_upper_bound": self.star_bound,
            "notes": list(self.notes),
        }


def star_ramsey_bound(H: ThreeGraph, k: int, n_max: int = 3, caps: Optional[Caps] = None,
                      workers: int = 1) -> StarBoundReport:
    """
    Tie R(H, S_k^(3)) to the grid Ramsey number of the grid image of H.

    Raises:
        PropertyBError: when H has no Property-B presentation
    """
    from .patterns import alternating_cycle
    from .ramsey import completeness_threshold, gr_exact

    caps = resolve_caps(caps)
    if H.bipartition is None:
        part = find_property_b(H, caps)
        if part is None:
            raise PropertyBError("H has no Property-B presentation")
        H = ThreeGraph.build(H.vertices, H.edges, part)
    grid = fg_to_grid(H)
    report = StarBoundReport(k=k, grid=grid)

    if grid.columns == 1 or grid.rows == 1:
        report.notes.append("grid image lies in one line: it is the avoided clique itself, the reduction degenerates")
    if grid.columns == 3 and grid.rows == 3 and grid.edge_count == 6 and \
            canonical_form(grid, allow_transpose=True, caps=caps) == \
            canonical_form(alternating_cycle(6), allow_transpose=True, caps=caps):
        report.gr_upper_bound = completeness_threshold(k)
        report.notes.append(f"grid image is AC_6: gr(AC_6, K_{k}) <= 55k^3 = {report.gr_upper_bound}")

    result = gr_exact(grid, k, n_max, caps=caps, workers=workers)
    if result.value is not None:
        report.gr_value = result.value
        report.notes.append(f"gr computed exactly: {result.value}")
    else:
        report.gr_lower_bound = result.lower_bound
        report.notes.append(f"gr >= {result.lower_bound} from exact search up to N={n_max}")
    logger.info(f"Star Ramsey bound for k={k}: {report.star_bound}")
    return report


def to_json_dict(h: ThreeGraph) -> Dict:
    data = {
        "vertices": h.sorted_vertices(),
        "edges": sorted((sorted(e, key=_sort_key) for e in h.edges), key=lambda e: [_sort_key(u) for u in e]),
    }
    if h.bipartition is not None:
        data["bipartition"] = {"X": list(h.bipartition[0]), "Y": list(h.bipartition[1])}
    return data


def from_json_dict(data: Dict) -> ThreeGraph:
    part = None
    if data.get("bipartition"):
        part = (data["bipartition"]["X"], data["bipartition"]["Y"])
    return ThreeGraph.build(data["vertices"], data["edges"], part)
