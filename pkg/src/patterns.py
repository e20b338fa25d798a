import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .grid import (
    COLUMN, ROW, GridError, GridSubgraph, Vertex, transpose,
)

logger = logging.getLogger(__name__)


class PatternError(GridError):
    """Raised for invalid pattern parameters or unknown pattern names."""
    pass


class NonSimpleCycleError(PatternError):
    def __init__(self, line_kind: str, index: int):
        self.line_kind = line_kind
        self.index = index
        super().__init__(f"Cycle is not simple: {line_kind} {index} is disconnected")


@dataclass(frozen=True)
class WaypointCycle:
    """
    A closed lattice walk given by its waypoints in cyclic order.

    Consecutive waypoints (including last -> first) share exactly one coordinate.
    """
    waypoints: Tuple[Vertex, ...]

    def __post_init__(self):
        points = tuple((int(x), int(y)) for x, y in self.waypoints)
        object.__setattr__(self, 'waypoints', points)
        if len(points) < 3:
            raise PatternError(f"A cycle needs at least 3 waypoints, got {len(points)}")
        if len(set(points)) != len(points):
            raise PatternError("Waypoints must be distinct")
        for a, b in self.steps():
            if (a[0] == b[0]) == (a[1] == b[1]):
                raise PatternError(f"Waypoints {a} and {b} do not share exactly one coordinate")

    def steps(self) -> List[Tuple[Vertex, Vertex]]:
        pts = self.waypoints
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

    def __len__(self) -> int:
        return len(self.waypoints)


def single_vertex() -> GridSubgraph:
    return GridSubgraph.single_vertex()


def horizontal_edge() -> GridSubgraph:
    return GridSubgraph.build(2, 1, h_edges=[(1, 2, 1)])


def vertical_edge() -> GridSubgraph:
    return GridSubgraph.build(1, 2, v_edges=[(1, 1, 2)])


def horizontal_path(m: int) -> GridSubgraph:
    """Path on m vertices along row 1."""
    if m < 1:
        raise PatternError(f"Path needs at least one vertex, got {m}")
    if m == 1:
        return single_vertex()
    return GridSubgraph.build(m, 1, h_edges=[(x, x + 1, 1) for x in range(1, m)])


def row_clique(m: int) -> GridSubgraph:
    if m < 1:
        raise PatternError(f"Clique size must be positive, got {m}")
    if m == 1:
        return single_vertex()
    return GridSubgraph.build(m, 1, h_edges=[(a, b, 1) for a, b in combinations(range(1, m + 1), 2)])


def column_clique(m: int) -> GridSubgraph:
    return transpose(row_clique(m))


def alternating_cycle(t: int) -> GridSubgraph:
    """
    The alternating cycle AC_t on t/2 columns and t/2 rows.

    The cycle runs (1,1),(2,1),(2,2),(3,2),...,(t/2,t/2),(1,t/2) and back to (1,1),
    so edge orientations alternate horizontal/vertical.
    """
    if t < 4 or t % 2:
        raise PatternError(f"Alternating cycle length must be even and at least 4, got {t}")
    m = t // 2
    h = [(i, i + 1, i) for i in range(1, m)] + [(1, m, m)]
    v = [(i + 1, i, i + 1) for i in range(1, m)] + [(1, 1, m)]
    return GridSubgraph.build(m, m, h, v)


def aligned_staircase(d: int) -> GridSubgraph:
    """
    The aligned staircase AS_{d-1}: d + 1 columns, d rows and 2d + 1 edges.

    This is the grid image of the odd tight cycle on 2d + 1 vertices.
    """
    if d < 2:
        raise PatternError(f"Aligned staircase needs d >= 2, got {d}")
    h = [(i, i + 1, i) for i in range(1, d + 1)] + [(1, d + 1, 1), (1, d + 1, d)]
    v = [(i + 1, i, i + 1) for i in range(1, d)]
    return GridSubgraph.build(d + 1, d, h, v)


def nz_stool() -> GridSubgraph:
    """
    The N-Z stool on 4 columns and 2 rows.

    Row 1 carries the path 1-2-3-4, row 2 the edges 1-3, 1-4 and 2-4, and every
    column has its vertical edge.
    """
    h = [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 3, 2), (1, 4, 2), (2, 4, 2)]
    v = [(x, 1, 2) for x in range(1, 5)]
    return GridSubgraph.build(4, 2, h, v)


def hooked_staircase() -> GridSubgraph:
    """The path (1,2)-(1,3)-(2,3)-(2,2)-(3,2)-(3,1)-(2,1)-(1,1) on a 3x3 lattice."""
    path = [(1, 2), (1, 3), (2, 3), (2, 2), (3, 2), (3, 1), (2, 1), (1, 1)]
    return GridSubgraph.from_edges(list(zip(path, path[1:])), columns=3, rows=3)


_NAMED = {
    "square": lambda: alternating_cycle(4),
    "nz_stool": nz_stool,
    "hooked_staircase": hooked_staircase,
}

_SIZED = {
    "row_clique": row_clique,
    "column_clique": column_clique,
}


def named(name: str, m: Optional[int] = None) -> GridSubgraph:
    """
    Look up a named pattern.

    Args:
        name: square, nz_stool, hooked_staircase, row_clique or column_clique
        m: clique size for the sized families

    Raises:
        PatternError: unknown name or missing size
    """
    if name in _NAMED:
        return _NAMED[name]()
    if name in _SIZED:
        if m is None:
            raise PatternError(f"Pattern '{name}' needs a size")
        return _SIZED[name](m)
    raise PatternError(f"Unknown pattern name '{name}'")


def parse_pattern(spec: str) -> GridSubgraph:
    """
    Parse a pattern spec such as "ac:8", "as:5", "row_clique:3", "hpath:4",
    "edge", "vedge", "vertex" or any named pattern.
    """
    spec = spec.strip()
    name, _, arg = spec.partition(':')
    name = name.strip().lower()
    simple = {"edge": horizontal_edge, "vedge": vertical_edge, "vertex": single_vertex}
    if name in simple and not arg:
        return simple[name]()
    families = {
        "ac": alternating_cycle,
        "as": aligned_staircase,
        "hpath": horizontal_path,
        "row_clique": row_clique,
        "column_clique": column_clique,
    }
    if name in families:
        try:
            value = int(arg)
        except ValueError:
            raise PatternError(f"Pattern spec '{spec}' needs an integer parameter")
        return families[name](value)
    if name in _NAMED and not arg:
        return _NAMED[name]()
    raise PatternError(f"Unknown pattern spec '{spec}'")


def _line_components(g: GridSubgraph, kind: str, index: int) -> int:
    line = g.line(kind, index)
    if not line.positions:
        return 0
    return nx.number_connected_components(line.to_networkx())


def first_disconnected_line(g: GridSubgraph) -> Optional[Tuple[str, int]]:
    for y in range(1, g.rows + 1):
        if _line_components(g, ROW, y) > 1:
            return (ROW, y)
    for x in range(1, g.columns + 1):
        if _line_components(g, COLUMN, x) > 1:
            return (COLUMN, x)
    return None


def is_simple(g: GridSubgraph) -> bool:
    """True when every nonempty row and column intersection is connected."""
    return first_disconnected_line(g) is None


def is_simple_tree(g: GridSubgraph) -> bool:
    if not g.vertices:
        return False
    return nx.is_tree(g.to_networkx()) and is_simple(g)


def simple_cycle_from_waypoints(w: WaypointCycle) -> GridSubgraph:
    """
    Build the cycle through the waypoints.

    Raises:
        NonSimpleCycleError: naming the first row or column whose intersection
            with the cycle is disconnected
    """
    columns = max(x for x, _ in w.waypoints)
    rows = max(y for _, y in w.waypoints)
    g = GridSubgraph.from_edges(w.steps(), columns=columns, rows=rows)
    bad = first_disconnected_line(g)
    if bad is not None:
        raise NonSimpleCycleError(*bad)
    return g


def waypoints_of(g: GridSubgraph) -> WaypointCycle:
    """
    Read the cyclic waypoint list off a connected 2-regular grid subgraph.

    The walk starts at the least vertex and leaves towards its least neighbour.
    """
    graph = g.to_networkx()
    if not graph.number_of_nodes() or any(d != 2 for _, d in graph.degree()) or not nx.is_connected(graph):
        raise PatternError("Graph is not a single cycle")
    start = min(graph.nodes())
    walk = [start]
    prev, current = start, min(graph.neighbors(start))
    while current != start:
        walk.append(current)
        prev, current = current, next(n for n in graph.neighbors(current) if n != prev)
    return WaypointCycle(tuple(walk))


@dataclass(frozen=True)
class AlternatingCore:
    """
    Turning waypoints of a simple cycle and their relabeling onto AC_m.

    column_map/row_map send the original coordinates of the turns to the
    coordinates of alternating_cycle(m), under which turns[i] becomes the
    i-th vertex of the alternating cycle.
    """
    turns: Tuple[Vertex, ...]
    column_map: Dict[int, int]
    row_map: Dict[int, int]

    @property
    def length(self) -> int:
        return len(self.turns)

    def pattern(self) -> GridSubgraph:
        return alternating_cycle(self.length)


def alternating_core(w: WaypointCycle) -> AlternatingCore:
    """
    Find the turning waypoints of a simple cycle.

    Every other waypoint lies on a straight run between two consecutive
    turns, and the turns themselves form an alternating cycle.

    Raises:
        PatternError: if the cycle lies within a single line (no turns)
        NonSimpleCycleError: if the cycle is not simple
    """
    simple_cycle_from_waypoints(w)
    steps = w.steps()
    horizontal = [a[1] == b[1] for a, b in steps]
    n = len(w)
    turn_idx = [i for i in range(n) if horizontal[i - 1] != horizontal[i]]
    if not turn_idx:
        raise PatternError("Cycle lies in a single line and has no alternating core")
    start = next(i for i in turn_idx if horizontal[i])
    k = turn_idx.index(start)
    order = turn_idx[k:] + turn_idx[:k]
    turns = tuple(w.waypoints[i] for i in order)
    column_map: Dict[int, int] = {turns[0][0]: 1}
    row_map: Dict[int, int] = {}
    for j, (x, y) in enumerate(turns):
        row_map.setdefault(y, j // 2 + 1)
        if j % 2 == 1:
            column_map.setdefault(x, (j + 1) // 2 + 1)
    logger.debug(f"Alternating core with {len(turns)} turns")
    return AlternatingCore(turns, column_map, row_map)
