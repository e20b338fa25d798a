import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import Caps, resolve_caps
from .errors import GridError

logger = logging.getLogger(__name__)

Vertex = Tuple[int, int]
HEdge = Tuple[int, int, int]  # (x1, x2, y) with x1 < x2
VEdge = Tuple[int, int, int]  # (x, y1, y2) with y1 < y2

ROW = "row"
COLUMN = "column"


class InvalidGridError(GridError):
    """Raised when a grid subgraph violates its invariants."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(f"Invalid grid subgraph: {report.summary()}")


class VertexNotFoundError(GridError):
    pass


class InvalidPermutationError(GridError):
    pass


@dataclass(frozen=True)
class Violation:
    message: str
    element: Any = None

    def __str__(self) -> str:
        if self.element is None:
            return self.message
        return f"{self.message}: {self.element}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate(); ok when no violations were found."""
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def messages(self) -> List[str]:
        return [v.message for v in self.violations]

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


def _norm_h(edge: Sequence[int]) -> HEdge:
    x1, x2, y = edge
    return (min(x1, x2), max(x1, x2), y)


def _norm_v(edge: Sequence[int]) -> VEdge:
    x, y1, y2 = edge
    return (x, min(y1, y2), max(y1, y2))


@dataclass(frozen=True)
class GridSubgraph:
    """
    A subgraph of the grid graph G_{c x r} with orientation-tagged edges.

    Coordinates are 1-based: columns x in [1, c], rows y in [1, r].
    Horizontal edges are stored as (x1, x2, y), vertical edges as (x, y1, y2),
    always with the smaller coordinate first.

    Prefer GridSubgraph.build(), which normalizes and validates its input.
    """
    columns: int
    rows: int
    vertices: FrozenSet[Vertex]
    h_edges: FrozenSet[HEdge] = frozenset()
    v_edges: FrozenSet[VEdge] = frozenset()
    spanning: bool = False

    @classmethod
    def build(cls, columns: int, rows: int,
              h_edges: Iterable[Sequence[int]] = (),
              v_edges: Iterable[Sequence[int]] = (),
              vertices: Optional[Iterable[Sequence[int]]] = None,
              spanning: bool = False) -> "GridSubgraph":
        """
        Build a validated grid subgraph.

        Args:
            columns: Number of columns c
            rows: Number of rows r
            h_edges: Horizontal edges as (x1, x2, y)
            v_edges: Vertical edges as (x, y1, y2)
            vertices: Explicit vertex set; defaults to the full lattice when
                spanning and to the edge endpoints otherwise
            spanning: Whether the graph uses every lattice point

        Returns:
            GridSubgraph

        Raises:
            InvalidGridError: if any invariant is violated
        """
        h = frozenset(_norm_h(e) for e in h_edges)
        v = frozenset(_norm_v(e) for e in v_edges)
        if vertices is None:
            if spanning:
                verts = frozenset(product(range(1, columns + 1), range(1, rows + 1)))
            else:
                verts = frozenset(
                    [(x1, y) for x1, _, y in h] + [(x2, y) for _, x2, y in h]
                    + [(x, y1) for x, y1, _ in v] + [(x, y2) for x, _, y2 in v]
                )
        else:
            verts = frozenset((int(p[0]), int(p[1])) for p in vertices)
        g = cls(columns, rows, verts, h, v, spanning)
        report = validate(g)
        if not report.ok:
            raise InvalidGridError(report)
        return g

    @classmethod
    def complete(cls, columns: int, rows: Optional[int] = None) -> "GridSubgraph":
        rows = columns if rows is None else rows
        h = [(x1, x2, y) for y in range(1, rows + 1) for x1, x2 in combinations(range(1, columns + 1), 2)]
        v = [(x, y1, y2) for x in range(1, columns + 1) for y1, y2 in combinations(range(1, rows + 1), 2)]
        return cls.build(columns, rows, h, v, spanning=True)

    @classmethod
    def empty(cls, columns: int, rows: Optional[int] = None) -> "GridSubgraph":
        rows = columns if rows is None else rows
        return cls.build(columns, rows, spanning=True)

    @classmethod
    def single_vertex(cls) -> "GridSubgraph":
        return cls.build(1, 1, spanning=True)

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[Vertex, Vertex]],
                   columns: Optional[int] = None, rows: Optional[int] = None,
                   vertices: Optional[Iterable[Vertex]] = None,
                   spanning: bool = False) -> "GridSubgraph":
        """Build from vertex-pair edges; orientation is inferred from shared coordinates."""
        raw = {"edges": [[list(a), list(b)] for a, b in edges], "spanning": spanning}
        points = [p for edge in edges for p in edge] + list(vertices or [])
        raw["columns"] = columns if columns is not None else max((p[0] for p in points), default=1)
        raw["rows"] = rows if rows is not None else max((p[1] for p in points), default=1)
        if vertices is not None:
            raw["vertices"] = [list(p) for p in vertices]
        return from_dict(raw)

    @property
    def edge_count(self) -> int:
        return len(self.h_edges) + len(self.v_edges)

    @cached_property
    def h_adjacency(self) -> Dict[Vertex, FrozenSet[Vertex]]:
        adj: Dict[Vertex, set] = {p: set() for p in self.vertices}
        for x1, x2, y in self.h_edges:
            adj[(x1, y)].add((x2, y))
            adj[(x2, y)].add((x1, y))
        return {p: frozenset(n) for p, n in adj.items()}

    @cached_property
    def v_adjacency(self) -> Dict[Vertex, FrozenSet[Vertex]]:
        adj: Dict[Vertex, set] = {p: set() for p in self.vertices}
        for x, y1, y2 in self.v_edges:
            adj[(x, y1)].add((x, y2))
            adj[(x, y2)].add((x, y1))
        return {p: frozenset(n) for p, n in adj.items()}

    def has_h_edge(self, x1: int, x2: int, y: int) -> bool:
        return _norm_h((x1, x2, y)) in self.h_edges

    def has_v_edge(self, x: int, y1: int, y2: int) -> bool:
        return _norm_v((x, y1, y2)) in self.v_edges

    def edge_pairs(self) -> List[Tuple[Vertex, Vertex]]:
        pairs = [((x1, y), (x2, y)) for x1, x2, y in sorted(self.h_edges)]
        pairs += [((x, y1), (x, y2)) for x, y1, y2 in sorted(self.v_edges)]
        return pairs

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.vertices))
        graph.add_edges_from(self.edge_pairs())
        return graph

    def line(self, kind: str, index: int) -> "LineGraph":
        """Return the subgraph induced on one row or column."""
        if kind == ROW:
            if not 1 <= index <= self.rows:
                raise GridError(f"Row {index} out of range 1..{self.rows}")
            adjacency = frozenset((x1, x2) for x1, x2, y in self.h_edges if y == index)
            positions = frozenset(x for x, y in self.vertices if y == index)
            return LineGraph(ROW, index, self.columns, adjacency, positions)
        if kind == COLUMN:
            if not 1 <= index <= self.columns:
                raise GridError(f"Column {index} out of range 1..{self.columns}")
            adjacency = frozenset((y1, y2) for x, y1, y2 in self.v_edges if x == index)
            positions = frozenset(y for x, y in self.vertices if x == index)
            return LineGraph(COLUMN, index, self.rows, adjacency, positions)
        raise GridError(f"Unknown line kind '{kind}'")

    def lines(self) -> List["LineGraph"]:
        """All rows, then all columns."""
        return ([self.line(ROW, y) for y in range(1, self.rows + 1)]
                + [self.line(COLUMN, x) for x in range(1, self.columns + 1)])

    def with_edges(self, h_edges: Iterable[Sequence[int]] = (),
                   v_edges: Iterable[Sequence[int]] = ()) -> "GridSubgraph":
        """Return a copy with extra edges (and their endpoints) added."""
        h = set(self.h_edges) | {_norm_h(e) for e in h_edges}
        v = set(self.v_edges) | {_norm_v(e) for e in v_edges}
        verts = set(self.vertices)
        verts.update((x1, y) for x1, _, y in h)
        verts.update((x2, y) for _, x2, y in h)
        verts.update((x, y1) for x, y1, _ in v)
        verts.update((x, y2) for x, _, y2 in v)
        return GridSubgraph.build(self.columns, self.rows, h, v, verts, self.spanning)


@dataclass(frozen=True)
class LineGraph:
    """
    The graph induced on a single row or column.

    Args:
        line_kind: "row" or "column"
        index: Coordinate of the line
        n: Number of positions on the line
        adjacency: Unordered position pairs (a, b) with a < b
        positions: Positions carrying a vertex (all of 1..n for spanning hosts)
    """
    line_kind: str
    index: int
    n: int
    adjacency: FrozenSet[Tuple[int, int]] = frozenset()
    positions: Optional[FrozenSet[int]] = None

    def __post_init__(self):
        if self.positions is None:
            object.__setattr__(self, 'positions', frozenset(range(1, self.n + 1)))
        for a, b in self.adjacency:
            if not (1 <= a <= self.n and 1 <= b <= self.n) or a == b:
                raise GridError(f"Line adjacency pair {(a, b)} outside 1..{self.n}")

    @classmethod
    def from_graph(cls, graph: nx.Graph, line_kind: str = ROW, index: int = 1) -> "LineGraph":
        """Wrap a networkx graph on nodes 1..n as a line."""
        n = graph.number_of_nodes()
        adjacency = frozenset((min(a, b), max(a, b)) for a, b in graph.edges())
        return cls(line_kind, index, n, adjacency)

    def degree(self, position: int) -> int:
        return sum(1 for a, b in self.adjacency if position in (a, b))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.positions))
        graph.add_edges_from(sorted(self.adjacency))
        return graph

    def point(self, position: int) -> Vertex:
        """Lattice point of a position on this line."""
        if self.line_kind == ROW:
            return (position, self.index)
        return (self.index, position)


@dataclass(frozen=True)
class GridIsoWitness:
    """
    Relabeling that maps a source graph onto a target graph.

    column_perm[i] is the image of column i + 1 (1-based values); the
    transpose, if any, is applied before the permutations.
    """
    column_perm: Tuple[int, ...]
    row_perm: Tuple[int, ...]
    transposed: bool = False


def _vertex_ok(columns: int, rows: int, p: Sequence[int]) -> bool:
    return 1 <= p[0] <= columns and 1 <= p[1] <= rows


def validate(g: Union[GridSubgraph, Mapping[str, Any]]) -> ValidationReport:
    """
    Check the grid subgraph invariants.

    Accepts a GridSubgraph or its raw JSON mapping. The mapping may give
    edges either as "h_edges"/"v_edges" triples or as "edges", a list of
    vertex pairs [[x1, y1], [x2, y2]].

    Returns:
        ValidationReport listing every violated invariant with its offending element
    """
    violations: List[Violation] = []
    if isinstance(g, GridSubgraph):
        columns, rows, spanning = g.columns, g.rows, g.spanning
        vertices = set(g.vertices)
        h_raw = [tuple(e) for e in g.h_edges]
        v_raw = [tuple(e) for e in g.v_edges]
        pair_raw: List[Tuple[Vertex, Vertex]] = []
    else:
        columns = g.get("columns")
        rows = g.get("rows")
        spanning = bool(g.get("spanning", False))
        if not isinstance(columns, int) or not isinstance(rows, int) or columns < 1 or rows < 1:
            return ValidationReport((Violation("columns and rows must be positive integers", (columns, rows)),))
        h_raw = [tuple(e) for e in g.get("h_edges", [])]
        v_raw = [tuple(e) for e in g.get("v_edges", [])]
        pair_raw = [(tuple(a), tuple(b)) for a, b in g.get("edges", [])]
        if "vertices" in g:
            vertices = {tuple(p) for p in g["vertices"]}
        elif spanning:
            vertices = set(product(range(1, columns + 1), range(1, rows + 1)))
        else:
            vertices = set()
            for x1, x2, y in h_raw:
                vertices.update({(x1, y), (x2, y)})
            for x, y1, y2 in v_raw:
                vertices.update({(x, y1), (x, y2)})
            for a, b in pair_raw:
                vertices.update({a, b})

    if columns < 1 or rows < 1:
        violations.append(Violation("columns and rows must be positive integers", (columns, rows)))
        return ValidationReport(tuple(violations))

    for p in sorted(vertices):
        if not _vertex_ok(columns, rows, p):
            violations.append(Violation("vertex outside lattice", p))

    h_seen = set()
    v_seen = set()
    for a, b in pair_raw:
        if a == b:
            violations.append(Violation("self-loop", (a, b)))
        elif a[1] == b[1]:
            h_raw.append((a[0], b[0], a[1]))
        elif a[0] == b[0]:
            v_raw.append((a[0], a[1], b[1]))
        else:
            violations.append(Violation("edge not within a row or column", (a, b)))

    for edge in h_raw:
        x1, x2, y = edge
        if x1 == x2:
            violations.append(Violation("self-loop", edge))
            continue
        key = _norm_h(edge)
        if key in h_seen:
            violations.append(Violation("duplicate edge", edge))
        h_seen.add(key)
        for p in ((x1, y), (x2, y)):
            if p not in vertices:
                violations.append(Violation("edge endpoint not a vertex", p))
    for edge in v_raw:
        x, y1, y2 = edge
        if y1 == y2:
            violations.append(Violation("self-loop", edge))
            continue
        key = _norm_v(edge)
        if key in v_seen:
            violations.append(Violation("duplicate edge", edge))
        v_seen.add(key)
        for p in ((x, y1), (x, y2)):
            if p not in vertices:
                violations.append(Violation("edge endpoint not a vertex", p))

    if spanning and len({p for p in vertices if _vertex_ok(columns, rows, p)}) != columns * rows:
        violations.append(Violation("spanning mismatch", (len(vertices), columns * rows)))
    return ValidationReport(tuple(violations))


def complement(g: GridSubgraph) -> GridSubgraph:
    """Complement within each row and column clique (E* minus E(g))."""
    if not g.spanning:
        raise InvalidGridError(ValidationReport((Violation("complement requires a spanning graph"),)))
    h = [(x1, x2, y) for y in range(1, g.rows + 1)
         for x1, x2 in combinations(range(1, g.columns + 1), 2) if (x1, x2, y) not in g.h_edges]
    v = [(x, y1, y2) for x in range(1, g.columns + 1)
         for y1, y2 in combinations(range(1, g.rows + 1), 2) if (x, y1, y2) not in g.v_edges]
    return GridSubgraph.build(g.columns, g.rows, h, v, spanning=True)


def degree(g: GridSubgraph, v: Vertex) -> Tuple[int, int]:
    """Return (horizontal degree, vertical degree) of v."""
    v = (v[0], v[1])
    if v not in g.vertices:
        raise VertexNotFoundError(f"Vertex {v} is not in the graph")
    return len(g.h_adjacency[v]), len(g.v_adjacency[v])


def transpose(g: GridSubgraph) -> GridSubgraph:
    """Swap columns and rows; horizontal edges become vertical and vice versa."""
    return GridSubgraph(
        columns=g.rows,
        rows=g.columns,
        vertices=frozenset((y, x) for x, y in g.vertices),
        h_edges=frozenset((y1, y2, x) for x, y1, y2 in g.v_edges),
        v_edges=frozenset((y, x1, x2) for x1, x2, y in g.h_edges),
        spanning=g.spanning,
    )


def _as_perm(perm: Union[Sequence[int], Mapping[int, int]], n: int, label: str) -> Tuple[int, ...]:
    if isinstance(perm, Mapping):
        try:
            values = tuple(perm[i] for i in range(1, n + 1))
        except KeyError as e:
            raise InvalidPermutationError(f"{label} permutation misses {e}")
    else:
        values = tuple(perm)
    if sorted(values) != list(range(1, n + 1)):
        raise InvalidPermutationError(f"{label} permutation {values} is not a bijection on 1..{n}")
    return values


def permute(g: GridSubgraph, column_perm: Union[Sequence[int], Mapping[int, int]],
            row_perm: Union[Sequence[int], Mapping[int, int]]) -> GridSubgraph:
    """
    Relabel columns and rows.

    Args:
        column_perm: column_perm[i] is the new index of column i + 1 (or a dict old -> new)
        row_perm: same for rows

    Raises:
        InvalidPermutationError: if either map is not a bijection
    """
    cp = _as_perm(column_perm, g.columns, "column")
    rp = _as_perm(row_perm, g.rows, "row")
    return GridSubgraph(
        columns=g.columns,
        rows=g.rows,
        vertices=frozenset((cp[x - 1], rp[y - 1]) for x, y in g.vertices),
        h_edges=frozenset(_norm_h((cp[x1 - 1], cp[x2 - 1], rp[y - 1])) for x1, x2, y in g.h_edges),
        v_edges=frozenset(_norm_v((cp[x - 1], rp[y1 - 1], rp[y2 - 1])) for x, y1, y2 in g.v_edges),
        spanning=g.spanning,
    )


def apply_witness(g: GridSubgraph, witness: GridIsoWitness) -> GridSubgraph:
    source = transpose(g) if witness.transposed else g
    return permute(source, witness.column_perm, witness.row_perm)


def delete_line(g: GridSubgraph, kind: str, index: int) -> GridSubgraph:
    """
    Remove a row or column together with its vertices and incident edges.

    Later lines shift down by one. Deleting the last remaining line leaves a
    graph with zero lines, which is only useful as an embedding source.
    """
    if kind == COLUMN:
        if not 1 <= index <= g.columns:
            raise GridError(f"Column {index} out of range 1..{g.columns}")
        shift = lambda x: x - 1 if x > index else x
        return GridSubgraph(
            columns=g.columns - 1,
            rows=g.rows,
            vertices=frozenset((shift(x), y) for x, y in g.vertices if x != index),
            h_edges=frozenset((shift(x1), shift(x2), y) for x1, x2, y in g.h_edges if index not in (x1, x2)),
            v_edges=frozenset((shift(x), y1, y2) for x, y1, y2 in g.v_edges if x != index),
            spanning=g.spanning,
        )
    if kind == ROW:
        return transpose(delete_line(transpose(g), COLUMN, index))
    raise GridError(f"Unknown line kind '{kind}'")


def to_dict(g: GridSubgraph) -> Dict[str, Any]:
    """JSON interchange form; vertices are listed only for non-spanning graphs."""
    data: Dict[str, Any] = {"columns": g.columns, "rows": g.rows, "spanning": g.spanning}
    if not g.spanning:
        data["vertices"] = [list(p) for p in sorted(g.vertices)]
    data["h_edges"] = [list(e) for e in sorted(g.h_edges)]
    data["v_edges"] = [list(e) for e in sorted(g.v_edges)]
    return data


def from_dict(data: Mapping[str, Any]) -> GridSubgraph:
    """
    Parse the JSON interchange form (or the vertex-pair "edges" variant).

    Raises:
        InvalidGridError: with the full validation report
    """
    report = validate(data)
    if not report.ok:
        raise InvalidGridError(report)
    h = [tuple(e) for e in data.get("h_edges", [])]
    v = [tuple(e) for e in data.get("v_edges", [])]
    for a, b in data.get("edges", []):
        if a[1] == b[1]:
            h.append((a[0], b[0], a[1]))
        else:
            v.append((a[0], a[1], b[1]))
    spanning = bool(data.get("spanning", False))
    vertices = data.get("vertices")
    if vertices is None and not spanning:
        endpoints = [p for a, b in data.get("edges", []) for p in (a, b)]
        vertices = endpoints + [(x1, y) for x1, _, y in h] + [(x2, y) for _, x2, y in h] \
            + [(x, y1) for x, y1, _ in v] + [(x, y2) for x, _, y2 in v]
    return GridSubgraph.build(data["columns"], data["rows"], h, v, vertices, spanning)


# Canonical form by colour refinement with individualization.

def _encode(g: GridSubgraph, cp: Sequence[int], rp: Sequence[int]) -> Tuple:
    h = sorted(_norm_h((cp[x1 - 1], cp[x2 - 1], rp[y - 1])) for x1, x2, y in g.h_edges)
    v = sorted(_norm_v((cp[x - 1], rp[y1 - 1], rp[y2 - 1])) for x, y1, y2 in g.v_edges)
    verts = () if g.spanning else tuple(sorted((cp[x - 1], rp[y - 1]) for x, y in g.vertices))
    return (g.columns, g.rows, g.spanning, verts, tuple(h), tuple(v))


def _rank(signatures: Dict[int, Tuple]) -> Dict[int, int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures.values())))}
    return {k: order[sig] for k, sig in signatures.items()}


def _refine(g: GridSubgraph, col: Dict[int, int], row: Dict[int, int]) -> Tuple[Dict[int, int], Dict[int, int]]:
    while True:
        col_sig = {}
        for x in col:
            cells = []
            for y in row:
                if (x, y) not in g.vertices:
                    continue
                cells.append((
                    row[y],
                    tuple(sorted(col[n[0]] for n in g.h_adjacency[(x, y)])),
                    tuple(sorted(row[n[1]] for n in g.v_adjacency[(x, y)])),
                ))
            col_sig[x] = (col[x], tuple(sorted(cells)))
        row_sig = {}
        for y in row:
            cells = []
            for x in col:
                if (x, y) not in g.vertices:
                    continue
                cells.append((
                    col[x],
                    tuple(sorted(col[n[0]] for n in g.h_adjacency[(x, y)])),
                    tuple(sorted(row[n[1]] for n in g.v_adjacency[(x, y)])),
                ))
            row_sig[y] = (row[y], tuple(sorted(cells)))
        new_col, new_row = _rank(col_sig), _rank(row_sig)
        stable = (len(set(new_col.values())) == len(set(col.values()))
                  and len(set(new_row.values())) == len(set(row.values())))
        col, row = new_col, new_row
        if stable:
            return col, row


def _first_open_cell(colours: Dict[int, int]) -> Optional[List[int]]:
    cells: Dict[int, List[int]] = {}
    for item, c in colours.items():
        cells.setdefault(c, []).append(item)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return sorted(cells[c])
    return None


def _individualize(colours: Dict[int, int], item: int) -> Dict[int, int]:
    return _rank({k: (c, k != item) for k, c in colours.items()})


def _canonical_leaves(g: GridSubgraph, budget: List[int], limit: int) -> Tuple:
    best = None
    start_col = {x: 0 for x in range(1, g.columns + 1)}
    start_row = {y: 0 for y in range(1, g.rows + 1)}
    stack = [_refine(g, start_col, start_row)]
    while stack:
        col, row = stack.pop()
        cell = _first_open_cell(col)
        if cell is not None:
            for x in reversed(cell):
                stack.append(_refine(g, _individualize(col, x), row))
            continue
        cell = _first_open_cell(row)
        if cell is not None:
            for y in reversed(cell):
                stack.append(_refine(g, col, _individualize(row, y)))
            continue
        budget[0] += 1
        if budget[0] > limit:
            return None
        cp = [col[x] + 1 for x in range(1, g.columns + 1)]
        rp = [row[y] + 1 for y in range(1, g.rows + 1)]
        code = _encode(g, cp, rp)
        if best is None or code < best:
            best = code
    return best


def canonical_form(g: GridSubgraph, allow_transpose: bool = False, caps: Optional[Caps] = None) -> Tuple:
    """
    Canonical encoding under column/row relabeling (and optionally transpose).

    Two graphs get equal encodings exactly when they are isomorphic under the
    chosen group. The encoding is the lexicographically least relabeled
    (columns, rows, spanning, vertices, h_edges, v_edges) tuple among the
    orderings compatible with the refined line classes.

    Raises:
        CapExceededError: if the graph has too many lines or too many
            candidate orderings; use embed.find_isomorphism instead
    """
    caps = resolve_caps(caps)
    advice = "use find_isomorphism for an explicit isomorphism search"
    caps.check("canonical_lines", max(g.columns, g.rows), advice)
    candidates = [0]
    best = _canonical_leaves(g, candidates, caps.canonical_candidates)
    if best is None:
        caps.check("canonical_candidates", candidates[0], advice)
    if allow_transpose:
        t_best = _canonical_leaves(transpose(g), candidates, caps.canonical_candidates)
        if t_best is None:
            caps.check("canonical_candidates", candidates[0], advice)
        best = min(best, t_best)
    logger.debug(f"Canonical form of {g.columns}x{g.rows} graph from {candidates[0]} candidates")
    return best


def from_canonical(code: Tuple) -> GridSubgraph:
    """Rebuild the representative graph of a canonical encoding."""
    columns, rows, spanning, verts, h, v = code
    return GridSubgraph.build(columns, rows, h, v, None if spanning else verts, spanning)
