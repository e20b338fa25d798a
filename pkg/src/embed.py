import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx

from .config import Caps, resolve_caps
from .grid import (
    COLUMN, ROW, GridError, GridIsoWitness, GridSubgraph, LineGraph, Vertex, transpose,
)
from .parallel import map_branches

logger = logging.getLogger(__name__)


class EmbeddingError(GridError):
    pass


@dataclass(frozen=True)
class Embedding:
    """
    A pair of injective maps from pattern columns/rows into host columns/rows.

    column_map[i] is the host column of pattern column i + 1, and likewise
    for row_map.
    """
    column_map: Tuple[int, ...]
    row_map: Tuple[int, ...]

    def image(self, v: Vertex) -> Vertex:
        return (self.column_map[v[0] - 1], self.row_map[v[1] - 1])

    def to_dict(self) -> Dict:
        return {"column_map": list(self.column_map), "row_map": list(self.row_map)}

    @classmethod
    def from_dict(cls, data: Dict) -> "Embedding":
        return cls(tuple(data["column_map"]), tuple(data["row_map"]))


@dataclass(frozen=True)
class Coclique:
    """k lattice points on one row or column with no host edge among them."""
    line_kind: str
    line_index: int
    positions: FrozenSet[Vertex]

    @property
    def size(self) -> int:
        return len(self.positions)

    def to_dict(self) -> Dict:
        return {
            "line_kind": self.line_kind,
            "line_index": self.line_index,
            "positions": [list(p) for p in sorted(self.positions)],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "Coclique":
        return cls(data["line_kind"], data["line_index"], frozenset(tuple(p) for p in data["positions"]))


def is_embedding(H: GridSubgraph, G: GridSubgraph, emb: Embedding) -> bool:
    """Check the embedding contract: injective maps that send edges to same-orientation edges."""
    cm, rm = emb.column_map, emb.row_map
    if len(cm) != H.columns or len(rm) != H.rows:
        return False
    if len(set(cm)) != len(cm) or len(set(rm)) != len(rm):
        return False
    if not all(1 <= x <= G.columns for x in cm) or not all(1 <= y <= G.rows for y in rm):
        return False
    if not all(emb.image(v) in G.vertices for v in H.vertices):
        return False
    if not all(G.has_h_edge(cm[x1 - 1], cm[x2 - 1], rm[y - 1]) for x1, x2, y in H.h_edges):
        return False
    return all(G.has_v_edge(cm[x - 1], rm[y1 - 1], rm[y2 - 1]) for x, y1, y2 in H.v_edges)


def is_coclique(G: GridSubgraph, coclique: Coclique) -> bool:
    points = sorted(coclique.positions)
    for p in points:
        if p not in G.vertices:
            return False
        index = p[1] if coclique.line_kind == ROW else p[0]
        if index != coclique.line_index:
            return False
    for a, b in combinations(points, 2):
        if coclique.line_kind == ROW and G.has_h_edge(a[0], b[0], a[1]):
            return False
        if coclique.line_kind == COLUMN and G.has_v_edge(a[0], a[1], b[1]):
            return False
    return True


class _Matcher:
    """Backtracking search for embeddings in lexicographic (column_map, row_map) order."""

    def __init__(self, H: GridSubgraph, G: GridSubgraph,
                 fixed_columns: Optional[Dict[int, int]] = None,
                 fixed_rows: Optional[Dict[int, int]] = None):
        self.H = H
        self.G = G
        self.fixed_columns = dict(fixed_columns or {})
        self.fixed_rows = dict(fixed_rows or {})
        self.h_by_row: Dict[int, List[Tuple[int, int]]] = {}
        for x1, x2, y in H.h_edges:
            self.h_by_row.setdefault(y, []).append((x1, x2))
        self.v_back: Dict[int, List[Tuple[int, int]]] = {}
        for x, y1, y2 in H.v_edges:
            self.v_back.setdefault(y2, []).append((x, y1))
        self.verts_by_row: Dict[int, List[int]] = {}
        for x, y in H.vertices:
            self.verts_by_row.setdefault(y, []).append(x)
        self.pair_need: Dict[Tuple[int, int], int] = {}
        for x1, x2, _ in H.h_edges:
            self.pair_need[(x1, x2)] = self.pair_need.get((x1, x2), 0) + 1
        self.col_v_need = {x: 0 for x in range(1, H.columns + 1)}
        for x, _, _ in H.v_edges:
            self.col_v_need[x] += 1
        self.host_pair: Dict[Tuple[int, int], int] = {}
        for x1, x2, _ in G.h_edges:
            self.host_pair[(x1, x2)] = self.host_pair.get((x1, x2), 0) + 1
        self.host_col_v = {x: 0 for x in range(1, G.columns + 1)}
        for x, _, _ in G.v_edges:
            self.host_col_v[x] += 1

    def fits(self) -> bool:
        return self.H.columns <= self.G.columns and self.H.rows <= self.G.rows

    def _column_ok(self, cm: List[int], x: int, image: int) -> bool:
        if self.col_v_need[x] > self.host_col_v[image]:
            return False
        for a in range(1, x):
            need = self.pair_need.get((a, x), 0)
            if need:
                b = cm[a - 1]
                if self.host_pair.get((min(b, image), max(b, image)), 0) < need:
                    return False
        return True

    def _row_ok(self, cm: List[int], rm: List[int], y: int, image: int) -> bool:
        G = self.G
        if not G.spanning:
            for x in self.verts_by_row.get(y, ()):
                if (cm[x - 1], image) not in G.vertices:
                    return False
        for x1, x2 in self.h_by_row.get(y, ()):
            if not G.has_h_edge(cm[x1 - 1], cm[x2 - 1], image):
                return False
        for x, y1 in self.v_back.get(y, ()):
            if not G.has_v_edge(cm[x - 1], rm[y1 - 1], image):
                return False
        return True

    def _candidates(self, fixed: Dict[int, int], index: int, limit: int, used: set) -> List[int]:
        if index in fixed:
            image = fixed[index]
            return [image] if 1 <= image <= limit and image not in used else []
        pinned = set(fixed.values())
        return [i for i in range(1, limit + 1) if i not in used and i not in pinned]

    def iter_columns(self, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[int, ...]]:
        cm: List[int] = []
        used: set = set()
        c = self.H.columns
        for x, image in enumerate(prefix, start=1):
            if image not in self._candidates(self.fixed_columns, x, self.G.columns, used):
                return
            if not self._column_ok(cm, x, image):
                return
            cm.append(image)
            used.add(image)

        def extend(x: int):
            if x > c:
                yield tuple(cm)
                return
            for image in self._candidates(self.fixed_columns, x, self.G.columns, used):
                if not self._column_ok(cm, x, image):
                    continue
                cm.append(image)
                used.add(image)
                yield from extend(x + 1)
                cm.pop()
                used.discard(image)

        yield from extend(len(cm) + 1)

    def iter_rows(self, cm: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        rm: List[int] = []
        used: set = set()
        r = self.H.rows
        cm_list = list(cm)

        def extend(y: int):
            if y > r:
                yield tuple(rm)
                return
            for image in self._candidates(self.fixed_rows, y, self.G.rows, used):
                if not self._row_ok(cm_list, rm, y, image):
                    continue
                rm.append(image)
                used.add(image)
                yield from extend(y + 1)
                rm.pop()
                used.discard(image)

        yield from extend(1)

    def iter_embeddings(self, prefix: Tuple[int, ...] = ()) -> Iterator[Embedding]:
        if not self.fits():
            return
        for cm in self.iter_columns(prefix):
            for rm in self.iter_rows(cm):
                yield Embedding(cm, rm)

    def count(self, prefix: Tuple[int, ...] = ()) -> int:
        if not self.fits():
            return 0
        return sum(sum(1 for _ in self.iter_rows(cm)) for cm in self.iter_columns(prefix))


def iter_embeddings(H: GridSubgraph, G: GridSubgraph,
                    fixed_columns: Optional[Dict[int, int]] = None,
                    fixed_rows: Optional[Dict[int, int]] = None) -> Iterator[Embedding]:
    """
    Stream every embedding of H into G in lexicographic order of
    (column_map, row_map).

    Args:
        fixed_columns: pattern column -> host column constraints
        fixed_rows: pattern row -> host row constraints
    """
    yield from _Matcher(H, G, fixed_columns, fixed_rows).iter_embeddings()


def _count_branch(args) -> int:
    H, G, first = args
    return _Matcher(H, G).count((first,))


def count_embeddings(H: GridSubgraph, G: GridSubgraph, workers: int = 1) -> int:
    """
    Number of labeled embeddings t_g(H, G).

    The search is split over the image of the first pattern column when
    workers > 1; the total does not depend on the split.
    """
    matcher = _Matcher(H, G)
    if not matcher.fits():
        return 0
    if workers <= 1 or H.columns == 0:
        return matcher.count()
    counts = map_branches(_count_branch, [(H, G, x) for x in range(1, G.columns + 1)], workers)
    return sum(counts)


def contains(H: GridSubgraph, G: GridSubgraph) -> Optional[Embedding]:
    """The lexicographically first embedding of H into G, or None."""
    return next(iter_embeddings(H, G), None)


def extract_copy(G: GridSubgraph, H: GridSubgraph, emb: Embedding) -> GridSubgraph:
    """
    The copy of H that emb picks out of G, as a pattern on the used columns
    and rows in increasing host order.
    """
    if not is_embedding(H, G, emb):
        raise EmbeddingError("Not an embedding of the pattern into the host")
    col_rank = {x: i + 1 for i, x in enumerate(sorted(emb.column_map))}
    row_rank = {y: i + 1 for i, y in enumerate(sorted(emb.row_map))}
    cm = [col_rank[x] for x in emb.column_map]
    rm = [row_rank[y] for y in emb.row_map]
    return GridSubgraph.build(
        H.columns, H.rows,
        [(cm[x1 - 1], cm[x2 - 1], rm[y - 1]) for x1, x2, y in H.h_edges],
        [(cm[x - 1], rm[y1 - 1], rm[y2 - 1]) for x, y1, y2 in H.v_edges],
        [(cm[x - 1], rm[y - 1]) for x, y in H.vertices],
    )


def line_independence(line: LineGraph, caps: Optional[Caps] = None) -> List[int]:
    """Maximum independent set of a line graph, exact via a clique search in the complement."""
    caps = resolve_caps(caps)
    caps.check("coclique_line", line.n, "use greedy_independent_set for a lower bound")
    graph = line.to_networkx()
    if graph.number_of_nodes() == 0:
        return []
    clique, _ = nx.max_weight_clique(nx.complement(graph), weight=None)
    return sorted(clique)


def max_coclique(G: GridSubgraph, caps: Optional[Caps] = None) -> Tuple[int, Coclique]:
    """
    Largest coclique over all rows and columns of a spanning host.

    Rows are scanned before columns; ties keep the first line found.

    Raises:
        EmbeddingError: if G is not spanning
        CapExceededError: if a line is longer than the coclique_line cap
    """
    if not G.spanning:
        raise EmbeddingError("max_coclique needs a spanning host")
    best: Optional[Coclique] = None
    for line in G.lines():
        positions = line_independence(line, caps)
        if best is None or len(positions) > best.size:
            best = Coclique(line.line_kind, line.index, frozenset(line.point(p) for p in positions))
    logger.debug(f"Maximum coclique has size {best.size} on {best.line_kind} {best.line_index}")
    return best.size, best


def find_coclique(G: GridSubgraph, k: int, caps: Optional[Caps] = None) -> Optional[Coclique]:
    """First k-coclique in line order (rows, then columns), or None."""
    for line in G.lines():
        if len(line.positions) < k:
            continue
        positions = line_independence(line, caps)
        if len(positions) >= k:
            chosen = positions[:k]
            return Coclique(line.line_kind, line.index, frozenset(line.point(p) for p in chosen))
    return None


def greedy_independent_set(line: LineGraph, target: Optional[int] = None) -> List[int]:
    """
    Minimum-degree-first greedy independent set.

    Always returns at least n / (max degree + 1) positions. Stops once target
    positions are collected; the result may be smaller than target.
    """
    graph = line.to_networkx()
    chosen: List[int] = []
    while graph.number_of_nodes():
        if target is not None and len(chosen) >= target:
            break
        v = min(graph.nodes(), key=lambda p: (graph.degree(p), p))
        chosen.append(v)
        graph.remove_nodes_from(list(graph.neighbors(v)) + [v])
    return sorted(chosen)


def _compatible(a: Embedding, b: Embedding, s: int, t: int) -> bool:
    for j1, c1 in enumerate(a.column_map, start=1):
        for j2, c2 in enumerate(b.column_map, start=1):
            if c1 == c2 and not (j1 == j2 == s):
                return False
    for j1, r1 in enumerate(a.row_map, start=1):
        for j2, r2 in enumerate(b.row_map, start=1):
            if r1 == r2 and not (j1 == j2 == t):
                return False
    return True


def is_n_diverse(G: GridSubgraph, host_vertex: Vertex, T: GridSubgraph, tree_vertex: Vertex,
                 n: int, caps: Optional[Caps] = None) -> Tuple[bool, List[Embedding]]:
    """
    Decide whether host_vertex is n-diverse for tree_vertex in T.

    Looks for n embeddings of T that send tree_vertex to host_vertex and
    pairwise share no host column except host_vertex's column (used only by
    tree_vertex's column) and no host row except host_vertex's row. The same
    embedding may be picked more than once when it meets that condition with
    itself, which happens exactly for the one-vertex tree.

    Returns:
        (decision, witness embeddings)
    """
    from .patterns import is_simple_tree

    caps = resolve_caps(caps)
    caps.check("diverse_product", len(T.vertices) * n)
    if not is_simple_tree(T):
        raise EmbeddingError("T must be a simple tree")
    if tuple(tree_vertex) not in T.vertices:
        raise EmbeddingError(f"Tree vertex {tree_vertex} is not in T")
    if n < 1:
        return True, []
    s, t = tree_vertex
    k, l = host_vertex
    candidates = list(iter_embeddings(T, G, fixed_columns={s: k}, fixed_rows={t: l}))
    chosen: List[Embedding] = []

    def extend(start: int) -> bool:
        if len(chosen) == n:
            return True
        for i in range(start, len(candidates)):
            emb = candidates[i]
            if not all(_compatible(emb, other, s, t) for other in chosen):
                continue
            chosen.append(emb)
            # a repeat of emb is rejected by the check above unless it is self-compatible
            if extend(i):
                return True
            chosen.pop()
        return False

    found = extend(0)
    return found, list(chosen) if found else []


def find_isomorphism(g1: GridSubgraph, g2: GridSubgraph,
                     allow_transpose: bool = False) -> Optional[GridIsoWitness]:
    """
    Explicit isomorphism search under column/row relabeling.

    Returns a witness w with apply_witness(g1, w) == g2, or None.
    """
    sources = [(g1, False)]
    if allow_transpose:
        sources.append((transpose(g1), True))
    for source, transposed in sources:
        if (source.columns, source.rows, source.spanning) != (g2.columns, g2.rows, g2.spanning):
            continue
        if (len(source.vertices), len(source.h_edges), len(source.v_edges)) != \
                (len(g2.vertices), len(g2.h_edges), len(g2.v_edges)):
            continue
        emb = contains(source, g2)
        if emb is not None:
            return GridIsoWitness(emb.column_map, emb.row_map, transposed)
    return None
