import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .budget import SearchBudget
from .config import Caps, resolve_caps
from .embed import Embedding, contains, count_embeddings, is_embedding, iter_embeddings
from .grid import (
    COLUMN, ROW, GridError, GridSubgraph, canonical_form, delete_line, permute, transpose,
)
from .parallel import map_branches
from .patterns import (
    PatternError, WaypointCycle, alternating_core, alternating_cycle, simple_cycle_from_waypoints,
)
from .progress import SearchProgress

logger = logging.getLogger(__name__)

AXES = (COLUMN, ROW)


class BridgingError(GridError):
    pass


class SubdivisionError(BridgingError):
    pass


@dataclass(frozen=True)
class BridgeStep:
    """
    One bridging operation.

    Args:
        axis: "column" duplicates a column, "row" duplicates a row
        source_index: The line being duplicated
        anchor: Line of the other axis carrying the bridge edge
    """
    axis: str
    source_index: int
    anchor: int

    def __post_init__(self):
        if self.axis not in AXES:
            raise BridgingError(f"Unknown bridging axis '{self.axis}'")

    def to_dict(self) -> Dict:
        return {"axis": self.axis, "source": self.source_index, "anchor": self.anchor}

    @classmethod
    def from_dict(cls, data: Dict) -> "BridgeStep":
        return cls(data["axis"], int(data["source"]), int(data["anchor"]))


@dataclass(frozen=True)
class ConstructionScript:
    """
    Bridging steps replayed from the one-vertex graph.

    witness, when present, embeds the target pattern into the replayed graph.
    """
    steps: Tuple[BridgeStep, ...] = ()
    witness: Optional[Embedding] = None

    def __len__(self) -> int:
        return len(self.steps)

    def stages(self) -> List[GridSubgraph]:
        """Every intermediate graph, starting with the single vertex."""
        g = GridSubgraph.single_vertex()
        out = [g]
        for step in self.steps:
            g = bridge(g, step)
            out.append(g)
        return out

    def replay(self, start: Optional[GridSubgraph] = None) -> GridSubgraph:
        g = GridSubgraph.single_vertex() if start is None else start
        for step in self.steps:
            g = bridge(g, step)
        return g

    def to_dict(self) -> Dict:
        data = {"steps": [s.to_dict() for s in self.steps]}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "ConstructionScript":
        witness = Embedding.from_dict(data["witness"]) if data.get("witness") else None
        return cls(tuple(BridgeStep.from_dict(s) for s in data["steps"]), witness)


def _bridge_column(g: GridSubgraph, source: int, anchor: int) -> GridSubgraph:
    if not 1 <= source <= g.columns:
        raise BridgingError(f"Source column {source} out of range 1..{g.columns}")
    if not 1 <= anchor <= g.rows:
        raise BridgingError(f"Anchor row {anchor} out of range 1..{g.rows}")
    new = g.columns + 1
    h = set(g.h_edges)
    for x1, x2, y in g.h_edges:
        if x1 == source:
            h.add((x2, new, y))
        elif x2 == source:
            h.add((x1, new, y))
    h.add((source, new, anchor))
    v = set(g.v_edges) | {(new, y1, y2) for x, y1, y2 in g.v_edges if x == source}
    verts = set(g.vertices) | {(new, y) for x, y in g.vertices if x == source}
    verts |= {(source, anchor), (new, anchor)}
    return GridSubgraph.build(new, g.rows, h, v, verts, g.spanning)


def bridge(g: GridSubgraph, step: BridgeStep) -> GridSubgraph:
    """
    Apply one bridging step.

    Column bridging of c* at row y appends column c + 1 that copies the
    vertical edges of c* and every horizontal adjacency of c*, then adds the
    bridge edge {(c*, y), (c + 1, y)}. Row bridging is the transposed operation.
    """
    if step.axis == COLUMN:
        return _bridge_column(g, step.source_index, step.anchor)
    return transpose(_bridge_column(transpose(g), step.source_index, step.anchor))


def ac_script(t: int) -> ConstructionScript:
    """
    Bridging script whose replay contains AC_t under the identity map.

    Four steps give AC_6; each further pair (row bridge of row s at column s,
    then column bridge of column s at row s) extends AC_2s to AC_2s+2.
    """
    if t < 6 or t % 2:
        raise BridgingError(f"ac_script needs an even length of at least 6, got {t}")
    steps = [
        BridgeStep(ROW, 1, 1),
        BridgeStep(COLUMN, 1, 1),
        BridgeStep(ROW, 1, 1),
        BridgeStep(COLUMN, 2, 2),
    ]
    for s in range(3, t // 2):
        steps.extend(cycle_extension_steps(s))
    return ConstructionScript(tuple(steps), Embedding(tuple(range(1, t // 2 + 1)), tuple(range(1, t // 2 + 1))))


def cycle_extension_steps(s: int) -> Tuple[BridgeStep, BridgeStep]:
    """The two bridgings taking any graph containing AC_2s (identity map) to one containing AC_2s+2."""
    if s < 2:
        raise BridgingError(f"Extension needs s >= 2, got {s}")
    return (BridgeStep(ROW, s, s), BridgeStep(COLUMN, s, s))


def as_script(d: int) -> ConstructionScript:
    """
    Bridging script whose replay contains aligned_staircase(d) under the identity map.

    d column bridges build a horizontal (d + 1)-clique in row 1; then row i
    is bridged at column i + 1 for i = 1 .. d - 1.
    """
    if d < 2:
        raise BridgingError(f"as_script needs d >= 2, got {d}")
    steps = [BridgeStep(COLUMN, c, 1) for c in range(1, d + 1)]
    steps += [BridgeStep(ROW, i, i + 1) for i in range(1, d)]
    return ConstructionScript(tuple(steps), Embedding(tuple(range(1, d + 2)), tuple(range(1, d + 1))))


def clique_script(m: int, axis: str = ROW) -> ConstructionScript:
    """Script for a row clique (axis="row") or column clique on m vertices."""
    if m < 1:
        raise BridgingError(f"Clique size must be positive, got {m}")
    step_axis = COLUMN if axis == ROW else ROW
    steps = tuple(BridgeStep(step_axis, i, 1) for i in range(1, m))
    ident = tuple(range(1, m + 1))
    witness = Embedding(ident, (1,)) if axis == ROW else Embedding((1,), ident)
    return ConstructionScript(steps, witness)


def generalized_subdivide(H: GridSubgraph, e: Sequence[int], m: int,
                          inner_edges: Iterable[Tuple[int, int]] = (),
                          orientation: str = ROW,
                          keep_original: bool = True) -> GridSubgraph:
    """
    Generalized subdivision of an edge.

    For a horizontal edge e = (x, x', y) the m new vertices are (c + i, y),
    i = 1..m, each in a new column. inner_edges lists pairs of columns drawn
    from {x, x', c + 1, ..., c + m}, all lying in row y. A vertical edge
    (orientation="column", e = (x, y, y')) is handled by transposition, with
    inner_edges given as row pairs.

    Args:
        keep_original: Keep e itself; False gives the classical subdivision

    Raises:
        SubdivisionError: e missing, inner graph disconnected, or an inner
            edge leaving the allowed vertex set
    """
    if orientation == COLUMN:
        x, y1, y2 = e
        out = generalized_subdivide(transpose(H), (y1, y2, x), m, inner_edges, ROW, keep_original)
        return transpose(out)
    x1, x2, y = e
    x1, x2 = min(x1, x2), max(x1, x2)
    if (x1, x2, y) not in H.h_edges:
        raise SubdivisionError(f"Edge {(x1, x2, y)} is not in the graph")
    if m == 0:
        return H
    c = H.columns
    allowed = {x1, x2} | set(range(c + 1, c + m + 1))
    inner = set()
    for a, b in inner_edges:
        if a not in allowed or b not in allowed or a == b:
            raise SubdivisionError(f"Inner edge {(a, b)} leaves the subdivision of {(x1, x2, y)}")
        inner.add((min(a, b), max(a, b)))
    graph = nx.Graph()
    graph.add_nodes_from(sorted(allowed))
    graph.add_edges_from(sorted(inner))
    if keep_original:
        graph.add_edge(x1, x2)
    if not nx.is_connected(graph):
        raise SubdivisionError("Subdivision gadget is not connected")
    h = set(H.h_edges) | {(a, b, y) for a, b in inner}
    if not keep_original:
        h.discard((x1, x2, y))
    verts = set(H.vertices) | {(i, y) for i in range(c + 1, c + m + 1)}
    return GridSubgraph.build(c + m, H.rows, h, H.v_edges, verts, False)


def subdivision_steps(H: GridSubgraph, e: Sequence[int], m: int,
                      orientation: str = ROW) -> List[BridgeStep]:
    """The m bridgings whose result contains every generalized subdivision of e."""
    if orientation == ROW:
        x, _, y = e
        step_axis, base, first = COLUMN, H.columns, x
    else:
        x, y, _ = e
        step_axis, base, first = ROW, H.rows, y
    anchor = y if orientation == ROW else x
    steps = [BridgeStep(step_axis, first, anchor)] if m else []
    steps += [BridgeStep(step_axis, base + i, anchor) for i in range(1, m)]
    return steps


def subdivision_closure(H: GridSubgraph, e: Sequence[int], m: int,
                        orientation: str = ROW) -> GridSubgraph:
    """
    Apply the m bridgings of subdivision_steps and check that the new
    vertices together with e's endpoints span a clique K_{m+2}.
    """
    g = H
    for step in subdivision_steps(H, e, m, orientation):
        g = bridge(g, step)
    if orientation == ROW:
        x1, x2, y = e
        positions = [x1, x2] + list(range(H.columns + 1, H.columns + m + 1))
        ok = all(g.has_h_edge(a, b, y) for a, b in combinations(positions, 2))
    else:
        x, y1, y2 = e
        positions = [y1, y2] + list(range(H.rows + 1, H.rows + m + 1))
        ok = all(g.has_v_edge(x, a, b) for a, b in combinations(positions, 2))
    if not ok:
        raise BridgingError(f"Closure of {tuple(e)} is not a clique on its {m + 2} vertices")
    return g


def merge_lines(g: GridSubgraph, axis: str, duplicate: int, source: int) -> GridSubgraph:
    """
    Merge line `duplicate` into line `source` (the inverse of a bridging).

    The two lines may have at most one edge between them; it is dropped, all
    other edges of the duplicate move onto the source and the duplicate line
    is removed.
    """
    if axis == ROW:
        return transpose(merge_lines(transpose(g), COLUMN, duplicate, source))
    if duplicate == source:
        raise BridgingError("Cannot merge a line into itself")
    between = [e for e in g.h_edges if {e[0], e[1]} == {duplicate, source}]
    if len(between) > 1:
        raise BridgingError(f"Columns {duplicate} and {source} have {len(between)} edges between them")
    move = lambda x: source if x == duplicate else x
    h = set()
    for x1, x2, y in g.h_edges:
        a, b = move(x1), move(x2)
        if a != b:
            h.add((min(a, b), max(a, b), y))
    v = {(move(x), y1, y2) for x, y1, y2 in g.v_edges}
    verts = {(move(x), y) for x, y in g.vertices}
    merged = GridSubgraph(g.columns, g.rows, frozenset(verts), frozenset(h), frozenset(v), g.spanning)
    return delete_line(merged, COLUMN, duplicate)


def edges_between(g: GridSubgraph, axis: str, a: int, b: int) -> List[Tuple[int, int, int]]:
    if axis == COLUMN:
        return [e for e in g.h_edges if {e[0], e[1]} == {a, b}]
    return [e for e in g.v_edges if {e[1], e[2]} == {a, b}]


def _span(g: GridSubgraph) -> GridSubgraph:
    return GridSubgraph.build(g.columns, g.rows, g.h_edges, g.v_edges, spanning=True)


@dataclass(frozen=True)
class _Inverse:
    """A backward step: `removed` line of `axis` came from `source` (index after removal)."""
    axis: str
    removed: int
    source: int
    anchor: Optional[int]


class _BackwardSearch:
    def __init__(self, exact: bool, caps: Caps, budget: Optional[SearchBudget] = None,
                 progress: Optional[SearchProgress] = None):
        self.exact = exact
        self.caps = caps
        self.budget = budget
        self.progress = progress
        self.failed = set()
        self.square = _span(alternating_cycle(4))

    def inverses(self, g: GridSubgraph) -> List[Tuple[_Inverse, GridSubgraph]]:
        out = []
        for axis in AXES:
            count = g.columns if axis == COLUMN else g.rows
            if count < 2:
                continue
            if self.exact:
                out.extend(self._exact_inverses(g, axis, count))
                continue
            for s, d in combinations(range(1, count + 1), 2):
                between = edges_between(g, axis, s, d)
                if len(between) > 1:
                    continue
                anchor = None
                if between:
                    anchor = between[0][2] if axis == COLUMN else between[0][0]
                out.append((_Inverse(axis, d, s, anchor), merge_lines(g, axis, d, s)))
        return out

    def _exact_inverses(self, g: GridSubgraph, axis: str, count: int):
        work = g if axis == COLUMN else transpose(g)
        out = []
        for d in range(1, count + 1):
            reduced = delete_line(work, COLUMN, d)
            order = [x if x < d else x - 1 for x in range(1, count + 1)]
            order[d - 1] = count
            target = permute(work, order, list(range(1, work.rows + 1)))
            for s in range(1, count):
                for y in range(1, work.rows + 1):
                    if _bridge_column(reduced, s, y) == target:
                        shown = reduced if axis == COLUMN else transpose(reduced)
                        out.append((_Inverse(axis, d, s, y), shown))
        return out

    def search(self, g: GridSubgraph) -> Optional[List[_Inverse]]:
        if g.columns == 1 and g.rows == 1:
            return []
        if self.budget is not None:
            self.budget.charge()
        if self.progress is not None:
            self.progress.update(nodes=1)
        key = canonical_form(g, allow_transpose=True, caps=self.caps)
        if key in self.failed:
            return None
        if not self.exact and contains(self.square, g) is not None:
            self.failed.add(key)
            if self.progress is not None:
                self.progress.update(pruned=1)
            return None
        for inverse, smaller in self.inverses(g):
            rest = self.search(smaller)
            if rest is not None:
                return rest + [inverse]
        self.failed.add(key)
        return None


def _forward(chain: List[_Inverse], start_columns: int = 1, start_rows: int = 1) -> Tuple[List[BridgeStep], Embedding]:
    """
    Turn a backward chain (applied bottom-up) into bridge steps, tracking
    where each line of the current pattern sits in the replayed graph.
    """
    cols = list(range(1, start_columns + 1))
    rows = list(range(1, start_rows + 1))
    replay_cols, replay_rows = start_columns, start_rows
    steps = []
    for inv in chain:
        if inv.axis == COLUMN:
            anchor = rows[(inv.anchor or 1) - 1]
            steps.append(BridgeStep(COLUMN, cols[inv.source - 1], anchor))
            replay_cols += 1
            cols.insert(inv.removed - 1, replay_cols)
        else:
            anchor = cols[(inv.anchor or 1) - 1]
            steps.append(BridgeStep(ROW, rows[inv.source - 1], anchor))
            replay_rows += 1
            rows.insert(inv.removed - 1, replay_rows)
    return steps, Embedding(tuple(cols), tuple(rows))


def _search_branch(args) -> Optional[List[_Inverse]]:
    smaller, first, exact, caps = args
    rest = _BackwardSearch(exact, caps).search(smaller)
    return None if rest is None else rest + [first]


def is_bridging_constructible(H: GridSubgraph, exact: bool = False, caps: Optional[Caps] = None,
                              budget: Optional[SearchBudget] = None,
                              progress: Optional[SearchProgress] = None,
                              workers: int = 1) -> Optional[ConstructionScript]:
    """
    Search backwards for a bridging script from the one-vertex graph.

    In containment mode (default) a script is returned when its replay
    contains H. The search merges pairs of lines with at most one edge
    between them until a single vertex remains; patterns containing the
    square are pruned, as merging never destroys a square. In exact mode
    the replay must equal H up to relabeling of rows and columns. Failures
    are memoized on canonical forms.

    Args:
        workers: Processes for the first level of backward steps; the first
            successful branch in a fixed order wins

    Returns:
        ConstructionScript with an embedding witness, or None

    Raises:
        CapExceededError: if rows + columns is above the constructible_lines cap
    """
    caps = resolve_caps(caps)
    caps.check("constructible_lines", H.columns + H.rows,
               "constructibility search is exponential in the number of lines")
    target = _span(H)
    searcher = _BackwardSearch(exact, caps, budget, progress)
    if workers > 1 and (target.columns > 1 or target.rows > 1):
        branches = [(smaller, inv, exact, caps) for inv, smaller in searcher.inverses(target)]
        results = map_branches(_search_branch, branches, workers)
        chain = next((r for r in results if r is not None), None)
    else:
        chain = searcher.search(target)
    if chain is None:
        logger.info(f"No bridging script for {H.columns}x{H.rows} pattern with {H.edge_count} edges")
        return None
    steps, witness = _forward(chain)
    script = ConstructionScript(tuple(steps), witness)
    replay = script.replay()
    if not is_embedding(H, replay, witness):
        raise BridgingError("Reconstructed script does not contain the pattern")
    if exact and replay.edge_count != H.edge_count:
        raise BridgingError("Reconstructed script is not an exact construction")
    logger.info(f"Found {len(steps)}-step bridging script for {H.columns}x{H.rows} pattern")
    return script


def simple_cycle_script(w: WaypointCycle, caps: Optional[Caps] = None) -> ConstructionScript:
    """
    Bridging script for a simple cycle.

    The alternating core AC_m is built with ac_script, then every straight
    run of the cycle is covered by the subdivision bridgings of the core edge
    it replaces. Cycles whose core is the square, or that lie on one line,
    fall back to the backward search.

    Raises:
        BridgingError: if the cycle is not bridging-constructible
    """
    H = simple_cycle_from_waypoints(w)
    try:
        core = alternating_core(w)
    except PatternError:
        core = None
    if core is None or core.length < 6:
        script = is_bridging_constructible(H, caps=caps)
        if script is None:
            raise BridgingError("Cycle is not bridging-constructible")
        return script

    steps = list(ac_script(core.length).steps)
    # the replay of ac_script(m) has m / 2 columns and rows
    replay_cols = replay_rows = core.length // 2
    col_map: Dict[int, int] = dict(core.column_map)
    row_map: Dict[int, int] = dict(core.row_map)

    points = list(w.waypoints)
    start = points.index(core.turns[0])
    turn_set = set(core.turns)
    ordered = points[start:] + points[:start] + [core.turns[0]]
    run: List[Tuple[int, int]] = []
    run_start = ordered[0]
    for p in ordered[1:]:
        if p not in turn_set:
            run.append(p)
            continue
        if run and run_start[1] == p[1]:
            y = row_map[p[1]]
            steps.append(BridgeStep(COLUMN, col_map[run_start[0]], y))
            steps += [BridgeStep(COLUMN, replay_cols + i, y) for i in range(1, len(run))]
            for i, q in enumerate(run, start=1):
                col_map[q[0]] = replay_cols + i
            replay_cols += len(run)
        elif run:
            x = col_map[p[0]]
            steps.append(BridgeStep(ROW, row_map[run_start[1]], x))
            steps += [BridgeStep(ROW, replay_rows + i, x) for i in range(1, len(run))]
            for i, q in enumerate(run, start=1):
                row_map[q[1]] = replay_rows + i
            replay_rows += len(run)
        run = []
        run_start = p

    # lines the cycle never visits still need distinct images
    for x in range(1, H.columns + 1):
        if x not in col_map:
            steps.append(BridgeStep(COLUMN, 1, 1))
            replay_cols += 1
            col_map[x] = replay_cols
    for y in range(1, H.rows + 1):
        if y not in row_map:
            steps.append(BridgeStep(ROW, 1, 1))
            replay_rows += 1
            row_map[y] = replay_rows

    witness = Embedding(tuple(col_map[x] for x in range(1, H.columns + 1)),
                        tuple(row_map[y] for y in range(1, H.rows + 1)))
    script = ConstructionScript(tuple(steps), witness)
    if not is_embedding(H, script.replay(), witness):
        raise BridgingError("Simple cycle script does not contain the cycle")
    logger.info(f"Simple cycle with core AC_{core.length}: {len(steps)} bridging steps")
    return script


@dataclass(frozen=True)
class PowerBound:
    """coefficient * k ** exponent, kept exact."""
    coefficient: int
    k: int
    exponent: Fraction

    def exact(self) -> Optional[int]:
        """Integer value when the exponent is a non-negative integer, else None."""
        if self.exponent.denominator != 1 or self.exponent < 0:
            return None
        return self.coefficient * self.k ** int(self.exponent)

    def __float__(self) -> float:
        return float(self.coefficient) * float(self.k) ** float(self.exponent)

    def __str__(self) -> str:
        return f"{self.coefficient} * {self.k}^({self.exponent})"


def threshold_bound(r: int, c: int, k: int) -> PowerBound:
    """2^(2^(r+c) - 2) * k^(2^(r+c-3)), the grid Ramsey bound for bridging-constructible patterns."""
    if r < 1 or c < 1:
        raise BridgingError(f"Rows and columns must be positive, got r={r}, c={c}")
    s = r + c
    return PowerBound(2 ** (2 ** s - 2), k, Fraction(2) ** (s - 3))


def embedding_count_bound(r: int, c: int, N: int, k: int) -> Fraction:
    """2^(-2^(r+c) - 2) * N^(r+c) * k^(1 - 2^(r+c-2)): the supersaturation lower bound on t_g."""
    if r < 1 or c < 1:
        raise BridgingError(f"Rows and columns must be positive, got r={r}, c={c}")
    s = r + c
    return Fraction(N ** s, 2 ** (2 ** s + 2)) * Fraction(k) ** (1 - 2 ** (s - 2))


def turan_f(x: int, k: int) -> Fraction:
    """x(x - k + 1) / (2(k - 1)): minimum edge count of an x-vertex graph without a k-independent set."""
    if k < 2:
        raise BridgingError(f"turan_f needs k >= 2, got {k}")
    return Fraction(x * (x - k + 1), 2 * (k - 1))


@dataclass
class ExtensionRecord:
    """One embedding of H minus the source column and its extension data."""
    embedding: Embedding
    extension_columns: Tuple[int, ...]
    f_edges: int
    turan_required: Optional[Fraction] = None

    @property
    def turan_ok(self) -> bool:
        return self.turan_required is None or self.f_edges >= self.turan_required


@dataclass
class SupersaturationReport:
    lhs: int
    rhs: int
    records: List[ExtensionRecord] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def turan_ok(self) -> bool:
        return all(r.turan_ok for r in self.records)

    def to_dict(self) -> Dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "turan_ok": self.turan_ok,
            "embeddings": len(self.records),
        }


def supersaturation_identity_check(H: GridSubgraph, source: int, anchor: int, G: GridSubgraph,
                                   k: Optional[int] = None, workers: int = 1) -> SupersaturationReport:
    """
    Compare the two ways of counting embeddings of H' = column bridge of H.

    For every embedding phi of H minus column `source`, P_phi is the set of
    free host columns where the source column can be placed so that phi
    extends to an embedding of H, and F_phi is the graph of host edges on
    row phi(anchor) between columns of P_phi. Each edge of F_phi gives two
    labeled embeddings of H', so lhs = sum of 2 |E(F_phi)| and rhs = t_g(H', G).
    When k is given, each F_phi with |P_phi| >= k is also checked against
    turan_f(|P_phi|, k).
    """
    H_prime = bridge(H, BridgeStep(COLUMN, source, anchor))
    H_minus = delete_line(H, COLUMN, source)
    records = []
    lhs = 0
    for phi in iter_embeddings(H_minus, G):
        used = set(phi.column_map)
        extension = []
        for x in range(1, G.columns + 1):
            if x in used:
                continue
            cm = phi.column_map[:source - 1] + (x,) + phi.column_map[source - 1:]
            if is_embedding(H, G, Embedding(cm, phi.row_map)):
                extension.append(x)
        host_row = phi.row_map[anchor - 1]
        f_edges = sum(1 for a, b in combinations(extension, 2) if G.has_h_edge(a, b, host_row))
        lhs += 2 * f_edges
        required = turan_f(len(extension), k) if k is not None and len(extension) >= k else None
        records.append(ExtensionRecord(phi, tuple(extension), f_edges, required))
    rhs = count_embeddings(H_prime, G, workers=workers)
    report = SupersaturationReport(lhs, rhs, records)
    if not report.equal:
        logger.warning(f"Supersaturation identity failed: lhs={lhs}, rhs={rhs}")
    return report
