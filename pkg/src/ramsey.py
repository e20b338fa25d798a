import logging
import math
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .budget import BudgetExceededError, SearchBudget
from .checkpoint import CheckpointManager
from .cnf import encode_cnf, solve_least
from .config import Caps, resolve_caps
from .embed import (
    Coclique, Embedding, contains, find_coclique, greedy_independent_set, is_coclique, is_embedding,
)
from .grid import COLUMN, ROW, GridError, GridSubgraph, LineGraph, from_dict, to_dict
from .parallel import map_branches
from .patterns import alternating_cycle
from .progress import SearchProgress

logger = logging.getLogger(__name__)

EMBEDDING = "embedding"
COCLIQUE = "coclique"
WITNESS_GRID = "witness_grid"
INCONCLUSIVE = "inconclusive"

AVOIDER = "avoider"
NO_AVOIDER = "no_avoider"
UNKNOWN = "unknown"

# diagonal two-colour Ramsey numbers R(n, n); intervals where only bounds are known
KNOWN_DIAGONAL_RAMSEY: Dict[int, Union[int, Tuple[int, int]]] = {1: 1, 2: 2, 3: 6, 4: 18, 5: (43, 48)}


class RamseyError(GridError):
    pass


class MissingRamseyValueError(RamseyError):
    def __init__(self, needed: Sequence[int]):
        self.needed = list(needed)
        listed = ", ".join(f"R({n},{n})" for n in self.needed)
        super().__init__(f"Ramsey table is missing {listed}")


@dataclass(frozen=True)
class Certificate:
    """
    A checkable outcome.

    payload is an Embedding (kind "embedding"), a Coclique ("coclique"),
    a spanning GridSubgraph avoiding H and all k-cocliques ("witness_grid"),
    or a reason string ("inconclusive").
    """
    kind: str
    payload: Any = None

    def to_dict(self) -> Dict:
        if self.kind in (EMBEDDING, COCLIQUE):
            payload = self.payload.to_dict()
        elif self.kind == WITNESS_GRID:
            payload = to_dict(self.payload)
        else:
            payload = self.payload
        return {"kind": self.kind, "payload": payload}

    @classmethod
    def from_dict(cls, data: Dict) -> "Certificate":
        kind, payload = data["kind"], data.get("payload")
        if kind == EMBEDDING:
            payload = Embedding.from_dict(payload)
        elif kind == COCLIQUE:
            payload = Coclique.from_dict(payload)
        elif kind == WITNESS_GRID:
            payload = from_dict(payload)
        return cls(kind, payload)


def verify_certificate(cert: Certificate, G: Optional[GridSubgraph], H: GridSubgraph, k: int,
                       caps: Optional[Caps] = None) -> bool:
    """
    Re-check a certificate from scratch.

    Embeddings and cocliques are checked against the host G; witness grids
    are checked on their own. Inconclusive certificates never verify.
    """
    if cert.kind == EMBEDDING:
        return G is not None and is_embedding(H, G, cert.payload)
    if cert.kind == COCLIQUE:
        return G is not None and cert.payload.size >= k and is_coclique(G, cert.payload)
    if cert.kind == WITNESS_GRID:
        grid = cert.payload
        return grid.spanning and find_coclique(grid, k, caps) is None and contains(H, grid) is None
    return False


@dataclass
class GrResult:
    """
    Outcome of gr_exact.

    value is set when some N had no avoider; otherwise lower_bound says
    gr > lower_bound - 1 and status is "lower_bound".
    """
    k: int
    value: Optional[int] = None
    lower_bound: int = 1
    decisions: Dict[int, str] = field(default_factory=dict)
    methods: Dict[int, str] = field(default_factory=dict)
    certificates: Dict[int, Certificate] = field(default_factory=dict)
    stopped_by: Optional[str] = None

    @property
    def status(self) -> str:
        return "exact" if self.value is not None else "lower_bound"

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "status": self.status,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "stopped_by": self.stopped_by,
            "decisions": {str(n): d for n, d in sorted(self.decisions.items())},
            "methods": {str(n): m for n, m in sorted(self.methods.items())},
            "certificates": {str(n): c.to_dict() for n, c in sorted(self.certificates.items())},
        }


def _coclique_free_line_graphs(N: int, k: int) -> List[frozenset]:
    """All edge sets on positions 1..N with no independent set of size k, in lexicographic order."""
    pairs = list(combinations(range(1, N + 1), 2))
    out = []
    for bits in product((False, True), repeat=len(pairs)):
        edges = frozenset(p for p, bit in zip(pairs, bits) if bit)
        if all(any(pair in edges for pair in combinations(subset, 2))
               for subset in combinations(range(1, N + 1), k)):
            out.append(edges)
    return out


def _brute_force_avoider(H: GridSubgraph, k: int, N: int,
                         budget: Optional[SearchBudget] = None) -> Optional[GridSubgraph]:
    """
    Enumerate every spanning subgraph of G_{NxN} with no k-coclique.

    Rows and columns carry independent edge sets, so the coclique-free grids
    are exactly the products of coclique-free line graphs.
    """
    choices = _coclique_free_line_graphs(N, k)
    for combo in product(choices, repeat=2 * N):
        if budget is not None:
            budget.charge()
        h = [(a, b, y) for y, edges in enumerate(combo[:N], start=1) for a, b in edges]
        v = [(x, a, b) for x, edges in enumerate(combo[N:], start=1) for a, b in edges]
        grid = GridSubgraph.build(N, N, h, v, spanning=True)
        if contains(H, grid) is None:
            return grid
    return None


def _sat_branch(args) -> Tuple[str, Optional[List[int]]]:
    clauses, num_vars, assumptions, conflicts = args
    try:
        return "done", solve_least(clauses, num_vars, assumptions, conflicts=conflicts)
    except BudgetExceededError:
        return "budget", None


def _backtrack_avoider(H: GridSubgraph, k: int, N: int, caps: Caps,
                       workers: int = 1) -> Optional[GridSubgraph]:
    """
    SAT search over the avoidance CNF, split on the first edge slots.

    Branches are consumed in lexicographic order and each returns its least
    model, so the witness is the same for every worker count.

    Raises:
        BudgetExceededError: if any branch hit the conflict limit before a witness was found
    """
    instance = encode_cnf(H, k, N)
    depth = min(3, instance.num_vars)
    branches = []
    for signs in product((-1, 1), repeat=depth):
        assumptions = [s * (i + 1) for i, s in enumerate(signs)]
        branches.append((instance.clauses, instance.num_vars, assumptions, caps.search_nodes))
    results = map_branches(_sat_branch, branches, workers)
    for status, model in results:
        if status == "budget":
            raise BudgetExceededError(0, 0.0, f"conflict limit {caps.search_nodes}")
        if model is not None:
            return instance.decode(model)
    return None


def gr_exact(H: GridSubgraph, k: int, n_max: int, caps: Optional[Caps] = None, workers: int = 1,
             checkpoint: Optional[CheckpointManager] = None, resume: Optional[Dict] = None,
             progress: Optional[SearchProgress] = None,
             budget: Optional[SearchBudget] = None) -> GrResult:
    """
    Compute gr(H, K_k) by deciding N = 1, 2, ... up to n_max.

    For each N the search looks for an avoider: a spanning subgraph of
    G_{NxN} with no copy of H and no k-coclique. Avoiders are inherited by
    smaller N, so the first N without one is the value. N up to the
    brute_force_n cap is enumerated exhaustively, N up to backtrack_n is
    solved on the avoidance CNF with a SAT solver; beyond that, or when the
    budget or conflict limit runs out, a partial result carrying a lower
    bound is returned.

    Args:
        resume: Checkpoint state whose decided N are reused
        budget: Charged per enumerated grid and per SAT-decided N

    Returns:
        GrResult with one certificate per decided N
    """
    if k < 1:
        raise RamseyError(f"k must be at least 1, got {k}")
    caps = resolve_caps(caps)
    progress = progress or SearchProgress("gr_exact")
    result = GrResult(k=k)
    previous = (resume or {}).get("decisions", {})
    state = {"pattern": to_dict(H), "k": k, "decisions": dict(previous)}

    for N in range(1, n_max + 1):
        progress.update(phase=f"N={N}")
        saved = previous.get(str(N))
        witness: Optional[GridSubgraph] = None
        if saved is not None:
            outcome = saved["outcome"]
            if saved.get("witness"):
                witness = from_dict(saved["witness"])
            result.methods[N] = "checkpoint"
        elif N <= max(caps.brute_force_n, caps.backtrack_n):
            try:
                if N <= caps.brute_force_n:
                    result.methods[N] = "brute_force"
                    witness = _brute_force_avoider(H, k, N, budget)
                else:
                    result.methods[N] = "sat"
                    if budget is not None:
                        budget.charge()
                    witness = _backtrack_avoider(H, k, N, caps, workers)
            except BudgetExceededError as e:
                logger.warning(f"N={N} undecided: {e}")
                result.decisions[N] = UNKNOWN
                result.stopped_by = "budget"
                break
            outcome = AVOIDER if witness is not None else NO_AVOIDER
        else:
            result.stopped_by = "size_cap"
            logger.warning(f"N={N} is above the exact-search caps; returning a lower bound")
            break

        result.decisions[N] = outcome
        progress.update(decided=(N, outcome))
        if outcome == AVOIDER:
            cert = Certificate(WITNESS_GRID, witness)
            if not verify_certificate(cert, None, H, k, caps):
                raise RamseyError(f"Witness grid at N={N} failed verification")
            result.certificates[N] = cert
            result.lower_bound = N + 1
            progress.update(certificate=WITNESS_GRID)
        state["decisions"][str(N)] = {
            "outcome": outcome,
            "witness": to_dict(witness) if witness is not None else None,
        }
        if checkpoint is not None and saved is None and checkpoint.should_checkpoint():
            checkpoint.save_checkpoint(state)
        if outcome == NO_AVOIDER:
            result.value = N
            break

    if result.value is not None:
        logger.info(f"gr = {result.value} (k={k})")
    else:
        logger.info(f"gr >= {result.lower_bound} (k={k}), search stopped at n_max={n_max}")
    return result


@dataclass
class LowerBoundReport:
    N: int
    k: int
    triangle_free: bool
    independence: int
    ac6_free: bool
    coclique_free: bool

    @property
    def certifies(self) -> bool:
        """Whether the grid proves gr(AC_6, K_k) > N."""
        return self.triangle_free and self.independence < self.k and self.ac6_free and self.coclique_free

    def to_dict(self) -> Dict:
        return {
            "N": self.N,
            "k": self.k,
            "triangle_free": self.triangle_free,
            "independence": self.independence,
            "ac6_free": self.ac6_free,
            "coclique_free": self.coclique_free,
            "certifies": self.certifies,
            "bound": f"gr(AC_6, K_{self.k}) >= {self.N + 1}" if self.certifies else None,
        }


def product_lower_bound(col_graph: nx.Graph, k: int,
                        caps: Optional[Caps] = None) -> Tuple[GridSubgraph, LowerBoundReport]:
    """
    Build col_graph □ K_N: every row is a copy of col_graph and every column is complete.

    A triangle in AC_6's column projection is unavoidable, so a triangle-free
    col_graph gives an AC_6-free grid, and rows have independence number
    alpha(col_graph). Both facts are re-checked by direct search.
    """
    if nx.number_of_selfloops(col_graph):
        raise RamseyError("Column graph must be loopless")
    nodes = sorted(col_graph.nodes())
    index = {v: i for i, v in enumerate(nodes, start=1)}
    N = len(nodes)
    h = [(index[a], index[b], y) for a, b in col_graph.edges() for y in range(1, N + 1)]
    v = [(x, y1, y2) for x in range(1, N + 1) for y1, y2 in combinations(range(1, N + 1), 2)]
    grid = GridSubgraph.build(N, N, h, v, spanning=True)

    triangle_free = sum(nx.triangles(col_graph).values()) == 0
    independence = len(nx.max_weight_clique(nx.complement(col_graph), weight=None)[0]) if N else 0
    report = LowerBoundReport(
        N=N,
        k=k,
        triangle_free=triangle_free,
        independence=independence,
        ac6_free=contains(alternating_cycle(6), grid) is None,
        coclique_free=find_coclique(grid, k, caps) is None,
    )
    if not report.triangle_free:
        logger.warning("Column graph has a triangle; the product grid may contain AC_6")
    logger.info(f"Product lower bound on N={N}: certifies={report.certifies}")
    return grid, report


def completeness_threshold(k: int) -> int:
    """Grid size from which find_ac6_or_coclique is expected to never be inconclusive."""
    return 55 * k ** 3


def _low_degree_coclique(line: LineGraph, k: int, threshold: float) -> Optional[List[int]]:
    degrees = {p: line.degree(p) for p in sorted(line.positions)}
    high = sum(1 for d in degrees.values() if d >= threshold)
    if high >= 2 * line.n / 3:
        return None
    low = sorted(degrees, key=lambda p: (degrees[p], p))[:math.ceil(line.n / 3)]
    low_set = frozenset(low)
    restricted = LineGraph(line.line_kind, line.index, line.n,
                           frozenset(e for e in line.adjacency if e[0] in low_set and e[1] in low_set),
                           low_set)
    chosen = greedy_independent_set(restricted, k)
    if len(chosen) < k:
        chosen = greedy_independent_set(line, k)
    return chosen[:k] if len(chosen) >= k else None


def _corner_buckets(G: GridSubgraph) -> Dict[Tuple[int, int], List[Tuple[int, int]]]:
    """
    Group vertices (x1, y1) by every (row y, column x) such that both
    {(x1, y1), (x1, y)} and {(x1, y1), (x, y1)} are edges of G.
    """
    buckets: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for x1, y1 in sorted(G.vertices):
        for _, y in G.v_adjacency.get((x1, y1), ()):
            for x, _ in G.h_adjacency.get((x1, y1), ()):
                buckets.setdefault((y, x), []).append((x1, y1))
    return buckets


def _corner_certificate(G: GridSubgraph, k: int, y: int, x: int,
                        corners: List[Tuple[int, int]]) -> Optional[Certificate]:
    corner_set = set(corners)
    h_aux: Dict[Tuple[int, int], List[int]] = {c: [] for c in corners}
    v_aux: Dict[Tuple[int, int], List[int]] = {c: [] for c in corners}
    for x1, y1 in corners:
        for x2 in range(1, G.columns + 1):
            if x2 != x1 and (x2, y1) in corner_set and G.has_h_edge(x1, x2, y):
                h_aux[(x1, y1)].append(x2)
        for y2 in range(1, G.rows + 1):
            if y2 != y1 and (x1, y2) in corner_set and G.has_v_edge(x, y1, y2):
                v_aux[(x1, y1)].append(y2)

    for x1, y1 in corners:
        if h_aux[(x1, y1)] and v_aux[(x1, y1)]:
            x2, y2 = h_aux[(x1, y1)][0], v_aux[(x1, y1)][0]
            return Certificate(EMBEDDING, Embedding((x1, x2, x), (y, y1, y2)))

    by_row: Dict[int, List[int]] = {}
    by_column: Dict[int, List[int]] = {}
    for x1, y1 in corners:
        if not h_aux[(x1, y1)]:
            by_row.setdefault(y1, []).append(x1)
        if not v_aux[(x1, y1)]:
            by_column.setdefault(x1, []).append(y1)
    for y1 in sorted(by_row):
        if len(by_row[y1]) >= k:
            return Certificate(COCLIQUE, Coclique(ROW, y, frozenset((xi, y) for xi in by_row[y1][:k])))
    for x1 in sorted(by_column):
        if len(by_column[x1]) >= k:
            return Certificate(COCLIQUE, Coclique(COLUMN, x, frozenset((x, yi) for yi in by_column[x1][:k])))
    return None


def find_ac6_or_coclique(G: GridSubgraph, k: int, caps: Optional[Caps] = None) -> Certificate:
    """
    Look for a copy of AC_6 or a k-coclique by the degree/corner argument.

    1. A line where fewer than 2N/3 vertices have line degree >= N/(3k)
       yields a coclique greedily from its low-degree vertices.
    2. Quadruples (x1, y1, x, y) with edges {(x1,y1),(x1,y)} and
       {(x1,y1),(x,y1)} are bucketed by (y, x). Buckets are tried in order
       of how many vertices with both degrees >= N/(3k) they hold, so the
       first one is the pigeonhole choice.
    3. The vertices (x1, y1) of a bucket are its corners. Same-row corners
       get an auxiliary edge when their images in row y are adjacent, and
       same-column corners when their images in column x are adjacent.
    4. A corner (x1, y1) with auxiliary neighbours (x2, y1) and (x1, y2)
       gives AC_6 on columns (x1, x2, x) and rows (y, y1, y2).
    5. Otherwise k corners of one row with no auxiliary edge give a
       coclique {(x_i, y)}, and likewise for columns.

    Every certificate returned is verified; otherwise the result is inconclusive.
    """
    if not G.spanning:
        raise RamseyError("find_ac6_or_coclique needs a spanning host")
    ac6 = alternating_cycle(6)
    N = min(G.columns, G.rows)
    threshold = N / (3 * k)

    for line in G.lines():
        chosen = _low_degree_coclique(line, k, threshold)
        if chosen is not None:
            cert = Certificate(COCLIQUE, Coclique(line.line_kind, line.index,
                                                  frozenset(line.point(p) for p in chosen)))
            if verify_certificate(cert, G, ac6, k, caps):
                logger.debug(f"Coclique on {line.line_kind} {line.index}")
                return cert

    buckets = _corner_buckets(G)
    supply = 2 * N * (k - 1)
    high = {
        p for p in G.vertices
        if len(G.h_adjacency.get(p, ())) >= threshold and len(G.v_adjacency.get(p, ())) >= threshold
    }
    weight = {key: sum(1 for c in corners if c in high) for key, corners in buckets.items()}
    order = sorted(buckets, key=lambda key: (-weight[key], -len(buckets[key]), key))
    if order and weight[order[0]] <= supply:
        logger.debug(f"Pigeonhole bucket has {weight[order[0]]} high-degree corners, not above {supply}")
    for y, x in order:
        cert = _corner_certificate(G, k, y, x, buckets[(y, x)])
        if cert is not None and verify_certificate(cert, G, ac6, k, caps):
            logger.debug(f"{cert.kind} from the corners of row {y}, column {x}")
            return cert

    reason = f"no coclique extracted and no usable corner among {len(buckets)} (row, column) buckets"
    if N >= completeness_threshold(k):
        logger.warning(f"Inconclusive above the completeness threshold: {reason}")
    return Certificate(INCONCLUSIVE, reason)


@dataclass(frozen=True)
class UniformSubgrid:
    columns: Tuple[int, ...]
    rows: Tuple[int, ...]
    h_color: int
    v_color: int

    def to_dict(self) -> Dict:
        return {"columns": list(self.columns), "rows": list(self.rows),
                "h_color": self.h_color, "v_color": self.v_color}


def _color(coloring: GridSubgraph, kind: str, a: int, b: int, line: int) -> int:
    present = coloring.has_h_edge(a, b, line) if kind == ROW else coloring.has_v_edge(line, a, b)
    return 1 if present else 2


def is_uniform_subgrid(coloring: GridSubgraph, sub: UniformSubgrid) -> bool:
    return (
        all(_color(coloring, ROW, a, b, y) == sub.h_color
            for y in sub.rows for a, b in combinations(sub.columns, 2))
        and all(_color(coloring, COLUMN, a, b, x) == sub.v_color
                for x in sub.columns for a, b in combinations(sub.rows, 2))
    )


def uniform_subgrid(coloring: GridSubgraph, M: int) -> Optional[UniformSubgrid]:
    """
    Find M columns and M rows whose horizontal edges all share one colour and
    whose vertical edges all share one colour.

    The 2-colouring of E(G_{NxN}) is given as the spanning subgraph of its
    colour-1 edges. Colour pairs, column sets and row sets are tried in
    lexicographic order.
    """
    if M < 1:
        raise RamseyError(f"M must be positive, got {M}")
    if M > min(coloring.columns, coloring.rows):
        return None
    for h_color, v_color in product((1, 2), repeat=2):
        for cols in combinations(range(1, coloring.columns + 1), M):
            good_rows = [y for y in range(1, coloring.rows + 1)
                         if all(_color(coloring, ROW, a, b, y) == h_color for a, b in combinations(cols, 2))]
            for rows in combinations(good_rows, M):
                if all(_color(coloring, COLUMN, a, b, x) == v_color
                       for x in cols for a, b in combinations(rows, 2)):
                    return UniformSubgrid(cols, rows, h_color, v_color)
    return None


@dataclass(frozen=True)
class ThresholdReport:
    """The grid size N must exceed `low` (and exceeds `high` for any consistent table value)."""
    M: int
    L: Optional[int]
    low: int
    high: int

    @property
    def exact(self) -> bool:
        return self.low == self.high

    def to_dict(self) -> Dict:
        return {"M": self.M, "L": self.L, "low": self.low, "high": self.high, "exact": self.exact}


def _interval(table: Dict[int, Union[int, Tuple[int, int]]], n: int) -> Tuple[int, int]:
    value = table[n]
    if isinstance(value, int):
        return value, value
    lo, hi = value
    return int(lo), int(hi)


def uniform_subgrid_threshold(M: int, table: Optional[Dict[int, Union[int, Tuple[int, int]]]] = None) -> ThresholdReport:
    """
    Grid size beyond which every 2-colouring has an MxM uniform subgrid.

    With L = 2M * C(R(M,M), M) + 1 the bound is 2 R(M,M) * C(R(L,L), L).
    Only an existence certificate; uniform_subgrid searches directly.

    Raises:
        MissingRamseyValueError: naming every R(n,n) the table lacks
    """
    if M < 1:
        raise RamseyError(f"M must be positive, got {M}")
    if M == 1:
        return ThresholdReport(1, None, 0, 0)
    table = KNOWN_DIAGONAL_RAMSEY if table is None else table
    if M not in table:
        raise MissingRamseyValueError([M])
    rm_lo, rm_hi = _interval(table, M)
    L_lo = 2 * M * math.comb(rm_lo, M) + 1
    L_hi = 2 * M * math.comb(rm_hi, M) + 1
    missing = [L for L in sorted({L_lo, L_hi}) if L not in table]
    if missing:
        raise MissingRamseyValueError(missing)
    rl_lo = _interval(table, L_lo)[0]
    rl_hi = _interval(table, L_hi)[1]
    low = 2 * rm_lo * math.comb(rl_lo, L_lo)
    high = 2 * rm_hi * math.comb(rl_hi, L_hi)
    return ThresholdReport(M, L_lo if L_lo == L_hi else None, low, high)


def random_coclique_free_grid(N: int, k: int, rng: random.Random, density: float = 0.7,
                              caps: Optional[Caps] = None) -> GridSubgraph:
    """
    Random spanning N x N grid with no k-coclique.

    Each edge slot is kept with probability density, then an edge is added
    inside every k-coclique found until none is left.
    """
    h = {(a, b, y) for y in range(1, N + 1) for a, b in combinations(range(1, N + 1), 2)
         if rng.random() < density}
    v = {(x, a, b) for x in range(1, N + 1) for a, b in combinations(range(1, N + 1), 2)
         if rng.random() < density}
    grid = GridSubgraph.build(N, N, h, v, spanning=True)
    if k < 2:
        return grid
    while True:
        coclique = find_coclique(grid, k, caps)
        if coclique is None:
            return grid
        a, b = sorted(coclique.positions)[:2]
        if coclique.line_kind == ROW:
            grid = grid.with_edges(h_edges=[(a[0], b[0], a[1])])
        else:
            grid = grid.with_edges(v_edges=[(a[0], a[1], b[1])])
