import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

import networkx as nx

from .config import Caps, resolve_caps
from .grid import ROW, GridError, GridSubgraph, LineGraph
from .parallel import map_branches

logger = logging.getLogger(__name__)


class ColoringError(GridError):
    pass


@dataclass(frozen=True)
class ColumnColoring:
    """
    Colours of unordered column pairs by subsets of the rows.

    color[(x1, x2)] with x1 < x2 is the set of rows y carrying the
    horizontal edge between x1 and x2.
    """
    n: int
    r: int
    color: Dict[Tuple[int, int], FrozenSet[int]]

    def __post_init__(self):
        for x1, x2 in combinations(range(1, self.n + 1), 2):
            if (x1, x2) not in self.color:
                raise ColoringError(f"Column pair {(x1, x2)} has no colour")
            if not self.color[(x1, x2)] <= frozenset(range(1, self.r + 1)):
                raise ColoringError(f"Colour of {(x1, x2)} uses rows outside 1..{self.r}")

    def of(self, a: int, b: int) -> FrozenSet[int]:
        return self.color[(min(a, b), max(a, b))]

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "r": self.r,
            "color": [[a, b, sorted(c)] for (a, b), c in sorted(self.color.items())],
        }


def column_coloring(G: GridSubgraph, caps: Optional[Caps] = None) -> ColumnColoring:
    """
    Raises:
        CapExceededError: more rows than the color_rows cap
    """
    caps = resolve_caps(caps)
    caps.check("color_rows", G.rows, "the alphabet has 2^r colours")
    color = {(a, b): frozenset() for a, b in combinations(range(1, G.columns + 1), 2)}
    for x1, x2, y in G.h_edges:
        color[(x1, x2)] = color[(x1, x2)] | {y}
    return ColumnColoring(G.columns, G.rows, color)


def _pattern_coloring(H: GridSubgraph, require_distinct_pairs: bool) -> Dict[Tuple[int, int], FrozenSet[int]]:
    if H.v_edges:
        raise ColoringError("Coloured pattern search needs a pattern with horizontal edges only")
    color: Dict[Tuple[int, int], set] = {}
    for x1, x2, y in H.h_edges:
        color.setdefault((x1, x2), set()).add(y)
    if require_distinct_pairs:
        crowded = [pair for pair, rows in color.items() if len(rows) > 1]
        if crowded:
            raise ColoringError(f"Columns {crowded[0]} carry more than one edge of the pattern")
    return {pair: frozenset(rows) for pair, rows in color.items()}


def _colored_branch(args) -> Optional[Tuple[int, ...]]:
    chi_G, chi_H, columns, first = args
    phi = [first]

    def extend() -> bool:
        x = len(phi) + 1
        if x > columns:
            return True
        for image in range(1, chi_G.n + 1):
            if image in phi:
                continue
            if all(rows <= chi_G.of(phi[a - 1], image) for (a, b), rows in chi_H.items() if b == x):
                phi.append(image)
                if extend():
                    return True
                phi.pop()
        return False

    return tuple(phi) if extend() else None


def find_colored_pattern(chi_G: ColumnColoring, H: GridSubgraph, require_distinct_pairs: bool = False,
                         workers: int = 1) -> Optional[Tuple[int, ...]]:
    """
    Column injection phi with chi_H(x1, x2) contained in chi_G(phi(x1), phi(x2)).

    Together with the identity on rows it embeds H into G. The search is
    split on the image of the first column; the least such injection wins.
    """
    chi_H = _pattern_coloring(H, require_distinct_pairs)
    if H.rows > chi_G.r or H.columns > chi_G.n:
        return None
    if H.columns == 0:
        return ()
    branches = [(chi_G, chi_H, H.columns, first) for first in range(1, chi_G.n + 1)]
    for phi in map_branches(_colored_branch, branches, workers):
        if phi is not None:
            return phi
    return None


@dataclass(frozen=True)
class ColorSubset:
    columns: Tuple[int, ...]
    exact: bool

    @property
    def size(self) -> int:
        return len(self.columns)


def color_restricted_subset(chi_G: ColumnColoring, T: Iterable[int], caps: Optional[Caps] = None) -> ColorSubset:
    """
    Largest set of columns with no pair coloured exactly T.

    Exact (maximum independent set of the T-coloured pairs) up to the
    color_exact_columns cap, greedy beyond it.
    """
    caps = resolve_caps(caps)
    target = frozenset(T)
    conflict = nx.Graph()
    conflict.add_nodes_from(range(1, chi_G.n + 1))
    conflict.add_edges_from(pair for pair, c in chi_G.color.items() if c == target)
    if chi_G.n == 0:
        return ColorSubset((), True)
    if chi_G.n <= caps.color_exact_columns:
        clique, _ = nx.max_weight_clique(nx.complement(conflict), weight=None)
        return ColorSubset(tuple(sorted(clique)), True)

    from .embed import greedy_independent_set

    logger.info(f"{chi_G.n} columns is above the exact cap; using the greedy subset")
    line = LineGraph(ROW, 0, chi_G.n, frozenset(tuple(sorted(e)) for e in conflict.edges()))
    return ColorSubset(tuple(greedy_independent_set(line)), False)


def colored_pairs_counterexample(chi_G: ColumnColoring, k: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """First (row y, k columns U) such that no pair in U has y in its colour, if any."""
    for y in range(1, chi_G.r + 1):
        for subset in combinations(range(1, chi_G.n + 1), k):
            if not any(y in chi_G.of(a, b) for a, b in combinations(subset, 2)):
                return y, subset
    return None


def no_coclique_implies_colored_pairs(chi_G: ColumnColoring, k: int) -> bool:
    """Every row y and every k columns contain a pair whose colour includes y."""
    return colored_pairs_counterexample(chi_G, k) is None
