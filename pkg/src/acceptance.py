import json
import logging
import random
import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from .bridging import (
    ac_script, bridge, cycle_extension_steps, is_bridging_constructible,
    supersaturation_identity_check,
)
from .cnf import encode_cnf, solve_exhaustively
from .config import Caps, RunConfig
from .embed import Embedding, contains, count_embeddings, extract_copy, find_coclique, is_n_diverse, iter_embeddings
from .grid import GridError, GridSubgraph, canonical_form, validate
from .hyper import ThreeGraph, count_embeddings_3, fg_from_grid, fg_to_grid, tight_cycle
from .patterns import (
    aligned_staircase, alternating_cycle, column_clique, horizontal_edge, horizontal_path, nz_stool,
    row_clique, single_vertex, vertical_edge,
)
from .ramsey import (
    COCLIQUE, EMBEDDING, INCONCLUSIVE, UniformSubgrid, find_ac6_or_coclique, gr_exact, is_uniform_subgrid,
    product_lower_bound, random_coclique_free_grid, uniform_subgrid, verify_certificate,
)

logger = logging.getLogger(__name__)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self, include_timing: bool = False) -> Dict:
        data = {"number": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}
        if include_timing:
            data["seconds"] = round(self.seconds, 3)
        return data


def _random_grid(rng: random.Random, columns: int, rows: int, density: float) -> GridSubgraph:
    h = [(a, b, y) for y in range(1, rows + 1) for a, b in combinations(range(1, columns + 1), 2)
         if rng.random() < density]
    v = [(x, a, b) for x in range(1, columns + 1) for a, b in combinations(range(1, rows + 1), 2)
         if rng.random() < density]
    return GridSubgraph.build(columns, rows, h, v, spanning=True)


def _random_property_b(rng: random.Random, max_side: int, density: float) -> ThreeGraph:
    X = tuple(f"x{i}" for i in range(1, rng.randint(1, max_side) + 1))
    Y = tuple(f"y{j}" for j in range(1, rng.randint(1, max_side) + 1))
    edges = [{a, b, y} for a, b in combinations(X, 2) for y in Y if rng.random() < density]
    edges += [{x, a, b} for x in X for a, b in combinations(Y, 2) if rng.random() < density]
    return ThreeGraph.build(X + Y, edges, (X, Y))


def _diverse_oracle(G: GridSubgraph, host_vertex, T: GridSubgraph, tree_vertex, n: int) -> bool:
    """Try every multiset of n embeddings through host_vertex."""
    s, t = tree_vertex
    pool = [e for e in iter_embeddings(T, G) if e.image((s, t)) == tuple(host_vertex)]

    def disjoint(a: Embedding, b: Embedding) -> bool:
        cols_a = {c for j, c in enumerate(a.column_map, start=1) if j != s}
        cols_b = {c for j, c in enumerate(b.column_map, start=1) if j != s}
        rows_a = {r for j, r in enumerate(a.row_map, start=1) if j != t}
        rows_b = {r for j, r in enumerate(b.row_map, start=1) if j != t}
        shared_col = a.column_map[s - 1]
        shared_row = a.row_map[t - 1]
        return (not cols_a & cols_b and not rows_a & rows_b
                and shared_col not in cols_b and shared_col not in cols_a
                and shared_row not in rows_b and shared_row not in rows_a)

    for combo in combinations_with_replacement(pool, n):
        if all(disjoint(a, b) for a, b in combinations(combo, 2)):
            return True
    return False


def _uniform_oracle(coloring: GridSubgraph, M: int) -> bool:
    """Check every M x M subgrid and colour pair."""
    N = coloring.columns
    for cols in combinations(range(1, N + 1), M):
        for rows in combinations(range(1, N + 1), M):
            for h_color, v_color in product((1, 2), repeat=2):
                if is_uniform_subgrid(coloring, UniformSubgrid(cols, rows, h_color, v_color)):
                    return True
    return False


class AcceptanceSuite:
    """
    Runs the reproducible acceptance criteria.
    Every criterion is an exact computation; random suites are seeded from
    the run seed so reports are identical across runs and worker counts.
    """

    def __init__(self, config: Optional[RunConfig] = None, pattern_files: Sequence[Path] = ()):
        self.config = config or RunConfig()
        self.caps: Caps = self.config.caps
        self.workers = self.config.worker_count
        self.pattern_files = [Path(p) for p in pattern_files]

    def _rng(self, number: int) -> random.Random:
        return random.Random(self.config.seed * 1000 + number)

    def criteria(self) -> List[Tuple[int, str, Callable[[], Tuple[bool, str]]]]:
        return [
            (0, "pattern validation", self.check_patterns),
            (1, "exact grid Ramsey values", self.check_exact_values),
            (2, "bridging scripts", self.check_scripts),
            (3, "constructibility decisions", self.check_constructibility),
            (4, "product lower bound", self.check_lower_bound),
            (5, "supersaturation identity", self.check_supersaturation),
            (6, "f_g correspondence", self.check_fg),
            (7, "CNF soundness", self.check_cnf),
            (8, "AC6-or-coclique certificates", self.check_certificates),
            (9, "n-diverse predicate", self.check_diverse),
            (10, "uniform subgrid", self.check_uniform_subgrid),
        ]

    def run(self, show_progress: bool = False) -> List[CriterionResult]:
        results = []
        for number, name, check in tqdm(self.criteria(), desc="acceptance", disable=not show_progress):
            start = time.perf_counter()
            try:
                passed, detail = check()
            except (GridError, ValueError, OSError) as e:
                logger.error(f"Criterion {number} ({name}) raised: {e}")
                passed, detail = False, f"error: {e}"
            seconds = time.perf_counter() - start
            logger.info(f"Criterion {number} ({name}): {'PASS' if passed else 'FAIL'} in {seconds:.2f}s")
            results.append(CriterionResult(number, name, passed, detail, seconds))
        return results

    def check_patterns(self) -> Tuple[bool, str]:
        builtin = [single_vertex(), horizontal_edge(), vertical_edge(), alternating_cycle(6),
                   aligned_staircase(3), nz_stool(), row_clique(4), column_clique(4)]
        bad = [i for i, g in enumerate(builtin) if not validate(g).ok]
        for path in self.pattern_files:
            try:
                with open(path, encoding='utf-8') as f:
                    report = validate(json.load(f))
            except (OSError, json.JSONDecodeError) as e:
                return False, f"{path}: unreadable ({e})"
            if not report.ok:
                return False, f"{path}: {report.summary()}"
        return not bad, f"{len(builtin)} built-in and {len(self.pattern_files)} file patterns checked"

    def check_exact_values(self) -> Tuple[bool, str]:
        edge = gr_exact(horizontal_edge(), 2, 3, caps=self.caps, workers=self.workers)
        path = gr_exact(horizontal_path(3), 2, 3, caps=self.caps, workers=self.workers)
        ok = (edge.value == 2 and path.value == 3
              and verify_certificate(edge.certificates[1], None, horizontal_edge(), 2, self.caps)
              and verify_certificate(path.certificates[2], None, horizontal_path(3), 2, self.caps))
        return ok, f"gr(edge, K_2) = {edge.value}, gr(3-path, K_2) = {path.value}"

    def check_scripts(self) -> Tuple[bool, str]:
        ac6 = alternating_cycle(6)
        script = ac_script(6)
        replay = script.replay()
        copy = extract_copy(replay, ac6, script.witness)
        ok = canonical_form(copy) == canonical_form(ac6)
        details = [f"AC_6 replay has {replay.edge_count} edges"]
        for s in (3, 4):
            g = alternating_cycle(2 * s)
            for step in cycle_extension_steps(s):
                g = bridge(g, step)
            target = alternating_cycle(2 * s + 2)
            identity = Embedding(tuple(range(1, s + 2)), tuple(range(1, s + 2)))
            found = extract_copy(g, target, identity) if contains(target, g) is not None else None
            ok = ok and found is not None
            details.append(f"AC_{2 * s} extends to AC_{2 * s + 2}: {found is not None}")
        return ok, "; ".join(details)

    def check_constructibility(self) -> Tuple[bool, str]:
        positive = {"AC_6": alternating_cycle(6), "row clique": row_clique(4), "column clique": column_clique(4)}
        negative = {"square": alternating_cycle(4), "N-Z stool": nz_stool()}
        outcome = {}
        for name, g in {**positive, **negative}.items():
            outcome[name] = is_bridging_constructible(g, caps=self.caps) is not None
        ok = all(outcome[n] for n in positive) and not any(outcome[n] for n in negative)
        return ok, ", ".join(f"{n}: {'yes' if v else 'no'}" for n, v in outcome.items())

    def check_lower_bound(self) -> Tuple[bool, str]:
        grid, report = product_lower_bound(nx.cycle_graph(5), 3, self.caps)
        return report.certifies, f"C5 x K5: {report.to_dict()['bound']}"

    def check_supersaturation(self) -> Tuple[bool, str]:
        rng = self._rng(5)
        cases = [(single_vertex(), 1, 1), (vertical_edge(), 1, 1)]
        failures = 0
        for _ in range(100):
            N = rng.randint(3, 5)
            G = random_coclique_free_grid(N, 3, rng, density=rng.uniform(0.3, 0.9), caps=self.caps)
            for H, source, anchor in cases:
                report = supersaturation_identity_check(H, source, anchor, G, k=3, workers=self.workers)
                if not (report.equal and report.turan_ok):
                    failures += 1
        return failures == 0, f"{failures} failures over 200 identity checks"

    def check_fg(self) -> Tuple[bool, str]:
        rng = self._rng(6)
        for _ in range(200):
            h = _random_property_b(rng, 5, 0.3)
            g = fg_to_grid(h)
            if fg_from_grid(g, *h.bipartition) != h:
                return False, "round trip failed"
        for _ in range(100):
            H = _random_property_b(rng, 3, 0.4)
            G = _random_property_b(rng, 4, 0.6)
            t3 = count_embeddings_3(H, G, respect_bipartition=True, caps=self.caps)
            tg = count_embeddings(fg_to_grid(H), fg_to_grid(G), workers=self.workers)
            if t3 != tg:
                return False, f"t3 = {t3} but t_g = {tg}"
        for t in (3, 4, 5):
            image = fg_to_grid(tight_cycle(2 * t))
            if canonical_form(image, caps=self.caps) != canonical_form(alternating_cycle(2 * t), caps=self.caps):
                return False, f"tight cycle of length {2 * t} does not map to AC_{2 * t}"
        if fg_to_grid(tight_cycle(9)) != aligned_staircase(4):
            return False, "tight cycle of length 9 does not map to AS_3"
        return True, "round trips, 100 counting identities and cycle images agree"

    def check_cnf(self) -> Tuple[bool, str]:
        sat = {}
        for N in (1, 2):
            instance = encode_cnf(horizontal_edge(), 2, N)
            model = solve_exhaustively(instance, self.caps)
            sat[N] = model is not None
            if model is not None:
                grid = instance.decode(model)
                if contains(horizontal_edge(), grid) is not None or find_coclique(grid, 2, self.caps) is not None:
                    return False, f"decoded model at N={N} is not an avoider"
        return sat == {1: True, 2: False}, f"N=1 {'SAT' if sat[1] else 'UNSAT'}, N=2 {'SAT' if sat[2] else 'UNSAT'}"

    def check_certificates(self) -> Tuple[bool, str]:
        rng = self._rng(8)
        ac6 = alternating_cycle(6)
        counts = {EMBEDDING: 0, COCLIQUE: 0, INCONCLUSIVE: 0}
        for _ in range(200):
            N = rng.randint(3, 12)
            k = rng.choice((2, 3))
            G = _random_grid(rng, N, N, rng.uniform(0.2, 1.0))
            cert = find_ac6_or_coclique(G, k, self.caps)
            counts[cert.kind] += 1
            if cert.kind == INCONCLUSIVE:
                continue
            if not verify_certificate(cert, G, ac6, k, self.caps):
                return False, f"unverifiable {cert.kind} certificate at N={N}"
            if N <= 4:
                truth = contains(ac6, G) is not None if cert.kind == EMBEDDING else \
                    find_coclique(G, k, self.caps) is not None
                if not truth:
                    return False, f"{cert.kind} certificate contradicts exhaustive search at N={N}"
        return True, ", ".join(f"{kind}: {n}" for kind, n in counts.items())

    def check_diverse(self) -> Tuple[bool, str]:
        rng = self._rng(9)
        trees = [
            (single_vertex(), (1, 1)),
            (horizontal_edge(), (1, 1)),
            (vertical_edge(), (1, 2)),
            (GridSubgraph.build(2, 2, [(1, 2, 1)], [(2, 1, 2)]), (2, 1)),
        ]
        checked = 0
        for N in range(2, 5):
            hosts = [GridSubgraph.complete(N)] + [_random_grid(rng, N, N, 0.6) for _ in range(2)]
            for G in hosts:
                for T, tree_vertex in trees:
                    for n in (1, 2):
                        host_vertex = (rng.randint(1, N), rng.randint(1, N))
                        decided, _ = is_n_diverse(G, host_vertex, T, tree_vertex, n, self.caps)
                        if decided != _diverse_oracle(G, host_vertex, T, tree_vertex, n):
                            return False, f"disagreement at N={N}, n={n}, host {host_vertex}"
                        checked += 1
        return True, f"{checked} decisions agree with the all-tuples oracle"

    def check_uniform_subgrid(self) -> Tuple[bool, str]:
        rng = self._rng(10)
        found = 0
        for _ in range(100):
            coloring = _random_grid(rng, 6, 6, 0.5)
            sub = uniform_subgrid(coloring, 2)
            if (sub is not None) != _uniform_oracle(coloring, 2):
                return False, "existence disagrees with the oracle"
            if sub is not None:
                if not is_uniform_subgrid(coloring, sub):
                    return False, f"returned subgrid {sub.to_dict()} is not uniform"
                found += 1
        return True, f"{found}/100 colourings have a uniform 2x2 subgrid"


def reproduce_all(config: Optional[RunConfig] = None, pattern_files: Sequence[Path] = (),
                  show_progress: bool = False) -> List[CriterionResult]:
    return AcceptanceSuite(config, pattern_files).run(show_progress)
