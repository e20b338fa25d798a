import io
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pysat.formula import CNF, IDPool
from pysat.solvers import Solver

from .budget import BudgetExceededError, SearchBudget
from .config import Caps, resolve_caps
from .embed import iter_embeddings
from .grid import GridError, GridSubgraph

logger = logging.getLogger(__name__)

Slot = Tuple[str, int, int, int]  # ("h", x1, x2, y) or ("v", x, y1, y2)

DEFAULT_SOLVER = "glucose3"


class CnfError(GridError):
    pass


def edge_slots(N: int) -> List[Slot]:
    """Lattice edge slots of G_{NxN} in line-major order: rows first, then columns."""
    slots: List[Slot] = []
    for y in range(1, N + 1):
        slots.extend(("h", x1, x2, y) for x1, x2 in combinations(range(1, N + 1), 2))
    for x in range(1, N + 1):
        slots.extend(("v", x, y1, y2) for y1, y2 in combinations(range(1, N + 1), 2))
    return slots


@dataclass
class CnfInstance:
    """
    Avoidance formula for (H, k, N): satisfiable exactly when some spanning
    subgraph of G_{NxN} has neither a copy of H nor a k-coclique.
    """
    N: int
    k: int
    variable_map: Dict[Slot, int]
    clauses: List[List[int]] = field(default_factory=list)
    h_clauses: int = 0
    coclique_clauses: int = 0

    @property
    def num_vars(self) -> int:
        return len(self.variable_map)

    def slot_of(self, var: int) -> Slot:
        for slot, v in self.variable_map.items():
            if v == var:
                return slot
        raise CnfError(f"Variable {var} is not mapped to an edge slot")

    def to_pysat(self) -> CNF:
        cnf = CNF(from_clauses=self.clauses)
        cnf.nv = self.num_vars
        return cnf

    def comments(self) -> List[str]:
        lines = [f"c grid N={self.N} k={self.k}"]
        for slot, var in sorted(self.variable_map.items(), key=lambda item: item[1]):
            kind, a, b, c = slot
            lines.append(f"c var {var} = {kind} {a} {b} {c}")
        return lines

    def to_dimacs(self) -> str:
        """DIMACS text with the slot map in comment lines."""
        buffer = io.StringIO()
        self.to_pysat().to_fp(buffer, comments=self.comments())
        return buffer.getvalue()

    @classmethod
    def from_dimacs(cls, text: str) -> "CnfInstance":
        """
        Read back a file written by to_dimacs.

        Raises:
            CnfError: if the grid header or a variable comment is missing
        """
        cnf = CNF(from_string=text)
        N = k = None
        variable_map: Dict[Slot, int] = {}
        for line in text.splitlines():
            parts = line.split()
            if len(parts) >= 4 and parts[:2] == ["c", "grid"]:
                N = int(parts[2].split("=")[1])
                k = int(parts[3].split("=")[1])
            elif len(parts) == 8 and parts[:2] == ["c", "var"] and parts[3] == "=":
                variable_map[(parts[4], int(parts[5]), int(parts[6]), int(parts[7]))] = int(parts[2])
        if N is None:
            raise CnfError("DIMACS file has no 'c grid N=.. k=..' header comment")
        if sorted(variable_map.values()) != list(range(1, len(variable_map) + 1)):
            raise CnfError("Variable comments do not cover 1..V densely")
        if cnf.nv > len(variable_map):
            raise CnfError(f"Clauses use variable {cnf.nv} beyond the {len(variable_map)} mapped slots")
        return cls(N, k, variable_map, [list(c) for c in cnf.clauses])

    def satisfies(self, model: Iterable[int]) -> bool:
        true_vars = {lit for lit in model if lit > 0}
        return all(any((lit > 0) == (abs(lit) in true_vars) for lit in clause) for clause in self.clauses)

    def decode(self, model: Iterable[int]) -> GridSubgraph:
        """Spanning grid of the slots set true by the model."""
        true_vars = {lit for lit in model if lit > 0}
        h, v = [], []
        for slot, var in self.variable_map.items():
            if var in true_vars:
                (h if slot[0] == "h" else v).append(slot[1:])
        return GridSubgraph.build(self.N, self.N, h, v, spanning=True)


def encode_cnf(H: GridSubgraph, k: int, N: int) -> CnfInstance:
    """
    Encode "no copy of H and no k-coclique" over the edge slots of G_{NxN}.

    One clause forbids each distinct edge image of H; one clause per line
    and k-subset of its positions requires an edge inside the subset.
    """
    if k < 1 or N < 0:
        raise CnfError(f"Need k >= 1 and N >= 0, got k={k}, N={N}")
    pool = IDPool()
    variable_map = {slot: pool.id(slot) for slot in edge_slots(N)}
    instance = CnfInstance(N, k, variable_map)

    if N >= 1:
        host = GridSubgraph.complete(N)
        images = set()
        for emb in iter_embeddings(H, host):
            image = frozenset(
                [variable_map[("h",) + tuple(sorted((emb.column_map[x1 - 1], emb.column_map[x2 - 1])))
                              + (emb.row_map[y - 1],)] for x1, x2, y in H.h_edges]
                + [variable_map[("v", emb.column_map[x - 1])
                                + tuple(sorted((emb.row_map[y1 - 1], emb.row_map[y2 - 1])))]
                   for x, y1, y2 in H.v_edges]
            )
            images.add(image)
        for image in sorted(images, key=sorted):
            instance.clauses.append([-var for var in sorted(image)])
        instance.h_clauses = len(images)

    for kind in ("h", "v"):
        for line in range(1, N + 1):
            for subset in combinations(range(1, N + 1), k):
                if kind == "h":
                    clause = [variable_map[("h", a, b, line)] for a, b in combinations(subset, 2)]
                else:
                    clause = [variable_map[("v", line, a, b)] for a, b in combinations(subset, 2)]
                instance.clauses.append(clause)
                instance.coclique_clauses += 1
    logger.debug(f"CNF for N={N}, k={k}: {instance.num_vars} vars, {len(instance.clauses)} clauses")
    return instance


def parse_model(text: str) -> Optional[List[int]]:
    """
    Read solver output.

    Accepts competition-style "s SATISFIABLE" / "v ..." lines, a bare
    SAT/UNSAT marker, or plain lines of literals. Returns the literal list,
    or None for an unsatisfiable result.

    Raises:
        CnfError: on a token that is not an integer literal
    """
    literals: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        upper = line.upper()
        if upper in ("UNSAT", "S UNSATISFIABLE", "UNSATISFIABLE"):
            return None
        if upper in ("SAT", "S SATISFIABLE", "SATISFIABLE"):
            continue
        if line.startswith("v"):
            line = line[1:]
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise CnfError(f"Unexpected token in model: '{token}'")
            if lit != 0:
                literals.append(lit)
    return literals


def solve_exhaustively(instance: CnfInstance, caps: Optional[Caps] = None) -> Optional[List[int]]:
    """
    Try every assignment in lexicographic order (false before true).

    Returns:
        The first satisfying model as a literal list, or None when UNSAT

    Raises:
        CapExceededError: above the exhaustive_cnf_vars cap
    """
    caps = resolve_caps(caps)
    caps.check("exhaustive_cnf_vars", instance.num_vars, "use solve_least or an external solver")
    n = instance.num_vars
    for bits in product((False, True), repeat=n):
        model = [i + 1 if bit else -(i + 1) for i, bit in enumerate(bits)]
        if instance.satisfies(model):
            return model
    return None


def _solve(solver: Solver, assumptions: List[int], budget: Optional[SearchBudget],
           conflicts: Optional[int]) -> bool:
    if budget is not None:
        budget.charge()
    if conflicts is None:
        return solver.solve(assumptions=assumptions)
    solver.conf_budget(conflicts)
    status = solver.solve_limited(assumptions=assumptions)
    if status is None:
        nodes = budget.nodes if budget is not None else 0
        elapsed = budget.elapsed() if budget is not None else 0.0
        raise BudgetExceededError(nodes, elapsed, f"conflict limit {conflicts}")
    return status


def solve_least(clauses: Sequence[Sequence[int]], num_vars: int,
                assumptions: Sequence[int] = (),
                budget: Optional[SearchBudget] = None,
                conflicts: Optional[int] = None,
                solver_name: str = DEFAULT_SOLVER) -> Optional[List[int]]:
    """
    Lexicographically least model, false before true, found with a pysat solver.

    Variables are fixed one at a time in index order: each is set false when
    the formula stays satisfiable under the literals fixed so far, so the
    result does not depend on the solver's own search order.

    Args:
        clauses: CNF clauses over variables 1..num_vars
        assumptions: Literals fixed before the search starts
        budget: Optional budget, charged once per solver call
        conflicts: Conflict limit for each solver call

    Returns:
        A full model as a literal list, or None when UNSAT

    Raises:
        BudgetExceededError: if the budget or a conflict limit runs out
    """
    seen = {abs(lit) for clause in clauses for lit in clause}
    fixed: Dict[int, int] = {}
    for lit in assumptions:
        if fixed.get(abs(lit), lit) != lit:
            return None
        fixed[abs(lit)] = lit

    with Solver(name=solver_name, bootstrap_with=[list(c) for c in clauses]) as solver:
        def query(extra: List[int]) -> bool:
            lits = [lit for var, lit in sorted(fixed.items()) if var in seen] + extra
            return _solve(solver, lits, budget, conflicts)

        if not query([]):
            return None
        for var in range(1, num_vars + 1):
            if var in fixed:
                continue
            if var not in seen or query([-var]):
                fixed[var] = -var
            else:
                fixed[var] = var
    logger.debug(f"Least model over {num_vars} vars found with {solver_name}")
    return [fixed[var] for var in range(1, num_vars + 1)]
