import math
import random

import networkx as nx
import pytest

from src.budget import BudgetExceededError, SearchBudget
from src.checkpoint import CheckpointManager
from src.config import Caps
from src.embed import Coclique, Embedding, find_coclique, is_embedding
from src.grid import COLUMN, ROW, GridSubgraph
from src.patterns import alternating_cycle, horizontal_edge, horizontal_path
from src.ramsey import (
    AVOIDER, COCLIQUE, EMBEDDING, INCONCLUSIVE, NO_AVOIDER, UNKNOWN, WITNESS_GRID, Certificate,
    MissingRamseyValueError, RamseyError, _backtrack_avoider, find_ac6_or_coclique, gr_exact,
    is_uniform_subgrid, product_lower_bound, random_coclique_free_grid, uniform_subgrid,
    uniform_subgrid_threshold, verify_certificate,
)


@pytest.fixture
def ac6():
    return alternating_cycle(6)


def test_gr_of_edge():
    """Test gr(edge, K_2) = 2 with a verified witness at N = 1."""
    result = gr_exact(horizontal_edge(), 2, 3)
    assert result.value == 2
    assert result.status == "exact"
    assert result.decisions == {1: AVOIDER, 2: NO_AVOIDER}
    assert result.methods == {1: "brute_force", 2: "brute_force"}
    assert result.certificates[1].kind == WITNESS_GRID
    assert verify_certificate(result.certificates[1], None, horizontal_edge(), 2)


def test_gr_of_three_path():
    """Test gr(3-path, K_2) = 3."""
    result = gr_exact(horizontal_path(3), 2, 3)
    assert result.value == 3
    assert result.certificates[2].payload == GridSubgraph.complete(2)


def test_gr_with_k_one():
    """Test every nonempty grid has a 1-coclique."""
    assert gr_exact(horizontal_edge(), 1, 2).value == 1


def test_gr_rejects_k_zero():
    """Test k must be positive."""
    with pytest.raises(RamseyError):
        gr_exact(horizontal_edge(), 0, 2)


def test_gr_uses_sat_above_brute_force():
    """Test sizes 4 and 5 are decided by the SAT solver on the CNF."""
    result = gr_exact(horizontal_path(5), 2, 5)
    assert result.value == 5
    assert result.methods[4] == "sat"
    assert result.methods[5] == "sat"
    assert result.certificates[4].payload == GridSubgraph.complete(4)


def test_gr_stops_at_size_cap():
    """Test a partial result beyond the exact-search caps."""
    result = gr_exact(horizontal_path(7), 2, 6)
    assert result.value is None
    assert result.status == "lower_bound"
    assert result.lower_bound == 6
    assert result.stopped_by == "size_cap"


def test_gr_lower_bound_within_nmax():
    """Test n_max below the value gives a lower bound."""
    result = gr_exact(horizontal_edge(), 3, 2)
    assert result.value is None
    assert result.lower_bound == 3
    assert result.stopped_by is None


def test_gr_budget_gives_partial_result(mocker):
    """Test an exhausted conflict limit is reported as unknown."""
    mocker.patch("src.ramsey._backtrack_avoider", side_effect=BudgetExceededError(5, 0.0, "node limit"))
    result = gr_exact(horizontal_path(5), 2, 5)
    assert result.decisions[4] == UNKNOWN
    assert result.stopped_by == "budget"
    assert result.lower_bound == 4


def test_gr_budget_covers_brute_force():
    """Test the node budget also stops the exhaustive phase."""
    result = gr_exact(horizontal_edge(), 2, 3, budget=SearchBudget(max_nodes=0))
    assert result.decisions == {1: UNKNOWN}
    assert result.methods[1] == "brute_force"
    assert result.stopped_by == "budget"
    assert result.value is None


def test_gr_checkpoint_and_resume(tmp_path):
    """Test decided sizes are saved and reused on resume."""
    manager = CheckpointManager(tmp_path / "checkpoints")
    gr_exact(horizontal_edge(), 2, 3, checkpoint=manager)
    files = sorted(manager.checkpoint_dir.glob("checkpoint_*.json"))
    assert files
    state = manager.load_checkpoint(files[-1])
    assert set(state["decisions"]) == {"1", "2"}
    resumed = gr_exact(horizontal_edge(), 2, 3, resume=state)
    assert resumed.value == 2
    assert resumed.methods == {1: "checkpoint", 2: "checkpoint"}
    assert resumed.certificates[1].kind == WITNESS_GRID


def test_gr_result_dict():
    """Test the JSON form uses string keys."""
    data = gr_exact(horizontal_edge(), 2, 3).to_dict()
    assert data["value"] == 2
    assert data["decisions"] == {"1": AVOIDER, "2": NO_AVOIDER}
    assert data["certificates"]["1"]["kind"] == WITNESS_GRID


def test_backtrack_avoider_is_worker_independent(mocker):
    """Test the branch split finds the same witness in any order of evaluation."""
    caps = Caps()
    sequential = _backtrack_avoider(horizontal_path(5), 2, 4, caps)
    mocker.patch("src.ramsey.map_branches", side_effect=lambda func, items, workers: [func(i) for i in items])
    split = _backtrack_avoider(horizontal_path(5), 2, 4, caps, workers=4)
    assert sequential == split == GridSubgraph.complete(4)


def test_product_lower_bound():
    """Test C_5 x K_5 certifies gr(AC_6, K_3) >= 6."""
    grid, report = product_lower_bound(nx.cycle_graph(5), 3)
    assert report.certifies
    assert report.independence == 2
    assert report.to_dict()["bound"] == "gr(AC_6, K_3) >= 6"
    assert grid.spanning
    assert grid.edge_count == 5 * 5 + 5 * 10


def test_product_lower_bound_with_triangle():
    """Test a column graph with a triangle does not certify."""
    _, report = product_lower_bound(nx.complete_graph(3), 2)
    assert not report.triangle_free
    assert not report.certifies


def test_find_ac6_in_complete_grid(ac6):
    """Test a corner with both auxiliary edges gives AC_6 on columns (x1, x2, x) and rows (y, y1, y2)."""
    G = GridSubgraph.complete(3)
    cert = find_ac6_or_coclique(G, 2)
    assert cert.kind == EMBEDDING
    assert cert.payload == Embedding((2, 3, 1), (1, 2, 3))
    assert is_embedding(ac6, G, cert.payload)


@pytest.fixture
def star_grid_edges():
    h = [(1, 2, y) for y in range(1, 5)] + [(1, 3, y) for y in range(1, 5)]
    v = [(x, 1, 2) for x in range(1, 5)] + [(x, 1, 3) for x in range(1, 5)]
    return h, v


def test_corner_row_coclique(ac6, star_grid_edges):
    """Test corners without horizontal auxiliary edges give a coclique in row y."""
    h, v = star_grid_edges
    G = GridSubgraph.build(4, 4, h, v, spanning=True)
    cert = find_ac6_or_coclique(G, 2)
    assert cert == Certificate(COCLIQUE, Coclique(ROW, 1, frozenset({(2, 1), (3, 1)})))
    assert verify_certificate(cert, G, ac6, 2)


def test_corner_column_coclique(ac6, star_grid_edges):
    """Test corners without vertical auxiliary edges give a coclique in column x."""
    h, v = star_grid_edges
    G = GridSubgraph.build(4, 4, h + [(2, 3, 1)], v, spanning=True)
    cert = find_ac6_or_coclique(G, 2)
    assert cert == Certificate(COCLIQUE, Coclique(COLUMN, 1, frozenset({(1, 2), (1, 3)})))
    assert verify_certificate(cert, G, ac6, 2)


def test_find_coclique_in_sparse_grid(ac6):
    """Test low-degree lines yield a coclique."""
    G = GridSubgraph.empty(6)
    cert = find_ac6_or_coclique(G, 2)
    assert cert.kind == COCLIQUE
    assert cert.payload.size == 2
    assert verify_certificate(cert, G, ac6, 2)


def test_inconclusive_on_lower_bound_grid(ac6):
    """Test a grid with neither AC_6 nor a 3-coclique stays inconclusive."""
    grid, _ = product_lower_bound(nx.cycle_graph(5), 3)
    cert = find_ac6_or_coclique(grid, 3)
    assert cert.kind == INCONCLUSIVE
    assert not verify_certificate(cert, grid, ac6, 3)


def test_find_ac6_needs_spanning_host(ac6):
    """Test non-spanning hosts are rejected."""
    with pytest.raises(RamseyError):
        find_ac6_or_coclique(ac6, 2)


def test_verify_certificate_rejects_small_coclique(ac6):
    """Test a coclique smaller than k does not verify."""
    cert = Certificate(COCLIQUE, Coclique(ROW, 1, frozenset({(1, 1)})))
    assert not verify_certificate(cert, GridSubgraph.empty(3), ac6, 2)


@pytest.mark.parametrize("cert", [
    Certificate(EMBEDDING, Embedding((1, 2, 3), (1, 2, 3))),
    Certificate(COCLIQUE, Coclique(ROW, 2, frozenset({(1, 2), (3, 2)}))),
    Certificate(WITNESS_GRID, GridSubgraph.complete(2)),
    Certificate(INCONCLUSIVE, "no corners"),
])
def test_certificate_dict(cert):
    """Test certificates survive their JSON form."""
    assert Certificate.from_dict(cert.to_dict()) == cert


def test_uniform_subgrid():
    """Test monochromatic colourings of both kinds."""
    sub = uniform_subgrid(GridSubgraph.complete(3), 2)
    assert (sub.columns, sub.rows, sub.h_color, sub.v_color) == ((1, 2), (1, 2), 1, 1)
    sub = uniform_subgrid(GridSubgraph.empty(3), 2)
    assert (sub.h_color, sub.v_color) == (2, 2)
    assert is_uniform_subgrid(GridSubgraph.empty(3), sub)
    assert uniform_subgrid(GridSubgraph.empty(3), 4) is None
    with pytest.raises(RamseyError):
        uniform_subgrid(GridSubgraph.empty(3), 0)


def test_uniform_subgrid_threshold():
    """Test the threshold from known diagonal Ramsey values."""
    assert uniform_subgrid_threshold(1).low == 0
    report = uniform_subgrid_threshold(2)
    assert report.L == 5
    assert report.low == 4 * math.comb(43, 5)
    assert report.high == 4 * math.comb(48, 5)
    assert not report.exact
    exact = uniform_subgrid_threshold(2, {2: 2, 5: 43})
    assert exact.exact


def test_uniform_subgrid_threshold_missing_value():
    """Test the error names the missing Ramsey number."""
    with pytest.raises(MissingRamseyValueError) as exc_info:
        uniform_subgrid_threshold(3)
    assert exc_info.value.needed == [121]


def test_random_coclique_free_grid():
    """Test the generator repairs every k-coclique."""
    grid = random_coclique_free_grid(5, 3, random.Random(7), density=0.2)
    assert grid.spanning
    assert find_coclique(grid, 3) is None
