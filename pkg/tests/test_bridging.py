from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.bridging import (
    BridgeStep, BridgingError, ConstructionScript, SubdivisionError, ac_script, as_script, bridge,
    clique_script, cycle_extension_steps, edges_between, embedding_count_bound, generalized_subdivide,
    is_bridging_constructible, merge_lines, simple_cycle_script, subdivision_closure, subdivision_steps,
    supersaturation_identity_check, threshold_bound, turan_f,
)
from src.budget import BudgetExceededError, SearchBudget
from src.embed import Embedding, is_embedding
from src.grid import COLUMN, ROW, GridSubgraph
from src.patterns import (
    WaypointCycle, aligned_staircase, alternating_cycle, column_clique, horizontal_edge, horizontal_path,
    nz_stool, row_clique, single_vertex, vertical_edge,
)
from src.progress import SearchProgress
from tests.strategies import grids


def identity(columns, rows):
    return Embedding(tuple(range(1, columns + 1)), tuple(range(1, rows + 1)))


def test_column_bridge_of_single_vertex():
    """Test the first bridging step creates a horizontal edge."""
    g = bridge(single_vertex(), BridgeStep(COLUMN, 1, 1))
    assert (g.columns, g.rows) == (2, 1)
    assert g.h_edges == {(1, 2, 1)}
    assert g.spanning


def test_column_bridge_copies_adjacency():
    """Test the new column copies the source column's edges."""
    g = GridSubgraph.build(2, 2, h_edges=[(1, 2, 2)], v_edges=[(1, 1, 2)], spanning=True)
    out = bridge(g, BridgeStep(COLUMN, 1, 1))
    assert out.has_h_edge(2, 3, 2)
    assert out.has_v_edge(3, 1, 2)
    assert out.has_h_edge(1, 3, 1)
    assert not out.has_h_edge(1, 3, 2)


def test_row_bridge_is_transposed_column_bridge():
    """Test row bridging adds a row and a vertical bridge edge."""
    g = bridge(single_vertex(), BridgeStep(ROW, 1, 1))
    assert (g.columns, g.rows) == (1, 2)
    assert g.v_edges == {(1, 1, 2)}


def test_bridge_out_of_range():
    """Test invalid source and anchor lines are rejected."""
    with pytest.raises(BridgingError):
        bridge(single_vertex(), BridgeStep(COLUMN, 2, 1))
    with pytest.raises(BridgingError):
        bridge(single_vertex(), BridgeStep(COLUMN, 1, 2))
    with pytest.raises(BridgingError):
        BridgeStep("diagonal", 1, 1)


@pytest.mark.parametrize("t", [6, 8, 10, 12])
def test_ac_script_contains_alternating_cycle(t):
    """Test the alternating cycle sits in the replay under the identity."""
    script = ac_script(t)
    replay = script.replay()
    assert (replay.columns, replay.rows) == (t // 2, t // 2)
    assert script.witness == identity(t // 2, t // 2)
    assert is_embedding(alternating_cycle(t), replay, script.witness)
    assert len(script) == 4 + 2 * (t // 2 - 3)


def test_ac_script_rejects_short_cycles():
    """Test AC_4 has no script."""
    with pytest.raises(BridgingError):
        ac_script(4)
    with pytest.raises(BridgingError):
        cycle_extension_steps(1)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_as_script_contains_staircase(d):
    """Test the aligned staircase sits in the replay under the identity."""
    script = as_script(d)
    assert is_embedding(aligned_staircase(d), script.replay(), script.witness)
    assert len(script) == 2 * d - 1


@pytest.mark.parametrize("axis,pattern", [(ROW, row_clique), (COLUMN, column_clique)])
def test_clique_script(axis, pattern):
    """Test clique scripts replay exactly to the clique."""
    script = clique_script(4, axis)
    replay = script.replay()
    assert is_embedding(pattern(4), replay, script.witness)
    assert replay.edge_count == 6


def test_script_stages_and_dict():
    """Test stages start at the single vertex and the JSON form restores the script."""
    script = ac_script(6)
    stages = script.stages()
    assert len(stages) == len(script) + 1
    assert stages[0] == single_vertex()
    assert stages[-1] == script.replay()
    assert ConstructionScript.from_dict(script.to_dict()) == script


def test_merge_lines_undoes_bridge():
    """Test merging the new column back into its source."""
    g = GridSubgraph.build(3, 2, h_edges=[(1, 2, 1), (2, 3, 2)], v_edges=[(2, 1, 2)], spanning=True)
    bridged = bridge(g, BridgeStep(COLUMN, 2, 1))
    assert len(edges_between(bridged, COLUMN, 2, 4)) == 1
    assert merge_lines(bridged, COLUMN, 4, 2) == g


def test_merge_lines_refuses_two_edges():
    """Test lines joined by more than one edge cannot be merged."""
    square = alternating_cycle(4)
    with pytest.raises(BridgingError):
        merge_lines(square, COLUMN, 2, 1)
    with pytest.raises(BridgingError):
        merge_lines(square, COLUMN, 1, 1)


@given(grids(max_columns=3, max_rows=3, spanning=True), st.data())
@settings(max_examples=60, deadline=None)
def test_merge_inverts_column_bridge(g, data):
    """Test merge_lines(bridge(g)) gives g back for spanning graphs."""
    source = data.draw(st.integers(1, g.columns))
    anchor = data.draw(st.integers(1, g.rows))
    bridged = bridge(g, BridgeStep(COLUMN, source, anchor))
    assert merge_lines(bridged, COLUMN, g.columns + 1, source) == g


@pytest.mark.parametrize("pattern", [
    alternating_cycle(6), row_clique(4), column_clique(4), horizontal_path(3), aligned_staircase(2),
])
def test_constructible_patterns(pattern):
    """Test scripts are found and their witnesses embed the pattern."""
    script = is_bridging_constructible(pattern)
    assert script is not None
    assert is_embedding(pattern, script.replay(), script.witness)


@pytest.mark.parametrize("pattern", [alternating_cycle(4), nz_stool()])
def test_non_constructible_patterns(pattern):
    """Test the square and the N-Z stool have no script."""
    assert is_bridging_constructible(pattern) is None


def test_exact_construction_of_row_clique():
    """Test exact mode rebuilds the clique edge for edge."""
    script = is_bridging_constructible(row_clique(3), exact=True)
    assert script is not None
    assert script.replay().edge_count == 3


def test_exact_mode_rejects_alternating_cycle():
    """Test bridging always creates extra edges around AC_6."""
    assert is_bridging_constructible(alternating_cycle(6), exact=True) is None


def test_constructible_cap():
    """Test patterns with too many lines are refused."""
    from src.config import CapExceededError

    with pytest.raises(CapExceededError):
        is_bridging_constructible(GridSubgraph.empty(5, 5))


def test_constructible_budget():
    """Test the node budget stops the search."""
    with pytest.raises(BudgetExceededError):
        is_bridging_constructible(nz_stool(), budget=SearchBudget(max_nodes=1))


def test_constructible_progress_counts_nodes():
    """Test the search reports expanded nodes."""
    progress = SearchProgress("constructible")
    is_bridging_constructible(alternating_cycle(6), progress=progress)
    assert progress.nodes > 0


def test_parallel_branches_match_sequential(mocker):
    """Test the branch split returns the same script as the sequential search."""
    mocker.patch("src.bridging.map_branches", side_effect=lambda func, items, workers: [func(i) for i in items])
    sequential = is_bridging_constructible(alternating_cycle(6))
    split = is_bridging_constructible(alternating_cycle(6), workers=4)
    assert split.to_dict() == sequential.to_dict()


def test_simple_cycle_script_with_straight_run():
    """Test a cycle with a run through an extra column."""
    w = WaypointCycle(((1, 1), (2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (1, 3)))
    script = simple_cycle_script(w)
    assert script.witness.column_map == (1, 4, 2, 3)
    assert len(script) == 5


def test_simple_cycle_script_of_rectangle():
    """Test a cycle whose core is the square is not constructible."""
    w = WaypointCycle(((1, 1), (3, 1), (3, 2), (1, 2)))
    with pytest.raises(BridgingError):
        simple_cycle_script(w)


def test_generalized_subdivision():
    """Test a triangle gadget on a horizontal edge."""
    g = generalized_subdivide(horizontal_edge(), (1, 2, 1), 1, [(1, 3), (3, 2)])
    assert g.h_edges == {(1, 2, 1), (1, 3, 1), (2, 3, 1)}
    closure = subdivision_closure(horizontal_edge(), (1, 2, 1), 1)
    assert is_embedding(g, closure, identity(3, 1))


def test_classical_subdivision():
    """Test dropping the original edge gives a path through the new vertices."""
    g = generalized_subdivide(horizontal_edge(), (1, 2, 1), 2, [(1, 3), (3, 4), (4, 2)], keep_original=False)
    assert g.h_edges == {(1, 3, 1), (3, 4, 1), (2, 4, 1)}
    closure = subdivision_closure(horizontal_edge(), (1, 2, 1), 2)
    assert is_embedding(g, closure, identity(4, 1))
    assert subdivision_steps(horizontal_edge(), (1, 2, 1), 2) == [BridgeStep(COLUMN, 1, 1), BridgeStep(COLUMN, 3, 1)]


def test_vertical_subdivision():
    """Test subdividing a vertical edge works on rows."""
    g = generalized_subdivide(vertical_edge(), (1, 1, 2), 1, [(1, 3), (2, 3)], orientation=COLUMN)
    assert g.v_edges == {(1, 1, 2), (1, 1, 3), (1, 2, 3)}
    closure = subdivision_closure(vertical_edge(), (1, 1, 2), 1, orientation=COLUMN)
    assert is_embedding(g, closure, identity(1, 3))


def test_subdivision_errors():
    """Test missing edges, stray inner edges and disconnected gadgets."""
    with pytest.raises(SubdivisionError):
        generalized_subdivide(horizontal_edge(), (1, 2, 2), 1)
    with pytest.raises(SubdivisionError):
        generalized_subdivide(horizontal_edge(), (1, 2, 1), 1, [(1, 4)])
    with pytest.raises(SubdivisionError):
        generalized_subdivide(horizontal_edge(), (1, 2, 1), 1, [])
    assert generalized_subdivide(horizontal_edge(), (1, 2, 1), 0) == horizontal_edge()


def test_threshold_bound():
    """Test the closed-form bound for small patterns."""
    bound = threshold_bound(1, 2, 3)
    assert bound.coefficient == 64
    assert bound.exact() == 192
    half = threshold_bound(1, 1, 4)
    assert half.exact() is None
    assert float(half) == pytest.approx(8.0)


def test_embedding_count_bound():
    """Test the supersaturation lower bound on a 1x1 pattern."""
    assert embedding_count_bound(1, 1, 4, 2) == Fraction(1, 4)


def test_turan_f():
    """Test the Turan count matches complete graphs for k = 2."""
    assert turan_f(4, 2) == 6
    assert turan_f(5, 3) == Fraction(5 * 3, 4)
    with pytest.raises(BridgingError):
        turan_f(4, 1)


def test_supersaturation_identity_on_complete_grid():
    """Test both counts of embeddings of the bridged edge agree."""
    report = supersaturation_identity_check(horizontal_edge(), 1, 1, GridSubgraph.complete(3), k=2)
    assert report.lhs == report.rhs == 18
    assert report.turan_ok
    assert report.to_dict()["embeddings"] == 9


@given(grids(min_columns=2, max_columns=4, max_rows=3, spanning=True),
       st.sampled_from([(horizontal_edge(), 2, 1), (horizontal_path(3), 2, 1), (alternating_cycle(4), 1, 2)]))
@settings(max_examples=60, deadline=None)
def test_supersaturation_identity_on_random_hosts(G, case):
    """Test the identity holds for any spanning host."""
    H, source, anchor = case
    assert supersaturation_identity_check(H, source, anchor, G).equal
