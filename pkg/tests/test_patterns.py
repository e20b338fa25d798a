import pytest

from src.grid import COLUMN, ROW, canonical_form, transpose
from src.patterns import (
    NonSimpleCycleError, PatternError, WaypointCycle, aligned_staircase, alternating_core,
    alternating_cycle, column_clique, first_disconnected_line, hooked_staircase, horizontal_edge,
    horizontal_path, is_simple, is_simple_tree, named, nz_stool, parse_pattern, row_clique,
    simple_cycle_from_waypoints, single_vertex, waypoints_of,
)


@pytest.mark.parametrize("t", [4, 6, 8, 10])
def test_alternating_cycle_shape(t):
    """Test AC_t has t/2 columns and rows, t edges and alternating orientations."""
    g = alternating_cycle(t)
    assert (g.columns, g.rows) == (t // 2, t // 2)
    assert len(g.h_edges) == len(g.v_edges) == t // 2
    assert all(d == 2 for _, d in g.to_networkx().degree())


def test_alternating_cycle_rejects_odd_length():
    """Test odd or too short cycles are refused."""
    with pytest.raises(PatternError):
        alternating_cycle(7)
    with pytest.raises(PatternError):
        alternating_cycle(2)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_aligned_staircase_shape(d):
    """Test AS_{d-1} has d + 1 columns, d rows and 2d + 1 edges."""
    g = aligned_staircase(d)
    assert (g.columns, g.rows) == (d + 1, d)
    assert g.edge_count == 2 * d + 1


def test_aligned_staircase_smallest_has_five_edges():
    """Test the staircase AS_1 used in the exact-value table."""
    assert aligned_staircase(2).edge_count == 5


def test_nz_stool():
    """Test the N-Z stool on 4 columns and 2 rows."""
    g = nz_stool()
    assert (g.columns, g.rows) == (4, 2)
    assert len(g.h_edges) == 6
    assert len(g.v_edges) == 4


def test_cliques_are_transposes():
    """Test column cliques are transposed row cliques."""
    assert column_clique(4) == transpose(row_clique(4))
    assert row_clique(4).edge_count == 6
    assert row_clique(1) == single_vertex()


def test_named_patterns():
    """Test lookup by name and the size requirement of the sized families."""
    assert named("square") == alternating_cycle(4)
    assert named("row_clique", 3) == row_clique(3)
    with pytest.raises(PatternError):
        named("row_clique")
    with pytest.raises(PatternError):
        named("triangle")


@pytest.mark.parametrize("spec,expected", [
    ("ac:8", lambda: alternating_cycle(8)),
    ("AS:3", lambda: aligned_staircase(3)),
    ("hpath:4", lambda: horizontal_path(4)),
    ("edge", horizontal_edge),
    ("vertex", single_vertex),
    ("nz_stool", nz_stool),
    ("column_clique:3", lambda: column_clique(3)),
])
def test_parse_pattern(spec, expected):
    """Test pattern specs from the command line."""
    assert parse_pattern(spec) == expected()


@pytest.mark.parametrize("spec", ["ac:x", "ac", "blob", "edge:2"])
def test_parse_pattern_errors(spec):
    """Test malformed specs raise PatternError."""
    with pytest.raises(PatternError):
        parse_pattern(spec)


def test_simple_patterns():
    """Test simplicity of the built-in patterns."""
    assert is_simple(alternating_cycle(6))
    assert not is_simple_tree(alternating_cycle(6))
    assert is_simple_tree(horizontal_path(3))
    assert is_simple_tree(single_vertex())


def test_hooked_staircase_is_not_simple():
    """Test the hooked staircase is a path on 8 vertices that meets row 2 twice."""
    g = hooked_staircase()
    assert len(g.vertices) == 8
    assert g.edge_count == 7
    assert not is_simple_tree(g)
    assert first_disconnected_line(g) == (ROW, 2)


def test_waypoint_cycle_validation():
    """Test consecutive waypoints must share exactly one coordinate."""
    with pytest.raises(PatternError):
        WaypointCycle(((1, 1), (2, 2), (1, 2)))
    with pytest.raises(PatternError):
        WaypointCycle(((1, 1), (2, 1)))


def test_simple_cycle_from_waypoints_rejects_disconnected_line():
    """Test a cycle meeting one row in two pieces names that row."""
    w = WaypointCycle(((1, 1), (2, 1), (2, 2), (3, 2), (3, 1), (4, 1), (4, 3), (1, 3)))
    with pytest.raises(NonSimpleCycleError) as exc_info:
        simple_cycle_from_waypoints(w)
    assert (exc_info.value.line_kind, exc_info.value.index) == (ROW, 1)


def test_first_disconnected_line():
    """Test rows are scanned before columns."""
    g = parse_pattern("ac:6").with_edges(h_edges=[(2, 3, 3)])
    assert first_disconnected_line(alternating_cycle(6)) is None
    assert first_disconnected_line(g) == (COLUMN, 2)
    w = WaypointCycle(((1, 1), (3, 1), (3, 2), (1, 2)))
    assert first_disconnected_line(simple_cycle_from_waypoints(w)) is None


def test_waypoints_round_trip():
    """Test reading waypoints back off a cycle."""
    g = alternating_cycle(6)
    assert simple_cycle_from_waypoints(waypoints_of(g)) == g


def test_alternating_core_of_alternating_cycle():
    """Test every waypoint of AC_8 is a turn."""
    core = alternating_core(waypoints_of(alternating_cycle(8)))
    assert core.length == 8
    assert core.pattern() == alternating_cycle(8)


def test_alternating_core_skips_straight_runs():
    """Test waypoints in the middle of straight runs are not turns."""
    w = WaypointCycle(((1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (1, 3)))
    core = alternating_core(w)
    assert core.length == 4
    assert set(core.turns) == {(1, 1), (3, 1), (3, 3), (1, 3)}
    assert canonical_form(core.pattern()) == canonical_form(alternating_cycle(4))
    assert set(core.column_map) == {1, 3}
    assert set(core.row_map) == {1, 3}
