from itertools import combinations

from hypothesis import strategies as st

from src.grid import GridSubgraph


@st.composite
def grids(draw, max_columns=4, max_rows=4, spanning=None, min_columns=1, min_rows=1):
    """Random grid subgraphs; spanning ones use every lattice point."""
    columns = draw(st.integers(min_columns, max_columns))
    rows = draw(st.integers(min_rows, max_rows))
    if spanning is None:
        spanning = draw(st.booleans())
    h_slots = [(a, b, y) for y in range(1, rows + 1) for a, b in combinations(range(1, columns + 1), 2)]
    v_slots = [(x, a, b) for x in range(1, columns + 1) for a, b in combinations(range(1, rows + 1), 2)]
    h = draw(st.lists(st.sampled_from(h_slots), unique=True)) if h_slots else []
    v = draw(st.lists(st.sampled_from(v_slots), unique=True)) if v_slots else []
    return GridSubgraph.build(columns, rows, h, v, spanning=spanning)


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(list(range(1, n + 1)))))
