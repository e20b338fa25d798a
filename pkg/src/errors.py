class GridError(Exception):
    """Base exception for grid subgraph operations."""
    pass
