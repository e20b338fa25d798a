import time
import logging
from threading import Lock
from typing import Optional

from .errors import GridError

logger = logging.getLogger(__name__)


class BudgetExceededError(GridError):
    """Raised when a search has used up its node or time budget."""

    def __init__(self, nodes: int, elapsed: float, reason: str):
        self.nodes = nodes
        self.elapsed = elapsed
        self.reason = reason
        super().__init__(f"Search budget exhausted ({reason}) after {nodes} nodes, {elapsed:.1f}s")


class SearchBudget:
    """
    Bounds the work done by a backtracking search.
    Counts node expansions and optionally wall-clock seconds since start().
    """
    def __init__(self, max_nodes: Optional[int] = None, max_seconds: Optional[float] = None):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        self.started_at: Optional[float] = None
        self.lock = Lock()
        logger.debug(f"Search budget initialized: nodes={max_nodes}, seconds={max_seconds}")

    def start(self) -> None:
        with self.lock:
            if self.started_at is None:
                self.started_at = time.monotonic()

    def elapsed(self) -> float:
        if self.started_at is None:
            return 0.0
        return time.monotonic() - self.started_at

    def charge(self, nodes: int = 1) -> None:
        """
        Record node expansions and stop the search when the budget is spent.

        Raises:
            BudgetExceededError: if either limit has been passed
        """
        with self.lock:
            self.nodes += nodes
            if self.max_nodes is not None and self.nodes > self.max_nodes:
                raise BudgetExceededError(self.nodes, self.elapsed(), "node limit")
            # the clock is only read every 1024 nodes
            if self.max_seconds is not None and self.nodes % 1024 == 0 and self.elapsed() > self.max_seconds:
                raise BudgetExceededError(self.nodes, self.elapsed(), "time limit")

    def exhausted(self) -> bool:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            return True
        return self.max_seconds is not None and self.elapsed() > self.max_seconds

    def __enter__(self):
        """Context manager entry point; starts the clock."""
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is BudgetExceededError:
            logger.warning(f"Search stopped: {exc_val}")

    def __call__(self, func):
        """Decorator charging one node per call."""
        def wrapper(*args, **kwargs):
            self.start()
            self.charge()
            return func(*args, **kwargs)
        return wrapper
