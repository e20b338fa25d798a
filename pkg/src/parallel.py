import logging
from multiprocessing import Pool, cpu_count
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def effective_workers(workers: int, branches: int) -> int:
    """Clamp the worker count to the machine and to the number of branches."""
    return max(1, min(workers, cpu_count(), branches))


def map_branches(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Map func over first-level search branches.

    Results come back in branch order whatever the worker count, so callers
    that reduce them in order get schedule-independent outcomes. func must be
    a module-level function when workers > 1.

    Args:
        func: Branch worker
        items: Branch descriptions (picklable)
        workers: Process count; 1 runs in-process

    Returns:
        List of results, one per item, in item order
    """
    items = list(items)
    n_workers = effective_workers(workers, len(items))
    if n_workers <= 1:
        return [func(item) for item in items]
    logger.debug(f"Mapping {len(items)} branches over {n_workers} workers")
    with Pool(n_workers) as pool:
        return pool.map(func, items)
