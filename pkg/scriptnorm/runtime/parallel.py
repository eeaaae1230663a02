"""Order-preserving parallel map over a thread pool."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """Apply ``fn`` to every item and return results in input order.

    Args:
        fn: Pure function of one item
        items: Inputs
        threads: Worker count; 1 runs serially in the calling thread

    Returns:
        ``[fn(x) for x in items]``
    """
    materialized = list(items)
    if threads <= 1 or len(materialized) < 2:
        return [fn(item) for item in materialized]

    workers = min(threads, len(materialized))
    logger.debug(f"Mapping {len(materialized)} items over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, materialized))
