"""Worker pool for independent CPU-bound work items"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from src.config import config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """
    Runs ``func`` over work items, in worker processes when threads > 1

    Results always come back in submission order. An exception raised by any
    item propagates out of ``map`` once the batch settles.
    """

    def __init__(self, threads: Optional[int] = None):
        self.threads = max(1, threads if threads is not None else config.workers.threads)

    async def map(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        if self.threads == 1 or len(items) <= 1:
            return [func(item) for item in items]
        loop = asyncio.get_running_loop()
        logger.debug(f"Dispatching {len(items)} items to {self.threads} workers")
        with ProcessPoolExecutor(max_workers=self.threads) as executor:
            tasks = [loop.run_in_executor(executor, func, item) for item in items]
            return list(await asyncio.gather(*tasks))

    def run(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """Blocking wrapper around ``map`` for synchronous callers"""
        return asyncio.run(self.map(func, items))
