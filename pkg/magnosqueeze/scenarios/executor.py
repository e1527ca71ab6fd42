import asyncio
import re
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from magnosqueeze.logger import LOG


T = TypeVar("T")
R = TypeVar("R")


async def map_ordered(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Evaluate `func` on every item in a bounded thread pool; results keep the input order."""

    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    loop = asyncio.get_running_loop()
    LOG.debug(f"Evaluating {len(items)} points on {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [loop.run_in_executor(pool, func, item) for item in items]
        return list(await asyncio.gather(*futures))


def error_kind(error: Exception) -> str:
    """Snake-case failure tag, e.g. SingularityError -> singularity"""

    name = type(error).__name__.removesuffix("Error") or "error"
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()
