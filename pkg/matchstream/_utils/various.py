from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Tuple, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    fn: Callable[[T], R], items: Iterable[T], max_workers: int = 1
) -> Tuple[R, ...]:
    """
    Map ``fn`` over ``items`` on up to ``max_workers`` threads. Results come back in
    submission order, so the outcome never depends on the worker count.
    """
    work = tuple(items)
    if max_workers <= 1 or len(work) <= 1:
        return tuple(fn(item) for item in work)
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return tuple(executor.map(fn, work))
