import logging
from typing import Any, Callable, List

import concurrent.futures

logger = logging.getLogger(__name__)


class BatchExecutor:
    """
    Fans a function out over a list of inputs on a thread pool. Results come
    back in input order, so merged output does not depend on completion order.
    With a single worker the inputs run inline on the calling thread.
    """

    def __init__(self, func: Callable, num_threads: int = 1):
        self.func = func
        self.num_threads = num_threads

    def execute_ordered(self, inputs: List[Any]) -> List[Any]:
        if self.num_threads <= 1:
            return [self.func(inp) for inp in inputs]
        results = [None] * len(inputs)
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.num_threads) as executor:
            future_to_index = {
                executor.submit(self.func, inp): idx
                for idx, inp in enumerate(inputs)
            }
            for future in concurrent.futures.as_completed(future_to_index):
                idx = future_to_index[future]
                results[idx] = future.result()
        logger.debug(f"Executed {len(inputs)} inputs on {self.num_threads} threads")
        return results
