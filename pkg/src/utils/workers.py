"""
Worker-pool sizing shared by dataset profiling and exploration
"""
import logging
import os

logger = logging.getLogger(__name__)

THREADS_ENV = "SNN_DSE_THREADS"


def max_workers(requested: int = None) -> int:
    """
    Number of workers to use

    Args:
        requested: explicit request; None means one per CPU

    Returns:
        requested (or cpu count) capped by SNN_DSE_THREADS when set, at least 1
    """
    count = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            count = min(count, int(cap))
        except ValueError:
            logger.warning("Ignoring %s=%r (not an integer)", THREADS_ENV, cap)
    return max(1, int(count))
