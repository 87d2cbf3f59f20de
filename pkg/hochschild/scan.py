import logging
from concurrent.futures import ThreadPoolExecutor

from formalitykit.exceptions import InputValidationError
from .bar import DEFAULT_MAX_WORDS, RELATIVE, hh_bar

logger = logging.getLogger(__name__)


def kadeishvili_scan(A, q_max, mode=RELATIVE, max_words=DEFAULT_MAX_WORDS, threads=1):
    """
    {q: dim HH^{q,2-q}(A, A)} for 3 <= q <= q_max.

    An all-zero table is finite evidence only; slices are independent and
    may run on up to ``threads`` workers.
    """
    if q_max < 3:
        raise InputValidationError(f"q_max must be at least 3, got {q_max}.")
    if threads < 1:
        raise InputValidationError(f"threads must be positive, got {threads}.")
    degrees = list(range(3, q_max + 1))

    def one(q):
        return hh_bar(A, q, 2 - q, mode=mode, max_words=max_words)

    if threads == 1:
        results = [one(q) for q in degrees]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, degrees))
    table = {result.p: result.dim for result in results}
    nonzero = [q for q, dim in table.items() if dim]
    if nonzero:
        logger.info("kadeishvili_scan %r: nonzero at q=%s", A, nonzero)
    else:
        logger.info("kadeishvili_scan %r: zero for 3 <= q <= %d", A, q_max)
    return table
