import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product

from formalitykit.exceptions import InputValidationError
from .certificates import INAPPLICABLE, certify_config_pn, certify_config_spherical, certify_single, cy_normalize

logger = logging.getLogger(__name__)

ROW_FIELDS = ('subject', 'n', 'k', 'h', 'h_min', 'h_max', 'gcd_ok', 'verdict', 'failed', 'uncovered')


def _row(certificate, **extra):
    row = dict.fromkeys(ROW_FIELDS)
    row.update(certificate.parameters)
    row.update(extra)
    row['subject'] = certificate.subject
    row['verdict'] = certificate.verdict
    row['failed'] = '; '.join(certificate.failed_hypotheses)
    row['uncovered'] = ' '.join(str(q) for q in certificate.uncovered)
    return row


def _run(points, one, threads):
    if threads < 1:
        raise InputValidationError(f"threads must be positive, got {threads}.")
    if threads == 1 or len(points) < 2:
        rows = [one(point) for point in points]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, points))
    logger.info("sweep: %d rows", len(rows))
    return rows


def sweep_single(ns, ks, threads=1):
    points = sorted(product(set(ns), set(ks)))
    return _run(points, lambda nk: _row(certify_single(*nk)), threads)


def sweep_pn(ns, ks, hs=None, threads=1):
    """
    One row per (n, k, h); ``hs`` None puts h = nk/2 and reports gcd_ok.
    """

    def one(point):
        n, k, h = point
        if h is not None:
            return _row(certify_config_pn(n, k, h))
        try:
            cy = cy_normalize(n, k)
        except InputValidationError as e:
            row = dict.fromkeys(ROW_FIELDS)
            row.update(subject='pn-config', n=n, k=k, verdict=INAPPLICABLE, failed=str(e), uncovered='')
            return row
        return _row(certify_config_pn(n, k, cy.h), gcd_ok=cy.gcd_ok)

    if hs is None:
        points = [(n, k, None) for n, k in sorted(product(set(ns), set(ks)))]
    else:
        points = sorted(product(set(ns), set(ks), set(hs)))
    return _run(points, one, threads)


def sweep_spherical(ks, h_min=None, h_max=None, threads=1):
    """
    One row per k; the h window defaults to [floor(k/2), k].
    """

    def one(k):
        lo = k // 2 if h_min is None else h_min
        hi = k if h_max is None else h_max
        return _row(certify_config_spherical(k, lo, hi))

    return _run(sorted(set(ks)), one, threads)
