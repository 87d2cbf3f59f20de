import logging
from dataclasses import dataclass, field
from math import gcd

from formalitykit.exceptions import InputValidationError
from graded_algebra.serializers import algebra_payload
from hochschild.bar import DEFAULT_MAX_WORDS, RELATIVE
from hochschild.scan import kadeishvili_scan
from presentations.tor import EVEN, ODD, AffineForm, mindeg_bound
from .chains import AffineChain

logger = logging.getLogger(__name__)

CERTIFIED = 'CertifiedFormal'
INAPPLICABLE = 'CriterionInapplicable'
INCONCLUSIVE = 'Inconclusive'
VERDICTS = (CERTIFIED, INAPPLICABLE, INCONCLUSIVE)

DEGREE_BOUND = 'DegreeBound'
GCD_DIVISIBILITY = 'GcdDivisibility'
DIRECT_HH = 'DirectHH'
PERIODIC_RESOLUTION = 'PeriodicResolution'
METHODS = (DEGREE_BOUND, GCD_DIVISIBILITY, DIRECT_HH, PERIODIC_RESOLUTION)

SINGLE = 'single'
PN_CONFIG = 'pn-config'
SPHERICAL = 'spherical'
SUBJECTS = (SINGLE, PN_CONFIG, SPHERICAL)

SMALL_K_REMARK = 'for k=2 and 3, we still expect intrinsic formality'

# later starting points tried when a chain fails at its first p
MAX_START_SHIFT = 3


def q_at(parity, p):
    return 2 * p if parity == EVEN else 2 * p + 1


@dataclass
class Evidence:
    """
    One re-checkable argument for HH^{q,2-q} = 0 on a range of q.

    Tails (``q_to`` None) cover q = 2p or 2p + 1 for p >= chain.p0.
    """

    method: str
    q_from: int
    q_to: int | None = None
    parity: str | None = None
    chain: AffineChain | None = None
    claim: str = ''
    detail: dict = field(default_factory=dict)

    def covers(self, q):
        if q < self.q_from or (self.q_to is not None and q > self.q_to):
            return False
        return self.parity is None or (q % 2 == 0) == (self.parity == EVEN)

    def as_dict(self):
        data = {
            'method': self.method,
            'q_range': {'parity': self.parity, 'from': self.q_from, 'to': self.q_to},
            'claim': self.claim,
            'detail': self.detail,
            'chain': self.chain.as_dict() if self.chain else None,
        }
        if self.chain:
            data['instances'] = [
                {'p': p, 'q': q_at(self.parity, p), 'values': self.chain.instantiate(p)}
                for p in range(self.chain.p0, self.chain.p0 + 3)
            ]
        return data


@dataclass
class FormalityCertificate:
    subject: str
    parameters: dict
    verdict: str
    evidence: list = field(default_factory=list)
    failed_hypotheses: list = field(default_factory=list)
    remarks: list = field(default_factory=list)
    uncovered: list = field(default_factory=list)
    experimental: bool = False

    def as_dict(self):
        return {
            'subject': self.subject,
            'parameters': self.parameters,
            'verdict': self.verdict,
            'evidence': [item.as_dict() for item in self.evidence],
            'failed_hypotheses': self.failed_hypotheses,
            'remarks': self.remarks,
            'uncovered': self.uncovered,
            'experimental': self.experimental,
        }


def _tail(method, parity, terms, p0, claim, detail):
    """
    Evidence for the tail of one parity, moving the start past failing p.

    Returns (evidence or None, the q values left uncovered on the way).
    """
    uncovered = []
    for start in range(p0, p0 + MAX_START_SHIFT + 1):
        chain = AffineChain.build(terms, start)
        if chain.proven:
            return Evidence(method, q_at(parity, start), None, parity, chain, claim, dict(detail)), uncovered
        uncovered.append(q_at(parity, start))
    return None, uncovered


def _conclude(certificate, tails, uncovered):
    certificate.uncovered = sorted(uncovered)
    for parity, item in tails:
        if item is None:
            certificate.remarks.append(f'No affine argument found for the {parity} tail.')
        else:
            certificate.evidence.append(item)
    complete = all(item is not None for _, item in tails) and not uncovered
    certificate.evidence.sort(key=lambda item: (item.q_from, item.parity or ''))
    certificate.verdict = CERTIFIED if complete else INCONCLUSIVE
    logger.info("%s %s: %s", certificate.subject, certificate.parameters, certificate.verdict)
    return certificate


def certify_single(n, k):
    """
    k[t]/t^{n+1}, deg t = k, through the periodic resolution F.

    HH^{q,2-q} is a subquotient of Hom^0(F^q, A(2-q)) = A^{j_q+2-q}, with
    j_{2i} = i(n+1)k and j_{2i+1} = (i(n+1)+1)k; it vanishes once j_q+2-q
    leaves the band of degrees of A. Negative k is the experimental mirror.
    """
    if n < 1 or k == 0:
        raise InputValidationError(f"certify_single needs n >= 1 and k != 0, got n={n}, k={k}.")
    mirrored = k < 0
    certificate = FormalityCertificate(SINGLE, {'n': n, 'k': k}, INCONCLUSIVE, experimental=mirrored)
    if mirrored:
        logger.warning("certify_single with k=%d uses the experimental mirrored mode", k)
    band = sorted((0, n * k))
    slope = (n + 1) * k - 2
    targets = {EVEN: (AffineForm(slope, 2), 2), ODD: (AffineForm(slope, k + 1), 1)}
    tails, uncovered = [], []
    for parity, (target, p0) in targets.items():
        if mirrored:
            terms = [('j_q+2-q', target), ('mindeg(A)', AffineForm(0, band[0]))]
            claim = 'A^{j_q+2-q} = 0 since j_q+2-q < mindeg(A)'
        else:
            terms = [('maxdeg(A)', AffineForm(0, band[1])), ('j_q+2-q', target)]
            claim = 'A^{j_q+2-q} = 0 since j_q+2-q > maxdeg(A)'
        item, missed = _tail(PERIODIC_RESOLUTION, parity, terms, p0, claim, {'band': band})
        tails.append((parity, item))
        uncovered.extend(missed)
    return _conclude(certificate, tails, uncovered)


def pn_hypotheses(n, k, h):
    """
    Failed hypotheses of the degree criterion for P^n[k] configurations.
    """
    failed = []
    if n < 2:
        failed.append('n >= 2')
    if k == 0 or h == 0 or (k > 0) != (h > 0):
        failed.append('k and h nonzero of the same sign')
        return failed
    K, H = abs(k), abs(h)
    if K < 2:
        failed.append('k >= 2' if k > 0 else 'k <= -2')
    if not (n * K <= 2 * H and H <= n * K):
        failed.append('nk/2 <= h <= nk' if k > 0 else 'nk <= h <= nk/2')
    if gcd(K, H) <= 1:
        failed.append('gcd(k,h) > 1')
    return failed


def certify_config_pn(n, k, h):
    """
    Degree criterion maxdeg(A) + q - 2 < mindeg Tor_q for q >= 4 and the
    divisibility argument for q = 3, with mindeg I = h + k, mindeg J = k.
    """
    params = {'n': n, 'k': k, 'h': h}
    failed = pn_hypotheses(n, k, h)
    mirrored = k < 0 and h < 0
    certificate = FormalityCertificate(PN_CONFIG, params, INCONCLUSIVE, experimental=mirrored)
    if failed:
        certificate.verdict = INAPPLICABLE
        certificate.failed_hypotheses = failed
        if 'gcd(k,h) > 1' in failed:
            certificate.remarks.append('HH^{3,-1} is not settled by the divisibility argument when gcd(k,h) = 1.')
        logger.info("pn-config %s: inapplicable (%s)", params, '; '.join(failed))
        return certificate
    if mirrored:
        logger.warning("certify_config_pn with k=%d, h=%d uses the experimental mirrored mode", k, h)
    K, H = abs(k), abs(h)
    mu, nu = H + K, K
    detail = {'maxdeg': n * K, 'mu': mu, 'nu': nu}
    even = [
        ('maxdeg(A)+q-2', AffineForm(2, n * K - 2)),
        ('2h+2p-2', AffineForm(2, 2 * H - 2)),
        ('ph+2p', AffineForm(H + 2, 0)),
        ('p(h+k) <= mindeg Tor_q', mindeg_bound(mu, nu, EVEN).pieces[0]),
    ]
    odd = [
        ('maxdeg(A)+q-2', AffineForm(2, n * K - 1)),
        ('2h+2p-1', AffineForm(2, 2 * H - 1)),
        ('ph+2p', AffineForm(H + 2, 0)),
        ('p(h+k)+k <= mindeg Tor_q', mindeg_bound(mu, nu, ODD).pieces[0]),
    ]
    if mirrored:
        even.insert(0, ('2-q-mindeg(A)', AffineForm(-2, n * K + 2)))
        odd.insert(0, ('2-q-mindeg(A)', AffineForm(-2, n * K + 1)))
        claim = 'mindeg(A)+q-2 > maxdeg Tor_q'
    else:
        claim = 'maxdeg(A)+q-2 < mindeg Tor_q'
    tails, uncovered = [], []
    for parity, terms in ((EVEN, even), (ODD, odd)):
        item, missed = _tail(DEGREE_BOUND, parity, terms, 2, claim, detail)
        tails.append((parity, item))
        uncovered.extend(missed)
    g = gcd(K, H)
    certificate.evidence.append(Evidence(
        GCD_DIVISIBILITY, 3, 3,
        claim=f'A lives in degrees divisible by {g}; internal degree -1 is not',
        detail={'gcd': g, 'generator_degrees': [k, h], 'internal_degree': -1},
    ))
    return _conclude(certificate, tails, uncovered)


def spherical_hypotheses(k, h_min, h_max):
    failed = []
    if k < 4:
        failed.append('k >= 4')
    if h_min < k // 2:
        failed.append('floor(k/2) <= h_min')
    if h_min > h_max:
        failed.append('h_min <= h_max')
    if h_max > k:
        failed.append('h_max <= k')
    return failed


def certify_config_spherical(k, h_min, h_max):
    """
    Degree criterion for spherelike configurations whose hom-degrees lie in
    [h_min, h_max]: maxdeg(A) = k <= 2h + 1 and mindeg I >= 2h with h = h_min.
    """
    params = {'k': k, 'h_min': h_min, 'h_max': h_max}
    certificate = FormalityCertificate(SPHERICAL, params, INCONCLUSIVE)
    failed = spherical_hypotheses(k, h_min, h_max)
    if k in (2, 3):
        certificate.remarks.append(SMALL_K_REMARK)
    if failed:
        certificate.verdict = INAPPLICABLE
        certificate.failed_hypotheses = failed
        logger.info("spherical %s: inapplicable (%s)", params, '; '.join(failed))
        return certificate
    # every generator has degree >= h_min
    h = h_min
    mu, nu = 2 * h, h
    detail = {'maxdeg': k, 'h': h, 'mu': mu, 'nu': nu}
    even = [
        ('maxdeg(A)+q-2', AffineForm(2, k - 2)),
        ('2h+2p-1', AffineForm(2, 2 * h - 1)),
        ('2h+2p', AffineForm(2, 2 * h)),
        ('2ph <= mindeg Tor_q', mindeg_bound(mu, nu, EVEN).pieces[0]),
    ]
    odd = [
        ('maxdeg(A)+q-2', AffineForm(2, k - 1)),
        ('2h+2p', AffineForm(2, 2 * h)),
        ('2ph+h <= mindeg Tor_q', mindeg_bound(mu, nu, ODD).pieces[0]),
    ]
    claim = 'maxdeg(A)+q-2 < mindeg Tor_q'
    tails, uncovered = [], []
    for parity, terms, p0 in ((EVEN, even, 2), (ODD, odd, 1)):
        item, missed = _tail(DEGREE_BOUND, parity, terms, p0, claim, detail)
        tails.append((parity, item))
        uncovered.extend(missed)
    for q in uncovered:
        terms = odd if q % 2 else even
        left, right = terms[0][1](q // 2), terms[-1][1](q // 2)
        certificate.remarks.append(f'q={q}: maxdeg(A)+q-2 = {left} is not below the bound {right}.')
    return _conclude(certificate, tails, uncovered)


@dataclass(frozen=True)
class CYNormalization:
    n: int
    k: int
    h: int
    gcd_ok: bool
    parity_rule: bool

    def as_dict(self):
        return {'n': self.n, 'k': self.k, 'h': self.h, 'gcd_ok': self.gcd_ok, 'parity_rule': self.parity_rule}


def cy_normalize(n, k):
    """
    h = nk/2 forced by the Calabi-Yau window; gcd_ok is gcd(k, h) > 1.

    ``parity_rule`` is the sufficient condition "n even or 4 | k", which
    implies gcd_ok whenever k >= 2.
    """
    if (n * k) % 2:
        raise InputValidationError(f"nk = {n * k} is odd; no h with 2h = nk.")
    h = n * k // 2
    return CYNormalization(n, k, h, gcd(k, h) > 1, n % 2 == 0 or k % 4 == 0)


def attach_direct_scan(certificate, algebra, q_max, mode=RELATIVE, max_words=DEFAULT_MAX_WORDS, threads=1):
    """
    Add DirectHH items from kadeishvili_scan of a concrete algebra.

    The verdict is untouched: a scan speaks for one algebra, the
    certificate for a family.
    """
    table = kadeishvili_scan(algebra, q_max, mode=mode, max_words=max_words, threads=threads)
    payload = algebra_payload(algebra)
    for q, dim in table.items():
        certificate.evidence.append(Evidence(
            DIRECT_HH, q, q,
            claim=f'dim HH^{{{q},{2 - q}}} = {dim}',
            detail={'dim': dim, 'mode': mode, 'algebra': payload},
        ))
        if dim == 0 and q in certificate.uncovered:
            certificate.remarks.append(f'q={q}: the direct scan of {algebra.name or "the algebra"} gives zero.')
    return certificate


def render_human(certificate):
    params = ' '.join(f'{key}={value}' for key, value in certificate.parameters.items())
    lines = [f'{certificate.subject} {params}: {certificate.verdict}']
    if certificate.experimental:
        lines.append('  (experimental mirrored mode)')
    for hypothesis in certificate.failed_hypotheses:
        lines.append(f'  fails: {hypothesis}')
    for item in certificate.evidence:
        if item.chain:
            head = 'q=2p' if item.parity == EVEN else 'q=2p+1'
            lines.append(f'  [{item.method}] {head}, p>={item.chain.p0}: {item.claim}')
            lines.append(f'    {item.chain.render()}')
            p = item.chain.p0
            lines.append(f'    at p={p} (q={q_at(item.parity, p)}): {item.chain.render(p)}')
        else:
            span = f'q={item.q_from}' if item.q_to == item.q_from else f'q={item.q_from}..{item.q_to}'
            lines.append(f'  [{item.method}] {span}: {item.claim}')
    if certificate.uncovered:
        lines.append(f'  uncovered: {", ".join(f"q={q}" for q in certificate.uncovered)}')
    for remark in certificate.remarks:
        lines.append(f'  note: {remark}')
    return '\n'.join(lines)
