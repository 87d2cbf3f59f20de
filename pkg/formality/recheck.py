"""
Replay a serialized formality certificate from its parameters alone.

Nothing here calls the code that built the certificate: the endpoints of
every chain are re-derived from the subject's parameters and every link is
re-evaluated with plain integer arithmetic.
"""
import logging
from dataclasses import dataclass, field
from math import gcd

logger = logging.getLogger(__name__)


@dataclass
class RecheckReport:
    verdict: str
    checked: int = 0
    problems: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.problems

    def as_dict(self):
        return {'ok': self.ok, 'verdict': self.verdict, 'checked': self.checked, 'problems': self.problems}


def _hypotheses(subject, params):
    if subject == 'single':
        return [] if params['n'] >= 1 and params['k'] != 0 else ['n >= 1 and k != 0']
    if subject == 'pn-config':
        n, k, h = params['n'], params['k'], params['h']
        failed = [] if n >= 2 else ['n >= 2']
        if k == 0 or h == 0 or (k > 0) != (h > 0):
            return failed + ['k and h nonzero of the same sign']
        K, H = abs(k), abs(h)
        if K < 2:
            failed.append('k >= 2' if k > 0 else 'k <= -2')
        if not (n * K <= 2 * H <= 2 * n * K):
            failed.append('nk/2 <= h <= nk' if k > 0 else 'nk <= h <= nk/2')
        if gcd(K, H) < 2:
            failed.append('gcd(k,h) > 1')
        return failed
    if subject == 'spherical':
        k, lo, hi = params['k'], params['h_min'], params['h_max']
        checks = [('k >= 4', k >= 4), ('floor(k/2) <= h_min', 2 * lo >= k - k % 2),
                  ('h_min <= h_max', lo <= hi), ('h_max <= k', hi <= k)]
        return [name for name, holds in checks if not holds]
    raise KeyError(subject)


def _endpoints(subject, params, parity):
    """
    (left, right) of the inequality a chain must prove, as (slope, intercept).
    """
    even = parity == 'even'
    if subject == 'single':
        n, k = params['n'], params['k']
        # Hom^0(F^q, A(2-q)) sits in degree j_q + 2 - q
        target = ((n + 1) * k - 2, 2 if even else k + 1)
        return ((0, n * k), target) if k > 0 else (target, (0, n * k))
    if subject == 'pn-config':
        n, K, H = params['n'], abs(params['k']), abs(params['h'])
        mu, nu = H + K, K
    else:
        n, K, H = 1, params['k'], params['h_min']
        mu, nu = 2 * H, H
    if not mu >= 2 * nu >= 2:
        raise ValueError(f'mindeg data mu={mu}, nu={nu} violate mu >= 2 nu >= 2')
    right = (mu, 0) if even else (mu, nu)
    if subject == 'pn-config' and params['k'] < 0:
        return ((-2, n * K + 2) if even else (-2, n * K + 1)), right
    return ((2, n * K - 2) if even else (2, n * K - 1)), right


def _check_chain(chain, problems, where):
    terms = [(t['slope'], t['intercept']) for t in chain['terms']]
    relations = chain['relations']
    p0 = chain['p0']
    if len(relations) != len(terms) - 1:
        problems.append(f'{where}: {len(terms)} terms but {len(relations)} relations')
        return terms
    for i, relation in enumerate(relations):
        (a, b), (c, d) = terms[i], terms[i + 1]
        left, right = a * p0 + b, c * p0 + d
        if c - a < 0:
            problems.append(f'{where}: link {i} loses slope ({a} vs {c})')
        elif relation == '<' and not left < right:
            problems.append(f'{where}: link {i} claims {left} < {right} at p={p0}')
        elif relation == '<=' and not left <= right:
            problems.append(f'{where}: link {i} claims {left} <= {right} at p={p0}')
        elif relation not in ('<', '<='):
            problems.append(f'{where}: link {i} has no valid relation ({relation!r})')
    if '<' not in relations:
        problems.append(f'{where}: no strict link, the chain proves only <=')
    return terms


def _replay_direct(item, problems, where):
    from graded_algebra.serializers import AlgebraSerializer
    from hochschild.bar import hh_bar

    serializer = AlgebraSerializer(data=item['detail']['algebra'])
    if not serializer.is_valid():
        problems.append(f'{where}: stored algebra does not validate: {serializer.errors}')
        return
    A = serializer.save()
    q = item['q_range']['from']
    dim = hh_bar(A, q, 2 - q, mode=item['detail']['mode']).dim
    if dim != item['detail']['dim']:
        problems.append(f'{where}: recomputed dim {dim}, certificate says {item["detail"]["dim"]}')


def recheck(payload, replay_direct=False):
    """
    Check every evidence item, the hypotheses and the coverage behind the verdict.
    """
    subject, params, verdict = payload['subject'], payload['parameters'], payload['verdict']
    report = RecheckReport(verdict)
    problems = report.problems
    failed = _hypotheses(subject, params)
    if sorted(failed) != sorted(payload.get('failed_hypotheses', [])):
        problems.append(f'hypotheses: recomputed failures {failed}, certificate lists {payload.get("failed_hypotheses")}')
    if verdict == 'CriterionInapplicable':
        if not failed:
            problems.append('CriterionInapplicable without a failed hypothesis')
        return report

    tails = {}
    finite = set()
    for index, item in enumerate(payload['evidence']):
        where = f'evidence[{index}] {item["method"]}'
        span = item['q_range']
        report.checked += 1
        if item['method'] in ('DegreeBound', 'PeriodicResolution'):
            chain = item['chain']
            terms = _check_chain(chain, problems, where)
            parity = span['parity']
            left, right = _endpoints(subject, params, parity)
            if terms[0] != left or terms[-1] != right:
                problems.append(f'{where}: chain runs {terms[0]} .. {terms[-1]}, expected {left} .. {right}')
            start = 2 * chain['p0'] + (parity == 'odd')
            if span['from'] != start or span['to'] is not None or start < 3:
                problems.append(f'{where}: q range {span} does not match p0={chain["p0"]}')
            tails[parity] = min(tails.get(parity, start), start)
        elif item['method'] == 'GcdDivisibility':
            g = gcd(*(abs(d) for d in item['detail']['generator_degrees']))
            if subject != 'pn-config' or g != item['detail']['gcd'] or g < 2:
                problems.append(f'{where}: gcd {item["detail"]["gcd"]} does not check (recomputed {g})')
            for q in range(span['from'], span['to'] + 1):
                if (2 - q) % g == 0:
                    problems.append(f'{where}: internal degree {2 - q} is divisible by {g}')
                else:
                    finite.add(q)
        elif item['method'] == 'DirectHH':
            if replay_direct:
                _replay_direct(item, problems, where)
        else:
            problems.append(f'{where}: unknown method')

    if verdict == 'CertifiedFormal':
        if set(tails) != {'even', 'odd'}:
            problems.append(f'coverage: tails only for {sorted(tails)}')
        else:
            for q in range(3, max(tails.values())):
                if q not in finite and q < tails['even' if q % 2 == 0 else 'odd']:
                    problems.append(f'coverage: q={q} is not covered')
    elif verdict == 'Inconclusive' and not payload.get('uncovered') and len(tails) == 2:
        problems.append('Inconclusive without an uncovered q')
    logger.info("recheck %s %s: %s", subject, params, 'ok' if report.ok else problems)
    return report
