import logging
from dataclasses import dataclass
from fractions import Fraction

from exact_linalg.matrix import contains, quotient_dim, subspace_meet
from formalitykit.exceptions import Inconclusive
from graded_algebra.spaces import GradedVectorSpace
from .ideals import augmentation_ideal, generated_ideal, ideal_sum, meet, power, product
from .tensor import PresentationError, TruncationError

logger = logging.getLogger(__name__)

EVEN = 'even'
ODD = 'odd'


@dataclass(frozen=True)
class AffineForm:
    """
    slope * p + intercept, with integer coefficients.
    """

    slope: int
    intercept: int

    def __call__(self, p):
        return self.slope * p + self.intercept

    def __str__(self):
        if not self.slope:
            return str(self.intercept)
        head = 'p' if self.slope == 1 else f'{self.slope}p'
        if not self.intercept:
            return head
        sign = '+' if self.intercept > 0 else '-'
        return f'{head}{sign}{abs(self.intercept)}'

    def as_dict(self):
        return {'slope': self.slope, 'intercept': self.intercept}


@dataclass(frozen=True)
class MindegBound:
    """
    Lower bound for mindeg Tor_q as the maximum of affine forms in p,
    where q = 2p (even) or q = 2p + 1 (odd).
    """

    parity: str
    pieces: tuple

    def at(self, p):
        return max(piece(p) for piece in self.pieces)

    def for_q(self, q):
        if (q % 2 == 0) != (self.parity == EVEN):
            raise PresentationError(f"q={q} does not have {self.parity} parity.")
        return self.at(q // 2)

    def as_dict(self):
        return {'parity': self.parity, 'pieces': [piece.as_dict() for piece in self.pieces]}


def mindeg_bound(mu, nu, parity):
    """
    From mindeg I = mu and mindeg J = nu:
    even q = 2p: max(p mu, 2 nu + (p - 1) mu); odd q = 2p + 1: p mu + nu.
    """
    if not mu >= 2 * nu >= 2:
        raise PresentationError(f"mindeg bounds need mu >= 2 nu >= 2, got mu={mu}, nu={nu}.")
    if parity == EVEN:
        return MindegBound(EVEN, (AffineForm(mu, 0), AffineForm(mu, 2 * nu - mu)))
    if parity == ODD:
        return MindegBound(ODD, (AffineForm(mu, nu),))
    raise PresentationError(f"Unknown parity {parity!r}.")


def _length_words(pres, length):
    """
    Words of exactly ``length`` letters, grouped by (d, s, t).
    """
    out = {}
    for d in range(length * pres.min_generator_degree, length * pres.max_generator_degree + 1):
        for s, t in pres.blocks():
            words = pres.block_words(d, s, t)
            positions = [i for i, word in enumerate(words) if len(word) == length]
            if positions:
                out[(d, s, t)] = (len(words), positions)
    return out


def nilpotence_index(pres, ideal=None):
    """
    Smallest N with every word of length N in I, checked inside the truncation.

    Raises Inconclusive when no N with N * maxdeg(V) <= D works.
    """
    ideal = generated_ideal(pres) if ideal is None else ideal
    top = pres.max_generator_degree
    N = 2
    while N * top <= pres.truncation:
        if all(
            contains(
                ideal.part(*key),
                [tuple(Fraction(int(i == j)) for j in range(size)) for i in positions],
                pres.field, size,
            )
            for key, (size, positions) in _length_words(pres, N).items()
        ):
            logger.debug("J^%d lies in I for %r", N, pres)
            return N
        N += 1
    raise Inconclusive(
        f"No power of J was found inside I within degree {pres.truncation}; "
        "the Tor formulas need J^N in I."
    )


def tor_degree_ceiling(pres, q, nilpotence=None):
    """
    Largest internal degree in which Tor_q can be nonzero.

    A class of Tor_{2p} is a product of p relations separated by words
    shorter than N; Tor_{2p+1} carries one more such word.
    """
    if q < 0:
        raise PresentationError(f"Tor degree must be non-negative, got {q}.")
    if q == 0:
        return 0
    if q == 1:
        return pres.max_generator_degree
    N = nilpotence_index(pres) if nilpotence is None else nilpotence
    p = q // 2
    gaps = p - 1 if q % 2 == 0 else p
    return p * pres.max_relation_degree + gaps * (N - 1) * pres.max_generator_degree


def quotient_dims(pres, ideal=None, algebra=None):
    """
    Graded dimensions of T(V)/I up to the truncation.

    With ``algebra`` the result is compared against its graded dimensions.
    """
    ideal = generated_ideal(pres) if ideal is None else ideal
    dims = {}
    for d in range(pres.truncation + 1):
        total = sum(len(pres.block_words(d, s, t)) for s, t in pres.blocks())
        if total - ideal.dim(d):
            dims[d] = total - ideal.dim(d)
    if algebra is not None:
        expected = {d: len(algebra.degree_part(d)) for d in algebra.support() if d <= pres.truncation}
        if dims != expected:
            raise PresentationError(f"T(V)/I has dimensions {dims}, the algebra has {expected}.")
    return dims


def _quotient(numerator, denominator):
    pres = numerator.pres
    dims = {}
    for key, rows in numerator.components.items():
        size = len(pres.block_words(*key))
        dim = quotient_dim(rows, denominator.part(*key), pres.field, size)
        if dim:
            dims[key[0]] = dims.get(key[0], 0) + dim
    return dims


def tor_term(pres, q, ideal=None):
    """
    Graded dimensions of Tor^A_q(R, R) for A = T(V)/I.

    Tor_0 = R and Tor_1 = V/(V cap I); for p >= 1
      Tor_2p   = (I^p cap J I^{p-1} J) / (J I^p + I^p J)
      Tor_2p+1 = (J I^p cap I^p J) / (I^{p+1} + J I^p J).
    Refuses with TruncationError when Tor_q could reach above D.
    """
    if q < 0:
        raise PresentationError(f"Tor degree must be non-negative, got {q}.")
    if q == 0:
        return GradedVectorSpace.from_dims({0: pres.vertices}, prefix='tor0_')
    ideal = generated_ideal(pres) if ideal is None else ideal
    if q == 1:
        ceiling = tor_degree_ceiling(pres, 1)
        if ceiling > pres.truncation:
            raise TruncationError(
                f"Generators reach degree {ceiling} above truncation {pres.truncation}; increase truncation."
            )
        dims = {}
        for g in pres.generators:
            dims[g.deg] = dims.get(g.deg, 0) + 1
        for (d, s, t), rows in ideal.components.items():
            words = pres.block_words(d, s, t)
            letters = [tuple(Fraction(int(i == j)) for j in range(len(words)))
                       for i, word in enumerate(words) if len(word) == 1]
            if letters:
                dims[d] -= len(subspace_meet(rows, letters, pres.field, len(words)))
        return GradedVectorSpace.from_dims({d: n for d, n in dims.items() if n}, prefix='tor1_')

    N = nilpotence_index(pres, ideal)
    ceiling = tor_degree_ceiling(pres, q, N)
    if ceiling > pres.truncation:
        raise TruncationError(
            f"Tor_{q} may live up to degree {ceiling} above truncation {pres.truncation}; increase truncation."
        )
    J = augmentation_ideal(pres)
    p = q // 2
    Ip = power(ideal, p)
    if q % 2 == 0:
        numerator = meet(Ip, product(product(J, power(ideal, p - 1)), J))
        denominator = ideal_sum(product(J, Ip), product(Ip, J))
    else:
        JIp = product(J, Ip)
        numerator = meet(JIp, product(Ip, J))
        denominator = ideal_sum(product(Ip, ideal), product(JIp, J))
    dims = _quotient(numerator, denominator)
    logger.debug("Tor_%d of %r: %s (N=%d, ceiling %d)", q, pres, dims, N, ceiling)
    return GradedVectorSpace.from_dims(dims, prefix=f'tor{q}_')
