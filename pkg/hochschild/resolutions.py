import logging
from dataclasses import dataclass
from fractions import Fraction

from exact_linalg.matrix import ExactMatrix
from formalitykit.exceptions import InputValidationError
from graded_algebra.algebras import add_into, truncated_poly
from graded_algebra.bimodules import GradedBimodule

logger = logging.getLogger(__name__)


class ResolutionError(InputValidationError):
    pass


@dataclass(frozen=True)
class ResolutionTerm:
    """
    A^e(-shift) with the map to the previous term given by the multiplier,
    a sum of c * (x (x) y) read as x (-) y.
    """

    shift: int
    multiplier: tuple = ()


@dataclass(frozen=True)
class PeriodicResolutionSpec:
    algebra: object
    terms: tuple

    @property
    def length(self):
        return len(self.terms)


def periodic_resolution(n, k, length, field=None):
    """
    The 2-periodic free resolution of k[t]/t^{n+1}, deg t = k.

    Generators sit in degrees i(n+1)k (position 2i) and (i(n+1)+1)k
    (position 2i+1); odd maps multiply by t(x)1 - 1(x)t, even maps by
    sum_l t^{n-l} (x) t^l.
    """
    if length < 1:
        raise ResolutionError(f"Resolution length must be positive, got {length}.")
    A = truncated_poly(n, k) if field is None else truncated_poly(n, k, field)

    def power(j):
        return '1' if j == 0 else ('t' if j == 1 else f't^{j}')

    odd = ((Fraction(1), 't', '1'), (Fraction(-1), '1', 't'))
    even = tuple((Fraction(1), power(n - l), power(l)) for l in range(n + 1))
    terms = [ResolutionTerm(0)]
    for position in range(1, length):
        i = position // 2
        if position % 2:
            terms.append(ResolutionTerm((i * (n + 1) + 1) * k, odd))
        else:
            terms.append(ResolutionTerm(i * (n + 1) * k, even))
    return PeriodicResolutionSpec(A, tuple(terms))


def _enveloping_product(A, first, second):
    """
    first * second in A (x) A^op, both as lists of (c, x, y).
    """
    out = {}
    for c, x, y in first:
        for d, x2, y2 in second:
            for u, cu in A.product(x, x2).items():
                for v, cv in A.product(y2, y).items():
                    out[(u, v)] = out.get((u, v), 0) + c * d * cu * cv
    return {key: value for key, value in out.items() if value}


def _free_module_map(A, multiplier, source_shift, target_shift, degree):
    """
    Degree part of A^e(-source_shift) -> A^e(-target_shift), a (x) b -> a x (x) y b.
    """
    source = [(a, b) for a in A.labels for b in A.labels
              if A.degree(a) + A.degree(b) + source_shift == degree]
    target = [(a, b) for a in A.labels for b in A.labels
              if A.degree(a) + A.degree(b) + target_shift == degree]
    rows = {entry: i for i, entry in enumerate(target)}
    entries = {}
    for j, (a, b) in enumerate(source):
        for c, x, y in multiplier:
            for u, cu in A.product(a, x).items():
                for v, cv in A.product(y, b).items():
                    i = rows.get((u, v))
                    if i is not None:
                        entries[(i, j)] = entries.get((i, j), 0) + c * cu * cv
    return ExactMatrix(entries, (len(target), len(source)), A.field), source, target


def _augmentation(A, degree):
    source = [(a, b) for a in A.labels for b in A.labels if A.degree(a) + A.degree(b) == degree]
    target = A.degree_part(degree)
    rows = {label: i for i, label in enumerate(target)}
    entries = {}
    for j, (a, b) in enumerate(source):
        for u, c in A.product(a, b).items():
            if u in rows:
                entries[(rows[u], j)] = entries.get((rows[u], j), 0) + c
    return ExactMatrix(entries, (len(target), len(source)), A.field), source, target


def validate_resolution(spec):
    """
    Check homogeneity, vanishing composites and exactness in every degree.

    Exactness is checked at A (surjectivity of the augmentation) and at every
    term that has a successor. Raises ResolutionError naming the position
    and internal degree of the first failure.
    """
    A = spec.algebra
    terms = spec.terms
    if not terms:
        raise ResolutionError("A resolution needs at least one term.")
    for position, term in enumerate(terms[1:], start=1):
        expected = term.shift - terms[position - 1].shift
        for c, x, y in term.multiplier:
            if A.degree(x) + A.degree(y) != expected:
                raise ResolutionError(
                    f"Multiplier at position {position} is not homogeneous of degree {expected}."
                )
        if not term.multiplier:
            raise ResolutionError(f"Position {position} has no multiplier.")
    if len(terms) > 1:
        augmented = {}
        for c, x, y in terms[1].multiplier:
            add_into(augmented, A.product(x, y), c)
        if not A.is_zero(augmented):
            raise ResolutionError("The first map does not compose to zero with the augmentation.")
    for position in range(2, len(terms)):
        composite = _enveloping_product(A, terms[position].multiplier, terms[position - 1].multiplier)
        if not A.is_zero(composite):
            raise ResolutionError(f"Maps at positions {position} and {position - 1} do not compose to zero.")

    top = max(A.support())
    bottom = min(A.support())
    for degree in A.support():
        augmentation, _, target = _augmentation(A, degree)
        if augmentation.rank() != len(target):
            raise ResolutionError(f"The augmentation is not onto in degree {degree}.")
    for position in range(len(terms) - 1):
        shift = terms[position].shift
        for degree in range(shift + 2 * bottom, shift + 2 * top + 1):
            if position == 0:
                outgoing, here, _ = _augmentation(A, degree)
            else:
                outgoing, here, _ = _free_module_map(
                    A, terms[position].multiplier, shift, terms[position - 1].shift, degree)
            if not here:
                continue
            incoming, _, _ = _free_module_map(
                A, terms[position + 1].multiplier, terms[position + 1].shift, shift, degree)
            if outgoing.rank() + incoming.rank() != len(here):
                raise ResolutionError(f"Resolution not exact at position {position}, internal degree {degree}.")
    logger.debug("resolution of length %d validated", len(terms))
    return True


def _cochain_map(spec, M, position, q):
    """
    Hom^q(P_{position-1}, M) -> Hom^q(P_position, M) as M^{j'+q} -> M^{j+q}.
    """
    term = spec.terms[position]
    source = M.degree_part(spec.terms[position - 1].shift + q)
    target = M.degree_part(term.shift + q)
    rows = {label: i for i, label in enumerate(target)}
    entries = {}
    for j, label in enumerate(source):
        for c, x, y in term.multiplier:
            image = M.act_right(M.act_left({x: 1}, {label: 1}), {y: 1})
            for result, value in image.items():
                if result in rows:
                    entries[(rows[result], j)] = entries.get((rows[result], j), 0) + c * value
    return ExactMatrix(entries, (len(target), len(source)), spec.algebra.field)


def hh_resolution(spec, p, q, M=None, validate=True):
    """
    dim HH^{p,q} from Hom^q(P, M), using Hom^q(A^e(-j), M) = M^{j+q}.
    """
    if p < 0 or p > spec.length - 2:
        raise ResolutionError(
            f"HH at p={p} needs positions up to {p + 1}; the resolution has length {spec.length}."
        )
    if validate:
        validate_resolution(spec)
    M = GradedBimodule.regular(spec.algebra) if M is None else M
    here = len(M.degree_part(spec.terms[p].shift + q))
    outgoing = _cochain_map(spec, M, p + 1, q).rank()
    incoming = _cochain_map(spec, M, p, q).rank() if p > 0 else 0
    dim = here - outgoing - incoming
    logger.debug("HH^{%d,%d} via resolution: %d - %d - %d = %d", p, q, here, outgoing, incoming, dim)
    return dim
