import logging
from dataclasses import dataclass, field
from types import MappingProxyType

from sympy import binomial

from exact_linalg.fields import RATIONALS
from formalitykit.exceptions import InputValidationError
from graded_algebra.spaces import GradedVectorSpace
from .signs import sign_assignment

logger = logging.getLogger(__name__)

SYMMETRIC = 'symmetric'
EXTERIOR = 'exterior'


class CharacteristicError(InputValidationError):
    pass


class PoincarePolynomial:
    """
    Graded dimensions: degree -> dimension, zero entries dropped.
    """

    def __init__(self, dims=None):
        cleaned = {}
        for degree, dim in (dims or {}).items():
            dim = int(dim)
            if dim < 0:
                raise InputValidationError(f"Negative dimension {dim} in degree {degree}.")
            if dim:
                cleaned[int(degree)] = dim
        self.dims = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def concentrated(cls, degree, dim=1):
        """
        k[-degree]: dimension ``dim`` in one degree.
        """
        return cls({degree: dim})

    @classmethod
    def of(cls, space):
        return cls(space.dims())

    def __eq__(self, other):
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        return dict(self.dims) == dict(other.dims)

    __hash__ = None

    def __repr__(self):
        return f"PoincarePolynomial({dict(self.dims)})"

    def __add__(self, other):
        dims = dict(self.dims)
        for degree, dim in other.dims.items():
            dims[degree] = dims.get(degree, 0) + dim
        return PoincarePolynomial(dims)

    def total(self):
        return sum(self.dims.values())

    def is_zero(self):
        return not self.dims

    def as_space(self, prefix='v'):
        return GradedVectorSpace.from_dims(dict(self.dims), prefix)

    def as_dict(self):
        return {str(degree): dim for degree, dim in self.dims.items()}


def graded_power(P, n, kind, field=RATIONALS):
    """
    Koszul-signed S^n(P) or Lambda^n(P).

    Under ``symmetric`` even-degree generators multiply symmetrically and
    odd-degree ones antisymmetrically; ``exterior`` swaps the roles. The
    result is read off the product of the per-degree generating series.
    """
    if kind not in (SYMMETRIC, EXTERIOR):
        raise InputValidationError(f"Unknown power kind {kind!r}.")
    if n < 0:
        raise InputValidationError(f"Power must be non-negative, got {n}.")
    p = field.characteristic
    if p and p <= n:
        raise CharacteristicError(f"Graded powers of order {n} need characteristic 0 or > {n}, got {p}.")

    # partial[(j, degree)]: dimension using j tensor factors so far
    partial = {(0, 0): 1}
    for degree, dim in P.dims.items():
        symmetric = (degree % 2 == 0) == (kind == SYMMETRIC)
        updated = {}
        for (used, total), count in partial.items():
            for j in range(n - used + 1):
                if symmetric:
                    factor = binomial(dim + j - 1, j)
                else:
                    factor = binomial(dim, j)
                if not factor:
                    break
                key = (used + j, total + j * degree)
                updated[key] = updated.get(key, 0) + count * int(factor)
        partial = updated
    return PoincarePolynomial({total: count for (used, total), count in partial.items() if used == n})


def kunneth_hom(P, n, same_linearization, field=RATIONALS):
    """
    Hom between n-th powers: S^n when the linearizations agree, Lambda^n otherwise.
    """
    return graded_power(P, n, SYMMETRIC if same_linearization else EXTERIOR, field)


@dataclass
class InducedConfiguration:
    signs: dict | None
    edges: dict = field(default_factory=dict)
    vertices: dict = field(default_factory=dict)
    witness: list = field(default_factory=list)

    @property
    def feasible(self):
        return self.signs is not None

    def one_dimensional(self):
        return all(P.total() == 1 for P in self.edges.values())

    def as_dict(self):
        return {
            'feasible': self.feasible,
            'signs': None if self.signs is None else {str(v): s for v, s in self.signs.items()},
            'edges': {f'{u}-{v}': P.as_dict() for (u, v), P in self.edges.items()},
            'vertices': {str(v): P.as_dict() for v, P in self.vertices.items()},
            'witness': [str(v) for v in self.witness],
        }


def induced_tree(graph, n, sphere_degree=None):
    """
    Poincare data of the configuration of n-th powers.

    Linearizations follow sign_assignment; every edge Hom k[-d] becomes
    S^n or Lambda^n of k[-d] accordingly. With ``sphere_degree`` k the
    vertices carry End = S^n(k + k[-k]).
    """
    assignment = sign_assignment(graph)
    if not assignment.feasible:
        return InducedConfiguration(None, witness=assignment.witness)
    signs = assignment.signs
    edges = {}
    for u, v in graph.edges:
        P = PoincarePolynomial.concentrated(graph.edge_degree(u, v))
        edges[(u, v)] = kunneth_hom(P, n, signs[u] == signs[v])
    vertices = {}
    if sphere_degree is not None:
        endomorphisms = PoincarePolynomial({0: 1}) + PoincarePolynomial.concentrated(sphere_degree)
        vertices = {v: kunneth_hom(endomorphisms, n, True) for v in graph.vertices}
    return InducedConfiguration(signs, edges, vertices)
