import logging
from fractions import Fraction

from sympy.polys.matrices import DomainMatrix

from formalitykit.exceptions import InputValidationError
from .fields import RATIONALS

logger = logging.getLogger(__name__)


class DimensionMismatch(InputValidationError):
    pass


class NotASubspace(InputValidationError):
    pass


class ExactMatrix:
    """
    A rows x cols matrix with exact entries over a FieldSpec.

    Entries are kept sparse ({(i, j): Fraction}, zeros dropped) and handed to
    sympy's DomainMatrix for elimination.
    """

    def __init__(self, entries, shape, field=RATIONALS):
        rows, cols = shape
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"Negative shape {shape}.")
        self.shape = (rows, cols)
        self.field = field
        self.entries = {}
        for (i, j), value in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"Entry ({i}, {j}) outside shape {shape}.")
            value = Fraction(value)
            if value:
                self.entries[(i, j)] = value
        self._rref = None

    @classmethod
    def from_rows(cls, rows, field=RATIONALS, cols=None):
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionMismatch(f"Row {i} has length {len(row)}, expected {cols}.")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(entries, (len(rows), cols), field)

    @property
    def rows(self):
        return self.shape[0]

    @property
    def cols(self):
        return self.shape[1]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, field={self.field})"

    def _element_rows(self):
        to_element = self.field.element
        dod = {}
        for (i, j), value in self.entries.items():
            element = to_element(value)
            # sparse rows must not store zeros (p | value over F_p)
            if element:
                dod.setdefault(i, {})[j] = element
        return dod

    def to_domain_matrix(self):
        return DomainMatrix(self._element_rows(), self.shape, self.field.domain)

    def to_rows(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            out[i][j] = value
        return out

    def rref(self):
        """
        Reduced row echelon form as (nonzero rows as Fraction tuples, pivot columns).
        """
        if self._rref is None:
            dod = self._element_rows()
            if not dod:
                self._rref = ([], ())
            else:
                reduced, pivots = DomainMatrix(dod, self.shape, self.field.domain).rref()
                to_fraction = self.field.to_fraction
                sparse = reduced.to_sdm()
                basis = []
                for r in range(len(pivots)):
                    row = [Fraction(0)] * self.cols
                    for j, x in sparse.get(r, {}).items():
                        row[j] = to_fraction(x)
                    basis.append(tuple(row))
                self._rref = (basis, tuple(pivots))
                logger.debug("rref %s: rank %d", self, len(pivots))
        return self._rref

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vector = [Fraction(0)] * self.cols
            vector[free] = Fraction(1)
            for row, pivot in zip(reduced, pivots):
                vector[pivot] = -row[free]
            basis.append(tuple(vector))
        return basis

    def matmul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}.")
        by_row = {}
        for (k, j), value in other.entries.items():
            by_row.setdefault(k, []).append((j, value))
        product = {}
        for (i, k), value in self.entries.items():
            for j, other_value in by_row.get(k, ()):
                product[(i, j)] = product.get((i, j), 0) + value * other_value
        if self.field.characteristic:
            reduce = self.field
            product = {key: reduce.to_fraction(reduce.element(v)) for key, v in product.items()}
        return ExactMatrix(product, (self.rows, other.cols), self.field)

    def apply(self, vector):
        if len(vector) != self.cols:
            raise DimensionMismatch(f"Vector of length {len(vector)} against {self.cols} columns.")
        out = [Fraction(0)] * self.rows
        for (i, j), value in self.entries.items():
            out[i] += value * vector[j]
        return tuple(out)

    def is_zero(self):
        if not self.field.characteristic:
            return not self.entries
        return all(self.field.to_fraction(self.field.element(v)) == 0 for v in self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape or self.field != other.field:
            return False
        difference = dict(self.entries)
        for key, value in other.entries.items():
            difference[key] = difference.get(key, 0) - value
        return ExactMatrix(difference, self.shape, self.field).is_zero()

    __hash__ = None


def rank(M):
    return M.rank()


def kernel_basis(M):
    """
    Basis of {v : Mv = 0}; cols - rank(M) vectors.
    """
    return M.kernel_basis()


def _ambient(vectors, ambient):
    for v in vectors:
        if ambient is None:
            ambient = len(v)
        elif len(v) != ambient:
            raise DimensionMismatch(f"Vector of length {len(v)} in a space of dimension {ambient}.")
    return ambient or 0


def row_basis(vectors, field=RATIONALS, ambient=None):
    """
    Echelon basis of span(vectors). Equal spans give equal bases.
    """
    vectors = list(vectors)
    ambient = _ambient(vectors, ambient)
    if not vectors:
        return []
    return ExactMatrix.from_rows(vectors, field, cols=ambient).rref()[0]


def span_dim(vectors, field=RATIONALS, ambient=None):
    return len(row_basis(vectors, field, ambient))


def subspace_sum(U, W, field=RATIONALS, ambient=None):
    U, W = list(U), list(W)
    ambient = _ambient(U + W, ambient)
    return row_basis(U + W, field, ambient)


def subspace_meet(U, W, field=RATIONALS, ambient=None):
    """
    Basis of span(U) ∩ span(W).

    Solves sum x_i u_i = sum y_j w_j over echelon bases of both spans; the
    x-part of each kernel vector gives one intersection vector.
    """
    U, W = list(U), list(W)
    ambient = _ambient(U + W, ambient)
    U = row_basis(U, field, ambient)
    W = row_basis(W, field, ambient)
    if not U or not W:
        return []
    a = len(U)
    entries = {}
    for i, u in enumerate(U):
        for r, value in enumerate(u):
            if value:
                entries[(r, i)] = value
    for j, w in enumerate(W):
        for r, value in enumerate(w):
            if value:
                entries[(r, a + j)] = -value
    system = ExactMatrix(entries, (ambient, a + len(W)), field)
    meet = []
    for solution in system.kernel_basis():
        vector = [Fraction(0)] * ambient
        for i, u in enumerate(U):
            coefficient = solution[i]
            if coefficient:
                for r, value in enumerate(u):
                    vector[r] += coefficient * value
        meet.append(tuple(vector))
    return row_basis(meet, field, ambient)


def contains(U, W, field=RATIONALS, ambient=None):
    """
    True iff span(W) ⊆ span(U).
    """
    U, W = list(U), list(W)
    ambient = _ambient(U + W, ambient)
    return span_dim(U + W, field, ambient) == span_dim(U, field, ambient)


def quotient_dim(U, W, field=RATIONALS, ambient=None):
    """
    dim span(U) - dim span(W), refusing when span(W) is not inside span(U).
    """
    U, W = list(U), list(W)
    ambient = _ambient(U + W, ambient)
    dim_u = span_dim(U, field, ambient)
    if span_dim(U + W, field, ambient) != dim_u:
        raise NotASubspace("The second span is not contained in the first.")
    return dim_u - span_dim(W, field, ambient)
