import logging
from itertools import product

from .algebras import AlgebraError, ValidationReport, add_into
from .spaces import GradedVectorSpace

logger = logging.getLogger(__name__)


class GradedBimodule:
    """
    A graded A-bimodule on a labeled basis.

    ``left`` maps (algebra label, module label) and ``right`` maps
    (module label, algebra label) to combinations of module labels.
    """

    def __init__(self, algebra, basis, left, right, name=''):
        self.algebra = algebra
        self.basis = tuple((str(label), int(degree)) for label, degree in basis)
        self.labels = tuple(label for label, _ in self.basis)
        if len(set(self.labels)) != len(self.labels):
            raise AlgebraError("Bimodule basis labels must be unique.")
        self._degree = dict(self.basis)
        self.left = {key: dict(value) for key, value in left.items() if value}
        self.right = {key: dict(value) for key, value in right.items() if value}
        self.name = name

    @classmethod
    def regular(cls, A):
        """
        A as a bimodule over itself.
        """
        return cls(A, A.basis, A.mult, A.mult, name=f'regular({A.name})')

    def __repr__(self):
        return f"GradedBimodule({self.name or 'unnamed'}, dim={len(self.basis)})"

    @property
    def space(self):
        components = {}
        for label, degree in self.basis:
            components.setdefault(degree, []).append(label)
        return GradedVectorSpace(components)

    def degree(self, label):
        return self._degree[label]

    def degree_part(self, degree):
        return [label for label, d in self.basis if d == degree]

    def shift(self, i):
        """
        M<i> with M<i>^q = M^{q+i}: same actions, every degree lowered by i.
        """
        return GradedBimodule(
            self.algebra,
            [(label, degree - i) for label, degree in self.basis],
            self.left,
            self.right,
            name=f'{self.name}<{i}>',
        )

    def act_left(self, a, m):
        out = {}
        for x, cx in a.items():
            for y, cy in m.items():
                add_into(out, self.left.get((x, y), {}), cx * cy)
        return out

    def act_right(self, m, a):
        out = {}
        for y, cy in m.items():
            for x, cx in a.items():
                add_into(out, self.right.get((y, x), {}), cx * cy)
        return out

    def validate(self):
        A = self.algebra
        report = ValidationReport()
        for (a, m), result in self.left.items():
            expected = A.degree(a) + self.degree(m)
            if any(self.degree(label) != expected for label in A.reduce(result)):
                report.add('left_grading', (a, m))
        for (m, a), result in self.right.items():
            expected = A.degree(a) + self.degree(m)
            if any(self.degree(label) != expected for label in A.reduce(result)):
                report.add('right_grading', (m, a))
        for a, b, m in product(A.labels, A.labels, self.labels):
            lhs = self.act_left({a: 1}, self.act_left({b: 1}, {m: 1}))
            rhs = self.act_left(A.product(a, b), {m: 1})
            if not A.is_zero(add_into(lhs, rhs, -1)):
                report.add('left_associativity', (a, b, m))
            lhs = self.act_right(self.act_right({m: 1}, {a: 1}), {b: 1})
            rhs = self.act_right({m: 1}, A.product(a, b))
            if not A.is_zero(add_into(lhs, rhs, -1)):
                report.add('right_associativity', (m, a, b))
        for a, m, b in product(A.labels, self.labels, A.labels):
            lhs = self.act_right(self.act_left({a: 1}, {m: 1}), {b: 1})
            rhs = self.act_left({a: 1}, self.act_right({m: 1}, {b: 1}))
            if not A.is_zero(add_into(lhs, rhs, -1)):
                report.add('compatibility', (a, m, b))
        unit = dict(A.unit)
        for m in self.labels:
            if not A.is_zero(add_into(self.act_left(unit, {m: 1}), {m: 1}, -1)):
                report.add('left_unit', (m,))
            if not A.is_zero(add_into(self.act_right({m: 1}, unit), {m: 1}, -1)):
                report.add('right_unit', (m,))
        logger.debug("validate %r: %d violations", self, len(report.violations))
        return report

    def block_structure(self, idempotents):
        """
        label -> (s, t) with e_s m e_t = m.
        """
        A = self.algebra
        blocks = {}
        for label in self.labels:
            m = {label: 1}
            lefts = [s for s, e in enumerate(idempotents)
                     if A.is_zero(add_into(self.act_left(e, m), m, -1))]
            rights = [t for t, e in enumerate(idempotents)
                      if A.is_zero(add_into(self.act_right(m, e), m, -1))]
            if len(lefts) != 1 or len(rights) != 1:
                raise AlgebraError(f"Bimodule element {label!r} is not homogeneous for the idempotents.")
            blocks[label] = (lefts[0], rights[0])
        return blocks
