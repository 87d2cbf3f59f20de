import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from types import MappingProxyType

from exact_linalg.fields import RATIONALS
from exact_linalg.matrix import ExactMatrix, span_dim
from formalitykit.exceptions import InputValidationError
from .spaces import GradedVectorSpace

logger = logging.getLogger(__name__)

ORTHOGONAL = 'orthogonal'
ZIGZAG = 'zigzag'
PRESETS = (ORTHOGONAL, ZIGZAG)
# assumed by both presets
PRESET_ASSUMPTION = 'a_ij t_i = t_j a_ij = 0 for every arrow'


class AlgebraError(InputValidationError):
    pass


def combination(items=None, **kwargs):
    """
    Normalize a linear combination {label: coefficient}, dropping zeros.
    """
    out = {}
    for label, coefficient in dict(items or {}, **kwargs).items():
        coefficient = Fraction(coefficient)
        if coefficient:
            out[label] = coefficient
    return out


def add_into(target, combo, scale=1):
    for label, coefficient in combo.items():
        value = target.get(label, 0) + scale * coefficient
        if value:
            target[label] = value
        else:
            target.pop(label, None)
    return target


class GradedAlgebra:
    """
    Finite-dimensional graded algebra given by structure constants.

    ``mult`` maps a pair of basis labels to the linear combination of their
    product; absent pairs multiply to zero. ``idempotents``, when present,
    are the orthogonal idempotents e_1..e_m decomposing the unit.
    """

    def __init__(self, basis, mult, unit, idempotents=None, field=RATIONALS, name=''):
        self.basis = tuple((str(label), int(degree)) for label, degree in basis)
        self.labels = tuple(label for label, _ in self.basis)
        if len(set(self.labels)) != len(self.labels):
            raise AlgebraError("Basis labels must be unique.")
        self._degree = {label: degree for label, degree in self.basis}
        self.index = {label: i for i, label in enumerate(self.labels)}
        table = {}
        for (left, right), result in mult.items():
            for label in (left, right, *result):
                if label not in self._degree:
                    raise AlgebraError(f"Unknown basis label {label!r} in multiplication table.")
            result = combination(result)
            if result:
                table[(left, right)] = MappingProxyType(result)
        self.mult = MappingProxyType(table)
        self.unit = MappingProxyType(self._known(combination(unit), 'unit'))
        if idempotents is not None:
            idempotents = tuple(MappingProxyType(self._known(combination(e), 'idempotent')) for e in idempotents)
        self.idempotents = idempotents
        self.field = field
        self.name = name

    def _known(self, combo, what):
        for label in combo:
            if label not in self._degree:
                raise AlgebraError(f"Unknown basis label {label!r} in {what}.")
        return combo

    def __repr__(self):
        return f"GradedAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    @property
    def dim(self):
        return len(self.basis)

    def degree(self, label):
        return self._degree[label]

    def degree_part(self, degree):
        return [label for label, d in self.basis if d == degree]

    def support(self):
        return tuple(sorted({d for _, d in self.basis}))

    def as_space(self):
        components = {}
        for label, degree in self.basis:
            components.setdefault(degree, []).append(label)
        return GradedVectorSpace(components)

    def augmentation_ideal(self):
        """
        A^+ as a graded space: the positive-degree part.
        """
        return GradedVectorSpace(
            {d: labels for d, labels in self.as_space().components.items() if d > 0}
        )

    def product(self, left, right):
        return self.mult.get((left, right), {})

    def multiply(self, x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                add_into(out, self.product(a, b), ca * cb)
        return out

    def reduce(self, combo):
        """
        Image of a combination in the ground field (drops multiples of p).
        """
        if not self.field.characteristic:
            return {label: c for label, c in combo.items() if c}
        out = {}
        for label, c in combo.items():
            value = self.field.to_fraction(self.field.element(c))
            if value:
                out[label] = value
        return out

    def is_zero(self, combo):
        return not self.reduce(combo)


@dataclass
class Violation:
    kind: str
    elements: tuple
    detail: str = ''


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def add(self, kind, elements, detail=''):
        self.violations.append(Violation(kind, tuple(elements), detail))

    def kinds(self):
        return {v.kind for v in self.violations}

    def as_dict(self):
        return {
            'passed': self.passed,
            'violations': [
                {'kind': v.kind, 'elements': list(v.elements), 'detail': v.detail}
                for v in self.violations
            ],
        }


def validate(A):
    """
    Check grading, associativity, unit laws and (when present) the
    idempotent decomposition. Every failure becomes a report entry.
    """
    report = ValidationReport()
    labels = A.labels

    for (left, right), result in A.mult.items():
        expected = A.degree(left) + A.degree(right)
        wrong = sorted(label for label in A.reduce(result) if A.degree(label) != expected)
        if wrong:
            report.add('grading', (left, right), f"product has terms {wrong} outside degree {expected}")

    for x, y, z in product(labels, repeat=3):
        left = A.multiply(A.product(x, y), {z: 1})
        right = A.multiply({x: 1}, A.product(y, z))
        if not A.is_zero(add_into(dict(left), right, -1)):
            report.add('associativity', (x, y, z))

    unit = dict(A.unit)
    for b in labels:
        if not A.is_zero(add_into(A.multiply(unit, {b: 1}), {b: 1}, -1)):
            report.add('left_unit', (b,))
        if not A.is_zero(add_into(A.multiply({b: 1}, unit), {b: 1}, -1)):
            report.add('right_unit', (b,))

    if A.idempotents is not None:
        _check_idempotents(A, report)

    logger.debug("validate %r: %d violations", A, len(report.violations))
    return report


def _check_idempotents(A, report):
    idempotents = [dict(e) for e in A.idempotents]
    total = {}
    for i, e in enumerate(idempotents):
        add_into(total, e)
        for j, f in enumerate(idempotents):
            expected = e if i == j else {}
            if not A.is_zero(add_into(A.multiply(e, f), expected, -1)):
                report.add('idempotent', (i, j), 'e_i e_j != delta_ij e_i')
    if not A.is_zero(add_into(total, dict(A.unit), -1)):
        report.add('idempotent_sum', (), 'idempotents do not sum to the unit')
    degree_zero = A.degree_part(0)
    if any(A.degree(label) != 0 for e in idempotents for label in e):
        report.add('idempotent_degree', (), 'idempotents must live in degree 0')
        return
    vectors = [[e.get(label, 0) for label in degree_zero] for e in idempotents]
    if span_dim(vectors, A.field, len(degree_zero)) != len(degree_zero):
        report.add('idempotent_span', (), 'idempotents do not span A^0')


def require_valid(A):
    report = validate(A)
    if not report.passed:
        first = report.violations[0]
        raise AlgebraError(
            f"Algebra {A.name or ''} fails validation ({len(report.violations)} violations), "
            f"first: {first.kind} at {first.elements} {first.detail}".strip()
        )
    return A


def truncated_poly(n, k, field=RATIONALS):
    """
    k[t]/t^{n+1} with deg t = k.
    """
    if n < 1:
        raise AlgebraError(f"truncated_poly needs n >= 1, got {n}.")
    if k == 0:
        raise AlgebraError("truncated_poly needs a nonzero generator degree.")

    def power(j):
        return '1' if j == 0 else ('t' if j == 1 else f't^{j}')

    basis = [(power(j), j * k) for j in range(n + 1)]
    mult = {
        (power(a), power(b)): {power(a + b): 1}
        for a in range(n + 1)
        for b in range(n + 1)
        if a + b <= n
    }
    return GradedAlgebra(basis, mult, {'1': 1}, None, field, name=f'k[t]/t^{n + 1}, deg t={k}')


def square_zero(degree=1, field=RATIONALS):
    """
    k + k[-degree]: a unit and one generator x with x^2 = 0.
    """
    mult = {('1', '1'): {'1': 1}, ('1', 'x'): {'x': 1}, ('x', '1'): {'x': 1}}
    return GradedAlgebra([('1', 0), ('x', degree)], mult, {'1': 1}, None, field,
                         name=f'square-zero, deg x={degree}')


def detect_idempotents(A):
    """
    The orthogonal idempotents decomposing the unit, as combinations.

    Declared idempotents win; otherwise a one-dimensional A^0 makes the unit
    the only idempotent.
    """
    if A.idempotents is not None:
        return [dict(e) for e in A.idempotents]
    degree_zero = A.degree_part(0)
    if len(degree_zero) == 1 and set(A.unit) == set(degree_zero):
        return [dict(A.unit)]
    raise AlgebraError(
        f"Cannot detect a split separable base: A^0 has dimension {len(degree_zero)} "
        "and no idempotents are declared."
    )


def block_structure(A, idempotents=None):
    """
    label -> (s, t) with e_s b e_t = b, for every basis element b.
    """
    idempotents = detect_idempotents(A) if idempotents is None else idempotents
    blocks = {}
    for label in A.labels:
        b = {label: 1}
        lefts = [s for s, e in enumerate(idempotents) if A.is_zero(add_into(A.multiply(e, b), b, -1))]
        rights = [t for t, e in enumerate(idempotents) if A.is_zero(add_into(A.multiply(b, e), b, -1))]
        if len(lefts) != 1 or len(rights) != 1:
            raise AlgebraError(f"Basis element {label!r} is not homogeneous for the idempotent decomposition.")
        blocks[label] = (lefts[0], rights[0])
    return blocks


def center_basis(A, degree):
    """
    Basis of the degree part of the center, by solving [z, b] = 0 directly.
    """
    unknowns = A.degree_part(degree)
    if not unknowns:
        return []
    rows = {}
    for b in A.labels:
        for j, z in enumerate(unknowns):
            commutator = add_into(dict(A.product(z, b)), A.product(b, z), -1)
            for label, c in commutator.items():
                row = rows.setdefault((b, label), {})
                row[j] = row.get(j, 0) + c
    entries = {}
    for i, row in enumerate(rows.values()):
        for j, c in row.items():
            entries[(i, j)] = c
    system = ExactMatrix(entries, (len(rows), len(unknowns)), A.field)
    return [combination(zip(unknowns, vector)) for vector in system.kernel_basis()]


def arrow_labeler(vertices):
    names = [str(v) for v in vertices]
    compact = all(len(name) == 1 for name in names)
    return lambda u, v: f'a{u}{v}' if compact else f'a{u}_{v}'


def build_configuration_algebra(graph, n, k, h, preset=ORTHOGONAL, field=RATIONALS):
    """
    Endomorphism algebra of a graph configuration of P^n[k]-like objects.

    Basis: e_i, t_i^l (1 <= l <= n, deg lk) and a_ij for both orientations of
    every edge (deg h). Products are compositions: a_ij is a map P_i -> P_j,
    so a_ij lies in e_j A e_i and a_ji a_ij is an endomorphism of P_i.
    Under both presets a_ij t_i = t_j a_ij = 0; the zigzag preset sets
    a_ji a_ij = t_i^{2h/k} and kills every other product of arrows.
    """
    if preset not in PRESETS:
        raise AlgebraError(f"Unknown preset {preset!r}; expected one of {PRESETS}.")
    if n < 1 or k < 1 or h < 1:
        raise AlgebraError(f"Configuration algebras need positive n, k, h; got ({n}, {k}, {h}).")
    zigzag_power = None
    if preset == ZIGZAG:
        if (2 * h) % k:
            raise AlgebraError(f"Zigzag preset infeasible: k={k} does not divide 2h={2 * h}.")
        zigzag_power = 2 * h // k
        if zigzag_power > n:
            raise AlgebraError(f"Zigzag preset infeasible: 2h/k={zigzag_power} exceeds n={n}.")

    arrow = arrow_labeler(graph.vertices)

    def power(i, l):
        return f'e{i}' if l == 0 else (f't{i}' if l == 1 else f't{i}^{l}')

    basis = []
    blocks = {}
    for i in graph.vertices:
        for l in range(n + 1):
            basis.append((power(i, l), l * k))
            blocks[power(i, l)] = (i, i)
    for u, v in graph.edges:
        for i, j in ((u, v), (v, u)):
            basis.append((arrow(i, j), h))
            blocks[arrow(i, j)] = (j, i)

    mult = {}
    for x, (xl, xr) in blocks.items():
        mult[(f'e{xl}', x)] = {x: 1}
        mult[(x, f'e{xr}')] = {x: 1}
    for i in graph.vertices:
        for a in range(1, n + 1):
            for b in range(1, n + 1 - a):
                mult[(power(i, a), power(i, b))] = {power(i, a + b): 1}
    if preset == ZIGZAG:
        for u, v in graph.edges:
            for i, j in ((u, v), (v, u)):
                mult[(arrow(j, i), arrow(i, j))] = {power(i, zigzag_power): 1}

    idempotents = [{f'e{i}': 1} for i in graph.vertices]
    unit = {f'e{i}': 1 for i in graph.vertices}
    A = GradedAlgebra(basis, mult, unit, idempotents, field,
                      name=f'{preset} configuration, n={n} k={k} h={h}')
    logger.debug("built %r on %d vertices", A, len(graph.vertices))
    return require_valid(A)
