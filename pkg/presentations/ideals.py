import logging
from fractions import Fraction

from exact_linalg.matrix import contains, row_basis, subspace_meet, subspace_sum
from .tensor import PresentationError

logger = logging.getLogger(__name__)


def _unit_vectors(size):
    return tuple(tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size))


def multiply(pres, x, x_key, y, y_key):
    """
    Concatenate two block vectors: x in (a, s, m) times y in (b, m, t).
    """
    (a, s, m), (b, m2, t) = x_key, y_key
    if m != m2:
        raise PresentationError(f"Blocks {x_key} and {y_key} do not compose.")
    left, right = pres.block_words(a, s, m), pres.block_words(b, m, t)
    index = pres.word_index(a + b, s, t)
    out = [Fraction(0)] * len(index)
    for i, c in enumerate(x):
        if not c:
            continue
        for j, d in enumerate(y):
            if d:
                out[index[left[i] + right[j]]] += c * d
    return tuple(out), (a + b, s, t)


class HomogeneousIdeal:
    """
    Graded subspace of T(V) up to the truncation degree.

    ``components`` maps (d, s, t) to an echelon basis inside the word space
    of block (s, t) in degree d; equal subspaces have equal components.
    """

    def __init__(self, pres, components, name=''):
        self.pres = pres
        self.name = name
        self.components = {}
        for (d, s, t), rows in components.items():
            size = len(pres.block_words(d, s, t))
            basis = row_basis(rows, pres.field, size) if rows else []
            if basis:
                self.components[(d, s, t)] = tuple(basis)

    def __repr__(self):
        return f"<HomogeneousIdeal {self.name or 'unnamed'} dims={self.dims()}>"

    def __eq__(self, other):
        if not isinstance(other, HomogeneousIdeal):
            return NotImplemented
        return self.pres is other.pres and self.components == other.components

    __hash__ = None

    def part(self, d, s, t):
        return self.components.get((d, s, t), ())

    def dims(self):
        out = {}
        for (d, _, _), rows in self.components.items():
            out[d] = out.get(d, 0) + len(rows)
        return dict(sorted(out.items()))

    def dim(self, d):
        return self.dims().get(d, 0)

    def mindeg(self):
        """
        Lowest degree with a nonzero part, or None for the zero ideal.
        """
        return min((d for d, _, _ in self.components), default=None)

    def contains(self, other):
        pres = self.pres
        for key, rows in other.components.items():
            size = len(pres.block_words(*key))
            if not contains(self.part(*key), rows, pres.field, size):
                return False
        return True

    def contains_word(self, word):
        pres = self.pres
        d = pres.word_degree(word)
        s, t = pres.word_block(word)
        index = pres.word_index(d, s, t)
        vector = [Fraction(0)] * len(index)
        vector[index[tuple(word)]] = Fraction(1)
        return contains(self.part(d, s, t), [vector], pres.field, len(index))

    def is_closed(self):
        """
        True iff generator multiples of every basis vector stay inside, below D.
        """
        pres = self.pres
        for (d, s, t), rows in self.components.items():
            for g in pres.generators:
                if d + g.deg > pres.truncation:
                    continue
                gv = _generator_vector(pres, g)
                for row in rows:
                    images = []
                    if g.tgt == s:
                        images.append(multiply(pres, gv, (g.deg, g.src, s), row, (d, s, t)))
                    if g.src == t:
                        images.append(multiply(pres, row, (d, s, t), gv, (g.deg, t, g.tgt)))
                    for vector, key in images:
                        if not contains(self.part(*key), [vector], pres.field, len(vector)):
                            return False
        return True


def _generator_vector(pres, g):
    index = pres.word_index(g.deg, g.src, g.tgt)
    vector = [Fraction(0)] * len(index)
    vector[index[(g.label,)]] = Fraction(1)
    return tuple(vector)


def generated_ideal(pres, seeds=None, name='I'):
    """
    Two-sided ideal generated by ((d, s, t), vector) seeds, the relations by default.

    Built degree by degree: the part in degree d is spanned by the seeds of
    degree d and by v x, x v for generators v and parts of lower degree.
    """
    seeds = pres.relation_vectors() if seeds is None else seeds
    by_key = {}
    for key, vector in seeds:
        if key[0] <= pres.truncation:
            by_key.setdefault(key, []).append(vector)
    gens = [(g, _generator_vector(pres, g)) for g in pres.generators]
    components = {}
    for d in range(pres.truncation + 1):
        for s, t in pres.blocks():
            size = len(pres.block_words(d, s, t))
            if not size:
                continue
            vectors = list(by_key.get((d, s, t), ()))
            for g, gv in gens:
                e = d - g.deg
                if e < 0:
                    continue
                if g.src == s:
                    for row in components.get((e, g.tgt, t), ()):
                        vectors.append(multiply(pres, gv, (g.deg, s, g.tgt), row, (e, g.tgt, t))[0])
                if g.tgt == t:
                    for row in components.get((e, s, g.src), ()):
                        vectors.append(multiply(pres, row, (e, s, g.src), gv, (g.deg, g.src, t))[0])
            if vectors:
                basis = row_basis(vectors, pres.field, size)
                if basis:
                    components[(d, s, t)] = basis
    ideal = HomogeneousIdeal(pres, components, name)
    logger.debug("generated %r", ideal)
    return ideal


def augmentation_ideal(pres):
    """
    J = T(V)^+: every word of positive degree.
    """
    components = {}
    for d in range(1, pres.truncation + 1):
        for s, t in pres.blocks():
            size = len(pres.block_words(d, s, t))
            if size:
                components[(d, s, t)] = _unit_vectors(size)
    return HomogeneousIdeal(pres, components, 'J')


def unit_ideal(pres):
    components = {(0, v, v): _unit_vectors(1) for v in range(pres.vertices)}
    components.update(augmentation_ideal(pres).components)
    return HomogeneousIdeal(pres, components, 'T(V)')


def product(first, second):
    """
    first * second, spanned by products of basis vectors of complementary degrees.
    """
    pres = first.pres
    if second.pres is not pres:
        raise PresentationError("Ideals from different presentations.")
    collected = {}
    for (a, s, m), left_rows in first.components.items():
        for (b, m2, t), right_rows in second.components.items():
            if m != m2 or a + b > pres.truncation:
                continue
            for x in left_rows:
                for y in right_rows:
                    vector, key = multiply(pres, x, (a, s, m), y, (b, m, t))
                    if any(vector):
                        collected.setdefault(key, []).append(vector)
    result = HomogeneousIdeal(pres, collected, f'{first.name}{second.name}')
    logger.debug("product %r", result)
    return result


def ideal_sum(first, second):
    pres = first.pres
    keys = set(first.components) | set(second.components)
    return HomogeneousIdeal(pres, {
        key: subspace_sum(first.part(*key), second.part(*key), pres.field, len(pres.block_words(*key)))
        for key in keys
    }, f'({first.name}+{second.name})')


def meet(first, second):
    pres = first.pres
    keys = set(first.components) & set(second.components)
    return HomogeneousIdeal(pres, {
        key: subspace_meet(first.part(*key), second.part(*key), pres.field, len(pres.block_words(*key)))
        for key in keys
    }, f'({first.name}&{second.name})')


def power(ideal, p):
    if p < 0:
        raise PresentationError(f"Ideal powers need p >= 0, got {p}.")
    if p == 0:
        return unit_ideal(ideal.pres)
    result = ideal
    for _ in range(p - 1):
        result = product(result, ideal)
    return result
