import logging
from dataclasses import dataclass
from fractions import Fraction

from exact_linalg.fields import RATIONALS
from formalitykit.exceptions import InputValidationError, ResourceLimitExceeded
from graded_algebra.algebras import ORTHOGONAL, PRESETS, ZIGZAG, arrow_labeler

logger = logging.getLogger(__name__)

DEFAULT_MAX_TRUNCATION = 200


class PresentationError(InputValidationError):
    pass


class TruncationError(InputValidationError):
    pass


@dataclass(frozen=True)
class Generator:
    label: str
    src: int
    tgt: int
    deg: int


class TensorPresentation:
    """
    T(V)/I over R = k^m, kept up to the truncation degree D.

    Words are read in path order: (v_1, v_2) is composable when
    tgt(v_1) = src(v_2). Word spaces are stored per block (s, t), so a word
    in block (s, t) starts at s and ends at t; the empty word of block
    (v, v) is the idempotent e_v.
    """

    def __init__(self, vertices, generators, relations, truncation, field=RATIONALS,
                 max_truncation=DEFAULT_MAX_TRUNCATION, name=''):
        if vertices < 1:
            raise PresentationError(f"A presentation needs at least one vertex, got {vertices}.")
        if truncation < 0:
            raise PresentationError(f"Truncation degree must be non-negative, got {truncation}.")
        if truncation > max_truncation:
            raise ResourceLimitExceeded(
                f"Truncation degree {truncation} exceeds the cap {max_truncation}."
            )
        self.vertices = vertices
        self.truncation = truncation
        self.field = field
        self.name = name
        self.generators = tuple(g if isinstance(g, Generator) else Generator(*g) for g in generators)
        if not self.generators:
            raise PresentationError("A presentation needs at least one generator.")
        self.by_label = {}
        for g in self.generators:
            if g.label in self.by_label:
                raise PresentationError(f"Generator label {g.label!r} is repeated.")
            if not (0 <= g.src < vertices and 0 <= g.tgt < vertices):
                raise PresentationError(f"Generator {g.label!r} joins vertices outside 0..{vertices - 1}.")
            if g.deg < 1:
                raise PresentationError(f"Generator {g.label!r} needs a positive degree, got {g.deg}.")
            self.by_label[g.label] = g
        self.relations = tuple(self._check_relation(i, r) for i, r in enumerate(relations))
        self._words = {}
        self._index = {}

    def __repr__(self):
        return f"<TensorPresentation {self.name or 'unnamed'}: m={self.vertices} D={self.truncation}>"

    def _check_relation(self, i, relation):
        terms = {}
        for word, coeff in relation:
            word = tuple(str(letter) for letter in word)
            if not word:
                raise PresentationError(f"Relation {i} contains the empty word; relations live in J.")
            unknown = [letter for letter in word if letter not in self.by_label]
            if unknown:
                raise PresentationError(f"Relation {i} uses unknown generators {unknown}.")
            terms[word] = terms.get(word, 0) + Fraction(coeff)
        terms = {word: c for word, c in terms.items() if c}
        if not terms:
            raise PresentationError(f"Relation {i} is zero.")
        shapes = set()
        for word in terms:
            if not self.composable(word):
                raise PresentationError(f"Relation {i}: word {list(word)} is not composable.")
            shapes.add((self.word_degree(word),) + self.word_block(word))
        if len(shapes) != 1:
            raise PresentationError(f"Relation {i} is not homogeneous or mixes blocks: {sorted(shapes)}.")
        (degree, _, _), = shapes
        lowest = 2 * self.min_generator_degree
        if degree < lowest:
            raise PresentationError(
                f"Relation {i} has degree {degree}; relations must lie in J^2 (degree >= {lowest})."
            )
        return terms

    def composable(self, word):
        return all(self.by_label[a].tgt == self.by_label[b].src for a, b in zip(word, word[1:]))

    def word_degree(self, word):
        return sum(self.by_label[letter].deg for letter in word)

    def word_block(self, word):
        return self.by_label[word[0]].src, self.by_label[word[-1]].tgt

    @property
    def min_generator_degree(self):
        return min(g.deg for g in self.generators)

    @property
    def max_generator_degree(self):
        return max(g.deg for g in self.generators)

    @property
    def max_relation_degree(self):
        if not self.relations:
            return 0
        return max(self.word_degree(next(iter(r))) for r in self.relations)

    def blocks(self):
        return [(s, t) for s in range(self.vertices) for t in range(self.vertices)]

    def check_degree(self, d):
        if d < 0 or d > self.truncation:
            raise TruncationError(f"Degree {d} lies outside 0..{self.truncation}; increase truncation.")

    def block_words(self, d, s, t):
        """
        Composable words of degree d from s to t, in a fixed order.
        """
        self.check_degree(d)
        if d not in self._words:
            table = {}
            if d == 0:
                for v in range(self.vertices):
                    table[(v, v)] = [()]
            else:
                for g in self.generators:
                    if g.deg > d:
                        continue
                    for (s0, t0), words in self._by_block(d - g.deg).items():
                        if t0 == g.src:
                            table.setdefault((s0, g.tgt), []).extend(word + (g.label,) for word in words)
            self._words[d] = {block: tuple(sorted(words)) for block, words in table.items()}
            logger.debug("T(V)_%d: %d words", d, sum(len(w) for w in self._words[d].values()))
        return self._words[d].get((s, t), ())

    def _by_block(self, d):
        self.block_words(d, 0, 0)
        return self._words[d]

    def word_index(self, d, s, t):
        key = (d, s, t)
        if key not in self._index:
            self._index[key] = {word: i for i, word in enumerate(self.block_words(d, s, t))}
        return self._index[key]

    def relation_vectors(self):
        """
        Relations as ((d, s, t), coordinate vector) pairs; those above D are dropped.
        """
        out = []
        for relation in self.relations:
            word = next(iter(relation))
            d = self.word_degree(word)
            if d > self.truncation:
                continue
            s, t = self.word_block(word)
            index = self.word_index(d, s, t)
            vector = [Fraction(0)] * len(index)
            for w, c in relation.items():
                vector[index[w]] += c
            out.append(((d, s, t), tuple(vector)))
        return out


def word_basis(pres, d):
    """
    Every composable word of degree d, grouped by block; d = 0 gives the idempotents.
    """
    pres.check_degree(d)
    out = []
    for s, t in pres.blocks():
        for word in pres.block_words(d, s, t):
            out.append(word if word else (f'e{s}',))
    return out


def configuration_presentation(graph, n, k, h, preset=ORTHOGONAL, truncation=None, field=RATIONALS,
                               max_truncation=DEFAULT_MAX_TRUNCATION):
    """
    Tensor presentation of build_configuration_algebra(graph, n, k, h, preset).

    Generators t_i (loop at i, degree k) and a_ij (i -> j, degree h) carry
    the algebra's labels. Path order reverses composition: the word
    (a_ij, a_ji) is the product a_ji a_ij.
    """
    if preset not in PRESETS:
        raise PresentationError(f"Unknown preset {preset!r}; expected one of {PRESETS}.")
    if n < 1 or k < 1 or h < 1:
        raise PresentationError(f"Configuration presentations need positive n, k, h; got ({n}, {k}, {h}).")
    power = None
    if preset == ZIGZAG:
        if (2 * h) % k or 2 * h // k != n:
            raise PresentationError(f"Zigzag preset needs 2h/k = n; got n={n} k={k} h={h}.")
        power = n
        if power < 2:
            raise PresentationError("Zigzag preset with 2h/k = 1 makes t_i decomposable; no presentation in J^2.")
    vertices = list(graph.vertices)
    position = {v: i for i, v in enumerate(vertices)}
    arrow = arrow_labeler(vertices)
    generators = [Generator(f't{v}', position[v], position[v], k) for v in vertices]
    arrows = []
    for u, v in graph.edges:
        for i, j in ((u, v), (v, u)):
            arrows.append((i, j))
            generators.append(Generator(arrow(i, j), position[i], position[j], h))

    relations = [[((f't{v}',) * (n + 1), 1)] for v in vertices]
    for i, j in arrows:
        relations.append([((f't{i}', arrow(i, j)), 1)])
        relations.append([((arrow(i, j), f't{j}'), 1)])
        for j2, l in arrows:
            if j2 != j:
                continue
            word = (arrow(i, j), arrow(j, l))
            if l == i and preset == ZIGZAG:
                relations.append([(word, 1), ((f't{i}',) * power, -1)])
            else:
                relations.append([(word, 1)])
    if truncation is None:
        truncation = (n + 1) * max(k, h)
    return TensorPresentation(
        len(vertices), generators, relations, truncation, field, max_truncation,
        name=f'{preset} configuration, n={n} k={k} h={h}',
    )
