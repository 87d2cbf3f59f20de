import logging
from dataclasses import dataclass, field

from exact_linalg.matrix import ExactMatrix, span_dim
from formalitykit.exceptions import ComplexError, InputValidationError, ResourceLimitExceeded
from graded_algebra.algebras import AlgebraError, block_structure, detect_idempotents, validate
from graded_algebra.bimodules import GradedBimodule

logger = logging.getLogger(__name__)

RELATIVE = 'relative_normalized'
ABSOLUTE = 'absolute'
MODES = (RELATIVE, ABSOLUTE)

DEFAULT_MAX_WORDS = 2_000_000


@dataclass
class BarComplexSlice:
    """
    Cochains of bidegree (p, q) and the coboundary into (p + 1, q).

    ``basis`` lists (word, module label) pairs; a word is
    (start vertex, letters). ``coboundary`` has one column per basis entry.
    """

    p: int
    q: int
    words: list
    basis: list
    target_basis: list
    coboundary: ExactMatrix

    @property
    def dim(self):
        return len(self.basis)


@dataclass
class HHResult:
    p: int
    q: int
    dim: int
    mode: str
    slice_dims: list
    cocycles: list = field(default_factory=list)

    def as_dict(self):
        return {'p': self.p, 'q': self.q, 'dim': self.dim, 'mode': self.mode, 'slice_dims': self.slice_dims}


class _BarEngine:
    """
    Degree-filtered cochain complex Hom_{R^e}(Abar^{(x)_R p}, M) of one internal degree.

    In relative mode the letters are the positive-degree basis elements and
    R is spanned by the idempotents; in absolute mode R is the ground field
    and every basis element is a letter.
    """

    def __init__(self, A, M, q, mode, max_words):
        if mode not in MODES:
            raise InputValidationError(f"Unknown mode {mode!r}; expected one of {MODES}.")
        report = validate(A)
        if not report.passed:
            first = report.violations[0]
            raise AlgebraError(f"Algebra fails validation: {first.kind} at {first.elements}.")
        self.A, self.M, self.q, self.mode, self.max_words = A, M, q, mode, max_words
        if mode == RELATIVE:
            if any(A.degree(label) < 0 for label in A.labels):
                raise AlgebraError("Relative mode needs A concentrated in non-negative degrees.")
            idempotents = detect_idempotents(A)
            if span_dim(
                [[e.get(label, 0) for label in A.degree_part(0)] for e in idempotents],
                A.field, len(A.degree_part(0)),
            ) != len(A.degree_part(0)):
                raise AlgebraError("Relative mode needs A^0 spanned by the idempotents.")
            self.blocks = block_structure(A, idempotents)
            self.module_blocks = M.block_structure(idempotents)
            self.letters = [label for label in A.labels if A.degree(label) > 0]
            self.vertices = list(range(len(idempotents)))
        else:
            self.blocks = {label: (0, 0) for label in A.labels}
            self.module_blocks = {label: (0, 0) for label in M.labels}
            self.letters = list(A.labels)
            self.vertices = [0]
        self.targets = {}
        for label in M.labels:
            left, right = self.module_blocks[label]
            self.targets.setdefault((left, right, M.degree(label)), []).append(label)
        self.word_degrees = {M.degree(label) - q for label in M.labels}
        self._words = {}

    def left(self, letter):
        return self.blocks[letter][0]

    def right(self, letter):
        return self.blocks[letter][1]

    def word_right(self, word):
        start, letters = word
        return self.right(letters[-1]) if letters else start

    def word_degree(self, word):
        return sum(self.A.degree(letter) for letter in word[1])

    def words(self, p):
        """
        Composable words of length p whose degree can meet a module target.
        """
        if p in self._words:
            return self._words[p]
        out = []
        if not self.word_degrees:
            self._words[p] = out
            return out
        low, high = min(self.word_degrees), max(self.word_degrees)
        if p == 0:
            out = [(v, ()) for v in self.vertices] if 0 in self.word_degrees else []
            self._words[p] = out
            return out
        degrees = [self.A.degree(letter) for letter in self.letters]
        if not degrees:
            self._words[p] = out
            return out
        dmin, dmax = min(degrees), max(degrees)
        by_left = {}
        for letter in self.letters:
            by_left.setdefault(self.left(letter), []).append(letter)

        def extend(prefix, degree, vertex):
            remaining = p - len(prefix)
            if remaining == 0:
                if degree in self.word_degrees:
                    out.append((self.left(prefix[0]), tuple(prefix)))
                    if len(out) > self.max_words:
                        raise ResourceLimitExceeded(
                            f"Bar slice p={p} q={self.q} exceeds {self.max_words} words."
                        )
                return
            if degree + remaining * dmin > high or degree + remaining * dmax < low:
                return
            candidates = self.letters if vertex is None else by_left.get(vertex, ())
            for letter in candidates:
                prefix.append(letter)
                extend(prefix, degree + self.A.degree(letter), self.right(letter))
                prefix.pop()

        extend([], 0, None)
        self._words[p] = out
        logger.debug("bar words p=%d q=%d: %d", p, self.q, len(out))
        return out

    def cochain_basis(self, p):
        basis = []
        for word in self.words(p):
            key = (word[0], self.word_right(word), self.word_degree(word) + self.q)
            for label in self.targets.get(key, ()):
                basis.append((word, label))
        return basis

    def coboundary(self, p, source=None, target=None):
        """
        Matrix of delta: C^p -> C^{p+1}.

        (delta f)(a_1..a_{p+1}) = a_1 f(a_2..) + sum_i (-1)^i f(..a_i a_{i+1}..)
        + (-1)^{p+1} f(a_1..a_p) a_{p+1}
        """
        A, M = self.A, self.M
        source = self.cochain_basis(p) if source is None else source
        target = self.cochain_basis(p + 1) if target is None else target
        columns = {entry: j for j, entry in enumerate(source)}
        rows = {entry: i for i, entry in enumerate(target)}
        by_word = {}
        for word, label in source:
            by_word.setdefault(word, []).append(label)
        entries = {}

        def put(row_entry, column_entry, value):
            i, j = rows.get(row_entry), columns.get(column_entry)
            if i is None or j is None:
                return
            entries[(i, j)] = entries.get((i, j), 0) + value

        for word in self.words(p + 1):
            start, letters = word
            first, last = letters[0], letters[-1]
            tail = (self.right(first), letters[1:])
            for label in by_word.get(tail, ()):
                for result, c in M.act_left({first: 1}, {label: 1}).items():
                    put((word, result), (tail, label), c)
            for i in range(1, p + 1):
                sign = -1 if i % 2 else 1
                for x, c in A.product(letters[i - 1], letters[i]).items():
                    if x not in self.blocks or (self.mode == RELATIVE and A.degree(x) == 0):
                        continue
                    contracted = (start, letters[:i - 1] + (x,) + letters[i + 1:])
                    for label in by_word.get(contracted, ()):
                        put((word, label), (contracted, label), sign * c)
            head = (start, letters[:-1])
            sign = -1 if (p + 1) % 2 else 1
            for label in by_word.get(head, ()):
                for result, c in M.act_right({label: 1}, {last: 1}).items():
                    put((word, result), (head, label), sign * c)
        return ExactMatrix(entries, (len(target), len(source)), A.field)


def _engine(A, M, q, mode, max_words):
    M = GradedBimodule.regular(A) if M is None else M
    return _BarEngine(A, M, q, mode, max_words)


def bar_slice(A, p, q, M=None, mode=RELATIVE, max_words=DEFAULT_MAX_WORDS):
    engine = _engine(A, M, q, mode, max_words)
    source = engine.cochain_basis(p)
    target = engine.cochain_basis(p + 1)
    return BarComplexSlice(p, q, engine.words(p), source, target, engine.coboundary(p, source, target))


def hh_bar(A, p, q, M=None, mode=RELATIVE, with_cocycles=False, max_words=DEFAULT_MAX_WORDS):
    """
    dim HH^{p,q}(A, M) from the bar complex, M = A unless given.

    Both coboundaries around C^p are assembled and their composite is
    checked to vanish before ranks are taken.
    """
    if p < 0:
        raise InputValidationError(f"Homological degree must be non-negative, got {p}.")
    engine = _engine(A, M, q, mode, max_words)
    before = engine.cochain_basis(p - 1) if p > 0 else []
    here = engine.cochain_basis(p)
    after = engine.cochain_basis(p + 1)
    outgoing = engine.coboundary(p, here, after)
    incoming = engine.coboundary(p - 1, before, here) if p > 0 else ExactMatrix({}, (len(here), 0), A.field)
    if not outgoing.matmul(incoming).is_zero():
        raise ComplexError(f"delta o delta != 0 at p={p}, q={q} ({mode}).")
    rank_out, rank_in = outgoing.rank(), incoming.rank()
    dim = len(here) - rank_out - rank_in
    logger.debug("HH^{%d,%d} %s: C=%s ranks %d/%d -> %d",
                 p, q, mode, [len(before), len(here), len(after)], rank_in, rank_out, dim)
    result = HHResult(p, q, dim, mode, [len(before), len(here), len(after)])
    if with_cocycles and dim:
        result.cocycles = _representatives(outgoing, incoming, here, A.field, dim)
    return result


def _representatives(outgoing, incoming, basis, field, dim):
    chosen = [tuple(row) for row in zip(*incoming.to_rows())] if incoming.cols else []
    base = span_dim(chosen, field, len(basis)) if chosen else 0
    cocycles = []
    for vector in outgoing.kernel_basis():
        if span_dim(chosen + [vector], field, len(basis)) > base:
            chosen.append(vector)
            base += 1
            cocycles.append({basis[j]: c for j, c in enumerate(vector) if c})
            if len(cocycles) == dim:
                break
    return cocycles
