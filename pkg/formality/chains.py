from dataclasses import dataclass

from presentations.tor import AffineForm

STRICT = '<'
WEAK = '<='


def link_relation(left, right, p0):
    """
    Strongest of '<' and '<=' holding for every p >= p0, or None.

    Affine forms compare for all p >= p0 iff the gap right - left does not
    shrink and the comparison holds at p0.
    """
    if right.slope - left.slope < 0:
        return None
    if left(p0) < right(p0):
        return STRICT
    if left(p0) <= right(p0):
        return WEAK
    return None


@dataclass(frozen=True)
class AffineChain:
    """
    term_0 R_1 term_1 R_2 ... term_r for all p >= p0, terms (label, AffineForm).
    """

    terms: tuple
    relations: tuple
    p0: int

    @classmethod
    def build(cls, terms, p0):
        terms = tuple((label, form) for label, form in terms)
        relations = tuple(
            link_relation(terms[i][1], terms[i + 1][1], p0) for i in range(len(terms) - 1)
        )
        return cls(terms, relations, p0)

    @property
    def proven(self):
        return all(self.relations) and STRICT in self.relations

    @property
    def left(self):
        return self.terms[0][1]

    @property
    def right(self):
        return self.terms[-1][1]

    def instantiate(self, p):
        return [form(p) for _, form in self.terms]

    def render(self, p=None):
        parts = []
        for i, (label, form) in enumerate(self.terms):
            text = f'{label} = {form(p)}' if p is not None else f'{label} [{form}]'
            if i:
                parts.append(self.relations[i - 1] or '?')
            parts.append(text)
        return ' '.join(parts)

    def as_dict(self):
        return {
            'p0': self.p0,
            'terms': [{'label': label, **form.as_dict()} for label, form in self.terms],
            'relations': list(self.relations),
        }

    @classmethod
    def from_dict(cls, data):
        terms = tuple((t['label'], AffineForm(t['slope'], t['intercept'])) for t in data['terms'])
        return cls(terms, tuple(data['relations']), data['p0'])
