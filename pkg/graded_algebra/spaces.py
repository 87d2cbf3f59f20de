from types import MappingProxyType

from formalitykit.exceptions import InputValidationError


class ZeroSpaceError(InputValidationError):
    pass


class GradedVectorSpace:
    """
    Finite-dimensional graded vector space: degree -> basis labels.

    Degrees with no labels are dropped, so every present degree has
    dimension at least one.
    """

    def __init__(self, components=None):
        cleaned = {}
        for degree, labels in (components or {}).items():
            labels = tuple(labels)
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise InputValidationError(f"Repeated basis label in degree {degree}: {labels}.")
            cleaned[int(degree)] = labels
        self.components = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def from_dims(cls, dims, prefix='v'):
        components = {}
        for degree, dim in dims.items():
            if dim < 0:
                raise InputValidationError(f"Negative dimension {dim} in degree {degree}.")
            components[degree] = [f'{prefix}{degree}_{i}' for i in range(dim)]
        return cls(components)

    def __eq__(self, other):
        if not isinstance(other, GradedVectorSpace):
            return NotImplemented
        return self.dims() == other.dims()

    __hash__ = None

    def __repr__(self):
        return f"GradedVectorSpace({self.dims()})"

    def dims(self):
        return {degree: len(labels) for degree, labels in self.components.items()}

    def dim(self, degree=None):
        if degree is None:
            return sum(len(labels) for labels in self.components.values())
        return len(self.components.get(degree, ()))

    def support(self):
        return tuple(self.components)

    def is_zero(self):
        return not self.components

    def shift(self, i):
        """
        The shift V<i> with V<i>^q = V^{q+i}.
        """
        return GradedVectorSpace({degree - i: labels for degree, labels in self.components.items()})

    def direct_sum(self, other):
        components = {degree: list(labels) for degree, labels in self.components.items()}
        for degree, labels in other.components.items():
            components.setdefault(degree, []).extend(labels)
        return GradedVectorSpace(components)


def maxdeg(X):
    """
    Largest degree carrying a nonzero homogeneous element.
    """
    support = X.support()
    if not support:
        raise ZeroSpaceError("maxdeg of the zero space is undefined.")
    return max(support)


def mindeg(X):
    support = X.support()
    if not support:
        raise ZeroSpaceError("mindeg of the zero space is undefined.")
    return min(support)
