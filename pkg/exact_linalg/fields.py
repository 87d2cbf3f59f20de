from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import GF, QQ

from formalitykit.exceptions import InputValidationError


class FieldError(InputValidationError):
    pass


@lru_cache(maxsize=None)
def _domain(kind, p):
    if kind == FieldSpec.RATIONALS:
        return QQ
    return GF(p)


@dataclass(frozen=True)
class FieldSpec:
    """
    The ground field: the rationals or a prime field F_p.

    Scalars cross this boundary as Fractions; inside the matrix routines they
    live as elements of the matching sympy domain.
    """

    kind: str = 'rationals'
    p: int | None = None

    RATIONALS = 'rationals'
    PRIME = 'prime'

    def __post_init__(self):
        if self.kind == self.RATIONALS:
            if self.p is not None:
                raise FieldError("The rationals take no characteristic.")
        elif self.kind == self.PRIME:
            if self.p is None or not isprime(self.p):
                raise FieldError(f"F_p needs a prime p, got {self.p!r}.")
        else:
            raise FieldError(f"Unknown field kind {self.kind!r}.")

    @classmethod
    def parse(cls, text):
        """
        Parse 'rationals' or 'fp:P'.
        """
        text = (text or '').strip().lower()
        if text in ('rationals', 'q', 'qq'):
            return cls()
        if text.startswith('fp:'):
            try:
                p = int(text[3:])
            except ValueError:
                raise FieldError(f"Bad prime in field spec {text!r}.")
            return cls(cls.PRIME, p)
        raise FieldError(f"Field must be 'rationals' or 'fp:P', got {text!r}.")

    @property
    def characteristic(self):
        return 0 if self.kind == self.RATIONALS else self.p

    @property
    def domain(self):
        return _domain(self.kind, self.p)

    def element(self, value):
        value = Fraction(value)
        if self.kind == self.RATIONALS:
            return QQ(value.numerator, value.denominator)
        if value.denominator % self.p == 0:
            raise FieldError(f"{value} has no image in F_{self.p}.")
        K = self.domain
        return K(value.numerator) / K(value.denominator)

    def to_fraction(self, x):
        if self.kind == self.RATIONALS:
            return Fraction(int(x.numerator), int(x.denominator))
        return Fraction(int(self.domain.to_int(x)) % self.p)

    def __str__(self):
        return 'rationals' if self.kind == self.RATIONALS else f'fp:{self.p}'


RATIONALS = FieldSpec()
