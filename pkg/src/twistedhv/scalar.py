"""Exact arithmetic over the Gaussian rationals Q(i).

Every scalar in the package is a :class:`GaussianRational`. Real and imaginary
parts are :class:`fractions.Fraction`, so nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Fraction",
    "GaussianRational",
    "UnitPhase",
    "NotUnitModulus",
    "make_unit_phase",
    "as_gaussian",
    "format_scalar",
    "ZERO",
    "ONE",
    "I",
]


class NotUnitModulus(ValueError):
    """Raised when a would-be phase does not have modulus exactly one."""

    def __init__(self, norm: Fraction):
        self.norm = norm
        super().__init__(f"|z|^2 = {norm}, expected 1")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class GaussianRational:
    """An element ``re + im*i`` of Q(i). Immutable."""

    # No mutating methods; treat instances as frozen.
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- predicates -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def norm(self) -> Fraction:
        """``|z|^2``, always exact."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._new(self.re, -self.im)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational._new(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational._new(self.re * o.re, self.re * o.im)
        return GaussianRational._new(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not o.im:
            return GaussianRational._new(self.re / o.re, self.im / o.re)
        n = o.norm()
        return GaussianRational._new(
            (self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    # -- printing ---------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, UnitPhase):
        return x.value
    if isinstance(x, (int, Fraction, _RationalABC)):
        return GaussianRational._new(Fraction(x), Fraction(0))
    return None


def as_gaussian(x) -> GaussianRational:
    """Coerce ints, Fractions, phases or literal strings to a GaussianRational."""
    if isinstance(x, str):
        from .parser import parse_scalar

        return parse_scalar(x)
    g = _coerce(x)
    if g is None:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return g


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical literal: ``p/q``, ``r/si`` or ``p/q+r/si`` (``-`` for negative im)."""
    if not z.im:
        return _format_rational(z.re)
    im = _format_rational(z.im) + "i"
    if not z.re:
        return im
    sep = "" if z.im < 0 else "+"
    return f"{_format_rational(z.re)}{sep}{im}"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


class UnitPhase:
    """A Gaussian rational of modulus exactly one, standing in for ``e^{i*gamma}``."""

    __slots__ = ("value",)

    def __init__(self, z):
        z = as_gaussian(z)
        n = z.norm()
        if n != 1:
            raise NotUnitModulus(n)
        object.__setattr__(self, "value", z)

    def __setattr__(self, name, value):
        raise AttributeError("UnitPhase is immutable")

    def conjugate(self) -> "UnitPhase":
        return UnitPhase(self.value.conjugate())

    def inverse(self) -> "UnitPhase":
        return self.conjugate()

    def __mul__(self, other):
        if isinstance(other, UnitPhase):
            return UnitPhase(self.value * other.value)
        return self.value * other

    def __rmul__(self, other):
        return other * self.value

    def __pow__(self, n: int) -> "UnitPhase":
        if n < 0:
            return UnitPhase(self.value.conjugate() ** (-n))
        return UnitPhase(self.value**n)

    def __eq__(self, other):
        if isinstance(other, UnitPhase):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"UnitPhase({format_scalar(self.value)})"

    def __str__(self):
        return format_scalar(self.value)

    def __reduce__(self):
        return (UnitPhase, (self.value,))


def make_unit_phase(z) -> UnitPhase:
    return UnitPhase(z)
