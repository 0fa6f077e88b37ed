"""Exact scalar arithmetic over the Gaussian rationals Q(i).

Every coefficient in the package is a GaussianRational; nothing ever
rounds, so equality checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        """Coerce an int, Fraction, string or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(as_fraction(value))
        if isinstance(value, str):
            return parse_gaussian(value)
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    def __add__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return self * o.inverse()

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.norm_squared()
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def norm_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def magnitude(self) -> Fraction:
        """Exact size proxy |re| + |im|; zero iff the value is zero."""
        return abs(self.re) + abs(self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return format_gaussian(self)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))
MINUS_I = GaussianRational(Fraction(0), Fraction(-1))


def gr(re: RationalLike = 0, im: RationalLike = 0) -> GaussianRational:
    """Shorthand constructor: gr(1, -2) == 1 - 2i."""
    return GaussianRational(as_fraction(re), as_fraction(im))


def format_gaussian(value: GaussianRational) -> str:
    """Serialize as "p/q", "r/s*i" or "p/q+r/s*i" (lossless, diffable)."""
    if value.im == 0:
        return str(value.re)
    imag = f"{value.im}*i"
    if value.re == 0:
        return imag
    sign = "+" if value.im > 0 else "-"
    return f"{value.re}{sign}{abs(value.im)}*i"


def parse_gaussian(text: str) -> GaussianRational:
    """Parse the formats produced by format_gaussian, plus "i"/"-i"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty GaussianRational literal")
    # split into a real and an imaginary summand at a top-level +/-
    split_at = None
    for pos in range(1, len(s)):
        if s[pos] in "+-" and s[pos - 1] not in "+-/*":
            split_at = pos
    if split_at is not None:
        head, tail = s[:split_at], s[split_at:]
        parts = [head, tail]
    else:
        parts = [s]
    re = Fraction(0)
    im = Fraction(0)
    for part in parts:
        if part in ("i", "+i"):
            im += 1
        elif part == "-i":
            im -= 1
        elif part.endswith("*i"):
            im += Fraction(part[:-2])
        elif part.endswith("i"):
            im += Fraction(part[:-1])
        else:
            re += Fraction(part)
    return GaussianRational(re, im)


def format_rational(value: Fraction) -> str:
    return str(value)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
