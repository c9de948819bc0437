"""Exact complex scalars with rational real and imaginary parts.

Every number in this package is a Gaussian rational p/q + (r/s)i.  All
arithmetic is exact, so equality is a decision procedure rather than a
tolerance check.  The text form follows a small grammar:

    rational ::= ["-"] digits ["/" digits]
    scalar   ::= rational
               | rational ("+"|"-") rational "i"
               | ["-"] rational "i"

Examples: "5", "-2/7", "-1/2+3i", "2/5i", "-2i".
"""

from __future__ import annotations

from fractions import Fraction


class ScalarError(ValueError):
    """Malformed scalar literal or non-scalar operand."""


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ScalarError(f"expected int or Fraction, got {type(x).__name__}")


class Scalar:
    """Immutable Gaussian rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _fraction(re))
        object.__setattr__(self, "im", _fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        if isinstance(x, str):
            return Scalar.parse(x)
        raise ScalarError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        s = text.strip().replace(" ", "")
        if not s:
            raise ScalarError("empty scalar literal")
        # lenient aliases for the imaginary unit
        if s in ("i", "+i"):
            return cls(0, 1)
        if s == "-i":
            return cls(0, -1)
        try:
            if s.endswith("i"):
                body = s[:-1]
                if not body:
                    raise ValueError(s)
                # split re/im on the last sign that is not a leading sign
                # and not part of a fraction slash
                for k in range(len(body) - 1, 0, -1):
                    if body[k] in "+-" and body[k - 1] not in "+-/":
                        return cls(Fraction(body[:k]), Fraction(body[k:]))
                return cls(0, Fraction(body))
            return cls(Fraction(s), 0)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"invalid scalar literal {text!r}") from exc

    # --- arithmetic -------------------------------------------------

    def __add__(self, other):
        o = Scalar.coerce(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Scalar.coerce(other)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        o = Scalar.coerce(other)
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar((self.re * o.re + self.im * o.im) / d,
                      (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # --- predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except ScalarError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    # --- text form --------------------------------------------------

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def sc(re, im=0) -> Scalar:
    """Shorthand constructor; strings go through the full literal grammar."""
    if isinstance(re, str):
        parsed = Scalar.parse(re)
        if isinstance(im, str):
            im = Fraction(im)
        return Scalar(parsed.re, parsed.im + _fraction(im))
    if isinstance(im, str):
        im = Fraction(im)
    return Scalar(re, im)
