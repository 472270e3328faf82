"""Exact scalar arithmetic over Q and Q(i).

A Scalar is a Gaussian rational re + im*i with both parts stored as reduced
fractions, so equality is structural and a + b - b == a holds bit-exactly.
Plain rationals are the im == 0 case; callers that need to stay inside Q
can check ``in_field("Q")``.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction


class FieldError(ValueError):
    """A scalar fell outside the requested ground field."""


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(
    r"^\s*(?P<re>%s)\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*\*\s*i)?\s*$" % _RAT
)


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if type(re) is not Fraction:
            re = Fraction(re)
        if type(im) is not Fraction:
            im = Fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def parse(cls, text):
        """Parse "a/b" or "a/b+c/d*i" (canonical reduced form, explicit sign)."""
        m = _SCALAR_RE.match(text)
        if m is None:
            raise ValueError("not a scalar: %r" % (text,))
        re_part = Fraction(m.group("re"))
        im_part = Fraction(0)
        if m.group("im") is not None:
            im_part = Fraction(m.group("im"))
            if m.group("sign") == "-":
                im_part = -im_part
        return cls(re_part, im_part)

    def __str__(self):
        def rat(x):
            return "%d/%d" % (x.numerator, x.denominator)

        if self.im == 0:
            return rat(self.re)
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return "%s%s%d/%d*i" % (rat(self.re), sign, mag.numerator, mag.denominator)

    def __repr__(self):
        return "Scalar(%r)" % (str(self),)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __add__(self, other):
        other = _coerce(other)
        return _fast(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return _fast(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return _fast(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if not self.im and not other.im:
            return _fast(self.re * other.re, _F0)
        return _fast(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not self.im and not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero scalar")
            return _fast(self.re / other.re, _F0)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        return _fast(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return ONE / (self ** (-k))
        acc = ONE
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def conjugate(self):
        return _fast(self.re, -self.im)

    def is_rational(self):
        return self.im == 0

    def in_field(self, tag):
        if tag == "Q":
            return self.im == 0
        if tag == "Qi":
            return True
        raise FieldError("unknown field tag %r" % (tag,))


_F0 = Fraction(0)


def _fast(re, im):
    # internal constructor for values already held as reduced fractions
    s = object.__new__(Scalar)
    object.__setattr__(s, "re", re)
    object.__setattr__(s, "im", im)
    return s


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError("cannot coerce %r to Scalar" % (x,))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
