"""Gaussian-rational scalars and helpers for mixing them with floats.

Coefficients throughout the package are either :class:`GaussRat` (exact,
``a + b i`` with ``a, b`` rational) or builtin ``complex``.  Arithmetic
between two exact values stays exact; anything touching a float degrades
to ``complex``.
"""
from fractions import Fraction
from math import isqrt
import cmath
import numbers


class GaussRat:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # -- conversions -------------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRat({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return abs(complex(self))

    # -- arithmetic --------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) == complex(other)
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) + complex(other)
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) - complex(other)
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(other) - complex(self)
            return NotImplemented
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) * complex(other)
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) / complex(other)
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussRat(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(other) / complex(self)
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return GaussRat(1) / (self ** (-k))
        result = GaussRat(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def _coerce(v):
    if isinstance(v, GaussRat):
        return v
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return GaussRat(v)
    if isinstance(v, bool):
        return GaussRat(int(v))
    return None


def is_exact(c):
    return isinstance(c, (GaussRat, int, Fraction))


def exact(c):
    """Coerce an int/Fraction/GaussRat to GaussRat; reject floats."""
    g = _coerce(c)
    if g is None:
        raise TypeError(f"not an exact scalar: {c!r}")
    return g


def to_complex(c):
    return complex(c)


def is_zero(c):
    if isinstance(c, GaussRat):
        return not c
    return c == 0


def magnitude(c):
    return abs(complex(c))


def exact_sqrt(c):
    """Exact square root of a Gaussian rational, or None when it is irrational.

    The branch returned has nonnegative real part (and nonnegative imaginary
    part on the negative real axis), matching ``cmath.sqrt``.
    """
    g = exact(c)
    a, b = g.re, g.im
    r = _rational_sqrt(a * a + b * b)
    if r is None:
        return None
    p2 = (a + r) / 2
    p = _rational_sqrt(p2)
    if p is None:
        return None
    if p != 0:
        q = b / (2 * p)
    else:
        q = _rational_sqrt((r - a) / 2)
        if q is None:
            return None
    root = GaussRat(p, q)
    if root * root != g:
        return None
    return root


def _rational_sqrt(f):
    f = Fraction(f)
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt(c):
    if is_exact(c):
        r = exact_sqrt(c)
        if r is not None:
            return r
    return cmath.sqrt(complex(c))


def snap(z, max_den=10_000, rel=1e-11):
    """Nearest Gaussian rational with bounded denominator, if it is within ``rel``.

    Callers must still verify the snapped value exactly; this only proposes
    a candidate.
    """
    z = complex(z)
    re = Fraction(z.real).limit_denominator(max_den)
    im = Fraction(z.imag).limit_denominator(max_den)
    g = GaussRat(re, im)
    if abs(complex(g) - z) <= rel * max(1.0, abs(z)):
        return g
    return None


def rational_approx(x, max_den=20):
    """Best rational approximation with denominator at most ``max_den``."""
    return Fraction(x).limit_denominator(max_den)


def format_scalar(c):
    """Render a coefficient as text accepted by the polynomial parser."""
    if isinstance(c, (int, Fraction)):
        c = GaussRat(c)
    if isinstance(c, GaussRat):
        re, im = c.re, c.im
        if im == 0:
            return _fmt_fraction(re)
        if re == 0:
            return f"{_fmt_fraction(im)}i" if im.denominator == 1 else f"({_fmt_fraction(im)})*1i"
        re_s = _fmt_fraction(re)
        im_abs = abs(im)
        sign = "-" if im < 0 else "+"
        if im_abs.denominator == 1:
            return f"({re_s}{sign}{im_abs.numerator}i)"
        return f"({re_s}{sign}({_fmt_fraction(im_abs)})*1i)"
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}i"
    sign = "-" if c.imag < 0 or (c.imag == 0 and str(c.imag).startswith("-")) else "+"
    return f"({c.real!r}{sign}{abs(c.imag)!r}i)"


def _fmt_fraction(f):
    if f.denominator == 1:
        return str(f.numerator)
    return f"({f.numerator}/{f.denominator})"


def json_complex(c):
    c = complex(c)
    return [c.real, c.imag]


def exact_string(c):
    """Human-readable exact form like ``1/3`` or ``2+1i`` (None for floats)."""
    if not is_exact(c):
        return None
    g = exact(c)
    if g.im == 0:
        return str(g.re)
    if g.re == 0:
        return f"{g.im}i"
    sign = "-" if g.im < 0 else "+"
    return f"{g.re}{sign}{abs(g.im)}i"
