"""Complex polynomial algebra in one and two variables.

Polynomials keep exact :class:`~foliana.scalars.GaussRat` coefficients when
every input is exact (the parser always produces exact coefficients) and fall
back to double-precision ``complex`` otherwise.  Exact values drive the
identically-zero tests that decide dicriticality and invariance; floats only
appear after translating to numerically located points.
"""
from fractions import Fraction
from math import comb
import cmath
import re

import numpy as np

from .errors import (
    CommonComponentError,
    DegreeCapError,
    FolianaError,
    LiteralOverflowError,
    NonConvergenceError,
    PolySyntaxError,
)
from .scalars import GaussRat, ONE, ZERO, format_scalar, is_exact, snap

DEFAULT_DEGREE_CAP = 24
ZERO_REL = 1e-12
LITERAL_MAX = 1e300


def _clean(c):
    """Normalize a coefficient; ints/Fractions become GaussRat."""
    if isinstance(c, GaussRat):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussRat(c)
    return complex(c)


def _nonzero(c):
    return bool(c) if isinstance(c, GaussRat) else c != 0


def _all_exact(coeffs):
    return all(isinstance(c, GaussRat) for c in coeffs)


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------
class CPoly1:
    """Univariate polynomial; ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_clean(c) for c in coeffs]
        while cs and not _nonzero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CPoly1 is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_exact(self):
        return _all_exact(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def __call__(self, z):
        acc = ZERO if self.is_exact and is_exact(z) else 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, CPoly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CPoly1({list(self.coeffs)!r})"

    def __add__(self, other):
        other = _as_poly1(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [ZERO] * (n - len(other.coeffs))
        return CPoly1([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CPoly1([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly1(other))

    def __rsub__(self, other):
        return _as_poly1(other) - self

    def __mul__(self, other):
        other = _as_poly1(other)
        if not self.coeffs or not other.coeffs:
            return CPoly1()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CPoly1(out)

    __rmul__ = __mul__

    def derivative(self):
        return CPoly1([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        """Polynomial long division; exact when both operands are exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [ZERO] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            coef = rem[k] / lead
            quot[k - dq] = coef
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - coef * b
            rem[k] = ZERO
        return CPoly1(quot), CPoly1(rem[:dq])

    def monic(self):
        lead = self.lead()
        return CPoly1([c / lead for c in self.coeffs])

    def to_complex(self):
        return CPoly1([complex(c) for c in self.coeffs])

    def chop(self, rel=ZERO_REL):
        if not self.coeffs or self.is_exact:
            return self
        scale = max(abs(complex(c)) for c in self.coeffs)
        return CPoly1([c if abs(complex(c)) > rel * scale else 0j for c in self.coeffs])


def _as_poly1(v):
    if isinstance(v, CPoly1):
        return v
    return CPoly1([v])


def poly1_gcd(a, b):
    """Monic gcd of two exact univariate polynomials (Euclid over Q(i))."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


def squarefree_decomposition(p):
    """Yun's algorithm: list of (squarefree factor, multiplicity), exact input only."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly1_gcd(p, dp)
    b, _ = p.divmod(a)
    c, _ = dp.divmod(a)
    d = c - b.derivative()
    k = 1
    while b.degree >= 1:
        a = poly1_gcd(b, d)
        if a.degree >= 1:
            out.append((a, k))
        b_next, _ = b.divmod(a)
        c, _ = d.divmod(a)
        b = b_next
        d = c - b.derivative()
        k += 1
    return out


# ---------------------------------------------------------------------------
# univariate roots
# ---------------------------------------------------------------------------
def _aberth(coeffs, maxiter=200):
    """Simultaneous Aberth-Ehrlich iteration on a numpy coefficient array (low->high)."""
    n = len(coeffs) - 1
    a = np.asarray(coeffs, dtype=complex) / coeffs[-1]
    hi = a[::-1]
    dhi = np.polyder(hi)
    # Initial radius from the geometric mean of the constant term; spoked start.
    rad = abs(a[0]) ** (1.0 / n) if a[0] != 0 else 1.0
    bound = 1 + max(abs(a[:-1]))
    rad = min(max(rad, 1e-3), bound)
    ang = 2 * np.pi * np.arange(n) / n + 0.4
    z = rad * np.exp(1j * ang)
    for it in range(maxiter):
        pz = np.polyval(hi, z)
        dz = np.polyval(dhi, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        z = z - w
        if np.all(np.abs(w) <= 4e-16 * np.maximum(1.0, np.abs(z))):
            return z, True, it + 1
    return z, False, maxiter


def _residual(coeffs, z):
    hi = np.asarray(coeffs, dtype=complex)[::-1]
    scale = np.polyval(np.abs(hi), abs(z)) + 1e-300
    return abs(np.polyval(hi, z)) / scale


def _numeric_roots(p, maxiter=200):
    coeffs = [complex(c) for c in p.coeffs]
    n = p.degree
    if n == 1:
        return [-coeffs[0] / coeffs[1]]
    # Pull out exact zero roots first; the iteration handles the rest.
    k0 = 0
    while k0 < len(coeffs) - 1 and coeffs[k0] == 0:
        k0 += 1
    rest = coeffs[k0:]
    roots = [0j] * k0
    if len(rest) - 1 >= 1:
        if len(rest) - 1 == 1:
            roots.append(-rest[0] / rest[1])
        else:
            z, ok, _ = _aberth(rest, maxiter)
            if not ok:
                zc = np.roots(np.asarray(rest)[::-1])
                if len(zc) == len(rest) - 1 and np.all(np.isfinite(zc)):
                    z = zc
                else:
                    res = max(_residual(rest, r) for r in z)
                    raise NonConvergenceError("root finder did not converge", residual=res)
            roots.extend(complex(r) for r in z)
    return roots


def _cluster(roots, tol):
    """Merge roots closer than tol*max(1,|r|); returns (centroid, count) pairs."""
    groups = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for g in groups:
            c = g[0] / g[1]
            if abs(c - r) <= tol * max(1.0, abs(c)):
                g[0] += r
                g[1] += 1
                break
        else:
            groups.append([r, 1])
    return [(g[0] / g[1], g[1]) for g in groups]


def univariate_roots(p, tol=1e-10):
    """Roots of a univariate polynomial with multiplicities.

    Exact inputs go through a squarefree decomposition first, so
    multiplicities are exact; float inputs merge clusters within
    ``tol * max(1, |root|)``.  Roots that snap to a Gaussian rational and
    vanish exactly are returned as :class:`GaussRat`.
    """
    if isinstance(p, (list, tuple)):
        p = CPoly1(p)
    if p.is_zero() or p.degree < 1:
        raise FolianaError("univariate_roots needs a nonconstant polynomial")
    out = []
    if p.is_exact:
        for factor, mult in squarefree_decomposition(p):
            for r in _numeric_roots(factor):
                r = _polish1(factor, r)
                s = snap(r)
                if s is not None and not _nonzero(factor(s)):
                    r = s
                out.append((_tidy(r), mult))
    else:
        q = p.chop()
        roots = [_polish1(q, r) for r in _numeric_roots(q)]
        out = [(_tidy(r), m) for r, m in _cluster(roots, tol)]
    out.sort(key=lambda rm: (round(complex(rm[0]).real, 12), round(complex(rm[0]).imag, 12)))
    return out


def _polish1(p, r, steps=3):
    pc = p.to_complex()
    dp = pc.derivative()
    for _ in range(steps):
        d = dp(r)
        if d == 0:
            break
        step = pc(r) / d
        if not cmath.isfinite(step):
            break
        r_new = r - step
        if abs(pc(r_new)) > abs(pc(r)):
            break
        r = r_new
    return r


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------
class CPoly2:
    """Bivariate polynomial stored as {(i, j): coefficient of x^i y^j}.

    The two slots are called ``x`` and ``y`` regardless of what coordinates
    they represent in a chart; ``to_str(names=...)`` renames them for display.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                c = _clean(c)
                if _nonzero(c):
                    clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CPoly2 is immutable")

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls):
        return cls({(1, 0): ONE})

    @classmethod
    def y(cls):
        return cls({(0, 1): ONE})

    @classmethod
    def monomial(cls, i, j, c=ONE):
        return cls({(i, j): c})

    # -- basic properties ----------------------------------------------------
    @property
    def degree(self):
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def deg_in(self, var):
        k = 0 if var in ("x", 0) else 1
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    @property
    def is_exact(self):
        return _all_exact(self.terms.values())

    def is_zero(self):
        return not self.terms

    def max_coeff(self):
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def is_negligible(self, ref=None, rel=ZERO_REL):
        """Zero test: exact polys compare exactly; floats use 1e-12 relative to ``ref``."""
        if not self.terms:
            return True
        if self.is_exact:
            return False
        scale = self.max_coeff() if ref is None else ref
        return self.max_coeff() <= rel * scale if ref is not None else False

    def chop(self, ref=None, rel=ZERO_REL):
        """Drop float coefficients below ``rel * ref`` (default ref: own max)."""
        if self.is_exact or not self.terms:
            return self
        scale = self.max_coeff() if ref is None else ref
        return CPoly2({e: c for e, c in self.terms.items() if abs(complex(c)) > rel * scale})

    def coeff(self, i, j):
        return self.terms.get((i, j), ZERO)

    def __eq__(self, other):
        if isinstance(other, (int, float, complex, Fraction, GaussRat)):
            other = CPoly2.const(other)
        if not isinstance(other, CPoly2):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(frozenset((e, complex(c)) for e, c in self.terms.items()))
            )
        return self._hash

    def __repr__(self):
        return f"CPoly2({self.to_str()!r})"

    def __str__(self):
        return self.to_str()

    def to_str(self, names=("x", "y")):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda e: (-(e[0] + e[1]), -e[0], -e[1])):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append(names[0] if i == 1 else f"{names[0]}^{i}")
            if j:
                mono.append(names[1] if j == 1 else f"{names[1]}^{j}")
            neg = _is_negative_real(c)
            mag = -c if neg else c
            cs = format_scalar(mag)
            if mono:
                body = "*".join(mono) if _is_one(mag) else cs + "*" + "*".join(mono)
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    # -- evaluation ----------------------------------------------------------
    def __call__(self, x, y):
        exact_pt = is_exact(x) and is_exact(y)
        if exact_pt and self.is_exact:
            x, y = GaussRat(x) if not isinstance(x, GaussRat) else x, GaussRat(y) if not isinstance(y, GaussRat) else y
            acc = ZERO
            for (i, j), c in self.terms.items():
                acc = acc + c * x ** i * y ** j
            return acc
        x = complex(x)
        y = complex(y)
        acc = 0j
        for (i, j), c in self.terms.items():
            acc += complex(c) * x ** i * y ** j
        return acc

    def numeric(self):
        """Vectorized evaluator ``f(x_array, y_array)`` (complex numpy)."""
        if not self.terms:
            return lambda x, y: np.zeros(np.broadcast(x, y).shape, dtype=complex)
        exps = list(self.terms)
        cs = np.array([complex(self.terms[e]) for e in exps])
        ii = [e[0] for e in exps]
        jj = [e[1] for e in exps]
        mi, mj = max(ii), max(jj)

        def f(x, y):
            x = np.asarray(x, dtype=complex)
            y = np.asarray(y, dtype=complex)
            xp = [np.ones_like(x)]
            for _ in range(mi):
                xp.append(xp[-1] * x)
            yp = [np.ones_like(y)]
            for _ in range(mj):
                yp.append(yp[-1] * y)
            acc = np.zeros(np.broadcast(x, y).shape, dtype=complex)
            for c, i, j in zip(cs, ii, jj):
                acc = acc + c * xp[i] * yp[j]
            return acc

        return f

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _as_poly2(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return CPoly2(t)

    __radd__ = __add__

    def __neg__(self):
        return CPoly2({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly2(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly2(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _as_poly2(other)
        if other is NotImplemented:
            return other
        t = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                e = (i + k, j + l)
                t[e] = t[e] + a * b if e in t else a * b
        return CPoly2(t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, CPoly2):
            if c.degree != 0:
                raise TypeError("only division by constants is supported")
            c = c.coeff(0, 0)
        return CPoly2({e: v / _clean(c) for e, v in self.terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = CPoly2.const(ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_trunc(self, other, n):
        """Product keeping only total degree <= n."""
        t = {}
        for (i, j), a in self.terms.items():
            if i + j > n:
                continue
            for (k, l), b in other.terms.items():
                if i + j + k + l > n:
                    continue
                e = (i + k, j + l)
                t[e] = t[e] + a * b if e in t else a * b
        return CPoly2(t)

    def truncate(self, n):
        return CPoly2({e: c for e, c in self.terms.items() if e[0] + e[1] <= n})

    def map_coeffs(self, f):
        return CPoly2({e: f(c) for e, c in self.terms.items()})

    def to_complex(self):
        return self.map_coeffs(complex)

    # -- calculus and structure ---------------------------------------------
    def diff(self, var):
        t = {}
        for (i, j), c in self.terms.items():
            if var in ("x", 0):
                if i:
                    t[(i - 1, j)] = c * i
            else:
                if j:
                    t[(i, j - 1)] = c * j
        return CPoly2(t)

    def homogeneous_part(self, k):
        return CPoly2({e: c for e, c in self.terms.items() if e[0] + e[1] == k})

    def low_degree(self):
        """Smallest total degree among stored terms (-1 for zero)."""
        if not self.terms:
            return -1
        return min(i + j for i, j in self.terms)

    def swap(self):
        return CPoly2({(j, i): c for (i, j), c in self.terms.items()})

    def compose(self, A, B, trunc=None):
        """Substitute x -> A, y -> B (both CPoly2), optionally truncating in degree."""
        cache_a = [CPoly2.const(ONE)]
        cache_b = [CPoly2.const(ONE)]
        mul = (lambda p, q: p.mul_trunc(q, trunc)) if trunc is not None else (lambda p, q: p * q)
        di = max((e[0] for e in self.terms), default=0)
        dj = max((e[1] for e in self.terms), default=0)
        for _ in range(di):
            cache_a.append(mul(cache_a[-1], A))
        for _ in range(dj):
            cache_b.append(mul(cache_b[-1], B))
        acc = CPoly2()
        for (i, j), c in self.terms.items():
            acc = acc + mul(cache_a[i], cache_b[j]) * CPoly2.const(c)
        if trunc is not None:
            acc = acc.truncate(trunc)
        return acc

    def translate(self, a, b):
        """Return p(x + a, y + b)."""
        a = _clean(a)
        b = _clean(b)
        t = {}
        for (i, j), c in self.terms.items():
            for k in range(i + 1):
                ca = comb(i, k) * (a ** (i - k) if i - k else ONE)
                for l in range(j + 1):
                    cb = comb(j, l) * (b ** (j - l) if j - l else ONE)
                    e = (k, l)
                    v = c * ca * cb
                    t[e] = t[e] + v if e in t else v
        return CPoly2(t)

    def linear_change(self, M):
        """Return p(M00 x + M01 y, M10 x + M11 y)."""
        A = CPoly2({(1, 0): M[0][0], (0, 1): M[0][1]})
        B = CPoly2({(1, 0): M[1][0], (0, 1): M[1][1]})
        return self.compose(A, B)

    def as_univariate(self, var):
        """Coefficients w.r.t. ``var``: list index k -> CPoly1 in the other variable."""
        k_main = 0 if var in ("x", 0) else 1
        d = self.deg_in(var)
        buckets = [{} for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            buckets[e[k_main]][e[1 - k_main]] = c
        out = []
        for bk in buckets:
            if not bk:
                out.append(CPoly1())
                continue
            m = max(bk)
            out.append(CPoly1([bk.get(i, ZERO) for i in range(m + 1)]))
        return out

    def slice(self, var, value):
        """Univariate polynomial obtained by fixing ``var`` to ``value``."""
        other = "y" if var in ("x", 0) else "x"
        coeffs = self.as_univariate(other)
        return CPoly1([c(value) if not c.is_zero() else ZERO for c in coeffs])

    def divide_by_power(self, var, k):
        """Exact division by x^k (or y^k); raises if not divisible."""
        idx = 0 if var in ("x", 0) else 1
        t = {}
        for e, c in self.terms.items():
            if e[idx] < k:
                raise ValueError("polynomial not divisible by requested power")
            ne = list(e)
            ne[idx] -= k
            t[tuple(ne)] = c
        return CPoly2(t)

    def power_dividing(self, var):
        """Largest k with var^k dividing the polynomial (inf-like large for zero)."""
        idx = 0 if var in ("x", 0) else 1
        if not self.terms:
            return 10 ** 9
        return min(e[idx] for e in self.terms)


def _is_one(c):
    return (isinstance(c, GaussRat) and c == ONE) or (not isinstance(c, GaussRat) and c == 1)


def _is_negative_real(c):
    if isinstance(c, GaussRat):
        return c.im == 0 and c.re < 0
    c = complex(c)
    return c.imag == 0 and c.real < 0


def _as_poly2(v):
    if isinstance(v, CPoly2):
        return v
    if isinstance(v, (int, float, complex, Fraction, GaussRat)):
        return CPoly2.const(v)
    return NotImplemented


X = CPoly2.x()
Y = CPoly2.y()


# ---------------------------------------------------------------------------
# homogeneous polynomials in three variables
# ---------------------------------------------------------------------------
class HPoly3:
    """Homogeneous polynomial in (X, Y, Z) of total degree ``d``."""

    __slots__ = ("terms", "d")

    def __init__(self, terms, d):
        clean = {}
        for e, c in terms.items():
            if sum(e) != d:
                raise ValueError("exponent triple does not sum to the degree")
            c = _clean(c)
            if _nonzero(c):
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("HPoly3 is immutable")

    def __eq__(self, other):
        return isinstance(other, HPoly3) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        return f"HPoly3(d={self.d}, terms={self.terms!r})"

    def __call__(self, X, Y, Z):
        return sum(c * X ** i * Y ** j * Z ** k for (i, j, k), c in self.terms.items())


def homogenize(p, d):
    """Homogenize to total degree ``d`` with Z as the new variable."""
    if p.terms and d < p.degree:
        raise FolianaError(f"cannot homogenize degree {p.degree} polynomial to degree {d}")
    return HPoly3({(i, j, d - i - j): c for (i, j), c in p.terms.items()}, d)


def dehomogenize(h, chart="affine"):
    """Restrict a homogeneous polynomial to a standard chart.

    ``affine``: Z = 1, slots (x, y) = (X, Y).
    ``U1``: X = 1, slots (u, v) = (Z, Y), i.e. x = 1/u, y = v/u.
    ``U2``: Y = 1, slots (u', w) = (Z, X), i.e. x = w/u', y = 1/u'.
    """
    t = {}
    for (i, j, k), c in h.terms.items():
        if chart == "affine":
            e = (i, j)
        elif chart == "U1":
            e = (k, j)
        elif chart == "U2":
            e = (k, i)
        else:
            raise ValueError(f"unknown chart {chart!r}")
        t[e] = t[e] + c if e in t else c
    return CPoly2(t)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<imag>i(?![A-Za-z0-9_]))
  | (?P<var>[xy](?![A-Za-z0-9_]))
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    line, col = 1, 1
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            toks.append((kind, val, line, col))
        nl = val.count("\n")
        if nl:
            line += nl
            col = len(val) - val.rfind("\n")
        else:
            col += len(val)
        pos = m.end()
    toks.append(("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise PolySyntaxError(f"expected {val!r}, found {t[1] or 'end of input'!r}", t[2], t[3])
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2], t[3])
        return e

    def expr(self):
        t = self.peek()
        sign = None
        if t[1] in ("+", "-"):
            self.take()
            sign = t[1]
        acc = self.term()
        if sign == "-":
            acc = -acc
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if rhs.degree > 0:
                    raise PolySyntaxError("division by a non-constant", op[2], op[3])
                if rhs.is_zero():
                    raise PolySyntaxError("division by zero", op[2], op[3])
                acc = acc / rhs.coeff(0, 0)
        return acc

    def factor(self):
        base = self.base()
        if self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] == "num" and re.fullmatch(r"\d+", t[1]):
                return base ** int(t[1])
            raise PolySyntaxError("exponent must be a nonnegative integer", t[2], t[3])
        return base

    def base(self):
        t = self.take()
        kind, val, line, col = t
        if kind == "var":
            return X if val == "x" else Y
        if kind == "imag":
            return CPoly2.const(GaussRat(0, 1))
        if kind == "num":
            return CPoly2.const(_literal(val, line, col))
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if val == "-":
            # unary minus inside a product, e.g. "2*-x"
            return -self.factor()
        raise PolySyntaxError(f"unexpected token {val or 'end of input'!r}", line, col)


def _literal(text, line, col):
    imag = text.endswith("i")
    body = text[:-1] if imag else text
    if abs(float(body)) > LITERAL_MAX:
        raise LiteralOverflowError(f"literal {text!r} overflows", line, col)
    f = Fraction(body)
    return GaussRat(0, f) if imag else GaussRat(f)


def parse_poly(text):
    """Parse polynomial text in x and y into an exact :class:`CPoly2`."""
    if not isinstance(text, str):
        raise TypeError("polynomial text must be a string")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------
def _det_exact(M):
    """Determinant by Gaussian elimination over exact scalars."""
    n = len(M)
    A = [list(r) for r in M]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        pv = A[c][c]
        det = det * pv
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / pv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def _sylvester(a, b):
    """Sylvester matrix of coefficient lists (low->high)."""
    m = len(a) - 1
    n = len(b) - 1
    size = m + n
    rows = []
    ah = list(reversed(a))
    bh = list(reversed(b))
    for k in range(n):
        rows.append([ZERO] * k + ah + [ZERO] * (size - k - m - 1))
    for k in range(m):
        rows.append([ZERO] * k + bh + [ZERO] * (size - k - n - 1))
    return rows


def univariate_resultant(a, b):
    """Resultant of two CPoly1 via the Sylvester determinant."""
    ca, cb = list(a.coeffs), list(b.coeffs)
    if not ca or not cb:
        return ZERO
    if len(ca) == 1 and len(cb) == 1:
        return ONE
    S = _sylvester(ca, cb)
    if a.is_exact and b.is_exact:
        return _det_exact(S)
    return complex(np.linalg.det(np.array([[complex(v) for v in r] for r in S])))


def _sylvester_at(cols_p, cols_q, m, n, v):
    a = [c(v) if not c.is_zero() else ZERO for c in cols_p]
    b = [c(v) if not c.is_zero() else ZERO for c in cols_q]
    a += [ZERO] * (m + 1 - len(a))
    b += [ZERO] * (n + 1 - len(b))
    return _sylvester(a, b)


def resultant(p, q, eliminate="y", degree_cap=DEFAULT_DEGREE_CAP):
    """Resultant of p and q with respect to ``eliminate``; a CPoly1 in the other variable.

    Uses the formal degrees of p and q in the eliminated variable (Sylvester
    determinant semantics), so the result also vanishes where both leading
    coefficients vanish.
    """
    if p.is_zero() or q.is_zero():
        raise FolianaError("resultant of a zero polynomial is undefined")
    m = p.deg_in(eliminate)
    n = q.deg_in(eliminate)
    if m == 0 and n == 0:
        raise FolianaError(f"neither polynomial depends on {eliminate}")
    keep = "x" if eliminate in ("y", 1) else "y"
    cols_p = p.as_univariate(eliminate)
    cols_q = q.as_univariate(eliminate)
    bound = min(n * max(p.deg_in(keep), 0) + m * max(q.deg_in(keep), 0), p.degree * q.degree)
    if bound > degree_cap:
        raise DegreeCapError(f"resultant degree bound {bound} exceeds cap {degree_cap}")
    npts = bound + 1
    if p.is_exact and q.is_exact:
        xs = [GaussRat(k) for k in range(npts)]
        vals = [_det_exact(_sylvester_at(cols_p, cols_q, m, n, v)) for v in xs]
        return _newton_interpolate(xs, vals)
    # Float path: sample on a circle and invert the DFT.
    ws = [cmath.exp(2j * cmath.pi * k / npts) for k in range(npts)]
    vals = []
    for v in ws:
        S = _sylvester_at(cols_p, cols_q, m, n, v)
        vals.append(np.linalg.det(np.array([[complex(e) for e in r] for r in S])))
    # vals_k = sum_j c_j w^(jk), so the forward FFT divided by npts recovers c_j.
    coeffs = np.fft.fft(np.array(vals)) / npts
    out = CPoly1([complex(c) for c in coeffs])
    return out.chop()


def _newton_interpolate(xs, ys):
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = CPoly1([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * CPoly1([-xs[i], ONE]) + CPoly1([coef[i]])
    return poly


# ---------------------------------------------------------------------------
# common zeros
# ---------------------------------------------------------------------------
_SHEARS = [Fraction(0), Fraction(3, 7), Fraction(-5, 11), Fraction(7, 3), Fraction(-2, 13),
           Fraction(11, 5), Fraction(13, 17), Fraction(-19, 7)]


def _shear(p, s):
    """p(x + s*y, y)."""
    if s == 0:
        return p
    return p.compose(CPoly2({(1, 0): ONE, (0, 1): GaussRat(s)}), Y)


def _good_shear(p, q):
    for s in _SHEARS:
        ps, qs = _shear(p, s), _shear(q, s)
        if ps.deg_in("y") == ps.degree and qs.deg_in("y") == qs.degree:
            yield s, ps, qs


def have_common_factor(p, q, degree_cap=DEFAULT_DEGREE_CAP):
    """True if p and q share a nonconstant factor (exact inputs decide exactly)."""
    if p.is_zero() or q.is_zero():
        other = q if p.is_zero() else p
        return other.degree != 0
    if p.degree == 0 or q.degree == 0:
        return False
    for _, ps, qs in _good_shear(p, q):
        r = resultant(ps, qs, "y", degree_cap)
        if p.is_exact and q.is_exact:
            return r.is_zero()
        ref = max(max(abs(complex(c)) for c in ps.terms.values()),
                  max(abs(complex(c)) for c in qs.terms.values())) ** (ps.degree + qs.degree)
        return all(abs(complex(c)) <= 1e-10 * ref for c in r.coeffs)
    raise FolianaError("no admissible shear found")


def common_zeros(p, q, tol=1e-9, degree_cap=DEFAULT_DEGREE_CAP):
    """Isolated common zeros of p and q in C^2 as ((x, y), multiplicity) pairs.

    Multiplicities are intersection multiplicities read off the resultant
    after a generic shear.  Points that snap to Gaussian rationals and vanish
    exactly are returned with exact coordinates.
    """
    if p.is_zero() or q.is_zero():
        raise CommonComponentError("zero polynomial has a non-isolated zero set")
    if p.degree == 0 or q.degree == 0:
        return []
    exact_in = p.is_exact and q.is_exact
    for s, ps, qs in _good_shear(p, q):
        R = resultant(ps, qs, "y", degree_cap)
        if R.is_zero() or (not exact_in and max((abs(complex(c)) for c in R.coeffs), default=0) == 0):
            raise CommonComponentError("polynomials share a nonconstant factor")
        if R.degree < 1:
            return []
        xroots = univariate_roots(R, tol=1e-7 if not exact_in else 1e-10)
        pts = []
        ok = True
        for X0, mult in xroots:
            cand = _fiber_solutions(ps, qs, X0, tol)
            if len(cand) != 1:
                ok = False
                break
            Y0 = cand[0]
            x0 = X0 + GaussRat(s) * Y0 if is_exact(X0) and is_exact(Y0) else complex(X0) + float(s) * complex(Y0)
            pts.append(((x0, Y0), mult))
        if not ok:
            continue
        out = []
        for (x0, y0), mult in pts:
            if not (is_exact(x0) and is_exact(y0)):
                x0, y0 = _newton2(p, q, complex(x0), complex(y0))
                sx, sy = snap(x0), snap(y0)
                if exact_in and sx is not None and sy is not None and not _nonzero(p(sx, sy)) and not _nonzero(q(sx, sy)):
                    x0, y0 = sx, sy
            out.append(((_tidy(x0), _tidy(y0)), mult))
        out.sort(key=lambda t: _pt_key(t[0]))
        return out
    raise NonConvergenceError("could not find a separating projection for the zero set")


def _tidy(z, rel=1e-14):
    """Zero out a float component that is negligible next to the other."""
    if is_exact(z):
        return z
    z = complex(z)
    m = abs(z)
    re_, im_ = z.real, z.imag
    if abs(re_) <= rel * m:
        re_ = 0.0
    if abs(im_) <= rel * m:
        im_ = 0.0
    return complex(re_, im_)


def _pt_key(pt):
    a, b = complex(pt[0]), complex(pt[1])
    return (round(a.real, 10), round(a.imag, 10), round(b.real, 10), round(b.imag, 10))


def _fiber_solutions(ps, qs, X0, tol):
    """Distinct y with ps(X0, y) = qs(X0, y) = 0."""
    fp = ps.slice("x", X0)
    fq = qs.slice("x", X0)
    base, other = (fp, fq) if fp.degree <= fq.degree else (fq, fp)
    if base.degree < 1:
        base, other = other, base
    if base.degree < 1:
        return []
    exact_chain = base.is_exact and other.is_exact
    if exact_chain:
        g = poly1_gcd(base, other)
        if g.degree < 1:
            return []
        return [r for r, _ in univariate_roots(g)]
    roots = univariate_roots(base.chop(), tol=1e-6)
    oc = other.to_complex()
    scale = max((abs(complex(c)) for c in oc.coeffs), default=1.0)
    good = []
    for r, _ in roots:
        rr = complex(r)
        res = abs(oc(rr)) / (scale * max(1.0, abs(rr)) ** max(oc.degree, 0))
        good.append((res, rr))
    good.sort(key=lambda t: t[0])
    hits = [r for res, r in good if res < 1e-6]
    if not hits and good:
        # Accept the best candidate when the fiber residues are only loosely small.
        if good[0][0] < 1e-3:
            hits = [good[0][1]]
    return _dedupe(hits, 1e-6)


def _dedupe(vals, tol):
    out = []
    for v in vals:
        if all(abs(v - w) > tol * max(1.0, abs(w)) for w in out):
            out.append(v)
    return out


def _newton2(p, q, x, y, steps=8):
    pc, qc = p.to_complex(), q.to_complex()
    px, py, qx, qy = pc.diff("x"), pc.diff("y"), qc.diff("x"), qc.diff("y")
    for _ in range(steps):
        f1, f2 = pc(x, y), qc(x, y)
        a, b, c, d = px(x, y), py(x, y), qx(x, y), qy(x, y)
        det = a * d - b * c
        if abs(det) < 1e-14 * (abs(a * d) + abs(b * c) + 1e-300):
            break
        dx = (d * f1 - b * f2) / det
        dy = (-c * f1 + a * f2) / det
        nx, ny = x - dx, y - dy
        if abs(pc(nx, ny)) + abs(qc(nx, ny)) > abs(f1) + abs(f2):
            break
        x, y = nx, ny
        if abs(dx) + abs(dy) < 1e-16 * (1 + abs(x) + abs(y)):
            break
    return x, y
