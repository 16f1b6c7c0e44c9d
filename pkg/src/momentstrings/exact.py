"""Exact rational scalars, dense polynomials and rational functions.

Scalars are :class:`fractions.Fraction`.  Polynomials store their
coefficients lowest degree first and are immutable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import (
    DivisionByZeroPolynomialError,
    MalformedInputError,
    NotVanishingAtInfinityError,
)

__all__ = [
    "INF",
    "GaussianRational",
    "to_fraction",
    "format_rational",
    "Polynomial",
    "RationalFunction",
    "poly_divmod",
    "poly_gcd",
    "ratfun_reduce",
    "series_at_infinity",
    "sturm_chain",
    "real_roots",
    "bareiss_det",
]

INF = math.inf


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently smuggle rounding error into
    quantities that are supposed to be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational number: {value!r}")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational number: {value!r}") from exc
    raise MalformedInputError(f"not a rational number: {value!r}")


class GaussianRational:
    """Exact ``re + im*i`` with Fraction parts.

    A float ``z`` converts exactly, so products evaluated in this type are
    rounded once, at the final :func:`complex` call.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def from_complex(cls, z) -> GaussianRational:
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return GaussianRational((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip([to_fraction(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, coeffs):
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", _strip(coeffs))
        return p

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def z(cls):
        return cls._raw([Fraction(0), Fraction(1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial._raw([Fraction(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial._raw([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_divmod(self, o)

    def scale(self, c) -> Polynomial:
        c = to_fraction(c)
        return Polynomial._raw([c * x for x in self.coeffs])

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> Polynomial:
        return Polynomial._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation.

        Fractions (and ints) evaluate exactly; floats and complex numbers
        evaluate in double precision; a Polynomial argument composes.
        """
        if isinstance(x, (float, complex)):
            acc = 0j if isinstance(x, complex) else 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        acc = Fraction(0) if not isinstance(x, Polynomial) else Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                x = "z" if k == 1 else f"z^{k}"
                body = x if abs(c) == 1 else f"{mag}*{x}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_divmod(a: Polynomial, b: Polynomial):
    """Long division ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero():
        raise DivisionByZeroPolynomialError("division by the zero polynomial")
    if a.degree < b.degree:
        return Polynomial(), a
    rem = list(a.coeffs)
    db = b.degree
    lead = b.leading
    quot = [Fraction(0)] * (a.degree - db + 1)
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db] / lead
        quot[k] = c
        if c:
            for i, bc in enumerate(b.coeffs):
                rem[k + i] -= c * bc
    return Polynomial._raw(quot), Polynomial._raw(rem[:db])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


class RationalFunction:
    """Quotient of polynomials kept coprime with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial([num] if not isinstance(num, (list, tuple)) else num)
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial(den if isinstance(den, (list, tuple)) else [den])
        if den.is_zero():
            raise DivisionByZeroPolynomialError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        if num.is_zero():
            den = Polynomial._raw([Fraction(1)])
        else:
            lead = den.leading
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_polynomial(cls, p: Polynomial):
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def vanishes_at_infinity(self):
        return self.num.degree < self.den.degree

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, int, Fraction)):
            return self == _as_ratfun(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = _as_ratfun(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = _as_ratfun(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_ratfun(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_ratfun(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.num.is_zero():
            raise DivisionByZeroPolynomialError("reciprocal of the zero function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = _as_ratfun(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = _as_ratfun(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def series(self, n_terms):
        return series_at_infinity(self, n_terms)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({self.num}) / ({self.den})"


def _as_ratfun(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    if isinstance(x, (int, Fraction)):
        return RationalFunction(Polynomial([x]))
    return None


def ratfun_reduce(f: RationalFunction) -> RationalFunction:
    """Canonical form: coprime numerator/denominator, monic denominator.

    RationalFunction already normalizes on construction; this rebuilds
    from the raw parts so that callers holding an unnormalized pair of
    polynomials get the same canonical object.
    """
    return RationalFunction(f.num, f.den)


def series_at_infinity(f: RationalFunction, n_terms: int):
    """Coefficients ``c_1..c_n`` of ``f(z) = sum_k c_k z^-k``.

    Obtained by long division of reversed coefficient lists, exactly.
    """
    if f.num.is_zero():
        return [Fraction(0)] * n_terms
    if not f.vanishes_at_infinity():
        raise NotVanishingAtInfinityError(
            f"deg num = {f.num.degree} >= deg den = {f.den.degree}"
        )
    d = f.den.degree
    den = f.den.coeffs  # monic
    # f = sum_k c_k z^-k  <=>  num(z) = den(z) * sum_k c_k z^-k
    # coefficient of z^(d-j) for j>=1: num[d-j] = sum_{i=1..j} c_i den[d-j+i]
    out = []
    for j in range(1, n_terms + 1):
        acc = f.num[d - j] if d - j >= 0 else Fraction(0)
        for i in range(1, j):
            k = d - j + i
            if 0 <= k <= d:
                acc -= out[i - 1] * den[k]
        out.append(acc)  # den[d] == 1
    return out


def sturm_chain(p: Polynomial):
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = poly_divmod(chain[-2], chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    count = 0
    prev = 0
    for q in chain:
        v = q(x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def real_roots(p: Polynomial, tol=Fraction(1, 10**14)):
    """Real roots of a squarefree polynomial as sorted Fractions.

    Roots are isolated exactly with a Sturm chain, then refined by
    bisection until the bracket is narrower than ``tol``.  A root that is
    a rational number with a small denominator is returned exactly.
    """
    tol = to_fraction(tol) if not isinstance(tol, float) else Fraction(tol)
    if p.degree < 1:
        return []
    chain = sturm_chain(p)
    bound = 1 + max(abs(c / p.leading) for c in p.coeffs[:-1]) if p.degree else Fraction(1)
    bound = Fraction(math.ceil(bound))
    lo, hi = -bound, bound
    stack = [(lo, hi, _sign_changes(chain, lo), _sign_changes(chain, hi))]
    brackets = []
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            brackets.append((a, b))
            continue
        mid = (a + b) / 2
        k = 3
        while p(mid) == 0:
            # Sturm counts need a split point that is not itself a root
            mid = a + (b - a) * Fraction(k, 2 * k + 1)
            k += 1
        vm = _sign_changes(chain, mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    roots = []
    for a, b in brackets:
        fa = p(a)
        while b - a > tol:
            mid = (a + b) / 2
            fm = p(mid)
            if fm == 0:
                a = b = mid
                break
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        if a == b:
            roots.append(a)
            continue
        mid = (a + b) / 2
        guess = mid.limit_denominator(10**6)
        roots.append(guess if a <= guess <= b and p(guess) == 0 else mid)
    return sorted(roots)


def bareiss_det(matrix) -> Fraction:
    """Determinant of a square matrix of Fractions.

    Rows are cleared of denominators first so that the fraction-free
    Bareiss recursion runs over Python integers, where every division is
    exact.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in matrix:
        row = [to_fraction(x) for x in row]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in row])
        scale *= lcm
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1]) / scale
