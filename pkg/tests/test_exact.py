from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from momentstrings.errors import (
    DivisionByZeroPolynomialError,
    MalformedInputError,
    NotVanishingAtInfinityError,
)
from momentstrings.exact import (
    GaussianRational,
    Polynomial,
    RationalFunction,
    bareiss_det,
    poly_divmod,
    poly_gcd,
    ratfun_reduce,
    real_roots,
    series_at_infinity,
    to_fraction,
)

from conftest import rationals

Z = Polynomial.z()
polys = st.lists(rationals, max_size=7).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_divmod_examples():
    q, r = poly_divmod(Z * Z - 1, Z)
    assert (q, r) == (Z, Polynomial([-1]))
    q, r = poly_divmod(Z, Z * Z - 1)
    assert q.is_zero() and r == Z
    q, r = poly_divmod(Polynomial(), Z + 1)
    assert q.is_zero() and r.is_zero()


def test_divmod_by_zero():
    with pytest.raises(DivisionByZeroPolynomialError):
        poly_divmod(Z, Polynomial())


@given(polys, nonzero_polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys)
def test_product_matches_sympy(a, b):
    x = sympy.Symbol("x")

    def sym(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))

    expected = sympy.Poly(sympy.expand(sym(a) * sym(b)), x).all_coeffs()[::-1] if not (a * b).is_zero() else []
    assert [Fraction(int(c.p), int(c.q)) for c in expected] == list((a * b).coeffs)


def test_zero_polynomial_degree():
    assert Polynomial().degree == -1
    assert Polynomial([0, 0]).is_zero()


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert g.leading == 1
    assert divmod(a * c, g)[1].is_zero() and divmod(b * c, g)[1].is_zero()
    assert divmod(g, c.monic())[1].is_zero()


def test_reduce_examples():
    f = ratfun_reduce(RationalFunction(Z * Z - Z, Z))
    assert f.num == Z - 1 and f.den == Polynomial([1])
    f = RationalFunction(-Z, Z * Z - 1)
    assert f.num == -Z and f.den == Z * Z - 1
    f = RationalFunction(Polynomial(), Z - 3)
    assert f.num.is_zero() and f.den == Polynomial([1])


def test_reduce_makes_denominator_monic():
    f = RationalFunction(Z, Polynomial([1, 0, -1]))  # z/(1 - z^2)
    assert f.den.leading == 1
    assert f.num == -Z


def test_series_examples():
    assert series_at_infinity(RationalFunction(Z, Polynomial([1, 0, -1])), 5) == [-1, 0, -1, 0, -1]
    assert series_at_infinity(RationalFunction(Polynomial([1]), Polynomial([1, -1])), 3) == [-1, -1, -1]
    assert series_at_infinity(RationalFunction(Polynomial(), Z + 1), 4) == [0, 0, 0, 0]


def test_series_rejects_non_vanishing():
    with pytest.raises(NotVanishingAtInfinityError):
        series_at_infinity(RationalFunction(Z, Z + 1), 3)


@given(st.lists(st.tuples(rationals, rationals.filter(lambda w: w != 0)), min_size=1, max_size=4, unique_by=lambda t: t[0]))
def test_series_of_partial_fractions(terms):
    # sum w/(x - z) = -sum_k (sum w x^k) z^{-k-1}
    f = RationalFunction(Polynomial())
    for x, w in terms:
        f = f + RationalFunction(Polynomial([w]), Polynomial([x, -1]))
    if f.is_zero():
        return
    coeffs = series_at_infinity(f, 6)
    for k, c in enumerate(coeffs):
        assert c == -sum(w * x**k for x, w in terms)


def test_ratfun_arithmetic_and_evaluation():
    f = RationalFunction(Polynomial([1]), Z - 1)
    g = RationalFunction(Polynomial([1]), Z + 1)
    h = f + g
    assert h == RationalFunction(Z.scale(2), Z * Z - 1)
    assert h(Fraction(3)) == Fraction(3, 4)
    assert abs(h(2j) - 2 * 2j / ((2j) ** 2 - 1)) < 1e-15
    assert (f * g).reciprocal() == RationalFunction(Z * Z - 1)


def test_real_roots_exact_and_refined():
    p = (Z - 1) * (Z + 2) * (Z - Fraction(1, 3))
    assert real_roots(p) == [-2, Fraction(1, 3), 1]
    roots = real_roots(Z * Z - 2)
    assert len(roots) == 2
    assert abs(float(roots[1]) - 2**0.5) < 1e-13


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_sympy(rows):
    expected = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows]).det()
    assert bareiss_det(rows) == Fraction(int(expected.p), int(expected.q))


def test_bareiss_needs_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [1, 0]]) == 0
    assert bareiss_det([]) == 1


def test_to_fraction_rejects_floats():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(5) == 5
    with pytest.raises(MalformedInputError):
        to_fraction(0.5)
    with pytest.raises(MalformedInputError):
        to_fraction("abc")
    with pytest.raises(MalformedInputError):
        to_fraction(True)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_gaussian_rational_matches_sympy(a, b):
    x, y = GaussianRational.from_complex(a), GaussianRational.from_complex(b)
    sa = sympy.Rational(x.re) + sympy.I * sympy.Rational(x.im)
    sb = sympy.Rational(y.re) + sympy.I * sympy.Rational(y.im)
    for got, want in ((x + y, sa + sb), (x - y, sa - sb), (x * y, sa * sb)):
        want = sympy.expand(want)
        assert got.re == Fraction(str(sympy.re(want))) and got.im == Fraction(str(sympy.im(want)))
    if y != 0:
        q = (x / y) * y
        assert q == x


def test_gaussian_rational_mixing():
    z = GaussianRational(1, 2)
    assert 1 - z == GaussianRational(0, -2)
    assert Fraction(1, 2) * z == GaussianRational(Fraction(1, 2), 1)
    assert complex(z * z) == (1 + 2j) ** 2
    with pytest.raises(ZeroDivisionError):
        z / GaussianRational()
