from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from momentstrings import (
    DiscreteMeasure,
    KreinLangerString,
    MomentSequence,
    Polynomial,
    RationalFunction,
    hankel_ledger,
    kl_from_moments,
    kl_index_map,
    m_tilde_ode_ratfun,
    m_tilde_ratfun,
    m_truncated,
    moments_from_kl,
    moments_from_measure,
    propagate,
    singularity_diagnostic,
    stieltjes_from_moments,
    trace_sums,
)
from momentstrings.errors import (
    MalformedInputError,
    NotDoublePositiveError,
    RealSpectralParameterError,
)
from momentstrings.exact import INF
from momentstrings.strings import max_kl_depth

from conftest import CATALAN, STIELTJES_EXAMPLE, TWO_POINT, measures, weyl_oracle

CAT_STRING = KreinLangerString([(1, 0, 1)] * 4, 1, truncated=True)


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_stieltjes_examples():
    st_ = stieltjes_from_moments(STIELTJES_EXAMPLE)
    assert [c.length for c in st_.cells] == [1, 9]
    assert [c.mass for c in st_.cells] == [Fraction(2, 3), Fraction(1, 12)]
    assert st_.tail == INF
    d = stieltjes_from_moments([1, 1, 1])
    assert [tuple(c) for c in d.cells] == [(1, 1, 0)] and d.tail == INF
    led = hankel_ledger(MomentSequence(STIELTJES_EXAMPLE))
    assert sum(st_.masses) == Fraction(3, 4) == -led.delta(-1, 2) / led.delta(1, 2)


def test_stieltjes_finite_rank_point_count():
    mu_moments = moments_from_measure(DiscreteMeasure([(1, 1), (2, 3), (5, Fraction(1, 2))]), 7)
    assert stieltjes_from_moments(mu_moments).kappa == 3


def test_stieltjes_depth_route():
    s = [1, 2, 5, 14, 42, 132, 429, 1430, 4862]  # shifted Catalan: double positive
    st_ = stieltjes_from_moments(s, depth=3)
    assert st_.truncated and st_.kappa == 3
    assert st_.cells == kl_from_moments(s, depth=3).cells


def test_not_double_positive_names_delta():
    with pytest.raises(NotDoublePositiveError) as err:
        stieltjes_from_moments(CATALAN[:9], depth=2)
    assert "Delta_{1,1}" in str(err.value)
    with pytest.raises(NotDoublePositiveError) as err:
        stieltjes_from_moments(TWO_POINT)
    assert "Delta_{1,1}" in str(err.value)


def test_index_map():
    assert kl_index_map(CATALAN[:17]) == [0, 2, 4, 6, 8]
    assert kl_index_map([1, 2, 5, 14, 42, 132, 429], 3) == [0, 1, 2, 3]


@settings(max_examples=25)
@given(measures(min_atoms=3, max_atoms=7))
def test_index_map_gaps(mu):
    s = moments_from_measure(mu, 2 * len(mu))
    ks = kl_index_map(s)
    assert ks[0] == 0
    assert all(b - a in (1, 2) for a, b in zip(ks, ks[1:]))


def test_kl_examples():
    cat = kl_from_moments(CATALAN[:17], depth=4)
    assert [tuple(c) for c in cat.cells] == [(1, 0, 1)] * 4 and cat.tail == 1
    two = kl_from_moments(TWO_POINT)
    assert [tuple(c) for c in two.cells] == [(1, 0, 1)] and two.tail == INF and not two.truncated


@settings(max_examples=25)
@given(measures(min_atoms=2, max_atoms=6, positive_support=True))
def test_kl_equals_stieltjes_on_double_positive(mu):
    s = moments_from_measure(mu, 2 * len(mu) + 1)
    kl = kl_from_moments(s)
    st_ = stieltjes_from_moments(s)
    assert kl.cells == st_.cells
    assert all(c.dipole == 0 for c in kl.cells)
    short = s.prefix(2 * len(mu))
    for depth in range(1, len(mu)):
        assert kl_from_moments(short, depth).cells == stieltjes_from_moments(short, depth).cells


def test_propagate_examples():
    two = kl_from_moments(TWO_POINT)
    st0 = propagate(two, 0, 1)
    assert st0.c == (1,) and st0.s == (1,)
    cat = kl_from_moments(CATALAN[:17], depth=4)
    st0 = propagate(cat, 0)
    assert all(c == 1 for c in st0.c)
    assert list(st0.s) == list(st0.x)
    p = propagate(two, 1j, 1)
    assert p.s[0] == 1 and p.c[0] == 1
    # slope jump -(z w + z^2 v) f = +f at z = i
    assert p.c_right[0] - p.c_left[0] == p.c[0]
    assert p.s_right[0] - p.s_left[0] == p.s[0]


def test_propagation_is_polynomial_in_z():
    z = Polynomial.z()
    st_ = propagate(CAT_STRING, z, 3)
    for j in range(3):
        assert isinstance(st_.c[j], Polynomial) and isinstance(st_.s[j], Polynomial)
    # entries evaluate to the complex sweep
    num = propagate(CAT_STRING, 0.3 + 1.1j, 3)
    for j in range(3):
        assert close(st_.c[j](0.3 + 1.1j), num.c[j]) and close(st_.s[j](0.3 + 1.1j), num.s[j])


def test_m_truncated_examples():
    two = kl_from_moments(TWO_POINT)
    cf, ode = m_truncated(two, 1, 1j)
    assert close(cf, 0.5j) and close(ode, 0.5j)
    cf, ode = m_truncated(two, 0, 1j)
    assert close(cf, 1 / (-1j)) and close(ode, 1 / (-1j))
    cf, ode = m_truncated(CAT_STRING, 3, 1j)
    assert abs(cf - ode) <= 1e-12
    with pytest.raises(RealSpectralParameterError):
        m_truncated(two, 1, 2.0)


@settings(max_examples=25)
@given(measures(min_atoms=1, max_atoms=6), st.floats(-3, 3), st.floats(0.1, 3))
def test_cf_and_ode_agree(mu, x, y):
    s = moments_from_measure(mu, 2 * len(mu) + 1)
    string = kl_from_moments(s)
    z = complex(x, y)
    for j in range(string.kappa + 1):
        cf, ode = m_truncated(string, j, z)
        assert close(cf, ode, 1e-9)
    # exact version: the two rational functions coincide at every depth
    for j in range(string.kappa + 1):
        assert m_tilde_ratfun(string, j) == m_tilde_ode_ratfun(string, j)
    full, _ = m_truncated(string, string.kappa, z)
    assert close(full, weyl_oracle(mu, z), 1e-9)


def test_trace_sum_examples():
    s = STIELTJES_EXAMPLE
    string = stieltjes_from_moments(s)
    assert string.positions[1] == 10
    assert trace_sums(s, string, 1) == (0, 0, 0)
    assert string.cells[1].length * string.cells[0].mass ** 2 == 4
    cat = kl_from_moments(CATALAN[:17], depth=4)
    for j in range(5):
        assert trace_sums(CATALAN[:17], cat, j) == (0, 0, 0)


def test_trace_sums_reject_missing_point():
    two = kl_from_moments(TWO_POINT)
    with pytest.raises(MalformedInputError):
        trace_sums(TWO_POINT, two, 1)


@settings(max_examples=25)
@given(measures(min_atoms=2, max_atoms=7))
def test_trace_sums_vanish(mu):
    s = moments_from_measure(mu, 2 * len(mu))
    led = hankel_ledger(s)
    J = max_kl_depth(s, led)
    string = kl_from_moments(s, J, led)
    for j in range(J + 1):
        assert trace_sums(s, string, j, led) == (0, 0, 0)


def test_singularity_examples():
    rep = singularity_diagnostic(CAT_STRING)
    assert list(rep.trajectory) == [2, 4, 6, 8]
    assert rep.verdict == "divergence detected"
    cat = kl_from_moments(CATALAN[:17], depth=4)
    assert list(singularity_diagnostic(cat).trajectory) == [2, 4, 6, 8]
    two = singularity_diagnostic(kl_from_moments(TWO_POINT))
    assert two.verdict == "singular" and two.determinate
    reg = KreinLangerString([(1, 1, 0), (Fraction(1, 4), 1, 0), (Fraction(1, 16), 1, 0)], Fraction(1, 64), truncated=True)
    assert singularity_diagnostic(reg).verdict == "regular-so-far"


def test_moments_from_kl_examples():
    s, n = moments_from_kl(kl_from_moments(TWO_POINT))
    assert list(s) == TWO_POINT and n == 5
    s, n = moments_from_kl(kl_from_moments(CATALAN[:17], depth=4))
    assert list(s)[:7] == [1, 0, 1, 0, 2, 0, 5]
    assert list(s) == CATALAN[:n]
    s, n = moments_from_kl(KreinLangerString([(1, 1, 0)], INF), count=6)
    assert list(s) == [1] * 6
    with pytest.raises(ValueError):
        moments_from_kl(KreinLangerString([(1, 0, 1)], 1, truncated=True))


@settings(max_examples=30)
@given(measures(min_atoms=1, max_atoms=6))
def test_exact_roundtrip(mu):
    k = len(mu)
    s = moments_from_measure(mu, 2 * k)
    back, _ = moments_from_kl(kl_from_moments(s), count=2 * k)
    assert list(back) == list(s)


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(-5, 5), st.integers(0, 3)), min_size=1, max_size=4),
       st.one_of(st.none(), st.integers(1, 9)))
def test_string_weyl_function_is_herglotz(raw, tail):
    cells = [(Fraction(l, 2), Fraction(w, 3), Fraction(v, 2)) for l, w, v in raw if w or v]
    if not cells and tail is None:
        return
    string = KreinLangerString(cells, INF if tail is None else tail)
    for z in (1j, 0.5 + 2j, -3 + 0.2j):
        cf, ode = m_truncated(string, string.kappa, z)
        assert cf.imag > 0 and close(cf, ode, 1e-9)


def test_string_validation():
    with pytest.raises(MalformedInputError):
        KreinLangerString([(1, 0, 0)], INF)
    with pytest.raises(MalformedInputError):
        KreinLangerString([(0, 1, 0)], INF)
    with pytest.raises(MalformedInputError):
        KreinLangerString([(1, 1, -1)], INF)
    with pytest.raises(MalformedInputError):
        KreinLangerString([], INF)
    assert m_tilde_ratfun(KreinLangerString([], 1)) == RationalFunction(Polynomial([-1]), Polynomial.z())
