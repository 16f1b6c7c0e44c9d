import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from momentstrings import (
    AngleData,
    HamburgerHamiltonian,
    Interval,
    KreinLangerString,
    Polynomial,
    RationalFunction,
    euclid_decompose,
    hamiltonian_from_moments,
    hamiltonian_ratfun,
    hamiltonian_to_kl,
    hamiltonian_trajectory,
    kl_from_moments,
    kl_to_hamiltonian,
    lemma_recursion_check,
    m_tilde_ratfun,
    m_truncated,
    moments_from_measure,
    singularity_diagnostic,
    stieltjes_from_moments,
    transfer_matrix,
    weyl_function,
    weyl_principal,
)
from momentstrings.canonical import assign_windows, shifted_weyl_functions
from momentstrings.errors import MalformedInputError, NotHerglotzError, NotVanishingAtInfinityError
from momentstrings.exact import INF
from momentstrings.strings import kl_index_map, max_kl_depth

from conftest import CATALAN, STIELTJES_EXAMPLE, TWO_POINT, measures, random_hamiltonian, random_kl_string

Z = Polynomial.z()


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_catalan_hamiltonian():
    H = hamiltonian_from_moments(CATALAN[:17])
    assert all(l == 1 for l in H.lengths)
    for n, a in enumerate(H.angles):
        # theta_n = (n+1) pi/2
        if n % 2:
            assert a.zero_mod_pi and a.pi_index == (n + 1) // 2
        else:
            assert a.cot == 0 and a.pi_index == n // 2
        assert abs(a.theta() - (n + 1) * 3.141592653589793 / 2) < 1e-12


def test_first_interval():
    for s in ([1, 2, 5, 14], [3, 1, 2, 7, 30], TWO_POINT):
        H = hamiltonian_from_moments(s)
        a0 = H.angles[0]
        assert a0.cot == 0 and a0.pi_index == 0
    assert hamiltonian_from_moments(CATALAN[:9]).lengths[0] == 1


def test_first_length_is_one_over_s0():
    # ell_0 = |P_0(0)|^2 = 1/s_0
    assert hamiltonian_from_moments([4, 1, 3, 2, 9]).lengths[0] == Fraction(1, 4)


@settings(max_examples=20)
@given(measures(min_atoms=2, max_atoms=6, positive_support=True))
def test_double_positive_hamiltonian_matches_stieltjes(mu):
    s = moments_from_measure(mu, 2 * len(mu) + 1)
    H = hamiltonian_from_moments(s)
    st_ = stieltjes_from_moments(s)
    assert not any(a.zero_mod_pi for a in H.angles)
    for iv, l in zip(H.intervals, st_.lengths):
        if not iv.infinite:
            assert iv.length * iv.angle.sin2() == l


def test_transfer_examples():
    H = hamiltonian_from_moments(CATALAN[:17])
    u = transfer_matrix(H, 0, 4)
    assert u.rows() == ((1, 0), (0, 1))
    single = HamburgerHamiltonian((Interval(1, AngleData(0, 0)),), truncated=True)
    z = 0.7 + 0.2j
    u = transfer_matrix(single, z)
    assert u.rows() == ((1, -z), (0, 1))
    assert abs(transfer_matrix(H, 1j, 4).det() - 1) < 1e-12
    with pytest.raises(ValueError):
        transfer_matrix(H, 1j, 40)


def test_weyl_principal_examples():
    single = HamburgerHamiltonian((Interval(1, AngleData(0, 0)),), truncated=True)
    assert close(weyl_principal(single, 2j), -1 / 2j)
    H = hamiltonian_from_moments(CATALAN[:17])
    # the Hamiltonian truncated at interval 2k matches the string convergent at depth k
    cat = kl_from_moments(CATALAN[:17], depth=4)
    for k in range(5):
        cf, _ = m_truncated(cat, k, 1j)
        assert close(weyl_principal(H, 1j, 2 * k), cf)


def test_lemma_recursion_on_zero_interval():
    H = kl_to_hamiltonian(kl_from_moments(TWO_POINT))
    m = shifted_weyl_functions(H, 2j)
    # interval 1 is degenerate with length 1: m_1 = ell z + m_2, and the
    # infinite tail with cot 0 contributes m_2 = 0
    assert len(m) == 2
    assert close(m[1], 1 * 2j + 0)
    assert lemma_recursion_check(H, 1j) < 1e-12


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_lemma_recursion_random(seed):
    H = random_hamiltonian(random.Random(seed))
    for z in (1j, 2j):
        assert lemma_recursion_check(H, z) < 1e-12


def test_euclid_examples():
    s = euclid_decompose(RationalFunction(Polynomial([-1]), Z))
    assert s.cells == () and s.tail == 1
    s = euclid_decompose(RationalFunction(Z, Polynomial([1, 0, -1])))
    assert [tuple(c) for c in s.cells] == [(1, 0, 1)] and s.tail == INF
    s = euclid_decompose(RationalFunction(Polynomial([1]), Polynomial([1, -1])))
    assert [tuple(c) for c in s.cells] == [(1, 1, 0)] and s.tail == INF


def test_euclid_rejections():
    with pytest.raises(NotHerglotzError):
        euclid_decompose(RationalFunction(Polynomial([1]), Z - 1))  # negative weight
    with pytest.raises(NotVanishingAtInfinityError):
        euclid_decompose(RationalFunction(Z, Z + 1))
    with pytest.raises(NotHerglotzError):
        euclid_decompose(RationalFunction(Polynomial([1]), Z * Z + 1))  # complex poles


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-30, 30), st.integers(1, 10)), min_size=1, max_size=5, unique_by=lambda t: t[0]))
def test_euclid_reexpansion(atoms):
    f = RationalFunction(Polynomial())
    for x, w in atoms:
        f = f + RationalFunction(Polynomial([Fraction(w, 7)]), Polynomial([Fraction(x, 3), -1]))
    string = euclid_decompose(f)
    assert all(c.length > 0 and c.dipole >= 0 for c in string.cells)
    g = m_tilde_ratfun(string)
    assert g.num * f.den == f.num * g.den


def test_kl_to_hamiltonian_examples():
    H = kl_to_hamiltonian(kl_from_moments(TWO_POINT))
    assert H.lengths == [1, 1, INF]
    assert [a.theta() for a in H.angles] == pytest.approx([3.141592653589793 / 2, 3.141592653589793, 1.5 * 3.141592653589793])
    st_ = stieltjes_from_moments(STIELTJES_EXAMPLE)
    H = kl_to_hamiltonian(st_)
    cots = [a.cot for a in H.angles]
    assert None not in cots and cots == sorted(cots)
    cat = kl_from_moments(CATALAN[:17], depth=4)
    assert kl_to_hamiltonian(cat) == hamiltonian_from_moments(CATALAN[:17], depth=8)


def test_hamiltonian_to_kl_examples():
    H = HamburgerHamiltonian(((1, AngleData(0, 0)), (1, AngleData.zero(1)), (INF, AngleData(1, 0))))
    s = hamiltonian_to_kl(H)
    assert [tuple(c) for c in s.cells] == [(1, 0, 1)] and s.tail == INF
    H = HamburgerHamiltonian(((1, AngleData(0, 0)), (INF, AngleData.zero(1))))
    s = hamiltonian_to_kl(H)
    assert s.cells == () and s.tail == 1 and not s.truncated


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_string_hamiltonian_maps_are_inverse(seed):
    rng = random.Random(seed)
    string = random_kl_string(rng)
    H = kl_to_hamiltonian(string)
    assert hamiltonian_to_kl(H) == string
    assert all(a.trace_normed() for a in H.angles)
    if string.finite_tail:
        assert string.size() == sum(H.lengths[:-1])
    H2 = random_hamiltonian(rng)
    assert kl_to_hamiltonian(hamiltonian_to_kl(H2)) == H2


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_weyl_functions_preserved_by_maps(seed):
    string = random_kl_string(random.Random(seed))
    H = kl_to_hamiltonian(string)
    assert hamiltonian_ratfun(H) == m_tilde_ratfun(string)
    z = 0.4 + 1.3j
    assert close(weyl_function(H, z), m_truncated(string, string.kappa, z)[0], 1e-9)


@settings(max_examples=20)
@given(measures(min_atoms=3, max_atoms=7))
def test_commutative_square(mu):
    k = len(mu)
    for count in (2 * k, 2 * k + 1):
        s = moments_from_measure(mu, count)
        H = hamiltonian_from_moments(s)
        string = hamiltonian_to_kl(H)
        if count == 2 * k + 1:
            assert string == kl_from_moments(s)
        else:
            assert string.cells == kl_from_moments(s, string.kappa).cells
            assert string.tail == kl_from_moments(s, string.kappa).tail


@settings(max_examples=20)
@given(measures(min_atoms=3, max_atoms=7))
def test_trajectories_agree(mu):
    s = moments_from_measure(mu, 2 * len(mu))
    J = max_kl_depth(s)
    string = kl_from_moments(s, J)
    ks = kl_index_map(s, J)
    H = hamiltonian_from_moments(s, ks[J])
    traj = hamiltonian_trajectory(H)
    sizes = singularity_diagnostic(string).sizes
    for j, size in enumerate(sizes):
        assert size == traj[ks[j]]


def test_window_rule():
    assert [a.pi_index for a in assign_windows([0, None, 0, 2, 1, None, -5])] == [0, 1, 1, 2, 2, 3, 3]
    with pytest.raises(MalformedInputError):
        assign_windows([0, None, None])
    with pytest.raises(MalformedInputError):
        HamburgerHamiltonian(((1, AngleData(0, 0)), (1, AngleData(0, 1))))
    with pytest.raises(MalformedInputError):
        HamburgerHamiltonian(((1, AngleData(0, 1)),))
    with pytest.raises(MalformedInputError):
        HamburgerHamiltonian(((INF, AngleData(0, 0)), (1, AngleData(1, 1))))


def test_trace_normed_exact():
    for c in (0, 1, Fraction(-7, 3), Fraction(22, 9)):
        a = AngleData(0, c)
        (c2, cs), (_, s2) = a.h_matrix()
        assert c2 + s2 == 1 and cs * cs == c2 * s2
    assert AngleData.zero(2).trace_normed()
