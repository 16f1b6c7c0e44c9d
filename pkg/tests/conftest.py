from fractions import Fraction
from math import comb

import pytest
from hypothesis import settings, strategies as st

from momentstrings import DiscreteMeasure, moments_from_measure

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def catalan(count):
    """Moments of the semicircle law on [-2, 2]: zero odd moments, Catalan
    numbers at even indices."""
    out = []
    for k in range(count):
        out.append(0 if k % 2 else comb(k, k // 2) // (k // 2 + 1))
    return out


def gaussian(count):
    """Moments of the standard normal law: (k-1)!! at even k."""
    out = []
    for k in range(count):
        if k % 2:
            out.append(0)
        else:
            v = 1
            for j in range(k - 1, 0, -2):
                v *= j
            out.append(v)
    return out


CATALAN = catalan(40)
TWO_POINT = [1, 0, 1, 0, 1]
STIELTJES_EXAMPLE = [1, Fraction(3, 2), Fraction(5, 2), Fraction(9, 2), Fraction(17, 2)]


rationals = st.builds(Fraction, st.integers(-100, 100), st.integers(1, 10))
weights = st.builds(Fraction, st.integers(1, 10), st.integers(1, 10)).filter(lambda w: w <= 1)


@st.composite
def measures(draw, min_atoms=1, max_atoms=6, lo=-10, hi=10, positive_support=False):
    k = draw(st.integers(min_atoms, max_atoms))
    lo_num = 1 if positive_support else lo * 10
    tenths = draw(st.lists(st.integers(lo_num, hi * 10), min_size=k, max_size=k, unique=True))
    positions = [Fraction(t, 10) for t in tenths]
    ws = draw(st.lists(weights, min_size=k, max_size=k))
    return DiscreteMeasure(list(zip(positions, ws)))


def random_measure(rng, max_atoms=6, lo=-10, hi=10, atoms=None):
    """Plain-random counterpart of ``measures`` for the acceptance runs."""
    k = atoms or rng.randint(1, max_atoms)
    tenths = rng.sample(range(lo * 10, hi * 10 + 1), k)
    ws = [Fraction(rng.randint(1, 20), 20) for _ in range(k)]
    return DiscreteMeasure([(Fraction(t, 10), w) for t, w in zip(tenths, ws)])


def weyl_oracle(mu, z):
    """m(z) = sum w/(x - z) straight from the atoms."""
    return sum(complex(float(w)) / (float(x) - z) for x, w in mu.atoms)


@pytest.fixture
def catalan_moments():
    return list(CATALAN)


def random_kl_string(rng, max_cells=5):
    """A random complete finite Krein-Langer string."""
    from momentstrings import KreinLangerString
    from momentstrings.exact import INF

    cells = []
    for _ in range(rng.randint(0, max_cells)):
        l = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        w = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        v = Fraction(rng.randint(0, 5), rng.randint(1, 3)) if rng.random() < 0.5 else Fraction(0)
        if w == 0 and v == 0:
            v = Fraction(1)
        cells.append((l, w, v))
    tail = INF if cells and rng.random() < 0.5 else Fraction(rng.randint(1, 9), rng.randint(1, 3))
    return KreinLangerString(cells, tail)


def random_hamiltonian(rng, max_intervals=8):
    """A random complete Hamburger Hamiltonian, built angle by angle with the
    window rule."""
    from momentstrings.canonical import AngleData, HamburgerHamiltonian, Interval, _next_window
    from momentstrings.exact import INF

    angles = [AngleData(0, Fraction(0))]
    for _ in range(rng.randint(0, max_intervals - 1)):
        prev = angles[-1]
        if not prev.zero_mod_pi and rng.random() < 0.3:
            cot = None
        else:
            cot = Fraction(rng.randint(-8, 8), rng.randint(1, 3))
            if not prev.zero_mod_pi and cot == prev.cot:
                cot += 1
        angles.append(_next_window(prev, cot))
    lengths = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in angles]
    ivs = [Interval(l, a) for l, a in zip(lengths, angles)]
    last = angles[-1]
    if last.zero_mod_pi:
        # close with an infinite interval of the next window
        ivs.append(Interval(INF, _next_window(last, Fraction(rng.randint(-4, 4)))))
    elif len(ivs) == 1 or rng.random() < 0.5:
        ivs.append(Interval(INF, _next_window(last, None)))
    else:
        ivs[-1] = Interval(INF, last)
    return HamburgerHamiltonian(tuple(ivs))
