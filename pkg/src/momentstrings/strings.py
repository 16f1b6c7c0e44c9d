"""Krein-Stieltjes and Krein-Langer strings.

A string is a list of cells ``(l_j, w_j, v_j)``: the gap ``l_j`` to the
point ``x_j = l_0 + ... + l_j`` that carries mass ``w_j`` and dipole
``v_j``, followed by a final massless stretch ``tail`` of length ``l_kappa``
(possibly infinite).  Its Weyl function is the continued fraction

    1/(-l_0 z + 1/(w_0 + v_0 z + 1/(-l_1 z + ... + 1/(-l_kappa z))))
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    ConsistencyError,
    InsufficientMomentsError,
    MalformedInputError,
    NotDoublePositiveError,
    NotStrictlyPositiveError,
    RealSpectralParameterError,
)
from .exact import INF, Polynomial, RationalFunction, format_rational, series_at_infinity, to_fraction
from .moments import MomentSequence, classify, hankel_ledger

__all__ = [
    "Cell",
    "KreinLangerString",
    "StieltjesString",
    "PropagationState",
    "DeterminacyReport",
    "stieltjes_from_moments",
    "kl_index_map",
    "kl_from_moments",
    "max_kl_depth",
    "propagate",
    "m_truncated",
    "m_tilde_ratfun",
    "m_tilde_ode_ratfun",
    "trace_sums",
    "singularity_diagnostic",
    "moments_from_kl",
]


@dataclass(frozen=True)
class Cell:
    length: Fraction
    mass: Fraction
    dipole: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("length", "mass", "dipole"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.length <= 0:
            raise MalformedInputError(f"cell length must be positive, got {format_rational(self.length)}")
        if self.dipole < 0:
            raise MalformedInputError("dipoles must be non-negative")
        if self.mass == 0 and self.dipole == 0:
            raise MalformedInputError("a cell needs a nonzero mass or a positive dipole")

    def __iter__(self):
        return iter((self.length, self.mass, self.dipole))


def _coerce_tail(tail):
    if tail is None or tail == INF or (isinstance(tail, str) and tail.strip().lower() == "inf"):
        return INF
    t = to_fraction(tail)
    if t <= 0:
        raise MalformedInputError("tail length must be positive")
    return t


@dataclass(frozen=True)
class KreinLangerString:
    """Finitely many point masses and dipoles followed by a massless tail.

    ``truncated`` records that the object was cut from longer data: the
    finite tail is then the next gap of a string that goes on.
    """

    cells: tuple
    tail: object = INF
    truncated: bool = False

    def __post_init__(self):
        cells = tuple(c if isinstance(c, Cell) else Cell(*c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "tail", _coerce_tail(self.tail))
        if not cells and self.tail == INF:
            raise MalformedInputError("a string without masses needs a finite length")

    @property
    def kappa(self) -> int:
        return len(self.cells)

    @property
    def finite_tail(self) -> bool:
        return self.tail != INF

    @property
    def lengths(self):
        return [c.length for c in self.cells] + [self.tail]

    @property
    def masses(self):
        return [c.mass for c in self.cells]

    @property
    def dipoles(self):
        return [c.dipole for c in self.cells]

    @property
    def positions(self):
        out, x = [], Fraction(0)
        for c in self.cells:
            x += c.length
            out.append(x)
        return out

    @property
    def total_length(self):
        if not self.finite_tail:
            return INF
        return sum((c.length for c in self.cells), Fraction(0)) + self.tail

    @property
    def is_stieltjes(self) -> bool:
        return all(c.dipole == 0 and c.mass > 0 for c in self.cells)

    def truncate(self, depth: int) -> KreinLangerString:
        """Keep cells ``0..depth-1``; the gap ``l_depth`` becomes the tail."""
        if depth >= self.kappa:
            return self
        return KreinLangerString(self.cells[:depth], self.cells[depth].length, truncated=True)

    def size(self):
        """``L + int w^2 + total dipole``, i.e. the image length under the
        change of variables to a canonical system (infinite for an
        infinite tail)."""
        if not self.finite_tail:
            return INF
        return _size_through(self, self.kappa)


class StieltjesString(KreinLangerString):
    """A Krein-Langer string with positive masses and no dipoles."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_stieltjes:
            raise MalformedInputError("Stieltjes strings carry positive masses and no dipoles")

    @classmethod
    def from_kl(cls, string: KreinLangerString) -> StieltjesString:
        return cls(string.cells, string.tail, string.truncated)


def _running_masses(string):
    w, out = Fraction(0), []
    for c in string.cells:
        w += c.mass
        out.append(w)
    return out


def _size_through(string, j):
    """``x_j + int_0^{x_j} w^2 + sum_{i<j} v_i`` with ``x_kappa = L``."""
    lengths = string.lengths
    total = Fraction(0)
    w = Fraction(0)
    for i in range(j + 1):
        total += lengths[i] * (1 + w * w)
        if i < j:
            total += string.cells[i].dipole
            w += string.cells[i].mass
    return total


# --------------------------------------------------------------------------
# construction from moments


def _ensure(s):
    return s if isinstance(s, MomentSequence) else MomentSequence(s)


def kl_index_map(s, depth: Optional[int] = None, ledger=None):
    """``k(0), k(1), ...``: the indices of the nonzero ``Delta_{1,k}``.

    Stops where the data (or strict positivity) runs out, or after
    ``depth + 1`` entries.
    """
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    cls = classify(s, ledger)
    limit = cls.strictly_positive_through + 1
    top = min(ledger.max_index(1), limit)
    ks = [0]
    while depth is None or len(ks) <= depth:
        nxt = ks[-1] + 1
        if nxt > top:
            break
        if ledger.delta(1, nxt) != 0:
            ks.append(nxt)
            continue
        if nxt + 1 > top:
            break
        if ledger.delta(1, nxt + 1) == 0:
            if nxt + 1 <= cls.strictly_positive_through:
                raise ConsistencyError(
                    f"Delta_{{1,{nxt}}} = Delta_{{1,{nxt + 1}}} = 0 for a strictly positive sequence"
                )
            break
        ks.append(nxt + 1)
    if depth is not None and len(ks) <= depth:
        raise InsufficientMomentsError(
            2 * (ks[-1] + 2) - 1, f"k({depth}) of the index map"
        )
    return ks


def _kl_cells_from_ledger(ledger, depth: int):
    """Cells ``0..depth-1`` and the gap ``l_depth`` from the determinant formulas."""
    d = ledger.delta
    ks = kl_index_map(ledger.moments, depth, ledger)
    cells = []
    for j in range(depth):
        k, k1 = ks[j], ks[j + 1]
        length = d(1, k) ** 2 / (d(0, k - 1) * d(0, k))
        if k1 - k == 1:
            mass = d(0, k) ** 2 / (d(1, k) * d(1, k1))
            dipole = Fraction(0)
        else:
            mass = d(-1, k) / d(1, k) - d(-1, k1) / d(1, k1)
            dipole = d(-1, k + 1) ** 2 / (d(0, k) * d(0, k + 1))
        cells.append(Cell(length, mass, dipole))
    k = ks[depth]
    dk = d(0, k)
    tail = INF if dk == 0 else d(1, k) ** 2 / (d(0, k - 1) * dk)
    return cells, tail


def max_kl_depth(s, ledger=None) -> int:
    """Deepest ``J`` for which the determinant formulas give cells
    ``0..J-1`` and the gap ``l_J``."""
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    ks = kl_index_map(s, None, ledger)
    for depth in range(len(ks) - 1, -1, -1):
        try:
            _kl_cells_from_ledger(ledger, depth)
        except InsufficientMomentsError:
            continue
        return depth
    raise InsufficientMomentsError(0, "no string data")


def _completion_depth(s, cls):
    """Largest n with Delta_{0,n-1} > 0 and s_{2n-1} available."""
    n = min(cls.strictly_positive_through + 1, len(s) // 2)
    if n < 1:
        raise InsufficientMomentsError(1, "at least s_0 and s_1 are needed")
    return n


def _euclid_string(f):
    from .canonical import euclid_decompose

    return euclid_decompose(f)


def kl_from_moments(s, depth: Optional[int] = None, ledger=None) -> KreinLangerString:
    """The Krein-Langer string of a moment prefix.

    * finite rank N: the exact finite string of ``-q_N/p_N`` (Euclidean
      decomposition), truncated to ``depth`` cells if requested;
    * ``depth`` given: cells ``0..depth-1`` from the Hankel determinant
      formulas with the next gap as a finite tail (``truncated=True``);
    * ``depth=None``: the finite string of the rational Pade approximant
      ``-q_n/p_n`` built from every available moment pair.  It is a
      complete finite string that reproduces ``s_0..s_{2n-1}`` exactly;
      use ``depth`` (or :func:`max_kl_depth`) for the string of the data
      itself.
    """
    from .jacobi_weyl import jacobi_ratfun

    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    cls = classify(s, ledger)
    if cls.finite_rank is not None:
        string = _euclid_string(jacobi_ratfun(s, cls.finite_rank, ledger))
        return string if depth is None else string.truncate(depth)
    if depth is None:
        return _euclid_string(jacobi_ratfun(s, _completion_depth(s, cls), ledger))
    cells, tail = _kl_cells_from_ledger(ledger, depth)
    return KreinLangerString(cells, tail, truncated=True)


def _first_bad_delta1(ledger):
    for n in range(1, ledger.max_index(1) + 1):
        v = ledger.delta(1, n)
        if v <= 0:
            return n, v
    return None


def stieltjes_from_moments(s, depth: Optional[int] = None, ledger=None) -> StieltjesString:
    """Krein's string: lengths ``D1_n^2/(D0_{n-1} D0_n)``, masses ``D0_n^2/(D1_n D1_{n+1})``."""
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    cls = classify(s, ledger)
    if depth is None or cls.finite_rank is not None:
        string = kl_from_moments(s, depth, ledger)
        if not string.is_stieltjes:
            bad = _first_bad_delta1(ledger)
            where = (
                f"Delta_{{1,{bad[0]}}} = {format_rational(bad[1])}" if bad else "the string has dipoles or negative masses"
            )
            raise NotDoublePositiveError(f"not double positive: {where}")
        return StieltjesString.from_kl(string)
    d = ledger.delta
    if cls.strictly_positive_through < depth:
        ledger.delta(0, depth)
        raise NotStrictlyPositiveError(f"Delta_{{0,{depth}}} is not positive")
    for n in range(1, depth + 1):
        v = d(1, n)
        if v <= 0:
            raise NotDoublePositiveError(
                f"not strictly double positive: Delta_{{1,{n}}} = {format_rational(v)}"
            )
    cells = []
    for n in range(depth):
        length = d(1, n) ** 2 / (d(0, n - 1) * d(0, n))
        mass = d(0, n) ** 2 / (d(1, n) * d(1, n + 1))
        cells.append(Cell(length, mass))
    tail = d(1, depth) ** 2 / (d(0, depth - 1) * d(0, depth))
    return StieltjesString(cells, tail, truncated=True)


# --------------------------------------------------------------------------
# solutions and Weyl functions


@dataclass(frozen=True)
class PropagationState:
    """Values and one-sided slopes of ``c`` and ``s`` at ``x_0, x_1, ...``."""

    x: tuple
    c: tuple
    c_left: tuple
    c_right: tuple
    s: tuple
    s_left: tuple
    s_right: tuple


def _sweep(string, npoints, z):
    """Generic over the scalar type of ``z`` (complex, Fraction or Polynomial)."""
    one = Polynomial([1]) if isinstance(z, Polynomial) else z ** 0
    zero = one - one
    f = [one, zero]        # c, s values at the current point
    slope = [zero, one]    # slopes just to the right of the previous point
    lengths = string.lengths
    out = {k: [] for k in ("x", "c", "c_left", "c_right", "s", "s_left", "s_right")}
    x = Fraction(0)
    for j in range(npoints):
        l_j = lengths[j]
        x += l_j
        f = [f[i] + slope[i] * l_j for i in range(2)]
        left = list(slope)
        if j < string.kappa:
            cell = string.cells[j]
            jump = z * cell.mass + z * z * cell.dipole
            slope = [left[i] - jump * f[i] for i in range(2)]
        out["x"].append(x)
        out["c"].append(f[0])
        out["s"].append(f[1])
        out["c_left"].append(left[0])
        out["s_left"].append(left[1])
        out["c_right"].append(slope[0])
        out["s_right"].append(slope[1])
    return PropagationState(**{k: tuple(v) for k, v in out.items()})


def _max_points(string):
    return string.kappa + (1 if string.finite_tail else 0)


def propagate(string: KreinLangerString, z, depth: Optional[int] = None) -> PropagationState:
    """Fundamental solutions at the first ``depth`` points ``x_0..x_{depth-1}``.

    ``c(0) = s'(0-) = 1``, ``c'(0-) = s(0) = 0``.  The last admissible
    point is ``x_kappa = L`` for a finite tail.  ``z`` may be a complex
    number, a Fraction or ``Polynomial.z()`` (exact polynomials in z).
    """
    top = _max_points(string)
    depth = top if depth is None else depth
    if depth < 0 or depth > top:
        raise ValueError(f"depth {depth} outside 0..{top}")
    if not isinstance(z, (Polynomial, Fraction, int)):
        z = complex(z)
    return _sweep(string, depth, z)


def _check_z(z):
    z = complex(z)
    if z.imag == 0:
        raise RealSpectralParameterError(f"z = {z} is real")
    return z


def _check_j(string, j):
    if j < 0 or j > string.kappa:
        raise ValueError(f"depth {j} outside 0..{string.kappa}")


def _cf_value(string, j, z):
    lengths = string.lengths
    if j == string.kappa and not string.finite_tail:
        if j == 0:
            raise ValueError("a string with no cells and an infinite tail has no Weyl function")
        c = string.cells[j - 1]
        t = c.mass + c.dipole * z
        start = j - 1
        t = -lengths[start] * z + 1 / t
    else:
        t = -lengths[j] * z
        start = j
    for i in range(start - 1, -1, -1):
        c = string.cells[i]
        t = -lengths[i] * z + 1 / (c.mass + c.dipole * z + 1 / t)
    return 1 / t


def m_truncated(string: KreinLangerString, j: int, z):
    """``m~_j(z)`` by the continued fraction and by ``-c/(z s)``.

    ``j = kappa`` with an infinite tail gives the full Weyl function; the
    solution route then uses the slopes beyond the last point, where
    ``c/s -> c'/s'``.
    """
    z = _check_z(z)
    _check_j(string, j)
    cf = _cf_value(string, j, z)
    if j == string.kappa and not string.finite_tail:
        st = _sweep(string, j, z)
        ode = -st.c_right[-1] / (z * st.s_right[-1])
    else:
        st = _sweep(string, j + 1, z)
        ode = -st.c[-1] / (z * st.s[-1])
    return cf, ode


def m_tilde_ratfun(string: KreinLangerString, j: Optional[int] = None) -> RationalFunction:
    """Exact ``m~_j`` from the continued fraction (default: the full string)."""
    j = string.kappa if j is None else j
    _check_j(string, j)
    z = RationalFunction(Polynomial.z())
    lengths = string.lengths
    if j == string.kappa and not string.finite_tail:
        if j == 0:
            raise ValueError("a string with no cells and an infinite tail has no Weyl function")
        c = string.cells[j - 1]
        t = z * (-lengths[j - 1]) + (z * c.dipole + c.mass).reciprocal()
        start = j - 1
    else:
        t = z * (-lengths[j])
        start = j
    for i in range(start - 1, -1, -1):
        c = string.cells[i]
        t = z * (-lengths[i]) + (z * c.dipole + c.mass + t.reciprocal()).reciprocal()
    return t.reciprocal()


def m_tilde_ode_ratfun(string: KreinLangerString, j: Optional[int] = None) -> RationalFunction:
    """Exact ``-c(z, x_j)/(z s(z, x_j))`` from polynomial propagation."""
    j = string.kappa if j is None else j
    _check_j(string, j)
    z = Polynomial.z()
    if j == string.kappa and not string.finite_tail:
        st = _sweep(string, j, z)
        return RationalFunction(-st.c_right[-1], z * st.s_right[-1])
    st = _sweep(string, j + 1, z)
    return RationalFunction(-st.c[-1], z * st.s[-1])


# --------------------------------------------------------------------------
# trace formulas, determinacy, moment recovery


def trace_sums(s, string: KreinLangerString, j: int, ledger=None):
    """Residuals of the three sum rules at the point ``x_j``.

    Position ``x_j = D2/D0``, accumulated mass ``-D-1/D1`` and
    ``int_0^{x_j} w^2 + sum_{i<j} v_i = -D-2/D0``, all determinants taken
    at index ``k(j)``.  Each residual is string side minus determinant side.
    """
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    if j < 0 or j > string.kappa or (j == string.kappa and not string.finite_tail):
        raise MalformedInputError(f"the string has no point x_{j}")
    ks = kl_index_map(s, j, ledger)
    k = ks[j]
    d = ledger.delta
    if d(0, k) == 0:
        raise MalformedInputError(f"Delta_{{0,{k}}} = 0: x_{j} is beyond the data of this sequence")
    lengths = string.lengths
    x_j = sum(lengths[: j + 1], Fraction(0))
    masses = _running_masses(string)
    mass_sum = masses[j - 1] if j > 0 else Fraction(0)
    w2 = Fraction(0)
    w = Fraction(0)
    for i in range(j + 1):
        w2 += lengths[i] * w * w
        if i < j:
            w += string.cells[i].mass
    dip = sum((c.dipole for c in string.cells[:j]), Fraction(0))
    return (
        x_j - d(2, k) / d(0, k),
        mass_sum + d(-1, k) / d(1, k),
        w2 + dip + d(-2, k) / d(0, k),
    )


@dataclass(frozen=True)
class DeterminacyReport:
    """Partial sums of ``sum_n l_{n+1} + l_{n+1} w_n^2 + v_n``.

    ``trajectory[n-1]`` is the sum of the first ``n`` terms; ``sizes[j]``
    is ``x_j + int_0^{x_j} w^2 + sum_{i<j} v_i``.
    """

    terms: tuple
    trajectory: tuple
    sizes: tuple
    verdict: str
    regular: Optional[bool]
    determinate: Optional[bool]


def singularity_diagnostic(string: KreinLangerString, depth: Optional[int] = None) -> DeterminacyReport:
    n_terms = string.kappa if depth is None else min(depth, string.kappa)
    lengths = string.lengths
    terms, traj = [], []
    w = Fraction(0)
    acc = Fraction(0)
    for n in range(n_terms):
        cell = string.cells[n]
        w += cell.mass
        nxt = lengths[n + 1]
        if nxt == INF:
            break
        t = nxt + nxt * w * w + cell.dipole
        terms.append(t)
        acc += t
        traj.append(acc)
    n_sizes = min(n_terms, string.kappa - (0 if string.finite_tail else 1))
    sizes = tuple(_size_through(string, j) for j in range(n_sizes + 1))
    if not string.truncated:
        if string.finite_tail:
            verdict, regular = "regular", True
        else:
            verdict, regular = "singular", False
        determinate = True  # finite strings come from finite-rank sequences
    else:
        regular, determinate = None, None
        verdict = "divergence detected" if _not_decaying(terms) else "regular-so-far"
    return DeterminacyReport(tuple(terms), tuple(traj), sizes, verdict, regular, determinate)


def _not_decaying(terms):
    """Heuristic trend test: the later half of the terms is not smaller
    than the earlier half on average."""
    if len(terms) < 2:
        return False
    half = len(terms) // 2
    early = sum(terms[:half], Fraction(0)) / half
    late = sum(terms[half:], Fraction(0)) / (len(terms) - half)
    return late >= early


def moments_from_kl(string: KreinLangerString, depth: Optional[int] = None, count: Optional[int] = None):
    """Moments encoded by a string, with the number that are reliable.

    For a complete finite string (or any string with an infinite tail) the
    Weyl function is exact and every coefficient counts.  For a truncated
    string with a finite tail, ``m~_{depth-1}`` and ``m~_depth`` are
    expanded and only their common prefix is returned.
    Returns ``(MomentSequence, stabilized_count)``.
    """
    if depth is not None and depth < string.kappa:
        string = string.truncate(depth)
    if string.truncated and string.finite_tail:
        j = string.kappa
        if j < 2:
            raise ValueError("depth must be at least 2 to compare consecutive convergents")
        hi = m_tilde_ratfun(string, j)
        lo = m_tilde_ratfun(string, j - 1)
        count = count or 2 * hi.den.degree + 2
        a = series_at_infinity(hi, count)
        b = series_at_infinity(lo, count)
        n = 0
        while n < count and a[n] == b[n]:
            n += 1
        if n == 0:
            raise ConsistencyError("consecutive convergents disagree already at s_0")
        return MomentSequence([-c for c in a[:n]]), n
    m = m_tilde_ratfun(string)
    count = count or 2 * m.den.degree + 1
    coeffs = series_at_infinity(m, count)
    return MomentSequence([-c for c in coeffs]), count
