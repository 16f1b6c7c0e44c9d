"""Truncated Weyl functions of the Jacobi model.

Three floating-point routes to ``m_n(z)`` (tridiagonal resolvent, ratio of
orthogonal polynomials, continued fraction) plus two exact checks: Pade
moment matching and Gauss quadrature extraction.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import InsufficientMomentsError, NumericalError, RealSpectralParameterError
from .exact import RationalFunction, real_roots, series_at_infinity
from .moments import DiscreteMeasure, MomentSequence, hankel_ledger
from .orthopoly import JacobiModel, first_kind, second_kind

__all__ = [
    "WeylSample",
    "m_resolvent",
    "m_poly_ratio",
    "m_continued_fraction",
    "jacobi_ratfun",
    "moment_match_check",
    "gauss_quadrature",
]


class WeylSample:
    __slots__ = ("z", "value", "route", "depth")

    def __init__(self, z, value, route, depth):
        self.z, self.value, self.route, self.depth = complex(z), complex(value), route, depth

    def __repr__(self):
        return f"WeylSample(z={self.z}, value={self.value}, route={self.route!r}, depth={self.depth})"


def _check_z(z) -> complex:
    z = complex(z)
    if z.imag == 0:
        raise RealSpectralParameterError(f"z = {z} is real")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise RealSpectralParameterError(f"z = {z} is not finite")
    return z


def _check_depth(J: JacobiModel, n: int):
    if n < 1:
        raise ValueError("depth must be at least 1")
    if n > J.size:
        raise ValueError(f"depth {n} exceeds the {J.size} diagonal entries available")


def m_resolvent(J: JacobiModel, n: int, z, s0=1) -> complex:
    """``s0 * ((J_{n-1} - z)^{-1} e_0, e_0)`` by a forward/backward tridiagonal sweep.

    The Jacobi matrix does not see the total mass ``s0``; pass it to match
    ``-q_n/p_n`` for sequences with ``s_0 != 1``.
    """
    z = _check_z(z)
    _check_depth(J, n)
    diag = [float(a) - z for a in J.a[:n]]
    off = [math.sqrt(b) for b in J.b2[: n - 1]]
    # forward elimination, rhs = e_0
    c = [0j] * n
    d = [0j] * n
    if diag[0] == 0:
        raise NumericalError("singular tridiagonal system")
    c[0] = (off[0] / diag[0]) if n > 1 else 0j
    d[0] = 1 / diag[0]
    for i in range(1, n):
        denom = diag[i] - off[i - 1] * c[i - 1]
        if denom == 0:
            raise NumericalError("singular tridiagonal system")
        c[i] = (off[i] / denom) if i < n - 1 else 0j
        d[i] = (0 - off[i - 1] * d[i - 1]) / denom
    x = d[n - 1]
    for i in range(n - 2, -1, -1):
        x = d[i] - c[i] * x
    return float(s0) * x


def m_poly_ratio(s, n: int, z, ledger=None) -> complex:
    """``-q_n(z)/p_n(z)`` in complex floating point."""
    z = _check_z(z)
    s = s if isinstance(s, MomentSequence) else MomentSequence(s)
    ledger = ledger or hankel_ledger(s)
    p = first_kind(s, n, ledger)
    q = second_kind(s, n, ledger)
    return -q(z) / p(z)


def m_continued_fraction(J: JacobiModel, n: int, z, s0=1) -> complex:
    """Bottom-up evaluation of ``s0/(a_0 - z - b_0^2/(a_1 - z - ...))``."""
    z = _check_z(z)
    _check_depth(J, n)
    t = float(J.a[n - 1]) - z
    for k in range(n - 2, -1, -1):
        if t == 0:
            raise NumericalError("zero denominator inside the continued fraction")
        t = float(J.a[k]) - z - float(J.b2[k]) / t
    if t == 0:
        raise NumericalError("zero denominator inside the continued fraction")
    return float(s0) / t


def jacobi_ratfun(s, n: int, ledger=None) -> RationalFunction:
    """The exact truncated Weyl function ``-q_n/p_n``."""
    s = s if isinstance(s, MomentSequence) else MomentSequence(s)
    ledger = ledger or hankel_ledger(s)
    return RationalFunction(-second_kind(s, n, ledger), first_kind(s, n, ledger))


def moment_match_check(s, n: int, order=None, ledger=None):
    """Residuals ``c_k + s_{k-1}`` for ``k = 1..order`` (default ``2n``).

    ``c_k`` are the series coefficients of ``-q_n/p_n`` at infinity; the
    first ``2n`` residuals vanish exactly.
    """
    s = s if isinstance(s, MomentSequence) else MomentSequence(s)
    order = 2 * n if order is None else order
    if order > len(s):
        raise InsufficientMomentsError(order - 1, "moment matching")
    coeffs = series_at_infinity(jacobi_ratfun(s, n, ledger), order)
    return [c + s[k] for k, c in enumerate(coeffs)]


def gauss_quadrature(s, n: int, tol=Fraction(1, 10**14), ledger=None) -> DiscreteMeasure:
    """The n-point quadrature measure: roots of ``p_n`` with weights ``q_n/p_n'``.

    Roots are isolated with an exact Sturm chain and refined by bisection
    to width ``tol``; rational roots with small denominators come out
    exact.  Positions and weights are returned as Fractions.
    """
    s = s if isinstance(s, MomentSequence) else MomentSequence(s)
    ledger = ledger or hankel_ledger(s)
    p = first_kind(s, n, ledger)
    q = second_kind(s, n, ledger)
    dp = p.derivative()
    roots = real_roots(p, tol)
    if len(roots) != n:
        raise NumericalError(f"p_{n} has {len(roots)} real roots, expected {n}")
    atoms = [(x, q(x) / dp(x)) for x in roots]
    return DiscreteMeasure(atoms)
