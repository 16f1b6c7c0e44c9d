"""Every independent route to the same truncated Weyl function.

At depth ``n`` the Jacobi model gives ``m_n`` three ways.  The same
rational function, decomposed by the Euclidean algorithm, is the Weyl
function of a finite Krein-Langer string (continued fraction and solution
routes) and, through the reparametrization, of a finite Hamburger
Hamiltonian.  All six values must agree.
"""
from __future__ import annotations

from typing import Optional

from .errors import InsufficientMomentsError
from .canonical import euclid_decompose, kl_to_hamiltonian, weyl_function
from .jacobi_weyl import jacobi_ratfun, m_continued_fraction, m_poly_ratio, m_resolvent
from .moments import MomentSequence, classify, hankel_ledger
from .orthopoly import jacobi_from_moments
from .strings import m_truncated

ROUTES = ("resolvent", "poly_ratio", "jacobi_cf", "string_cf", "string_ode", "hamiltonian")


def default_depth(s, ledger=None) -> int:
    """``N`` for finite rank, otherwise the deepest ``n`` with ``s_{2n-1}``
    available and ``Delta_{0,n-1} > 0``."""
    s = s if isinstance(s, MomentSequence) else MomentSequence(s)
    cls = classify(s, ledger)
    if cls.finite_rank is not None:
        return cls.finite_rank
    return min(cls.strictly_positive_through + 1, len(s) // 2)


class RouteSet:
    """Precomputed models for one moment prefix at one depth."""

    def __init__(self, s, depth: Optional[int] = None):
        s = s if isinstance(s, MomentSequence) else MomentSequence(s)
        self.moments = s
        self.ledger = hankel_ledger(s)
        self.depth = default_depth(s, self.ledger) if depth is None else depth
        n = self.depth
        if n < 1:
            raise InsufficientMomentsError(1, "the Weyl function needs s_0 and s_1")
        self.jacobi = jacobi_from_moments(s, n - 1, self.ledger)
        self.ratfun = jacobi_ratfun(s, n, self.ledger)
        self.string = euclid_decompose(self.ratfun)
        self.hamiltonian = kl_to_hamiltonian(self.string)

    def evaluate(self, z) -> dict:
        n = self.depth
        cf, ode = m_truncated(self.string, self.string.kappa, z)
        return {
            "resolvent": m_resolvent(self.jacobi, n, z, self.moments[0]),
            "poly_ratio": m_poly_ratio(self.moments, n, z, self.ledger),
            "jacobi_cf": m_continued_fraction(self.jacobi, n, z, self.moments[0]),
            "string_cf": cf,
            "string_ode": ode,
            "hamiltonian": weyl_function(self.hamiltonian, z),
        }


def max_relative_deviation(values) -> float:
    vals = list(values)
    worst = 0.0
    for i, a in enumerate(vals):
        for b in vals[i + 1 :]:
            scale = max(abs(a), abs(b), 1e-300)
            worst = max(worst, abs(a - b) / scale)
    return worst


def weyl_routes(s, z, depth: Optional[int] = None) -> dict:
    return RouteSet(s, depth).evaluate(z)
