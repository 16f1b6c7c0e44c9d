"""Orthogonal polynomials of the first and second kind and Jacobi coefficients.

Only monic rescalings are materialized: ``p_n = P_n * sqrt(h_n)`` and
``q_n = Q_n * sqrt(h_n)`` where ``h_n = Delta_{0,n}/Delta_{0,n-1}``.  The
orthonormal ``P_n, Q_n`` enter only through their rational squares and
ratios.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConsistencyError, DepthExceedsRankError, NotStrictlyPositiveError
from .exact import Polynomial, bareiss_det
from .moments import HankelLedger, MomentSequence, classify, hankel_ledger

__all__ = [
    "JacobiModel",
    "OrthoPolyPair",
    "BoundaryValuesZero",
    "jacobi_from_moments",
    "ortho_polys",
    "first_kind",
    "first_kind_det",
    "second_kind",
    "second_kind_det",
    "boundary_values_zero",
    "wronskian_residual",
]


@dataclass(frozen=True)
class JacobiModel:
    """Diagonal ``a_0..a_n`` and squared off-diagonal ``b_0^2..b_{n-1}^2``.

    The normalization ``b_n > 0`` is implied; ``b_n`` itself is
    ``sqrt(b2[n])`` and is only formed in floating point.
    """

    a: tuple
    b2: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b2", tuple(Fraction(x) for x in self.b2))
        if len(self.b2) != max(len(self.a) - 1, 0):
            raise ValueError("need len(b2) == len(a) - 1")
        if any(x <= 0 for x in self.b2):
            raise ValueError("b_n^2 must be strictly positive")

    @property
    def size(self) -> int:
        return len(self.a)

    def truncate(self, n: int) -> JacobiModel:
        """The leading ``n x n`` block ``J_{n-1}``."""
        return JacobiModel(self.a[:n], self.b2[: max(n - 1, 0)])


@dataclass(frozen=True)
class OrthoPolyPair:
    p: tuple
    q: tuple
    norms2: tuple


@dataclass(frozen=True)
class BoundaryValuesZero:
    P0sq: tuple
    Q0sq: tuple
    ratio: tuple
    sign_P: tuple


def _ensure(s) -> MomentSequence:
    return s if isinstance(s, MomentSequence) else MomentSequence(s)


def _positive_through(ledger: HankelLedger, n: int):
    """Raise unless Delta_{0,0..n} > 0."""
    cls = classify(ledger.moments, ledger)
    if n > cls.strictly_positive_through:
        if cls.finite_rank is not None and n >= cls.finite_rank:
            raise DepthExceedsRankError(
                f"depth {n} needs Delta_{{0,{n}}} > 0 but the sequence has finite rank {cls.finite_rank}"
            )
        # the only way left is that Delta_{0,n} is not available
        ledger.delta(0, n)
        raise NotStrictlyPositiveError(f"Delta_{{0,{n}}} is not positive")
    return cls


def jacobi_from_moments(s, n_max: Optional[int] = None, ledger=None) -> JacobiModel:
    """Jacobi coefficients ``a_0..a_n`` and ``b_0^2..b_{n-1}^2`` from moments.

    ``n_max=None`` goes as deep as the data allows; for a finite-rank
    sequence of rank N that is ``N - 1`` (the full finite matrix).
    """
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    cls = classify(s, ledger)
    if n_max is None:
        n_max = min(ledger.max_primed_index(), cls.strictly_positive_through)
        if cls.finite_rank is None:
            # b^2_{n-1} needs Delta_{0,n}; a_n needs Delta'_{0,n}
            n_max = min(n_max, ledger.max_index(0))
    if cls.finite_rank is not None and n_max > cls.finite_rank - 1:
        raise DepthExceedsRankError(
            f"depth {n_max} exceeds finite rank {cls.finite_rank} (maximal depth {cls.finite_rank - 1})"
        )
    _positive_through(ledger, n_max)
    d = ledger.delta
    a = []
    for n in range(n_max + 1):
        a.append(ledger.primed_at(n) / d(0, n) - ledger.primed_at(n - 1) / d(0, n - 1))
    b2 = [d(0, n - 1) * d(0, n + 1) / d(0, n) ** 2 for n in range(n_max)]
    return JacobiModel(a, b2)


def ortho_polys(jacobi: JacobiModel, s0, n_max: int) -> OrthoPolyPair:
    """Monic ``p_0..p_n`` and ``q_0..q_n`` from the three-term recurrence.

    ``p_{k+1} = (z - a_k) p_k - b_{k-1}^2 p_{k-1}`` with ``p_0 = 1`` and the
    same recurrence for ``q`` from ``q_0 = 0, q_1 = s_0``.  Needs
    ``a_0..a_{n-1}`` and ``b^2_0..b^2_{n-2}``.
    """
    z = Polynomial.z()
    s0 = Fraction(s0)
    p = [Polynomial([1])]
    q = [Polynomial()]
    norms2 = [s0]
    if n_max >= 1:
        p.append(z - jacobi.a[0])
        q.append(Polynomial([s0]))
    for k in range(1, n_max):
        p.append((z - jacobi.a[k]) * p[k] - jacobi.b2[k - 1] * p[k - 1])
        q.append((z - jacobi.a[k]) * q[k] - jacobi.b2[k - 1] * q[k - 1])
    for k in range(1, n_max + 1):
        if k - 1 < len(jacobi.b2):
            norms2.append(norms2[-1] * jacobi.b2[k - 1])
    return OrthoPolyPair(tuple(p), tuple(q), tuple(norms2))


def _bordered_cofactors(s: MomentSequence, n: int):
    """Cofactors of the last row of the (n+1)x(n+1) bordered moment matrix."""
    if 2 * n - 1 > len(s) - 1:
        from .errors import InsufficientMomentsError

        raise InsufficientMomentsError(2 * n - 1, f"polynomial of degree {n}")
    top = [[s[i + j] for j in range(n + 1)] for i in range(n)]
    cof = []
    for k in range(n + 1):
        minor = [row[:k] + row[k + 1 :] for row in top]
        cof.append((-1) ** (n + k) * bareiss_det(minor))
    return cof


def first_kind_det(s, n: int, ledger=None) -> Polynomial:
    """Monic ``p_n`` from the bordered determinant divided by Delta_{0,n-1}."""
    s = _ensure(s)
    if n == 0:
        return Polynomial([1])
    ledger = ledger or hankel_ledger(s)
    lead = ledger.delta(0, n - 1)
    if lead == 0:
        raise NotStrictlyPositiveError(f"Delta_{{0,{n - 1}}} = 0; p_{n} is not defined")
    cof = _bordered_cofactors(s, n)
    return Polynomial([c / lead for c in cof])


def second_kind_det(s, n: int, ledger=None) -> Polynomial:
    """Monic-consistent ``q_n`` from the determinant with the R_{n,k} row."""
    s = _ensure(s)
    if n == 0:
        return Polynomial()
    ledger = ledger or hankel_ledger(s)
    lead = ledger.delta(0, n - 1)
    if lead == 0:
        raise NotStrictlyPositiveError(f"Delta_{{0,{n - 1}}} = 0; q_{n} is not defined")
    cof = _bordered_cofactors(s, n)
    acc = Polynomial()
    for k in range(1, n + 1):
        # R_{n,k}(z) = sum_{m<k} s_{k-1-m} z^m
        r = Polynomial([s[k - 1 - m] for m in range(k)])
        acc = acc + r.scale(cof[k])
    return acc.scale(1 / lead)


def _recurrence_pair(s: MomentSequence, n: int, ledger):
    if n <= 1:
        jac = JacobiModel([s[1] / s[0]] if n == 1 else [], [])
        if n == 1 and len(s) < 2:
            from .errors import InsufficientMomentsError

            raise InsufficientMomentsError(1, "p_1")
        return ortho_polys(jac, s[0], n)
    jac = jacobi_from_moments(s, n - 1, ledger=ledger)
    return ortho_polys(jac, s[0], n)


def first_kind(s, n: int, ledger=None) -> Polynomial:
    """Monic ``p_n``, computed by determinant and by recurrence.

    Raises :class:`ConsistencyError` if the two computations disagree.
    """
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    by_det = first_kind_det(s, n, ledger)
    by_rec = _recurrence_pair(s, n, ledger).p[n]
    if by_det != by_rec:
        raise ConsistencyError(f"p_{n}: determinant {by_det} != recurrence {by_rec}")
    return by_det


def second_kind(s, n: int, ledger=None) -> Polynomial:
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    by_det = second_kind_det(s, n, ledger)
    by_rec = _recurrence_pair(s, n, ledger).q[n]
    if by_det != by_rec:
        raise ConsistencyError(f"q_{n}: determinant {by_det} != recurrence {by_rec}")
    return by_det


def _sign(x):
    return (x > 0) - (x < 0)


def boundary_values_zero(s, n_max: Optional[int] = None, ledger=None) -> BoundaryValuesZero:
    """Exact ``|P_n(0)|^2``, ``|Q_n(0)|^2``, ``Q_n(0)/P_n(0)`` and sign of ``P_n(0)``."""
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    cls = classify(s, ledger)
    if n_max is None:
        n_max = min(cls.strictly_positive_through, ledger.max_index(1), ledger.max_index(-1))
    _positive_through(ledger, n_max)
    d = ledger.delta
    P0sq, Q0sq, ratio, sign_P = [], [], [], []
    for n in range(n_max + 1):
        norm = d(0, n - 1) * d(0, n)
        d1, dm1 = d(1, n), d(-1, n)
        P0sq.append(d1 * d1 / norm)
        Q0sq.append(dm1 * dm1 / norm)
        ratio.append(dm1 / d1 if d1 != 0 else None)
        sign_P.append((-1) ** n * _sign(d1))
    return BoundaryValuesZero(tuple(P0sq), tuple(Q0sq), tuple(ratio), tuple(sign_P))


def wronskian_residual(s, n: int, ledger=None) -> Fraction:
    """Residual of ``b_n^2 (P_n Q_{n+1} - P_{n+1} Q_n)^2 - 1``.

    In monic form the bracket is ``W / h_n`` with ``W = p_n q_{n+1} -
    p_{n+1} q_n``, so the residual polynomial is ``W^2/h_n^2 - 1``.  Its
    largest absolute coefficient is returned; zero means the identity holds
    for every z.
    """
    s = _ensure(s)
    ledger = ledger or hankel_ledger(s)
    _positive_through(ledger, n + 1)
    pn, pn1 = first_kind(s, n, ledger), first_kind(s, n + 1, ledger)
    qn, qn1 = second_kind(s, n, ledger), second_kind(s, n + 1, ledger)
    w = pn * qn1 - pn1 * qn
    h = ledger.delta(0, n) / ledger.delta(0, n - 1)
    b2 = ledger.delta(0, n - 1) * ledger.delta(0, n + 1) / ledger.delta(0, n) ** 2
    h1 = ledger.delta(0, n + 1) / ledger.delta(0, n)
    residual = (w * w).scale(b2 / (h * h1)) - 1
    return max((abs(c) for c in residual.coeffs), default=Fraction(0))
