"""Moment sequences, discrete measures and the Hankel determinant ledger."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InsufficientMomentsError, MalformedInputError, NonPositiveError
from .exact import Polynomial, bareiss_det, format_rational, to_fraction

__all__ = [
    "MomentSequence",
    "DiscreteMeasure",
    "HankelLedger",
    "Classification",
    "moments_from_measure",
    "hankel_ledger",
    "classify",
    "scale",
    "SHIFTS",
]

SHIFTS = (-2, -1, 0, 1, 2)


@dataclass(frozen=True)
class MomentSequence:
    """Exact finite prefix ``s_0, ..., s_M`` of a moment sequence."""

    s: tuple

    def __init__(self, s):
        values = tuple(to_fraction(x) for x in s)
        if not values:
            raise MalformedInputError("moment sequence must be nonempty")
        if values[0] <= 0:
            raise MalformedInputError(f"s_0 must be positive, got {format_rational(values[0])}")
        object.__setattr__(self, "s", values)

    def __len__(self):
        return len(self.s)

    def __getitem__(self, k):
        return self.s[k]

    def __iter__(self):
        return iter(self.s)

    def prefix(self, count: int) -> MomentSequence:
        if count > len(self.s):
            raise InsufficientMomentsError(len(self.s))
        return MomentSequence(self.s[:count])

    def __repr__(self):
        return f"MomentSequence([{', '.join(format_rational(x) for x in self.s)}])"


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many atoms ``(position, weight)`` with positive weights."""

    atoms: tuple

    def __init__(self, atoms):
        pairs = tuple((to_fraction(x), to_fraction(w)) for x, w in atoms)
        if not pairs:
            raise MalformedInputError("measure has no atoms")
        if any(w <= 0 for _, w in pairs):
            raise MalformedInputError("atom weights must be strictly positive")
        if len({x for x, _ in pairs}) != len(pairs):
            raise MalformedInputError("atom positions must be pairwise distinct")
        object.__setattr__(self, "atoms", tuple(sorted(pairs)))

    @property
    def positions(self):
        return [x for x, _ in self.atoms]

    @property
    def weights(self):
        return [w for _, w in self.atoms]

    def __len__(self):
        return len(self.atoms)


def moments_from_measure(mu: DiscreteMeasure, count: int) -> MomentSequence:
    if count < 1:
        raise MalformedInputError("count must be at least 1")
    out = []
    powers = [Fraction(1)] * len(mu.atoms)
    for _ in range(count):
        out.append(sum(w * p for (_, w), p in zip(mu.atoms, powers)))
        powers = [p * x for (x, _), p in zip(mu.atoms, powers)]
    return MomentSequence(out)


# Each determinant is det(s_{i+j+shift}) over a square index range, with
# s_{-1} = s_{-2} = 0.  (size(n), highest moment index needed(n)) per shift:
_LAYOUT = {
    0: (lambda n: n + 1, lambda n: 2 * n),
    1: (lambda n: n, lambda n: 2 * n - 1),
    2: (lambda n: n, lambda n: 2 * n),
    -1: (lambda n: n + 1, lambda n: 2 * n - 1),
    -2: (lambda n: n + 2, lambda n: 2 * n),
}
# declared values that the determinant layout does not produce by itself
_BASE = {(0, -1): Fraction(1), (-1, 0): Fraction(0), (-2, 0): Fraction(0)}
_FIRST_INDEX = {0: -1, 1: 0, 2: 0, -1: 0, -2: 0}


def _hankel_det(s, shift, n):
    if (shift, n) in _BASE:
        return _BASE[(shift, n)]
    size = _LAYOUT[shift][0](n)
    if size == 0:
        return Fraction(1)

    def moment(k):
        return s[k] if k >= 0 else Fraction(0)

    return bareiss_det([[moment(i + j + shift) for j in range(size)] for i in range(size)])


def _primed_det(s, n):
    if n == -1:
        return Fraction(0)
    if n == 0:
        return s[1]
    rows = []
    for i in range(n + 1):
        rows.append([s[i + j] for j in range(n)] + [s[i + n + 1]])
    return bareiss_det(rows)


def _needed(shift, n):
    if (shift, n) in _BASE or (shift in (1, 2) and n == 0):
        return -1
    return _LAYOUT[shift][1](n)


@dataclass(frozen=True)
class HankelLedger:
    """All Hankel-type determinants reachable from a moment prefix.

    ``deltas[i][n]`` holds the determinant with shift ``i``; lists start at
    ``n = -1`` for shift 0 and at ``n = 0`` otherwise.  ``primed[n]`` starts
    at ``n = -1`` as well.  Use :meth:`delta` and :meth:`primed_at` rather
    than indexing the lists directly.
    """

    moments: MomentSequence
    deltas: dict = field(repr=False)
    primed: tuple = field(repr=False)

    def delta(self, shift: int, n: int) -> Fraction:
        if shift not in _FIRST_INDEX:
            raise ValueError(f"unknown shift {shift}")
        first = _FIRST_INDEX[shift]
        if n < first:
            raise ValueError(f"Delta_{{{shift},{n}}} is not defined")
        values = self.deltas[shift]
        idx = n - first
        if idx >= len(values):
            raise InsufficientMomentsError(_needed(shift, n), f"Delta_{{{shift},{n}}}")
        return values[idx]

    def primed_at(self, n: int) -> Fraction:
        if n < -1:
            raise ValueError(f"Delta'_{{0,{n}}} is not defined")
        if n + 1 >= len(self.primed):
            raise InsufficientMomentsError(2 * n + 1, f"Delta'_{{0,{n}}}")
        return self.primed[n + 1]

    def max_index(self, shift: int) -> int:
        return _FIRST_INDEX[shift] + len(self.deltas[shift]) - 1

    def max_primed_index(self) -> int:
        return len(self.primed) - 2


def hankel_ledger(s: MomentSequence, n_max: Optional[int] = None) -> HankelLedger:
    """Compute every determinant the prefix supports, up to ``n_max``.

    With ``n_max=None`` each shift is filled as far as the data allows.
    When ``n_max`` is given, ``Delta_{0,n_max}`` must be computable.
    """
    if not isinstance(s, MomentSequence):
        s = MomentSequence(s)
    top = len(s) - 1
    if n_max is not None and 2 * n_max > top:
        raise InsufficientMomentsError(2 * n_max, f"Delta_{{0,{n_max}}}")
    deltas = {}
    for shift in SHIFTS:
        values = []
        n = _FIRST_INDEX[shift]
        while (n_max is None or n <= n_max) and _needed(shift, n) <= top:
            values.append(_hankel_det(s.s, shift, n))
            n += 1
        deltas[shift] = tuple(values)
    primed = []
    n = -1
    while (n_max is None or n <= n_max) and 2 * n + 1 <= top:
        primed.append(_primed_det(s.s, n))
        n += 1
    return HankelLedger(s, deltas, tuple(primed))


@dataclass(frozen=True)
class Classification:
    """Positivity information extracted from a finite prefix.

    Statements hold "as far as the data allows": a finite prefix can never
    certify strict positivity for all n, so the examined depths are kept.
    """

    positive: bool
    strictly_positive_through: int
    double_positive: bool
    strictly_double_positive_through: int
    finite_rank: Optional[int]
    examined_depth: int
    examined_double_depth: int

    @property
    def determinate(self) -> Optional[bool]:
        """True for finite rank; undecidable (None) from a prefix otherwise."""
        return True if self.finite_rank is not None else None

    def summary(self) -> str:
        if self.finite_rank is not None:
            return f"finite rank {self.finite_rank}, determinate"
        return (
            f"strictly positive through n = {self.strictly_positive_through}"
            f" (as far as data allows, examined n <= {self.examined_depth})"
        )


def _annihilator(ledger: HankelLedger, n: int) -> Polynomial:
    """Monic p_n from the bordered determinant; needs Delta_{0,n-1} != 0."""
    from .orthopoly import first_kind_det

    return first_kind_det(ledger.moments, n, ledger=ledger)


def classify(s: MomentSequence, ledger: Optional[HankelLedger] = None) -> Classification:
    if not isinstance(s, MomentSequence):
        s = MomentSequence(s)
    if ledger is None:
        ledger = hankel_ledger(s)
    top0 = ledger.max_index(0)
    rank = None
    strictly_through = -1
    for n in range(0, top0 + 1):
        d = ledger.delta(0, n)
        if d < 0:
            raise NonPositiveError(
                f"Delta_{{0,{n}}} = {format_rational(d)} < 0: not the moments of a positive measure"
            )
        if rank is None:
            if d > 0:
                strictly_through = n
            else:
                rank = n
        elif d != 0:
            raise NonPositiveError(
                f"Delta_{{0,{rank}}} = 0 but Delta_{{0,{n}}} = {format_rational(d)} != 0:"
                " not the moments of a positive measure"
            )
    if rank is not None:
        # A positive sequence of rank N comes from an N-atom measure, so the
        # monic p_N (whose roots are the atoms) annihilates every window.
        p = _annihilator(ledger, rank)
        for j in range(len(s) - rank):
            r = sum(p[k] * s[k + j] for k in range(rank + 1))
            if r != 0:
                raise NonPositiveError(
                    f"finite rank {rank} detected but s_{j + rank} = {format_rational(s[j + rank])}"
                    " is inconsistent with an atomic measure of that rank"
                )
    top1 = ledger.max_index(1)
    double_positive = all(ledger.delta(1, n) >= 0 for n in range(1, top1 + 1))
    sdp = 0
    for n in range(1, top1 + 1):
        if ledger.delta(1, n) > 0:
            sdp = n
        else:
            break
    return Classification(
        positive=True,
        strictly_positive_through=strictly_through,
        double_positive=double_positive,
        strictly_double_positive_through=sdp,
        finite_rank=rank,
        examined_depth=top0,
        examined_double_depth=top1,
    )


def scale(s: MomentSequence, c) -> MomentSequence:
    """Multiply every moment by ``c > 0``.

    Jacobi coefficients are unchanged by this; string masses scale by ``c``
    and string lengths by ``1/c``.
    """
    c = to_fraction(c)
    if c <= 0:
        raise MalformedInputError("scale factor must be positive")
    return MomentSequence([c * x for x in s])
