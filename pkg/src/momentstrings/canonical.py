"""Hamburger Hamiltonians, transfer matrices and the string/Hamiltonian maps.

A Hamburger Hamiltonian is piecewise constant, equal to the rank-one
projection ``H_theta = (cos, sin)^T (cos, sin)`` on consecutive intervals
of lengths ``ell_0, ell_1, ...`` with ``theta_0 = pi/2``.  Angles are kept
exactly as ``AngleData``: a pi-window index together with either the
rational ``cot theta`` or the marker "theta is a multiple of pi".
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    InsufficientMomentsError,
    MalformedInputError,
    NotHerglotzError,
    NotVanishingAtInfinityError,
    RealSpectralParameterError,
)
from .exact import INF, GaussianRational, Polynomial, RationalFunction, format_rational, to_fraction
from .moments import MomentSequence, classify, hankel_ledger
from .strings import Cell, KreinLangerString

__all__ = [
    "AngleData",
    "Interval",
    "HamburgerHamiltonian",
    "TransferMatrix",
    "hamiltonian_from_moments",
    "transfer_matrix",
    "weyl_principal",
    "weyl_function",
    "hamiltonian_ratfun",
    "shifted_weyl_functions",
    "lemma_recursion_check",
    "euclid_decompose",
    "kl_to_hamiltonian",
    "hamiltonian_to_kl",
    "hamiltonian_trajectory",
    "assign_windows",
]


@dataclass(frozen=True)
class AngleData:
    """``theta = pi_index*pi + arccot(cot)`` or ``theta = pi_index*pi``."""

    pi_index: int
    cot: Optional[Fraction] = None

    def __post_init__(self):
        if self.cot is not None:
            object.__setattr__(self, "cot", to_fraction(self.cot))

    @classmethod
    def zero(cls, pi_index: int) -> AngleData:
        return cls(pi_index, None)

    @property
    def zero_mod_pi(self) -> bool:
        return self.cot is None

    def sin2(self) -> Fraction:
        return Fraction(0) if self.cot is None else 1 / (1 + self.cot * self.cot)

    def cos_sin(self) -> Fraction:
        return Fraction(0) if self.cot is None else self.cot * self.sin2()

    def cos2(self) -> Fraction:
        return Fraction(1) if self.cot is None else self.cot * self.cot * self.sin2()

    def h_matrix(self):
        """``H_theta`` as exact rationals."""
        cs = self.cos_sin()
        return ((self.cos2(), cs), (cs, self.sin2()))

    def trace_normed(self) -> bool:
        return self.cos2() + self.sin2() == 1

    def theta(self) -> float:
        if self.cot is None:
            return self.pi_index * math.pi
        return self.pi_index * math.pi + math.pi / 2 - math.atan(float(self.cot))

    def __str__(self):
        if self.cot is None:
            return f"{self.pi_index}pi"
        return f"{self.pi_index}pi + arccot({format_rational(self.cot)})"


def _next_window(prev: AngleData, cot) -> AngleData:
    """The unique angle in ``(theta_prev, theta_prev + pi)`` with the given
    cotangent (``None`` for a multiple of pi)."""
    if prev.zero_mod_pi:
        if cot is None:
            raise MalformedInputError("two consecutive angles are multiples of pi")
        return AngleData(prev.pi_index, cot)
    if cot is None:
        return AngleData.zero(prev.pi_index + 1)
    if cot < prev.cot:
        return AngleData(prev.pi_index, cot)
    if cot > prev.cot:
        return AngleData(prev.pi_index + 1, cot)
    raise MalformedInputError("consecutive angles coincide modulo pi")


def assign_windows(cots) -> list:
    """Window indices for a sequence of cotangents (``None`` = multiple of pi)
    starting from ``theta_0 = pi/2``."""
    cots = list(cots)
    if not cots or cots[0] is None or to_fraction(cots[0]) != 0:
        raise MalformedInputError("the first angle must be pi/2 (cot 0)")
    out = [AngleData(0, Fraction(0))]
    for c in cots[1:]:
        out.append(_next_window(out[-1], None if c is None else to_fraction(c)))
    return out


@dataclass(frozen=True)
class Interval:
    length: object
    angle: AngleData

    def __post_init__(self):
        length = self.length
        if length == INF or (isinstance(length, str) and length.strip().lower() == "inf"):
            length = INF
        else:
            length = to_fraction(length)
            if length <= 0:
                raise MalformedInputError("interval lengths must be positive")
        object.__setattr__(self, "length", length)

    @property
    def infinite(self) -> bool:
        return self.length == INF


@dataclass(frozen=True)
class HamburgerHamiltonian:
    """Intervals with exact lengths and angles.

    A complete Hamiltonian ends with one infinite interval; a truncated one
    (cut from longer data) has only finite lengths.
    """

    intervals: tuple
    truncated: bool = False

    def __post_init__(self):
        ivs = tuple(iv if isinstance(iv, Interval) else Interval(*iv) for iv in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise MalformedInputError("a Hamiltonian needs at least one interval")
        first = ivs[0].angle
        if first.zero_mod_pi or first.cot != 0 or first.pi_index != 0:
            raise MalformedInputError("theta_0 must be pi/2")
        for k in range(1, len(ivs)):
            expected = _next_window(ivs[k - 1].angle, ivs[k].angle.cot)
            if expected != ivs[k].angle:
                raise MalformedInputError(
                    f"angle {k} ({ivs[k].angle}) violates the window rule after {ivs[k - 1].angle}"
                )
        for iv in ivs[:-1]:
            if iv.infinite:
                raise MalformedInputError("only the last interval may be infinite")
        if len(ivs) == 1 and ivs[0].infinite:
            raise MalformedInputError("a single infinite interval has Weyl function 0")
        if self.truncated and ivs[-1].infinite:
            raise MalformedInputError("a truncated Hamiltonian has finite lengths only")

    def __len__(self):
        return len(self.intervals)

    @property
    def complete(self) -> bool:
        return self.intervals[-1].infinite

    @property
    def lengths(self):
        return [iv.length for iv in self.intervals]

    @property
    def angles(self):
        return [iv.angle for iv in self.intervals]

    def finite_intervals(self):
        return [iv for iv in self.intervals if not iv.infinite]

    def truncate(self, n: int) -> HamburgerHamiltonian:
        """Intervals ``0..n`` as a truncated Hamiltonian."""
        if n + 1 > len(self.finite_intervals()):
            raise ValueError(f"no finite interval {n}")
        return HamburgerHamiltonian(self.intervals[: n + 1], truncated=True)


# --------------------------------------------------------------------------
# construction from moments


def hamiltonian_from_moments(s, depth: Optional[int] = None, ledger=None) -> HamburgerHamiltonian:
    """``cot theta_n = -D-1_n/D1_n`` and ``ell_n = (D-1_n^2 + D1_n^2)/(D0_{n-1} D0_n)``.

    For finite rank N the intervals run to ``n = N`` with ``ell_N``
    infinite; otherwise intervals ``0..depth`` (default: as deep as the data
    allows) form a truncated Hamiltonian.
    """
    s = s if isinstance(s, MomentSequence) else MomentSequence(s)
    ledger = ledger or hankel_ledger(s)
    cls = classify(s, ledger)
    d = ledger.delta
    if cls.finite_rank is not None:
        top = cls.finite_rank
        if depth is not None and depth < top:
            top = depth
    else:
        avail = min(cls.strictly_positive_through, ledger.max_index(1), ledger.max_index(-1))
        if depth is None:
            top = avail
        else:
            if depth > avail:
                d(1, depth)
                d(-1, depth)
                d(0, depth)
            top = depth
    cots, lengths = [], []
    for n in range(top + 1):
        d1, dm1 = d(1, n), d(-1, n)
        cots.append(None if d1 == 0 else -dm1 / d1)
        norm = d(0, n - 1) * d(0, n)
        lengths.append(INF if norm == 0 else (dm1 * dm1 + d1 * d1) / norm)
    angles = assign_windows(cots)
    complete = lengths[-1] == INF
    return HamburgerHamiltonian(
        tuple(Interval(l, a) for l, a in zip(lengths, angles)), truncated=not complete
    )


# --------------------------------------------------------------------------
# transfer matrices and Weyl functions


@dataclass(frozen=True)
class TransferMatrix:
    u11: complex
    u12: complex
    u21: complex
    u22: complex

    def det(self):
        return self.u11 * self.u22 - self.u12 * self.u21

    def rows(self):
        return ((self.u11, self.u12), (self.u21, self.u22))


def _factor(iv: Interval, z, exact: bool):
    a = iv.angle
    ell = iv.length
    cs, s2, c2 = ell * a.cos_sin(), ell * a.sin2(), ell * a.cos2()
    if not exact:
        cs, s2, c2 = float(cs), float(s2), float(c2)
    return (1 - z * cs, -z * s2, z * c2, 1 + z * cs)


def _mul(f, u):
    """``f @ u`` for flattened 2x2 matrices."""
    return (
        f[0] * u[0] + f[1] * u[2],
        f[0] * u[1] + f[1] * u[3],
        f[2] * u[0] + f[3] * u[2],
        f[2] * u[1] + f[3] * u[3],
    )


def _product(intervals, z, exact):
    if not exact:
        one = 1 + 0j
    elif isinstance(z, GaussianRational):
        one = GaussianRational(1)
    else:
        one = Polynomial([1])
    zero = one - one
    u = (one, zero, zero, one)
    for iv in intervals:
        u = _mul(_factor(iv, z, exact), u)
    return u


def _finite_prefix(H, n):
    finite = H.finite_intervals()
    if n is None:
        n = len(finite) - 1
    if n < -1 or n >= len(finite):
        raise ValueError(f"interval index {n} outside 0..{len(finite) - 1}")
    return finite[: n + 1]


def transfer_matrix(H: HamburgerHamiltonian, z, n: Optional[int] = None) -> TransferMatrix:
    """``U(z, x_n)``: product of the factors of intervals ``0..n``, later
    factors on the left (default: every finite interval)."""
    u = _product(_finite_prefix(H, n), GaussianRational.from_complex(z), exact=True)
    return TransferMatrix(*(complex(x) for x in u))


def _check_z(z):
    z = complex(z)
    if z.imag == 0:
        raise RealSpectralParameterError(f"z = {z} is real")
    return z


def weyl_principal(H: HamburgerHamiltonian, z, n: Optional[int] = None) -> complex:
    """``U_11/U_12`` at the right end of interval ``n``."""
    z = _check_z(z)
    u = _product(_finite_prefix(H, n), GaussianRational.from_complex(z), exact=True)
    return complex(u[0] / u[1])


def _tail_combine(H, u):
    last = H.intervals[-1]
    if last.angle.zero_mod_pi:
        return u[0], u[1]
    c = last.angle.cot
    return c * u[0] + u[2], c * u[1] + u[3]


def weyl_function(H: HamburgerHamiltonian, z) -> complex:
    """Weyl function of a complete Hamiltonian (last interval infinite)."""
    z = _check_z(z)
    if not H.complete:
        raise ValueError("the Hamiltonian is truncated; use weyl_principal")
    # badly scaled data (huge lengths, nearly equal angles) cancels
    # catastrophically in floats, so the product is formed exactly
    u = _product(H.intervals[:-1], GaussianRational.from_complex(z), exact=True)
    num, den = _tail_combine(H, u)
    return complex(num / den)


def hamiltonian_ratfun(H: HamburgerHamiltonian, n: Optional[int] = None) -> RationalFunction:
    """Exact Weyl function: full for a complete Hamiltonian when ``n`` is
    None, otherwise the principal ratio at the end of interval ``n``."""
    z = Polynomial.z()
    if H.complete and n is None:
        u = _product(H.intervals[:-1], z, exact=True)
        num, den = _tail_combine(H, u)
        return RationalFunction(num, den)
    u = _product(_finite_prefix(H, n), z, exact=True)
    return RationalFunction(u[0], u[1])


def shifted_weyl_functions(H: HamburgerHamiltonian, z):
    """``m~_n`` for the Hamiltonian restricted to intervals ``n, n+1, ...``,
    by the one-step recursion ``m~_n = (m~_{n+1} F11 + F21)/(m~_{n+1} F12 + F22)``.

    Projective pairs are used so that the end of a truncated Hamiltonian
    (``m = infinity``) needs no special case.
    """
    z = _check_z(z)
    ivs = list(H.intervals)
    if H.complete:
        last = ivs.pop()
        vec = (1 + 0j, 0j) if last.angle.zero_mod_pi else (complex(float(last.angle.cot)), 1 + 0j)
    else:
        vec = (1 + 0j, 0j)
    out = [None] * len(ivs)
    for k in range(len(ivs) - 1, -1, -1):
        f = _factor(ivs[k], z, exact=False)
        vec = (vec[0] * f[0] + vec[1] * f[2], vec[0] * f[1] + vec[1] * f[3])
        out[k] = vec[0] / vec[1]
    return out


def lemma_recursion_check(H: HamburgerHamiltonian, z) -> float:
    """Largest relative gap between the recursion and the direct transfer
    matrix ratio of every shifted Hamiltonian."""
    z = _check_z(z)
    rec = shifted_weyl_functions(H, z)
    ivs = list(H.intervals)
    worst = 0.0
    for k in range(len(rec)):
        sub = ivs[k:]
        if H.complete:
            body, last = sub[:-1], sub[-1]
            u = _product(body, z, exact=False)
            if last.angle.zero_mod_pi:
                direct = u[0] / u[1]
            else:
                c = float(last.angle.cot)
                direct = (c * u[0] + u[2]) / (c * u[1] + u[3])
        else:
            u = _product(sub, z, exact=False)
            direct = u[0] / u[1]
        worst = max(worst, abs(rec[k] - direct) / max(1.0, abs(direct)))
    return worst


def hamiltonian_trajectory(H: HamburgerHamiltonian):
    """Partial sums ``ell_0, ell_0 + ell_1, ...`` over the finite intervals."""
    out, acc = [], Fraction(0)
    for iv in H.finite_intervals():
        acc += iv.length
        out.append(acc)
    return out


# --------------------------------------------------------------------------
# Euclidean decomposition


def euclid_decompose(f: RationalFunction) -> KreinLangerString:
    """Peel ``f = 1/(-l_0 z + 1/(w_0 + v_0 z + 1/(-l_1 z + ...)))`` exactly.

    Each ``l`` step divides the current denominator by the numerator; each
    ``(w, v)`` step divides back.  The signs the division exposes
    (``l > 0``, ``v >= 0``, ``|w| + v > 0``) are the only Herglotz test made.
    Ends with a finite tail after an ``l`` step or an infinite tail after a
    ``(w, v)`` step.
    """
    if not isinstance(f, RationalFunction):
        f = RationalFunction(f)
    if f.is_zero():
        raise NotHerglotzError("the zero function has no string")
    if not f.vanishes_at_infinity():
        raise NotVanishingAtInfinityError("f must vanish at infinity")
    num, den = f.num, f.den
    cells, lengths = [], []
    while True:
        quo, rem = divmod(den, num)
        if quo.degree != 1:
            raise NotHerglotzError(
                f"step {len(lengths)}: expected a linear quotient, got degree {quo.degree}"
            )
        l, c = -quo[1], quo[0]
        if l <= 0:
            raise NotHerglotzError(f"step {len(lengths)}: length l = {format_rational(l)} is not positive")
        lengths.append(l)
        nxt = num.scale(c) + rem
        if nxt.is_zero():
            return KreinLangerString(cells[:], l)
        quo2, rem2 = divmod(num, nxt)
        if quo2.degree > 1:
            raise NotHerglotzError(f"cell {len(cells)}: quotient of degree {quo2.degree}")
        omega, upsilon = quo2[0], quo2[1]
        if upsilon < 0:
            raise NotHerglotzError(f"cell {len(cells)}: dipole {format_rational(upsilon)} is negative")
        if omega == 0 and upsilon == 0:
            raise NotHerglotzError(f"cell {len(cells)}: vanishing mass and dipole")
        cells.append(Cell(l, omega, upsilon))
        if rem2.is_zero():
            return KreinLangerString(cells, INF)
        num, den = rem2, nxt


# --------------------------------------------------------------------------
# string <-> Hamiltonian maps


def kl_to_hamiltonian(string: KreinLangerString) -> HamburgerHamiltonian:
    """Reparametrize a string by ``x + int w^2 + dipoles`` into a Hamiltonian.

    ``(0, x_0)`` becomes an interval with ``theta = pi/2``; a dipole
    ``v_k`` becomes a ``theta = 0 mod pi`` interval of length ``v_k``; the
    gap ``l_{k+1}`` becomes an interval of length ``l_{k+1}(1 + w_k^2)`` with
    ``cot theta = w_k``, the mass accumulated so far.  A finite tail is
    followed by an infinite ``theta = 0 mod pi`` interval unless the string
    is marked truncated.
    """
    lengths = string.lengths
    ivs = [(lengths[0], Fraction(0))]
    w = Fraction(0)
    for k, cell in enumerate(string.cells):
        if cell.dipole > 0:
            ivs.append((cell.dipole, None))
        w += cell.mass
        l_next = lengths[k + 1]
        ivs.append((INF if l_next == INF else l_next * (1 + w * w), w))
    truncated = False
    if string.finite_tail:
        if string.truncated:
            truncated = True
        else:
            ivs.append((INF, None))
    angles = assign_windows([c for _, c in ivs])
    return HamburgerHamiltonian(
        tuple(Interval(l, a) for (l, _), a in zip(ivs, angles)), truncated=truncated
    )


def hamiltonian_to_kl(H: HamburgerHamiltonian) -> KreinLangerString:
    """Inverse of :func:`kl_to_hamiltonian`.

    Gaps are ``ell_k sin^2 theta_k``; a mass ``cot theta_{k+1} - cot theta_k``
    sits between consecutive non-degenerate intervals (skipping a
    ``theta = 0 mod pi`` interval, whose length becomes a dipole).  A
    trailing finite degenerate interval of a truncated Hamiltonian carries
    no string data and is dropped.
    """
    ivs = list(H.intervals)
    lengths = [ivs[0].length]
    cells = []
    cot = ivs[0].angle.cot
    k = 1
    tail_h0 = False
    while k < len(ivs):
        iv = ivs[k]
        dipole = Fraction(0)
        if iv.angle.zero_mod_pi:
            if iv.infinite:
                tail_h0 = True
                break
            if k + 1 >= len(ivs):
                break  # dangling degenerate interval of a truncated Hamiltonian
            dipole = iv.length
            k += 1
            iv = ivs[k]
        new_cot = iv.angle.cot
        l_next = INF if iv.infinite else iv.length / (1 + new_cot * new_cot)
        cells.append(Cell(lengths[-1], new_cot - cot, dipole))
        lengths.append(l_next)
        cot = new_cot
        k += 1
    tail = lengths[-1]
    if tail == INF:
        return KreinLangerString(cells, INF)
    return KreinLangerString(cells, tail, truncated=not tail_h0)
