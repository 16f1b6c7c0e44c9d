"""JSON documents and conversions between representations.

A document is one object ``{"kind": ..., "payload": ...}``.  Rationals are
strings ``"p/q"`` (or ``"p"``), infinite lengths are ``"inf"`` and
polynomial coefficients are listed from the constant term upward.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import InsufficientMomentsError, MalformedInputError
from .exact import INF, Polynomial, RationalFunction, format_rational, series_at_infinity, to_fraction
from .moments import DiscreteMeasure, MomentSequence, classify, hankel_ledger, moments_from_measure
from .orthopoly import JacobiModel, jacobi_from_moments, ortho_polys
from .jacobi_weyl import gauss_quadrature, jacobi_ratfun
from .strings import KreinLangerString, StieltjesString, kl_from_moments, m_tilde_ratfun, moments_from_kl, stieltjes_from_moments
from .canonical import (
    AngleData,
    HamburgerHamiltonian,
    Interval,
    euclid_decompose,
    hamiltonian_from_moments,
    hamiltonian_ratfun,
    hamiltonian_to_kl,
    kl_to_hamiltonian,
)

KINDS = ("moments", "measure", "jacobi", "stieltjes_string", "kl_string", "hamiltonian", "ratfun")


def _q(x):
    return "inf" if x == INF else format_rational(x)


def _parse_q(x, allow_inf=False):
    if allow_inf and isinstance(x, str) and x.strip().lower() == "inf":
        return INF
    if isinstance(x, float):
        raise MalformedInputError(f"floating-point value {x!r}; write rationals as \"p/q\" strings")
    return to_fraction(x)


def kind_of(obj) -> str:
    if isinstance(obj, MomentSequence):
        return "moments"
    if isinstance(obj, DiscreteMeasure):
        return "measure"
    if isinstance(obj, JacobiModel):
        return "jacobi"
    if isinstance(obj, StieltjesString):
        return "stieltjes_string"
    if isinstance(obj, KreinLangerString):
        return "kl_string"
    if isinstance(obj, HamburgerHamiltonian):
        return "hamiltonian"
    if isinstance(obj, RationalFunction):
        return "ratfun"
    raise TypeError(f"no document kind for {type(obj).__name__}")


def to_document(obj) -> dict:
    kind = kind_of(obj)
    if kind == "moments":
        payload = {"s": [_q(x) for x in obj]}
    elif kind == "measure":
        payload = {"atoms": [[_q(x), _q(w)] for x, w in obj.atoms]}
    elif kind == "jacobi":
        payload = {"a": [_q(x) for x in obj.a], "b2": [_q(x) for x in obj.b2]}
    elif kind == "stieltjes_string":
        payload = {
            "cells": [[_q(c.length), _q(c.mass)] for c in obj.cells],
            "tail": _q(obj.tail),
            "truncated": obj.truncated,
        }
    elif kind == "kl_string":
        payload = {
            "cells": [[_q(c.length), _q(c.mass), _q(c.dipole)] for c in obj.cells],
            "tail": _q(obj.tail),
            "truncated": obj.truncated,
        }
    elif kind == "hamiltonian":
        ivs = []
        for iv in obj.intervals:
            a = iv.angle
            angle = {"pi_index": a.pi_index}
            if a.zero_mod_pi:
                angle["zero_mod_pi"] = True
            else:
                angle["cot"] = _q(a.cot)
            ivs.append({"length": _q(iv.length), "angle": angle})
        payload = {"intervals": ivs, "truncated": obj.truncated}
    else:
        payload = {"num": [_q(c) for c in obj.num.coeffs], "den": [_q(c) for c in obj.den.coeffs]}
    return {"kind": kind, "payload": payload}


def _need(payload, key, kind):
    if not isinstance(payload, dict) or key not in payload:
        raise MalformedInputError(f"{kind} payload needs a {key!r} field")
    return payload[key]


def _list(value, what):
    if not isinstance(value, list):
        raise MalformedInputError(f"{what} must be a list")
    return value


def from_document(doc):
    if not isinstance(doc, dict) or "kind" not in doc or "payload" not in doc:
        raise MalformedInputError('a document is an object with "kind" and "payload"')
    kind, p = doc["kind"], doc["payload"]
    if kind not in KINDS:
        raise MalformedInputError(f"unknown document kind {kind!r}")
    if kind == "moments":
        return MomentSequence([_parse_q(x) for x in _list(_need(p, "s", kind), "s")])
    if kind == "measure":
        atoms = []
        for pair in _list(_need(p, "atoms", kind), "atoms"):
            if not isinstance(pair, list) or len(pair) != 2:
                raise MalformedInputError("atoms are [position, weight] pairs")
            atoms.append((_parse_q(pair[0]), _parse_q(pair[1])))
        return DiscreteMeasure(atoms)
    if kind == "jacobi":
        a = [_parse_q(x) for x in _list(_need(p, "a", kind), "a")]
        b2 = [_parse_q(x) for x in _list(_need(p, "b2", kind), "b2")]
        try:
            return JacobiModel(a, b2)
        except ValueError as exc:
            raise MalformedInputError(str(exc)) from exc
    if kind in ("stieltjes_string", "kl_string"):
        width = 2 if kind == "stieltjes_string" else 3
        cells = []
        for cell in _list(_need(p, "cells", kind), "cells"):
            if not isinstance(cell, list) or len(cell) != width:
                raise MalformedInputError(f"{kind} cells have {width} entries")
            cells.append(tuple(_parse_q(x) for x in cell))
        tail = _parse_q(_need(p, "tail", kind), allow_inf=True)
        truncated = bool(p.get("truncated", False))
        cls = StieltjesString if kind == "stieltjes_string" else KreinLangerString
        return cls(cells, tail, truncated)
    if kind == "hamiltonian":
        ivs = []
        for item in _list(_need(p, "intervals", kind), "intervals"):
            if not isinstance(item, dict) or "length" not in item or "angle" not in item:
                raise MalformedInputError("intervals need length and angle")
            ang = item["angle"]
            if not isinstance(ang, dict) or not isinstance(ang.get("pi_index"), int):
                raise MalformedInputError("angles need an integer pi_index")
            if ang.get("zero_mod_pi"):
                angle = AngleData.zero(ang["pi_index"])
            elif "cot" in ang:
                angle = AngleData(ang["pi_index"], _parse_q(ang["cot"]))
            else:
                raise MalformedInputError("angles need cot or zero_mod_pi")
            ivs.append(Interval(_parse_q(item["length"], allow_inf=True), angle))
        return HamburgerHamiltonian(tuple(ivs), bool(p.get("truncated", False)))
    num = Polynomial([_parse_q(x) for x in _list(_need(p, "num", kind), "num")])
    den = Polynomial([_parse_q(x) for x in _list(_need(p, "den", kind), "den")])
    return RationalFunction(num, den)


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=2)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


# --------------------------------------------------------------------------
# conversions


def _jacobi_ratfun(J: JacobiModel, s0=Fraction(1)) -> RationalFunction:
    n = J.size
    pair = ortho_polys(J, s0, n)
    return RationalFunction(-pair.q[n], pair.p[n])


def _string_moments(obj, depth):
    string = obj if isinstance(obj, KreinLangerString) else hamiltonian_to_kl(obj)
    s, _ = moments_from_kl(string, count=depth)
    return s


def to_moments(obj, count=None) -> MomentSequence:
    """Moments of any representation.  Finite objects default to
    ``2N + 1`` terms, enough to reveal their rank."""
    if isinstance(obj, MomentSequence):
        return obj if count is None else obj.prefix(count)
    if isinstance(obj, DiscreteMeasure):
        return moments_from_measure(obj, count or 2 * len(obj) + 1)
    if isinstance(obj, JacobiModel):
        f = _jacobi_ratfun(obj)
    elif isinstance(obj, RationalFunction):
        f = obj
    else:
        return _string_moments(obj, count)
    count = count or 2 * f.den.degree + 1
    return MomentSequence([-c for c in series_at_infinity(f, count)])


def _default_ratfun_depth(s, cls):
    if cls.finite_rank is not None:
        return cls.finite_rank
    return min(cls.strictly_positive_through + 1, len(s) // 2)


def convert(obj, target: str, depth=None):
    """Convert between document kinds.

    ``depth`` is the truncation depth of the target where it has one, and
    the number of moments when the target is ``moments``.
    """
    if target not in KINDS:
        raise MalformedInputError(f"unknown target kind {target!r}")
    src = kind_of(obj)
    if target == "moments":
        return to_moments(obj, depth)
    if target == "kl_string":
        if src == "kl_string" and depth is None:
            return obj
        if src == "stieltjes_string":
            string = KreinLangerString(obj.cells, obj.tail, obj.truncated)
            return string if depth is None else string.truncate(depth)
        if src == "ratfun":
            string = euclid_decompose(obj)
            return string if depth is None else string.truncate(depth)
        if src == "hamiltonian":
            string = hamiltonian_to_kl(obj)
            return string if depth is None else string.truncate(depth)
        return kl_from_moments(to_moments(obj), depth)
    if target == "stieltjes_string":
        if src in ("kl_string", "stieltjes_string", "ratfun", "hamiltonian"):
            string = convert(obj, "kl_string", depth)
            if not string.is_stieltjes:
                return stieltjes_from_moments(to_moments(obj), depth)
            return StieltjesString.from_kl(string)
        return stieltjes_from_moments(to_moments(obj), depth)
    if target == "hamiltonian":
        if src in ("kl_string", "stieltjes_string", "ratfun"):
            return kl_to_hamiltonian(convert(obj, "kl_string"))
        if src == "hamiltonian":
            return obj if depth is None else obj.truncate(depth)
        return hamiltonian_from_moments(to_moments(obj), depth)
    if target == "ratfun":
        if src == "ratfun":
            return obj
        if src == "jacobi":
            return _jacobi_ratfun(obj if depth is None else obj.truncate(depth))
        if src in ("kl_string", "stieltjes_string"):
            return m_tilde_ratfun(obj)
        if src == "hamiltonian":
            return hamiltonian_ratfun(obj)
        s = to_moments(obj)
        cls = classify(s)
        return jacobi_ratfun(s, depth if depth is not None else _default_ratfun_depth(s, cls))
    if target == "jacobi":
        if src == "jacobi":
            return obj if depth is None else obj.truncate(depth + 1)
        return jacobi_from_moments(to_moments(obj), depth)
    # measure
    if src == "measure":
        return obj
    s = to_moments(obj)
    cls = classify(s)
    n = depth if depth is not None else _default_ratfun_depth(s, cls)
    if n < 1:
        raise InsufficientMomentsError(1, "a quadrature needs s_0 and s_1")
    return gauss_quadrature(s, n, ledger=hankel_ledger(s))
