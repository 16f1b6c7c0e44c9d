"""Command-line interface.

    momentstrings classify  -i doc.json
    momentstrings convert   -i doc.json --to kl_string [--depth J]
    momentstrings mfun      -i doc.json --z i --z -1+i [--depth n]
    momentstrings expand    -i doc.json [--depth terms]
    momentstrings moments   -i doc.json [--depth count]
    momentstrings roundtrip -i doc.json
    momentstrings report    -i doc.json [--depth n] [--z ...] [--json]

Input and output default to stdin and stdout.  Exit codes: 0 success,
1 malformed input, 2 classification violation, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .documents import KINDS, convert, dumps, kind_of, loads, to_moments
from .errors import InsufficientMomentsError, MalformedInputError, MomentStringsError, NumericalError
from .exact import INF, format_rational, series_at_infinity
from .moments import classify, hankel_ledger
from .routes import ROUTES, RouteSet, max_relative_deviation
from .strings import kl_from_moments, max_kl_depth, moments_from_kl, singularity_diagnostic, trace_sums
from .canonical import hamiltonian_from_moments, hamiltonian_trajectory, hamiltonian_to_kl, kl_to_hamiltonian


def parse_z(text: str) -> complex:
    """``"a+bi"`` style input: ``i``, ``2i``, ``-1+i``, ``0.5-2i``."""
    t = text.strip().replace(" ", "").replace("I", "i")
    try:
        return complex(t.replace("i", "j"))
    except ValueError as exc:
        raise MalformedInputError(f"cannot parse z = {text!r}") from exc


def _c(x: complex):
    return [x.real, x.imag]


def _read(args):
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInputError(str(exc)) from exc
    return loads(text)


def _write(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _zs(args):
    return [parse_z(t) for t in (args.z or ["i"])]


# --------------------------------------------------------------------------


def cmd_classify(args):
    obj = _read(args)
    s = to_moments(obj)
    ledger = hankel_ledger(s)
    cls = classify(s, ledger)
    lines = [
        f"moments: {len(s)} (s_0..s_{len(s) - 1})",
        "positive: yes",
        f"strictly positive through: n = {cls.strictly_positive_through}",
        f"double positive: {'yes' if cls.double_positive else 'no'}"
        f" (Delta_1 > 0 through n = {cls.strictly_double_positive_through})",
        f"verdict: {cls.summary()}",
    ]
    _write(args, "\n".join(lines))


def cmd_convert(args):
    if args.to is None:
        raise MalformedInputError("--to is required")
    out = convert(_read(args), args.to, args.depth)
    _write(args, dumps(out))


def cmd_mfun(args):
    s = to_moments(_read(args))
    routes = RouteSet(s, args.depth)
    rows = []
    for z in _zs(args):
        vals = routes.evaluate(z)
        rows.append(
            {
                "z": _c(z),
                "depth": routes.depth,
                "values": {k: _c(vals[k]) for k in ROUTES},
                "max_relative_deviation": max_relative_deviation(vals.values()),
            }
        )
    _write(args, json.dumps(rows, indent=2))


def cmd_expand(args):
    f = convert(_read(args), "ratfun")
    n = args.depth or 2 * f.den.degree + 1
    coeffs = series_at_infinity(f, n)
    _write(args, json.dumps({"coefficients": [format_rational(c) for c in coeffs]}, indent=2))


def cmd_moments(args):
    obj = _read(args)
    if kind_of(obj) in ("kl_string", "stieltjes_string", "hamiltonian"):
        string = obj if kind_of(obj) != "hamiltonian" else hamiltonian_to_kl(obj)
        s, stable = moments_from_kl(string, count=args.depth)
        sys.stderr.write(f"stabilized moments: {stable}\n")
    else:
        s = to_moments(obj, args.depth)
    _write(args, dumps(s))


def cmd_roundtrip(args):
    obj = _read(args)
    s = to_moments(obj)
    string = kl_from_moments(s)
    back, _ = moments_from_kl(string, count=len(s))
    via_h, _ = moments_from_kl(hamiltonian_to_kl(kl_to_hamiltonian(string)), count=len(s))
    ok_s = list(back) == list(s)
    ok_h = list(via_h) == list(s)
    lines = [
        f"moments -> kl_string -> moments: {'PASS' if ok_s else 'FAIL'}",
        f"moments -> kl_string -> hamiltonian -> kl_string -> moments: {'PASS' if ok_h else 'FAIL'}",
    ]
    _write(args, "\n".join(lines))
    if not (ok_s and ok_h):
        raise NumericalError("round trip did not reproduce the input moments")


def build_report(obj, depth=None, zs=(1j,)) -> dict:
    s = to_moments(obj)
    ledger = hankel_ledger(s)
    cls = classify(s, ledger)
    rep = {"classification": cls.summary(), "moments": len(s)}
    routes = RouteSet(s, depth if cls.finite_rank is None or depth is None else min(depth, cls.finite_rank))
    samples = []
    for z in zs:
        vals = routes.evaluate(z)
        samples.append(
            {
                "z": _c(z),
                "values": {k: _c(vals[k]) for k in ROUTES},
                "max_relative_deviation": max_relative_deviation(vals.values()),
            }
        )
    rep["weyl_depth"] = routes.depth
    rep["weyl"] = samples
    if cls.finite_rank is not None:
        string = kl_from_moments(s, None, ledger)
    else:
        J = max_kl_depth(s, ledger)
        if depth is not None:
            J = min(J, depth)
        string = kl_from_moments(s, J, ledger)
    last = string.kappa if string.finite_tail else string.kappa - 1
    residuals = []
    for j in range(last + 1):
        try:
            residuals.append([format_rational(r) for r in trace_sums(s, string, j, ledger)])
        except (InsufficientMomentsError, MalformedInputError):
            break
    rep["trace_residuals"] = residuals
    diag = singularity_diagnostic(string)
    rep["string_depth"] = string.kappa
    rep["trajectory"] = [format_rational(t) for t in diag.trajectory]
    rep["verdict"] = diag.verdict
    if cls.finite_rank is not None:
        rep["verdict"] += f"; {cls.summary()}"
    rep["determinate"] = diag.determinate
    H = hamiltonian_from_moments(s, ledger=ledger)
    rep["hamiltonian_lengths"] = [format_rational(x) if x != INF else "inf" for x in H.lengths]
    rep["hamiltonian_trajectory"] = [format_rational(x) for x in hamiltonian_trajectory(H)]
    return rep


def _report_text(rep) -> str:
    lines = [f"classification: {rep['classification']}", f"Weyl function routes at depth {rep['weyl_depth']}:"]
    for sample in rep["weyl"]:
        z = complex(*sample["z"])
        lines.append(f"  z = {z}: max relative deviation {sample['max_relative_deviation']:.3e}")
        for k, (re, im) in sample["values"].items():
            lines.append(f"    {k:<12} {re:+.17g} {im:+.17g}i")
    lines.append(f"trace-sum residuals (string depth {rep['string_depth']}):")
    for j, r in enumerate(rep["trace_residuals"]):
        lines.append(f"  x_{j}: {', '.join(r)}")
    lines.append(f"determinacy trajectory: ({', '.join(rep['trajectory'])})")
    lines.append(f"verdict: {rep['verdict']}")
    lines.append(f"Hamiltonian lengths: ({', '.join(rep['hamiltonian_lengths'])})")
    return "\n".join(lines)


def cmd_report(args):
    rep = build_report(_read(args), args.depth, _zs(args))
    _write(args, json.dumps(rep, indent=2) if args.json else _report_text(rep))


COMMANDS = {
    "classify": cmd_classify,
    "convert": cmd_convert,
    "mfun": cmd_mfun,
    "expand": cmd_expand,
    "moments": cmd_moments,
    "roundtrip": cmd_roundtrip,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momentstrings", description="Moment sequences, strings and canonical systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("-i", "--input", help="input document (default: stdin)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--depth", type=int)
        if name == "convert":
            p.add_argument("--to", choices=KINDS)
        if name in ("mfun", "report"):
            p.add_argument("--z", action="append", help='spectral parameter "a+bi" (repeatable)')
        if name == "report":
            p.add_argument("--json", action="store_true")
    return parser


def _glue_z(argv):
    """Let ``--z -1+i`` through: argparse would take ``-1+i`` for an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--z":
            out.append("--z=" + next(it, ""))
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_z(argv))
    try:
        COMMANDS[args.command](args)
    except MomentStringsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except ZeroDivisionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
