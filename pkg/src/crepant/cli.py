"""Command line entry point.

Exit status is 0 when a computation or check succeeds, 1 when a check
fails and 2 on usage errors.  Default orders can be overridden through
``CREPANT_THETA_ORDER``, ``CREPANT_ZORDER``, ``CREPANT_APPENDIX_ORDER``,
``CREPANT_PF_ORDER`` and ``CREPANT_JOBS``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactalg import RingElem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SERIES_NAMES = ("L", "C1", "C2", "X", "A2", "T", "mu", "I1")


def _env_int(name: str, default: int) -> int:
    v = os.environ.get(name)
    if not v:
        return default
    try:
        return int(v)
    except ValueError:
        raise SystemExit(f"error: {name} must be an integer, got {v!r}")


class UsageError(Exception):
    pass


def _frac(c) -> Fraction:
    if not c.is_rational():
        raise ArithmeticError(f"coefficient {c} is not rational")
    return c.to_fraction()


def potential_to_json(target: str, genus: int, value: RingElem, insertions=()) -> dict:
    terms = []
    for (x, c, l), v in value.sorted_terms():
        f = _frac(v)
        terms.append({"x": x, "c1": c, "l": l, "num": str(f.numerator), "den": str(f.denominator)})
    out = {"target": target, "genus": genus, "terms": terms}
    if insertions:
        out["insertions"] = list(insertions)
    return out


def _group_by_x(value: RingElem) -> dict:
    groups = {}
    for (x, c, l), v in value.sorted_terms():
        groups.setdefault(x, []).append((c, l, _frac(v)))
    return groups


def render_text(value: RingElem, target: str) -> str:
    xs = "X~" if target == "kp2" else "X"
    ls = "L~" if target == "kp2" else "L"
    lines = []
    for x, terms in sorted(_group_by_x(value).items()):
        parts = []
        for c, l, f in terms:
            mon = [str(f)]
            if c:
                mon.append(f"C1^{c}")
            if l:
                mon.append(f"{ls}^{l}")
            parts.append("*".join(mon))
        lines.append(f"{xs}^{x}: " + " + ".join(parts))
    return "\n".join(lines) if lines else "0"


def render_latex(value: RingElem, target: str) -> str:
    xs = r"\tilde{X}" if target == "kp2" else "X"
    ls = r"\tilde{L}" if target == "kp2" else "L"
    out = []
    for x, terms in sorted(_group_by_x(value).items()):
        parts = []
        for c, l, f in terms:
            s = rf"\frac{{{abs(f.numerator)}}}{{{f.denominator}}}" if f.denominator != 1 else str(abs(f.numerator))
            if l:
                s += f" {ls}^{{{l}}}"
            if c:
                s += f" C_1^{{{c}}}"
            parts.append(("- " if f < 0 else "+ ") + s)
        body = " ".join(parts).lstrip("+ ")
        out.append(f"\\left({body}\\right) {xs}^{{{x}}}" if x else f"\\left({body}\\right)")
    return " \\\\\n+ ".join(out) if out else "0"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_insertions(s: str | None) -> tuple:
    if not s:
        return ()
    try:
        ins = tuple(int(t) for t in s.split(","))
    except ValueError:
        raise UsageError(f"bad insertion list {s!r}")
    if any(i not in (0, 1, 2) for i in ins):
        raise UsageError("insertions must be 0, 1 or 2")
    return ins


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_compute(a) -> int:
    from .graphsum import potential

    ins = _parse_insertions(a.insertions)
    if a.genus < 0 or 2 * a.genus - 2 + len(ins) <= 0:
        raise UsageError(f"unstable genus/insertion count (g={a.genus}, n={len(ins)})")
    value = potential(a.target, a.genus, ins, jobs=a.jobs).value
    if a.format == "json":
        text = json.dumps(potential_to_json(a.target, a.genus, value, ins))
    elif a.format == "text":
        text = render_text(value, a.target)
    else:
        text = render_latex(value, a.target)
    _emit(text, a.out)
    return EXIT_OK


def cmd_series(a) -> int:
    from .mirror import build_mirror_data

    data = build_mirror_data(a.target, a.order + 3)
    try:
        s = data.get(a.name)
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    coeffs = [str(_frac(s[n])) for n in range(0, a.order + 1)]
    if a.format == "json":
        text = json.dumps({"target": a.target, "name": a.name, "var": data.var, "coeffs": coeffs})
    else:
        text = "[" + ", ".join(coeffs) + "]"
    _emit(text, a.out)
    return EXIT_OK


def cmd_rmatrix(a) -> int:
    from .rmatrix import ptilde_table

    table = ptilde_table(a.target, a.zorder, a.kind)
    entries = []
    for k in range(table.K + 1):
        for i in range(3):
            e = table.entry(k, i)
            entries.append({"k": k, "i": i, "terms": [
                {"x": x, "c1": c, "l": l, "num": str(_frac(v).numerator), "den": str(_frac(v).denominator)}
                for (x, c, l), v in e.sorted_terms()]})
    if a.format == "json":
        text = json.dumps({"target": a.target, "kind": a.kind, "zorder": a.zorder, "entries": entries})
    else:
        text = "\n".join(f"P~^{k}_{i}: {table.entry(k, i)}" for k in range(table.K + 1) for i in range(3))
    _emit(text, a.out)
    return EXIT_OK


def _report(check: str, ok: bool, out=None, **extra) -> int:
    rep = {"check": check, "pass": bool(ok)}
    rep.update(extra)
    _emit(json.dumps(rep, sort_keys=True, default=str), out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(a) -> int:
    what = a.what
    if what == "hae":
        from .anomaly import hae_residual, hae_series_residual

        if a.genus < 2:
            raise UsageError("hae needs --genus >= 2")
        r = hae_residual(a.genus, a.genus1)
        s = hae_series_residual(a.genus, genus1=a.genus1)
        return _report("hae", r.is_zero() and s.is_zero(), a.out, genus=a.genus, genus1=a.genus1,
                       ring_residual=str(r), series_residual_zero=s.is_zero())
    if what == "crc":
        from .crc import crc_residual

        ins = _parse_insertions(a.insertions)
        if a.genus < 0 or 2 * a.genus - 2 + len(ins) <= 0:
            raise UsageError("unstable genus/insertion count")
        r = crc_residual(a.genus, ins)
        return _report("crc", r.is_zero(), a.out, genus=a.genus, insertions=list(ins), residual=str(r))
    if what == "appendix":
        from .appendixid import verify_lemma_ci

        res = {i: verify_lemma_ci(i, a.order) for i in range(3)}
        return _report("appendix", all(r.is_zero() for r in res.values()), a.out, order=a.order,
                       residuals={i: repr(r) for i, r in res.items()})
    if what == "pf":
        from .mirror import picard_fuchs_residual

        r = picard_fuchs_residual(a.order, printed_sign=a.printed_sign)
        return _report("pf", not r, a.out, order=a.order, printed_sign=a.printed_sign,
                       residual={i: {f"{n},{e}": str(c) for (n, e), c in t.items()} for i, t in r.items()})
    if what == "symplectic":
        from .rmatrix import bare_rmatrix, rmatrix, symplectic_residual

        R = rmatrix(a.target, a.zorder) if a.kind == "true" else bare_rmatrix(a.target, a.zorder, a.kind)
        r = symplectic_residual(R)
        return _report("symplectic", not r, a.out, target=a.target, kind=a.kind, zorder=a.zorder,
                       nonzero_orders=sorted(r))
    if what == "degrees":
        from .anomaly import degree_report

        if a.genus < 2:
            raise UsageError("degrees needs --genus >= 2")
        rep = degree_report(a.genus)
        ok = rep["a2_bound"] and rep["l_bound"]
        return _report("degrees", ok, a.out, **rep)
    raise UsageError(f"unknown check {what!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crepant", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    targets = ("orbifold", "kp2")
    zorder = _env_int("CREPANT_ZORDER", 12)
    jobs = _env_int("CREPANT_JOBS", 1)

    c = sub.add_parser("compute", help="potential F_g or F_{g,n}")
    c.add_argument("--target", choices=targets, required=True)
    c.add_argument("--genus", type=int, required=True)
    c.add_argument("--insertions", default=None, help="comma separated flat indices, e.g. 1,1")
    c.add_argument("--format", choices=("json", "text", "latex"), default="json")
    c.add_argument("--out", default=None)
    c.add_argument("--jobs", type=int, default=jobs)
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("series", help="coefficients of a defining series")
    s.add_argument("--name", choices=SERIES_NAMES, required=True)
    s.add_argument("--target", choices=targets, required=True)
    s.add_argument("--order", type=int, default=_env_int("CREPANT_THETA_ORDER", 10))
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_series)

    r = sub.add_parser("rmatrix", help="dump the P~ table")
    r.add_argument("--target", choices=targets, required=True)
    r.add_argument("--zorder", type=int, default=zorder)
    r.add_argument("--kind", choices=("tilde", "bare", "true"), default="tilde")
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_rmatrix)

    v = sub.add_parser("verify", help="run one verification")
    v.add_argument("what", choices=("hae", "crc", "appendix", "pf", "symplectic", "degrees"))
    v.add_argument("--genus", type=int, default=2)
    v.add_argument("--insertions", default=None)
    v.add_argument("--genus1", choices=("graph", "printed"), default="graph",
                   help="source of the genus-1 one-point series")
    v.add_argument("--order", type=int, default=None)
    v.add_argument("--printed-sign", action="store_true", help="pf: use the sign as printed")
    v.add_argument("--target", choices=targets, default="orbifold")
    v.add_argument("--zorder", type=int, default=zorder)
    v.add_argument("--kind", choices=("tilde", "bare", "true"), default="true")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    p = build_parser()
    a = p.parse_args(argv)
    if getattr(a, "what", None) is not None and a.order is None:
        a.order = {"appendix": _env_int("CREPANT_APPENDIX_ORDER", 9),
                   "pf": _env_int("CREPANT_PF_ORDER", 30)}.get(a.what, 0)
    for name in ("order", "zorder", "genus", "jobs"):
        v = getattr(a, name, None)
        if v is not None and v < 0:
            p.print_usage(sys.stderr)
            print(f"error: --{name} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return a.func(a)
    except UsageError as e:
        p.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
