"""Command-line interface: ``valdiff <command> [options]``.

JSON goes to stdout (or ``--out``), a one-line human summary to stderr.

Exit codes: 0 success, 1 selftest disagreement, 2 precondition violation,
3 solver failure, 4 parse error.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import oracle, serial
from .coarsen import (
    CoarseContext,
    coarse_valuation,
    ddeg_coarse,
    specialize_derivation,
    specialize_poly,
    specialize_series,
)
from .cuts import classify_delta, ddeg_along_cut, ddeg_along_cut_coarse, specialize_cut
from .dhensel import BeyondFrontier, dh_solve
from .errors import ParseError, ValdiffError
from .ordgroup import ConvexLevel, GroupVector
from .series import field_checks

EXIT_OK, EXIT_SELFTEST, EXIT_PRECONDITION, EXIT_SOLVER, EXIT_PARSE = 0, 1, 2, 3, 4
CHECK_MODES = ("small", "monotone", "asymptotic", "fewConstants")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def _default_seed():
    raw = os.environ.get("VALDIFF_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"VALDIFF_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="workspace JSON: rank, field, derivation")
    common.add_argument("--out", help="write the JSON result to this file")

    p = _Parser(prog="valdiff", description="Valued differential fields of Hahn series.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, *flags):
        sp = sub.add_parser(name, help=help_, parents=[common])
        for f in flags:
            f(sp)
        return sp

    def P(sp):
        sp.add_argument("-P", dest="poly", required=True, help="differential polynomial JSON")

    def P_opt(sp):
        sp.add_argument("-P", dest="poly", help="differential polynomial JSON")

    def a(sp):
        sp.add_argument("-a", dest="series", required=True, help="series JSON")

    def a_opt(sp):
        sp.add_argument("-a", dest="series", help="series JSON")

    def C(sp):
        sp.add_argument("-C", dest="cut", required=True, help="cut JSON")

    def C_opt(sp):
        sp.add_argument("-C", dest="cut", help="cut JSON")

    def gamma(sp):
        sp.add_argument("--gamma", help="exponent, e.g. 2 or 0,-1")

    def delta(sp):
        sp.add_argument("--delta", type=int, required=True, help="k: coarsen by Delta_k")

    def delta_opt(sp):
        sp.add_argument("--delta", type=int, help="k: use the coarse valuation by Delta_k")

    def seed(sp):
        sp.add_argument("--seed", type=int, default=None, help="default: $VALDIFF_SEED or 0")
        sp.add_argument("--count", type=int, default=100)

    cmd("eval", "P(a)", P, a)
    sp = cmd("conj", "additive or multiplicative conjugate", P, a)
    sp.add_argument("--mode", choices=("add", "mul"), default="add")
    cmd("ddeg", "dominant degree and dominant part", P)
    sp = cmd("ddeg-geq", "dominant degree after conjugating by t^gamma", P)
    sp.add_argument("--gamma", required=True, help="exponent, e.g. 2 or 0,-1")
    cmd("vp", "v(P), or v(P_{x t^gamma}) with --gamma", P, gamma)
    cmd("coarsen", "coarse valuation of a series, or ddeg^Delta of a polynomial", delta, P_opt, a_opt, gamma)
    cmd("specialize", "image in the specialized field", delta, P_opt, a_opt, C_opt)
    cmd("cut-ddeg", "dominant degree along a cut", P, C, delta_opt)
    cmd("classify", "Delta-fluent / Delta-jammed classification", C, delta)
    sp = cmd("dhsolve", "refine a root of P with v(P_0) > 0 and v(P_1) = 0", P)
    sp.add_argument("--target", required=True, help="target exponent")
    sp.add_argument("--max-steps", type=int, default=32)
    sp.add_argument("--search-radius", type=int, default=8)
    sp = cmd("check", "field property checks for the configured derivation", seed)
    sp.add_argument("--mode", choices=CHECK_MODES + ("all",), default="all")
    cmd("selftest", "oracle equivalence on a seeded corpus", seed)
    return p


# -- helpers -------------------------------------------------------------------


def _workspace(args):
    if args.config:
        return serial.workspace_from_json(serial.load_json(args.config))
    return serial.Workspace.default()


def _poly(args, ws):
    return serial.poly_from_json(serial.load_json(args.poly), ws)


def _series(args, ws):
    return serial.series_from_json(serial.load_json(args.series), ws.field, ws.rank)


def _cut(args, ws):
    return serial.cut_from_json(serial.load_json(args.cut), ws)


def _ctx(args, ws):
    if not 0 < args.delta < ws.rank:
        raise ParseError(f"--delta must satisfy 0 < k < {ws.rank}, got {args.delta}")
    return CoarseContext(ConvexLevel(ws.rank, args.delta))


def _exp(e):
    return serial.exp_to_json(e)


def _bound(v):
    if isinstance(v, BeyondFrontier):
        return {"atLeast": _exp(v.frontier)}
    return None if v is None else _exp(v)


# -- commands ------------------------------------------------------------------


def cmd_eval(args, ws):
    val = _poly(args, ws).evaluate(_series(args, ws))
    return serial.series_to_json(val) | {"pretty": str(val)}, f"P(a) = {val}"


def cmd_conj(args, ws):
    P, a = _poly(args, ws), _series(args, ws)
    Q = P.add_conj(a) if args.mode == "add" else P.mul_conj(a)
    return serial.poly_to_json(Q) | {"pretty": repr(Q)}, f"conjugate: {Q!r}"


def cmd_ddeg(args, ws):
    dom = _poly(args, ws).dominant()
    return {"ddeg": dom.ddeg, "dominant": str(dom.dpart)}, f"ddeg = {dom.ddeg}, D_P = {dom.dpart}"


def cmd_ddeg_geq(args, ws):
    g = serial.parse_exp(args.gamma, ws.rank)
    d = _poly(args, ws).ddeg_geq(g)
    return {"ddegGeq": d, "gamma": _exp(g)}, f"ddeg_>={list(g)} = {d}"


def cmd_vp(args, ws):
    P = _poly(args, ws)
    if args.gamma is None:
        v = P.v_poly()
        return {"vP": _exp(v)}, f"v(P) = {list(v)}"
    g = serial.parse_exp(args.gamma, ws.rank)
    v = P.vp_gamma(g)
    return {"gamma": _exp(g), "vP": _exp(v)}, f"v_P({list(g)}) = {list(v)}"


def cmd_coarsen(args, ws):
    ctx = _ctx(args, ws)
    if (args.poly is None) == (args.series is None):
        raise ParseError("coarsen takes exactly one of -P or -a")
    if args.series is not None:
        v = coarse_valuation(_series(args, ws), ctx)
        return {"coarseValuation": _exp(v), "delta": ctx.k}, f"v_Delta(a) = {list(v)}"
    g = serial.parse_exp(args.gamma, ctx.k) if args.gamma else GroupVector.zero(ctx.k)
    d = ddeg_coarse(_poly(args, ws), g, ctx)
    return {"ddegCoarse": d, "delta": ctx.k, "gamma": _exp(g)}, f"ddeg^Delta at {list(g)} = {d}"


def cmd_specialize(args, ws):
    ctx = _ctx(args, ws)
    given = [x for x in (args.poly, args.series, args.cut) if x is not None]
    if len(given) != 1:
        raise ParseError("specialize takes exactly one of -P, -a or -C")
    if args.series is not None:
        s = specialize_series(_series(args, ws), ctx)
        return {"series": serial.series_to_json(s), "pretty": str(s)}, f"specialized: {s}"
    if args.cut is not None:
        c = specialize_cut(_cut(args, ws), ctx)
        return {"cut": serial.cut_to_json(c)}, f"specialized cut with {len(c.points)} points"
    Pd = specialize_poly(_poly(args, ws), ctx)
    D = specialize_derivation(ws.deriv, ctx)
    out = {"poly": serial.poly_to_json(Pd), "pretty": repr(Pd),
           "config": {"rank": ctx.residual_rank, "field": ws.field.name,
                      "derivation": serial.deriv_to_json(D)}}
    return out, f"specialized: {Pd!r}"


def cmd_cut_ddeg(args, ws):
    P, cut = _poly(args, ws), _cut(args, ws)
    if args.delta is None:
        r = ddeg_along_cut(P, cut)
    else:
        r = ddeg_along_cut_coarse(P, cut, _ctx(args, ws))
    out = {"values": list(r.values), "stabilized": r.stabilized, "value": r.value, "approximate": True}
    tag = "stabilized" if r.stabilized else "not stabilized"
    return out, f"d = {list(r.values)} ({tag})"


def cmd_classify(args, ws):
    c = classify_delta(_cut(args, ws), ConvexLevel(ws.rank, _ctx(args, ws).k))
    return {"class": c.value}, f"cut is {c.value}"


def cmd_dhsolve(args, ws):
    P = _poly(args, ws)
    target = serial.parse_exp(args.target, ws.rank)
    r = dh_solve(P, target, max_steps=args.max_steps, search_radius=args.search_radius)
    if r.residual == "zero":
        residual = "zero"
    elif isinstance(r.residual, BeyondFrontier):
        residual = {"atLeast": _exp(r.residual.frontier)}
    else:
        residual = {"valuation": _exp(r.residual)}
    steps = [{"gamma": _exp(s.gamma), "equation": s.equation,
              "z": None if s.z is None else ws.field.format(s.z), "newV": _bound(s.new_v)}
             for s in r.steps]
    out = {"status": r.status, "reason": r.reason or None, "y": str(r.y),
           "ySeries": serial.series_to_json(r.y), "residual": residual,
           "steps": steps, "target": _exp(target)}
    msg = f"{r.status}{' (' + r.reason + ')' if r.reason else ''}: y = {r.y}"
    return out, msg, (EXIT_OK if r.solved else EXIT_SOLVER)


def cmd_check(args, ws):
    seed = _default_seed() if args.seed is None else args.seed
    modes = CHECK_MODES if args.mode == "all" else (args.mode,)
    out = {}
    for m in modes:
        kw = {} if m in ("small", "monotone") else {"count": args.count, "seed": seed}
        rep = field_checks(ws.deriv, m, ws.field, **kw)
        out[m] = {"passed": rep.passed, "exact": m in ("small", "monotone"),
                  "witness": None if rep.witness is None else str(rep.witness),
                  "detail": rep.detail}
    summary = ", ".join(f"{m}: {'pass' if v['passed'] else 'fail'}" for m, v in out.items())
    return out, summary


def selftest(seed: int, count: int, ws) -> dict:
    """Oracle equivalence over a seeded corpus; returns counts per check."""
    cfg = oracle.GenConfig(seed=seed, rank=ws.rank, count=count, field=ws.field.name,
                           deriv=ws.deriv, max_degree=2, max_order=1)
    rng = cfg.rng("selftest")
    polys = oracle.gen_instances("poly", cfg)
    series = oracle.gen_instances("series", cfg)
    fails = {"dominant": 0, "addConj": 0, "mulConj": 0, "eval": 0}
    for P, a in zip(polys, series):
        if oracle.brute_dominant(P) != P.dominant():
            fails["dominant"] += 1
        y = oracle.rand_series(rng, ws.field, ws.rank, 2, 2, lo=GroupVector.unit(ws.rank, ws.rank - 1))
        if P.add_conj(a).evaluate(y) != P.evaluate(a + y):
            fails["addConj"] += 1
        if P.mul_conj(a).evaluate(y) != P.evaluate(a * y):
            fails["mulConj"] += 1
        got = P.evaluate(a)
        if oracle.brute_eval(P, a) != dict(got.terms):
            fails["eval"] += 1
    return {"seed": seed, "count": count, "failures": fails, "passed": not any(fails.values())}


def cmd_selftest(args, ws):
    seed = _default_seed() if args.seed is None else args.seed
    res = selftest(seed, args.count, ws)
    msg = f"selftest seed={seed} count={args.count}: {'ok' if res['passed'] else 'FAILED'}"
    return res, msg, (EXIT_OK if res["passed"] else EXIT_SELFTEST)


COMMANDS = {
    "eval": cmd_eval, "conj": cmd_conj, "ddeg": cmd_ddeg, "ddeg-geq": cmd_ddeg_geq,
    "vp": cmd_vp, "coarsen": cmd_coarsen, "specialize": cmd_specialize,
    "cut-ddeg": cmd_cut_ddeg, "classify": cmd_classify, "dhsolve": cmd_dhsolve,
    "check": cmd_check, "selftest": cmd_selftest,
}


def _emit(payload, args, stdout):
    text = serial.dumps(payload) + "\n"
    out = getattr(args, "out", None) if args is not None else None
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        ws = _workspace(args)
        res = COMMANDS[args.command](args, ws)
        payload, msg = res[0], res[1]
        code = res[2] if len(res) > 2 else EXIT_OK
    except ValdiffError as e:
        payload = {"error": {"code": e.code, "message": str(e)}}
        msg, code = f"error [{e.code}]: {e}", e.exit_code
    except ZeroDivisionError as e:
        payload = {"error": {"code": "residue.DivisionByZero", "message": str(e)}}
        msg, code = f"error: {e}", EXIT_PRECONDITION
    _emit(payload, args, stdout)
    stderr.write(msg + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
