"""Command-line front end: ``houghton elem|norm|confine|witness|poset``.

Exit codes: 0 success, 1 counterexample or violated condition (the output
carries the offending element), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from houghton import confining, metrics, structures, witnesses
from houghton.dsl import DSLSyntaxError, format_element, format_word, parse_element, to_json_dict
from houghton.elements import ArityError, HoughtonElement

SCHEMA = "houghton/1"


@dataclass
class RunConfig:
    command: str
    n: int = 2
    seed: int = 0
    samples: int = 200
    budget: int = metrics.DEFAULT_NODE_BUDGET
    fmt: str = "json"

    def __post_init__(self):
        if self.samples <= 0 or self.budget <= 0:
            raise ValueError("budgets must be positive")
        if self.n < 1:
            raise ValueError("arity must be >= 1")


class UsageError(Exception):
    pass


def _elem(text: str, n: int) -> HoughtonElement:
    try:
        return parse_element(text, n)
    except (DSLSyntaxError, ArityError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _show(g: HoughtonElement) -> dict:
    return {"dsl": format_element(g), "json": to_json_dict(g)}


def _emit(doc: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA} | doc, separators=(",", ":")) + "\n")


# -- subcommands ---------------------------------------------------------------


def cmd_elem(args, out) -> int:
    g = _elem(args.expr, args.n)
    _emit({"element": _show(g), "lambda": list(g.v), "finitary": g.is_finitary()}, out)
    return 0


def cmd_norm(args, out) -> int:
    g = _elem(args.elem, args.n)
    if args.mode == "formula":
        if not g.is_finitary():
            raise UsageError("formula mode needs a finitely supported element")
        if args.n < 2:
            raise UsageError("formula mode needs arity >= 2")
        word = metrics.fix_t_witness(g)
        _emit({"length": metrics.norm_fix_t(g), "witness": [format_element(x) for x in word]}, out)
        return 0
    width = None
    if args.window is not None:
        alphabet = metrics.fix_t_alphabet(args.window, args.n)
        max_len = args.max_len if args.max_len is not None else (metrics.norm_fix_t(g) if g.is_finitary() else 8)
        res = metrics.GeodesicOracle(alphabet, args.budget).norm(g, max_len)
    else:
        if not g.is_finitary():
            raise UsageError("bfs mode without --window needs a finitely supported element")
        oracle = metrics.StabilizedFixTNorm(args.n, args.budget)
        try:
            res, width = oracle.norm(g, args.max_len)
        except metrics.NormBoundExceeded as exc:
            raise UsageError(str(exc)) from exc
    doc = {"length": res.length if res.status == "ok" else res.status}
    doc["witness"] = [format_element(x) for x in res.witness] if res.witness is not None else None
    if width is not None:
        doc["window"] = width
    _emit(doc, out)
    return 0


def _subset(text, n):
    try:
        return confining.parse_subset(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_confine(args, out) -> int:
    Q = _subset(args.subset, args.n)
    ambient = _subset(args.ambient, args.n)
    alpha = confining.Conjugation(_elem(args.auto, args.n))
    if args.action == "escape":
        if args.elem is None:
            raise UsageError("escape needs --elem")
        g = _elem(args.elem, args.n)
        s = confining.escape_time(Q, alpha, g, args.esc_max)
        _emit({"escape_time": s if s is not None else "exceeds", "element": _show(g)}, out)
        return 0
    rep = confining.check_confining(Q, alpha, ambient, args.seed, args.samples, args.n0_max, args.esc_max)

    def show(g):
        return None if g is None else _show(g)

    doc = {
        "subset": Q.name,
        "ambient": ambient.name,
        "automorphism": format_element(alpha.a),
        "samples": rep.samples,
        "invariance_ok": rep.invariance_ok,
        "invariance_counterexample": show(rep.invariance_counterexample),
        "n0_found": rep.n0_found,
        "n0_counterexample": None if rep.n0_counterexample is None else [_show(x) for x in rep.n0_counterexample],
        "exhaustion_ok": rep.exhaustion_ok,
        "exhaustion_counterexample": show(rep.exhaustion_counterexample),
        "strict_witness": show(rep.strict_witness),
        "confining": rep.confining,
        "reverified": rep.verify(Q, alpha, args.n0_max, args.esc_max),
    }
    _emit(doc, out)
    return 0 if rep.confining else 1


def _witness_result(out, result, bad, inputs) -> int:
    doc = {"inputs": {k: _show(v) for k, v in inputs.items()}}
    if isinstance(result, HoughtonElement):
        doc["result"] = _show(result)
    else:
        doc["result"] = result
    doc["violations"] = bad
    _emit(doc, out)
    return 1 if bad else 0


def cmd_witness(args, out) -> int:
    n = args.n
    kind = args.kind
    try:
        if kind in ("pi", "omega"):
            g = _elem(args.elem, n)
            if kind == "pi":
                r = witnesses.pi_product(g, args.m, args.k, args.p)
                bad = witnesses.check_pi(r, g, args.m, args.k, args.p)
            else:
                r = witnesses.omega_product(g, args.m, args.k, args.p)
                bad = witnesses.check_omega(r, g, args.m, args.k, args.p)
            return _witness_result(out, r, bad, {"elem": g})
        if kind in ("munu", "swap"):
            a, b = _elem(args.alpha, n), _elem(args.beta, n)
            mu, nu = witnesses.mu_nu(a, b, args.level, args.n0)
            lv = args.level - 2 * args.n0
            if kind == "munu":
                bad = witnesses.check_mu_nu(mu, nu, lv)
                return _witness_result(out, {"mu": _show(mu), "nu": _show(nu)}, bad, {"alpha": a, "beta": b})
            s = witnesses.sigma_swap(mu, nu, lv, args.n0)
            bad = witnesses.check_swap(s, lv - 2 * args.n0)
            return _witness_result(out, s, bad, {"alpha": a, "beta": b})
        if kind == "decompose":
            g = _elem(args.elem, n)
            parts = witnesses.decompose_two_rays(g, args.i, args.j)
            bad = witnesses.check_decompose(g, args.i, args.j, parts)
            return _witness_result(out, {k: _show(x) for k, x in zip(("f1", "s", "f2"), parts)}, bad, {"elem": g})
        if kind == "retract":
            g = _elem(args.elem, n)
            r = witnesses.retract_to_partial(g, args.i, args.j)
            bad = [f"lambda_{k} != 0" for k in range(1, n + 1) if k not in (args.i, args.j) and r.v[k - 1]]
            return _witness_result(out, r, bad, {"elem": g})
        if kind == "fixfactor":
            g = _elem(args.elem, n)
            sigma, word = witnesses.fix_ray_factor(g, args.i)
            bad = witnesses.check_fix_ray_factor(g, args.i, sigma, word)
            return _witness_result(out, {"sigma": _show(sigma), "word": format_word(word)}, bad, {"elem": g})
    except witnesses.PreconditionError as exc:
        raw = {k: getattr(args, k) for k in ("elem", "alpha", "beta") if getattr(args, k) is not None}
        _emit({"inputs": {k: _show(_elem(v, n)) for k, v in raw.items()}, "violations": [f"precondition: {exc}"]}, out)
        return 1
    raise UsageError(f"unknown witness {kind}")


def cmd_poset(args, out) -> int:
    try:
        G = structures.PermGroup.parse(args.perm, args.n)
        text = structures.emit_poset(args.n, G, args.lineal_sample, args.format, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out.write(text if text.endswith("\n") else text + "\n")
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="houghton", description="Exact computations in Houghton groups.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("elem", help="evaluate an element expression")
    e.add_argument("action", choices=["eval"])
    e.add_argument("expr")
    e.add_argument("--n", type=int, default=2)
    e.set_defaults(func=cmd_elem)

    nm = sub.add_parser("norm", help="word norm over {t, t^-1} u Fix(R_1)")
    nm.add_argument("--mode", choices=["formula", "bfs"], default="formula")
    nm.add_argument("--n", type=int, default=2)
    nm.add_argument("--elem", required=True)
    nm.add_argument("--window", type=int)
    nm.add_argument("--max-len", type=int)
    nm.add_argument("--budget", type=int, default=metrics.DEFAULT_NODE_BUDGET)
    nm.set_defaults(func=cmd_norm)

    c = sub.add_parser("confine", help="sampled confining checks")
    c.add_argument("action", choices=["check", "escape"])
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--ambient", default="syminf")
    c.add_argument("--subset", required=True)
    c.add_argument("--auto", default="t[1,2]")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n0-max", type=int, default=4)
    c.add_argument("--esc-max", type=int, default=64)
    c.add_argument("--elem")
    c.set_defaults(func=cmd_confine)

    w = sub.add_parser("witness", help="witness permutation combinators")
    w.add_argument("kind", choices=["pi", "omega", "munu", "swap", "decompose", "retract", "fixfactor"])
    w.add_argument("--n", type=int, default=2)
    w.add_argument("--elem")
    w.add_argument("--alpha")
    w.add_argument("--beta")
    w.add_argument("--m", type=int)
    w.add_argument("--k", type=int)
    w.add_argument("--p", type=int, default=1)
    w.add_argument("--level", type=int, help="level n of the (alpha, beta) input")
    w.add_argument("--n0", type=int, default=0)
    w.add_argument("--i", type=int, default=1)
    w.add_argument("--j", type=int, default=2)
    w.set_defaults(func=cmd_witness)

    ps = sub.add_parser("poset", help="emit the poset of hyperbolic structures")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--perm", default="")
    ps.add_argument("--lineal-sample", type=int, default=0)
    ps.add_argument("--format", choices=["json", "dot"], default="json")
    ps.add_argument("--seed", type=int, default=0)
    ps.set_defaults(func=cmd_poset)
    return p


_REQUIRED = {
    "pi": ("elem", "m", "k"),
    "omega": ("elem", "m", "k"),
    "munu": ("alpha", "beta", "level"),
    "swap": ("alpha", "beta", "level"),
    "decompose": ("elem",),
    "retract": ("elem",),
    "fixfactor": ("elem",),
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        RunConfig(args.command, getattr(args, "n", 2), getattr(args, "seed", 0), getattr(args, "samples", 200), getattr(args, "budget", metrics.DEFAULT_NODE_BUDGET))
        if args.command == "witness":
            missing = [f for f in _REQUIRED[args.kind] if getattr(args, f) is None]
            if missing:
                raise UsageError(f"witness {args.kind} needs --" + ", --".join(missing))
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"houghton: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
