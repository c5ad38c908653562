"""Command-line entry point: ``wallres <command> [options]``.

Every command prints (or writes to ``--out``) a JSON report, or a CSV rank
table with ``--format csv``.  Exit status is 0 whenever a verdict was
computed, including negative ones; 2 signals malformed input or a
violated precondition.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .bockstein import (BocksteinError, NonVanishingClass, bockstein_datum, bockstein_sequence,
                        ext_class, is_zero_class, prop41_pipeline, serre_search)
from .gmodules import ModuleError
from .groups import SizeCapError, index_p_homomorphisms
from .linalg import is_prime
from .pipelines import (PipelineError, alperin_evens_check, chouinard_projectivity_check,
                        main3_verify, psylow_split, vfcd_bound)
from .resolutions import (ComplexityFunction, ResolutionError, finite_length_verdict,
                          growth_verdict, resolve)
from .samples import random_complex
from .serialization import InputError, dumps, load_group, load_module, rank_table_csv
from .sln import crt_check, diagonal_sign_subgroup, sl_group, verify_rank_bound
from .wall import WallError, build_wall

DEFAULT_SEED = 0
COMMANDS = ["resolve", "wall", "bockstein", "serre-search", "prop41", "psylow", "main3",
            "alperin-evens", "chouinard", "vfcd", "sln-scan"]


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="Z2^2",
                        help="group JSON file or built-in name (Z4, Z2^3, Z2xZ4, D8, Q8, S3, SL(2,3))")
    common.add_argument("--module", default=None, help="module JSON file (default: trivial module)")
    common.add_argument("--p", type=int, default=2, help="characteristic of the coefficient field")
    common.add_argument("--length", type=int, default=10, help="resolution length N")
    common.add_argument("--f", default="poly:1", help="complexity function: poly:A, log or exp")
    common.add_argument("--dmax", type=int, default=None, help="largest admissible witness d")
    common.add_argument("--mmax", type=int, default=4, help="largest Bockstein product length")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized steps")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json")

    ap = argparse.ArgumentParser(prog="wallres", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("resolve", parents=[common], help="resolve a module and judge its growth") \
        .add_argument("--strategy", choices=["minimal", "generic", "greedy", "auto"], default="auto")
    w = sub.add_parser("wall", parents=[common], help="Wall complex over a random base complex")
    w.add_argument("--base-length", type=int, default=3)
    w.add_argument("--max-dim", type=int, default=6)
    b = sub.add_parser("bockstein", parents=[common], help="Bockstein sequences and their classes")
    b.add_argument("--subgroup", type=int, action="append", default=None,
                   help="position in the list of index-p subgroups (repeatable, spliced in order)")
    sub.add_parser("serre-search", parents=[common], help="search for a vanishing Bockstein product")
    sub.add_parser("prop41", parents=[common], help="resolution of M+N from the Serre witness")
    sub.add_parser("psylow", parents=[common], help="Sylow splitting of M")
    sub.add_parser("main3", parents=[common], help="constructive reduction to elementary abelian subgroups")
    sub.add_parser("alperin-evens", parents=[common], help="growth degree over G vs elementary abelian subgroups")
    sub.add_parser("chouinard", parents=[common], help="projectivity over G vs elementary abelian subgroups")
    sub.add_parser("vfcd", parents=[common], help="bound by the largest elementary abelian rank")
    s = sub.add_parser("sln-scan", parents=[common], help="SL(n, Z_m) checks at brute-force scale")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--r", type=int, default=2, help="prime for the elementary abelian rank scan")
    s.add_argument("--q", type=int, default=None, help="second prime for the CRT check")
    return ap


def _complexity(text: str) -> ComplexityFunction:
    try:
        return ComplexityFunction.parse(text)
    except ValueError as exc:
        raise InputError(f"--f: {exc}") from exc


def _setup(args):
    if not is_prime(args.p):
        raise InputError(f"--p: {args.p} is not prime")
    if args.length < 0:
        raise InputError("--length must be nonnegative")
    G = load_group(args.group)
    M = load_module(args.module, G, args.p)
    return G, M


def _cmd_resolve(args):
    G, M = _setup(args)
    f = _complexity(args.f)
    strategy = args.strategy
    if strategy == "auto":
        strategy = "minimal" if G.is_p_group(args.p) else "greedy"
    R = resolve(M, args.length, strategy)
    v = growth_verdict(R.ranks, f, args.dmax)
    rep = {"command": "resolve", "strategy": strategy, "group_order": G.order, "p": args.p,
           "module_dim": M.dim, "verdict": v.to_json(),
           "finite_length": finite_length_verdict(R.ranks).to_json(), "exactness": R.certificate}
    return rep, {"rank": R.ranks}


def _cmd_wall(args):
    G, _ = _setup(args)
    rng = np.random.default_rng(args.seed)
    C = random_complex(G, args.p, args.base_length, rng, args.max_dim)
    strategy = "minimal" if G.is_p_group(args.p) else "greedy"
    NT = args.length if args.length else args.base_length + 1
    cols = [resolve(M, max(NT - i, 0), strategy) for i, M in enumerate(C.modules)]
    W = build_wall(C, cols, length=NT)
    rep = {"command": "wall", "seed": args.seed, "base_dims": C.dims(), "ranks": W.ranks,
           "wall": W.to_json(include_matrices=False)}
    return rep, {"rank": W.ranks}


def _subgroups(G, p):
    return [K for K, _ in index_p_homomorphisms(G, p)]


def _cmd_bockstein(args):
    G, M = _setup(args)
    subs = _subgroups(G, args.p)
    if not subs:
        raise InputError(f"group has no normal subgroup of index {args.p}")
    picks = args.subgroup if args.subgroup else list(range(len(subs)))
    for i in picks:
        if not 0 <= i < len(subs):
            raise InputError(f"--subgroup {i}: only {len(subs)} index-{args.p} subgroups")
    seqs = [bockstein_sequence(bockstein_datum(G, subs[i]), M) for i in picks]
    entries = []
    P = resolve(M, 2 * len(picks) + 1) if G.is_p_group(args.p) else None
    for i, S in zip(picks, seqs):
        e = {"subgroup": list(subs[i].elements), "exact": S.is_exact(),
             "dims": [X.dim for X in S.terms]}
        if P is not None:
            e["zero_class"] = is_zero_class(ext_class(S, P)) is not None
        entries.append(e)
    rep = {"command": "bockstein", "sequences": entries}
    if args.subgroup and len(picks) > 1:
        from .bockstein import splice
        S = splice(seqs)
        prod = {"degree": S.degree, "exact": S.is_exact()}
        if P is not None:
            prod["zero_class"] = is_zero_class(ext_class(S, P)) is not None
        rep["product"] = prod
    return rep, None


def _cmd_serre(args):
    G, M = _setup(args)
    w = serre_search(G, M, args.mmax)
    rep = {"command": "serre-search", "found": w is not None, "m_max": args.mmax}
    if w is not None:
        rep.update(w.to_json())
    return rep, None


def _cmd_prop41(args):
    G, M = _setup(args)
    f = _complexity(args.f)
    w = serre_search(G, M, args.mmax)
    if w is None:
        return {"command": "prop41", "applicable": False,
                "reason": f"no vanishing product with m <= {args.mmax}"}, None
    try:
        res = prop41_pipeline(G, M, w.subgroups, f=f, d_max=args.dmax, length=args.length)
    except NonVanishingClass as exc:
        return {"command": "prop41", "applicable": False, "reason": str(exc)}, None
    rep = {"command": "prop41", "applicable": True}
    rep.update(res.to_json())
    return rep, {"rank": res.resolution.ranks, "formula": res.expected_ranks}


def _cmd_psylow(args):
    G, M = _setup(args)
    r = psylow_split(G, M, _complexity(args.f), args.dmax, length=args.length)
    rep = {"command": "psylow"}
    rep.update(r.to_json())
    return rep, {"rank": r.resolution.ranks}


def _cmd_main3(args):
    G, M = _setup(args)
    rep_obj = main3_verify(G, M, _complexity(args.f), args.dmax, args.length, args.mmax)
    rep = {"command": "main3"}
    rep.update(rep_obj.to_json())
    table = {"G": rep_obj.resolution.ranks}
    for S, r, _, v in rep_obj.per_subgroup:
        table["E" + "-".join(map(str, S.elements))] = v.ranks
    return rep, table


def _cmd_alperin(args):
    G, M = _setup(args)
    a = alperin_evens_check(G, M, args.length)
    table = {"G": a["group_ranks"]}
    for s in a["subgroups"]:
        table["E" + "-".join(map(str, s["subgroup"]))] = s["ranks"]
    return dict(command="alperin-evens", **a), table


def _cmd_chouinard(args):
    G, M = _setup(args)
    return dict(command="chouinard", **chouinard_projectivity_check(G, M)), None


def _cmd_vfcd(args):
    G, M = _setup(args)
    out = vfcd_bound(G, M, args.length, args.dmax, args.mmax)
    rep = {"command": "vfcd", "r_max": out["r_max"], "verdict": out["verdict"].to_json(),
           "ranks": out["resolution"].ranks}
    if out["report"] is not None:
        rep["log"] = out["report"].log
    return rep, {"rank": out["resolution"].ranks}


def _cmd_sln(args):
    if not is_prime(args.p):
        raise InputError(f"--p: {args.p} is not prime")
    S = sl_group(args.n, args.p)
    rep = {"command": "sln-scan", "n": args.n, "p": args.p, "order": S.group.order}
    if args.r != args.p:
        rep["rank_bound"] = verify_rank_bound(args.n, args.p, args.r)
    if args.q is not None:
        rep["crt"] = crt_check(args.n, args.p, args.q)
    if args.p % 2 == 1:
        _, E, r = diagonal_sign_subgroup(args.n, args.p)
        rep["diagonal_sign_subgroup"] = {"elements": [list(S.labels[e]) for e in E.elements],
                                         "rank": r}
    return rep, None


_HANDLERS = {"resolve": _cmd_resolve, "wall": _cmd_wall, "bockstein": _cmd_bockstein,
             "serre-search": _cmd_serre, "prop41": _cmd_prop41, "psylow": _cmd_psylow,
             "main3": _cmd_main3, "alperin-evens": _cmd_alperin, "chouinard": _cmd_chouinard,
             "vfcd": _cmd_vfcd, "sln-scan": _cmd_sln}


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        report, table = _HANDLERS[args.command](args)
        if args.format == "csv":
            if table is None:
                raise InputError(f"--format csv: '{args.command}' has no rank table")
            text = rank_table_csv(table)
        else:
            text = dumps(report)
    except (InputError, ModuleError, SizeCapError, PipelineError, BocksteinError, WallError,
            ResolutionError, ValueError) as exc:
        print(f"wallres {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
