"""Command-line front end.

Exit codes: 0 success, 1 a checked assertion failed, 2 usage error,
3 resource limit or a check that could not be completed at this scale.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from . import elemab, limits, monomial, stablecoh
from .fplin import gl, gl_plus, is_prime
from .limits import ResourceLimitError
from .permgrp import (GroupTable, alternating_group, centralizer, conjugacy_classes,
                      symmetric_group, weyl_action)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    enumeration_cap: int
    output_format: str
    seed: int
    resource_timeout: Optional[float]


def parse_group(text: str) -> GroupTable:
    """``cyclic:k``, ``sym:k``, ``elemab:p^r`` or a JSON file ``{size, mul, identity}``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "cyclic" and arg:
            return GroupTable.cyclic(int(arg))
        if kind == "sym" and arg:
            return GroupTable.symmetric(int(arg))
        if kind == "elemab" and arg:
            p, _, r = arg.partition("^")
            if not is_prime(int(p)):
                raise UsageError(f"{p} is not prime")
            return GroupTable.elementary_abelian(int(p), int(r or 1))
    except ValueError as exc:
        raise UsageError(f"bad group shorthand {text!r}: {exc}") from None
    try:
        with open(text) as fh:
            return GroupTable.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read group {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# assertions


def _assertion(key: str, expected: Any, actual: Any, status: Optional[str] = None) -> dict:
    if status is None:
        status = "pass" if expected == actual else "fail"
    return {"key": key, "status": status, "expected": expected, "actual": actual}


def _verdict(assertions: list[dict]) -> int:
    statuses = {a["status"] for a in assertions}
    if "fail" in statuses:
        return EXIT_FAIL
    if "unverified" in statuses:
        return EXIT_LIMIT
    return EXIT_OK


def verify_ore(H: GroupTable, m: int, seed: int) -> list[dict]:
    G = monomial.embed_table(H, m)
    size = H.size ** m * math.factorial(m)
    out = [_assertion("ore/group-order", size, G.order())]
    labels = {}
    for i, cls in enumerate(conjugacy_classes(G)):
        for g in cls:
            labels[g] = i
    els = list(monomial.elements(H, m))
    random.Random(seed).shuffle(els)  # ordering only; every element is checked
    ident = monomial.MonomialElement.identity(H, m)
    decomp_ok = cent_ok = 0
    by_type: dict[tuple, set[int]] = defaultdict(set)
    by_label: dict[int, set[tuple]] = defaultdict(set)
    for x in els:
        cycles = monomial.disjoint_monomial_cycles(x)
        parts = [c.to_element(H, m) for c in cycles]
        prod = ident
        for y in parts:
            prod = prod * y
        supports = [s for c in cycles for s in c.support]
        commute = all(a * b == b * a for a in parts for b in parts)
        decomp_ok += prod == x and len(supports) == len(set(supports)) and commute
        xp = x.to_perm()
        cent_ok += monomial.centralizer_order(monomial.centralizer_shape(x)) == centralizer(G, xp).order()
        by_type[monomial.cycle_type(x)].add(labels[xp])
        by_label[labels[xp]].add(monomial.cycle_type(x))
    # the two partitions coincide iff every pair is judged the same way
    conj_ok = sum(1 for x in els if len(by_type[monomial.cycle_type(x)]) == 1
                  and len(by_label[labels[x.to_perm()]]) == 1)
    out.append(_assertion("ore/decomposition", len(els), decomp_ok))
    out.append(_assertion("ore/conjugacy", len(els), conj_ok))
    out.append(_assertion("ore/centralizer-order", len(els), cent_ok))
    return out


def _matrix_set(mats) -> list:
    return sorted(m.entries for m in mats)


def verify_weyl(n: int, p: int) -> list[dict]:
    out = []
    E = elemab.detecting_subgroup(n, p)
    k = E.rank
    if k == 0:
        return [_assertion("weyl/E/rank", 0, 0)]
    for name, G in (("A", alternating_group(n)), ("S", symmetric_group(n))):
        W = weyl_action(G, E)
        mats = set(W.matrices)
        closed = all((a @ b) in mats for a in W.matrices for b in W.matrices)
        out.append(_assertion(f"weyl/E/{name}/closed", True, closed))
        out.append(_assertion(f"weyl/E/{name}/normalizer-order", W.normalizer_order, len(W) * W.kernel_order))
        if p == 3 and n % 3 != 2 and name == "A":
            out.append(_assertion("weyl/E/A/order", math.factorial(k) * 2 ** (k - 1), len(W)))
    m = round(math.log(n, p))
    if p ** m == n and m >= 1:
        T = elemab.T_km(m, m, p)
        for name, G, full in (("A", alternating_group(n), gl_plus), ("S", symmetric_group(n), gl)):
            W = weyl_action(G, T)
            out.append(_assertion(f"weyl/T{m}{m}/{name}/matrices", _matrix_set(full(m, p)), _matrix_set(W.matrices)))
    return out


def verify_closed_system(n: int, p: int) -> list[dict]:
    G = alternating_group(n)
    S = elemab.sylow_generators(n, p)
    subjects = [("E", elemab.detecting_subgroup(n, p))]
    m = round(math.log(n, p))
    if p ** m == n:
        subjects += [("T" + ",".join(map(str, iv.i)), elemab.build_T(iv)) for iv in elemab.index_vectors(m, p)]
    out = []
    for name, E in subjects:
        if E.rank == 0:
            continue
        res = elemab.closed_system_check(E, S, G)
        out.append(_assertion(f"closed-system/{name}", True, res.passed))
    return out


def verify_theorem(n: int, p: int) -> tuple[list[dict], dict]:
    rep = stablecoh.verify_theorem(n, p)
    out = []
    for d, st in enumerate(rep.degree_status):
        actual = None if rep.invariant_dims is None else rep.invariant_dims[d]
        out.append(_assertion(f"theorem/degree/{d}", rep.formula[d], actual, st))
    if rep.closed_system is not None:
        out.append(_assertion("theorem/closed-system", True, rep.closed_system))
    return out, rep.to_json()


def verify_kunneth(n: int, p: int) -> list[dict]:
    return [_assertion("kunneth", True, stablecoh.kunneth_consistency(n, p))]


# ---------------------------------------------------------------------------
# rendering


def _emit(payload: dict, fmt: str, rows: Optional[list[Sequence]] = None, header: Sequence[str] = ()) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, sort_keys=True, indent=2) + "\n"
    rows = rows or []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    cells = [list(map(str, header))] + [[_text(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _text(v: Any) -> str:
    return json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else str(v)


def _assertion_rows(assertions: list[dict]) -> list[list]:
    return [[a["key"], a["status"], a["expected"], a["actual"]] for a in assertions]


# ---------------------------------------------------------------------------
# commands


def cmd_dim(args, cfg: RunConfig) -> tuple[str, int]:
    table = stablecoh.cohomology_table(args.n, args.p, args.max_degree)
    payload = {"command": "dim", "table": table.to_json()}
    return _emit(payload, cfg.output_format, table.rows(), ("n", "p", "d", "dim")), EXIT_OK


def _require(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join(missing)}")


def cmd_verify(args, cfg: RunConfig) -> tuple[str, int]:
    target = args.target
    extra: dict = {}
    if target == "ore":
        _require(args, "m", "group")
        H = parse_group(args.group)
        if args.m < 1:
            raise UsageError("--m must be positive")
        assertions = verify_ore(H, args.m, cfg.seed)
        params = {"m": args.m, "group": args.group}
    else:
        _require(args, "n", "p")
        params = {"n": args.n, "p": args.p}
        if target == "weyl":
            assertions = verify_weyl(args.n, args.p)
        elif target == "closed-system":
            assertions = verify_closed_system(args.n, args.p)
        elif target == "theorem":
            assertions, extra = verify_theorem(args.n, args.p)
        else:
            assertions = verify_kunneth(args.n, args.p)
    assertions.sort(key=lambda a: a["key"])
    code = _verdict(assertions)
    payload = {"command": f"verify {target}", "params": params, "assertions": assertions,
               "status": {EXIT_OK: "pass", EXIT_FAIL: "fail", EXIT_LIMIT: "unverified"}[code]}
    if extra:
        payload["report"] = extra
    if cfg.output_format == "csv" and target == "theorem":
        rows = [(args.n, args.p, d, v) for d, v in enumerate(extra["formula"])]
        return _emit(payload, "csv", rows, ("n", "p", "d", "dim")), code
    return _emit(payload, cfg.output_format, _assertion_rows(assertions),
                 ("assertion", "status", "expected", "actual")), code


def cmd_subgroups(args, cfg: RunConfig) -> tuple[str, int]:
    kind = args.kind
    if kind == "index-vectors":
        _require(args, "m", "p")
        ivs = elemab.index_vectors(args.m, args.p)
        payload = {"command": "subgroups", "kind": kind, "m": args.m, "p": args.p,
                   "index_vectors": [list(iv.i) for iv in ivs]}
        rows = [[",".join(map(str, iv.i)), iv.rank] for iv in ivs]
        return _emit(payload, cfg.output_format, rows, ("index_vector", "rank")), EXIT_OK
    if kind == "T":
        _require(args, "m", "p")
        if args.index:
            try:
                vec = tuple(int(v) for v in args.index.split(","))
                ivs = [elemab.IndexVector(args.p, args.m, vec)]
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            ivs = elemab.index_vectors(args.m, args.p)
        groups = [{"index_vector": list(iv.i), **elemab.build_T(iv).to_json()} for iv in ivs]
        payload = {"command": "subgroups", "kind": kind, "m": args.m, "p": args.p, "subgroups": groups}
        rows = [[",".join(map(str, g["index_vector"])), g["rank"], g["generators"]] for g in groups]
        return _emit(payload, cfg.output_format, rows, ("index_vector", "rank", "generators")), EXIT_OK
    _require(args, "n", "p")
    if kind == "E":
        E = elemab.detecting_subgroup(args.n, args.p)
        desc = E.to_json()
    else:
        P = elemab.sylow_generators(args.n, args.p)
        desc = {"ambient_degree": P.degree, "p": args.p, "order": P.order(),
                "generators": [g.to_json() for g in P.generators]}
    payload = {"command": "subgroups", "kind": kind, "n": args.n, "p": args.p, "subgroup": desc}
    rows = [[i + 1, g] for i, g in enumerate(desc["generators"])]
    return _emit(payload, cfg.output_format, rows, ("generator", "images")), EXIT_OK


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _prime(text: str) -> int:
    v = int(text)
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _odd_prime(text: str) -> int:
    v = _prime(text)
    if v == 2:
        raise argparse.ArgumentTypeError("an odd prime is required")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cap", type=_positive_int, default=None,
                        help=f"enumeration cap (default {limits.DEFAULT_ENUMERATION_CAP}, env {limits.ENV_ENUMERATION_CAP})")
    common.add_argument("--seed", type=int, default=0, help="seed for fuzz ordering")
    common.add_argument("--timeout", type=float, default=None, help="resource timeout in seconds")

    parser = argparse.ArgumentParser(prog="altcoh", description="Stable cohomology of alternating groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", parents=[common], help="dimension table")
    p_dim.add_argument("--n", type=_positive_int, required=True)
    p_dim.add_argument("--p", type=_prime, required=True)
    p_dim.add_argument("--max-degree", type=int, default=None)
    p_dim.set_defaults(func=cmd_dim)

    p_ver = sub.add_parser("verify", parents=[common], help="verification suites")
    p_ver.add_argument("target", choices=("ore", "weyl", "closed-system", "theorem", "kunneth"))
    p_ver.add_argument("--n", type=_positive_int)
    p_ver.add_argument("--p", type=_prime)
    p_ver.add_argument("--m", type=_positive_int)
    p_ver.add_argument("--group", help="cyclic:k, sym:k, elemab:p^r or a JSON table file")
    p_ver.set_defaults(func=cmd_verify)

    p_sub = sub.add_parser("subgroups", parents=[common], help="subgroup descriptors")
    p_sub.add_argument("--kind", choices=("index-vectors", "T", "E", "sylow"), required=True)
    p_sub.add_argument("--n", type=_positive_int)
    p_sub.add_argument("--m", type=_positive_int)
    p_sub.add_argument("--p", type=_odd_prime)
    p_sub.add_argument("--index", help="index vector for --kind T, e.g. 0,1")
    p_sub.set_defaults(func=cmd_subgroups)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    cap = args.cap if args.cap is not None else limits.current().enumeration_cap
    cfg = RunConfig(cap, args.format, args.seed, args.timeout)
    try:
        with limits.limits(enumeration_cap=cfg.enumeration_cap, timeout=cfg.resource_timeout):
            text, code = args.func(args, cfg)
    except UsageError as exc:
        print(f"altcoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"altcoh: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"altcoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
