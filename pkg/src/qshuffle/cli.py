"""Command line front-end: identity suites, fusion tables, strata, Nichols dimensions, braid evaluation.

Exit status: 0 when everything holds, 1 when an identity fails, 2 for bad
input, 3 when a braiding file does not satisfy the braid equation.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import braidrep, p1, shuffle_hopf, strata, ydmod
from .braidrep import BraidElement, BraidingError, MixedBraiding, Report
from .coeff import Cyclotomic

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BRAIDING = 0, 1, 2, 3

SUITES = ("shuffle-identities", "hopf", "antipode", "bimodule", "yd", "adjoint",
          "fusion", "strata-d2", "efk")
DEFAULT_PRIMES = (2, 3, 5)
STRATA_PAIRS = ((0, 2), (0, 3), (1, 2), (1, 3), (2, 2))
COPIES = ("Y", "Z", "W")


class InputError(ValueError):
    """Malformed command line data."""


# ---------------------------------------------------------------------------
# braidings


def with_copies(br, extra=COPIES):
    """Extend a one-space braiding on X by copies of X under new labels."""
    spec = br.pairs[("X", "X")]
    names = ("X",) + tuple(extra)
    spaces = {n: br.dims["X"] for n in names}
    if spec[0] == "phase":
        pairs = {(a, b): ("phase", spec[1], spec[2]) for a in names for b in names}
    else:
        pairs = {(a, b): ("matrix", spec[1]) for a in names for b in names}
    # copies of a validated braiding satisfy the braid equation automatically
    return MixedBraiding(spaces, pairs, validate=False)


def read_braiding_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("cannot read braiding file %s: %s" % (path, exc)) from exc
    if not isinstance(data, dict):
        raise InputError("braiding file must hold a JSON object")
    return data


def build_braiding(desc):
    """Descriptors keep worker tasks picklable: ('rank1', p), ('jordanian',) or ('file', data)."""
    kind = desc[0]
    if kind == "rank1":
        return p1.rank_one_mixed(desc[1])
    if kind == "jordanian":
        return braidrep.jordanian_plane(COPIES)
    if kind == "file":
        try:
            br = braidrep.load_braiding(desc[1])
        except BraidingError:
            raise
        except (ValueError, KeyError, TypeError, IndexError) as exc:
            raise InputError("invalid braiding file: %s" % (exc,)) from exc
        return with_copies(br)
    raise InputError("unknown braiding %r" % (kind,))


def describe(desc):
    if desc[0] == "rank1":
        return "rank1(p=%d)" % desc[1]
    if desc[0] == "jordanian":
        return "jordanian"
    return "file"


# ---------------------------------------------------------------------------
# suites


def _trivial(name):
    return [Report(name + "-trivial", {"max_degree": 0}, True, cases=1)]


def suite_shuffle(br, opts):
    top = 4 if opts.get("max_degree") is None else opts["max_degree"]
    if top == 0:
        return _trivial("shuffle")
    # summed split identities beyond nine strands on a non-diagonal space are too large
    # to evaluate densely; they are certified in the braid group algebra instead
    strands = None if br.all_phase() else 9
    return braidrep.shuffle_identity_reports(br, max_index=top, max_bb=min(top, 3),
                                             operator_strands=strands)


def suite_hopf(br, opts):
    top = 6 if opts.get("max_degree") is None else opts["max_degree"]
    if top == 0:
        return _trivial("hopf")
    out = [shuffle_hopf.check_bialgebra(br, r, s)
           for total in range(1, top + 1) for r in range(total + 1) for s in [total - r]]
    out += [shuffle_hopf.check_antipode(br, r) for r in range(1, top + 1)]
    return out


def suite_antipode(br, opts):
    top = 6 if opts.get("max_degree") is None else opts["max_degree"]
    if top == 0:
        return _trivial("antipode")
    return [shuffle_hopf.check_antipode(br, r) for r in range(1, top + 1)]


def suite_bimodule(br, opts):
    top = 2 if opts.get("max_degree") is None else opts["max_degree"]
    out = [ydmod.check_bimodule(br, top)]
    out += [ydmod.check_relative_antipode(br, s, t)
            for s in range(2 * top + 1) for t in range(2 * top + 1 - s)]
    return out


def suite_yd(br, opts):
    top = 3 if opts.get("max_degree") is None else opts["max_degree"]
    out = [ydmod.check_yd_axiom(br, r, s) for r in range(top + 1) for s in range(top + 1)]
    out += [ydmod.check_e_lemma(br, s) for s in range(3)]
    return out


def suite_adjoint(br, opts):
    top = 4 if opts.get("max_degree") is None else opts["max_degree"]
    out = [ydmod.check_adjoint_closed_forms(br, s) for s in range(min(top, 3) + 1)]
    out += [ydmod.check_action_property(br, r, s, t)
            for r in range(3) for s in range(3) for t in range(3)]
    out += [ydmod.check_t_relation(br, r) for r in range(top + 1)]
    out += [ydmod.check_sigma2(br, s) for s in range(top + 1)]
    return out


def suite_fusion(br, opts):
    top = 2 if opts.get("max_degree") is None else opts["max_degree"]
    rng = range(top + 1)
    out = [ydmod.check_iota_forms(br, s, t) for s in rng for t in rng]
    out += [ydmod.check_iota_associative(br, s, t, u) for s in rng for t in rng for u in rng]
    out += [ydmod.check_fusion_coaction(br, s, t) for s in rng for t in rng]
    out += [ydmod.check_fusion_action(br, r, s, t) for r in rng for s in rng for t in rng]
    out += [ydmod.check_yd_axiom(br, r, s, tail=t + 2, tail_labels=("Y",) + ("X",) * t + ("Z",))
            for r in rng for s in rng for t in rng]
    out += [ydmod.check_braiding_inverse(br, d) for d in range(2 * top + 1)]
    out += [ydmod.check_squared_braiding(br, s, t) for s in rng for t in rng]
    return out


def suite_strata(br, opts):
    if opts.get("m") is not None or opts.get("n") is not None:
        if opts.get("m") is None or opts.get("n") is None:
            raise InputError("strata-d2 needs both --m and --n")
        pairs = [(opts["m"], opts["n"])]
    else:
        pairs = STRATA_PAIRS
    out = [strata.check_d_squared(br, m, n) for m, n in pairs]
    out += [strata.check_mu_sum(br, j, l1, l2)
            for j in range(3) for l1 in range(3) for l2 in range(3) if j + l1 + l2 <= 4]
    return out


SUITE_FUNCS = {
    "shuffle-identities": suite_shuffle,
    "hopf": suite_hopf,
    "antipode": suite_antipode,
    "bimodule": suite_bimodule,
    "yd": suite_yd,
    "adjoint": suite_adjoint,
    "fusion": suite_fusion,
    "strata-d2": suite_strata,
}


def run_task(task):
    """One suite on one braiding; returns a JSON-ready record."""
    suite, desc, opts = task
    start = time.perf_counter()
    if suite == "efk":
        reports = [p1.efk_relations(p1.P1Context(desc[1]))]
    else:
        br = build_braiding(desc)
        reports = SUITE_FUNCS[suite](br, opts)
    return {
        "suite": suite,
        "braiding": describe(desc),
        "passed": all(r.passed for r in reports),
        "cases": sum(r.cases for r in reports),
        "identities": [r.to_json() for r in reports],
        "wall_time": round(time.perf_counter() - start, 3),
    }


def verify_tasks(suites, primes, braiding_data, opts):
    tasks = []
    for suite in suites:
        if suite == "efk":
            descs = [("rank1", p) for p in primes]
        elif braiding_data is not None:
            descs = [("file", braiding_data)]
        else:
            descs = [("rank1", p) for p in primes] + [("jordanian",)]
        if opts.get("max_degree") == 0 and suite in ("shuffle-identities", "hopf", "antipode"):
            descs = descs[:1]       # nothing to check in degree zero, one trivial case suffices
        tasks += [(suite, d, opts) for d in descs]
    return tasks


def run_verify(args):
    suites = list(SUITES) if "all" in args.suite else list(dict.fromkeys(args.suite))
    primes = tuple(args.p) if args.p else DEFAULT_PRIMES
    if any(p < 2 for p in primes):
        raise InputError("p must be at least 2")
    if args.max_degree is not None and args.max_degree < 0:
        raise InputError("degree caps must be non-negative")
    data = read_braiding_file(args.braiding) if args.braiding else None
    if data is not None:
        build_braiding(("file", data))      # fail early on bad input
    opts = {"max_degree": args.max_degree, "m": args.m, "n": args.n}
    tasks = verify_tasks(suites, primes, data, opts)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(run_task, tasks))
    else:
        records = [run_task(t) for t in tasks]
    if args.no_timing:
        for r in records:
            r.pop("wall_time")
    report = {"command": "verify", "suites": suites, "passed": all(r["passed"] for r in records),
              "cases": sum(r["cases"] for r in records), "results": records}
    emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# fusion


def parse_module(text, p):
    """'X:r:nu', 'V:r:nu' or 'P:r:nu'."""
    parts = text.strip().split(":")
    if len(parts) != 3 or parts[0] not in ("X", "V", "P"):
        raise InputError("module must look like X:r:nu, got %r" % (text,))
    try:
        r, nu = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InputError("module indices must be integers: %r" % (text,)) from exc
    if not 1 <= r <= p:
        raise InputError("module index r must lie in 1..%d" % p)
    return parts[0], r, nu % 4


def _module_list(values, p):
    out = []
    for v in values or []:
        out += [parse_module(x, p) for x in v.split(",") if x.strip()]
    return out


def summand_text(item):
    if item["kind"] == "unknown":
        return "unknown(dim %d)" % item["dim"]
    return "%s_%d(%d)" % (item["kind"], item["r"], item["nu"])


def _named_json(names):
    out = {}
    for n in names:
        out[n] = out.get(n, 0) + 1
    return [{"kind": k, "r": r, "nu": nu, "mult": m} for (k, r, nu), m in sorted(out.items())]


def fusion_rows(p, lhs, rhs):
    ctx = p1.P1Context(p)
    cache = {}

    def module(spec):
        if spec not in cache:
            try:
                cache[spec] = p1.build_named(ctx, spec[0], spec[1], spec[2])
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        return cache[spec]

    rows = []
    for a in lhs:
        for b in rhs:
            dec = p1.decompose_fusion(ctx, module(a), module(b))
            row = {"lhs": "%s:%d:%d" % a, "rhs": "%s:%d:%d" % b}
            row.update(dec.to_json())
            if a[0] == "X" and b[0] == "X":
                want = p1.fusion_formula(p, a[1], a[2], b[1], b[2])
                row["expected"] = _named_json(want)
                row["match"] = dec.names() == want
            rows.append(row)
    return rows


def fusion_markdown(p, rows):
    lines = ["| lhs | rhs | product | formula |", "|---|---|---|---|"]
    for row in rows:
        got = " + ".join("%s%s" % ("%d " % s["mult"] if s["mult"] > 1 else "", summand_text(s))
                         for s in row["summands"]) or "0"
        if "expected" in row:
            want = "agrees" if row["match"] else "differs: " + " + ".join(
                summand_text(s) for s in row["expected"])
        else:
            want = "n/a"
        lines.append("| %s | %s | %s | %s |" % (row["lhs"], row["rhs"], got, want))
    return "# fusion products at p = %d\n\n%s\n" % (p, "\n".join(lines))


def run_fusion(args):
    p = args.p
    if p < 2:
        raise InputError("p must be at least 2")
    if args.lhs is None and args.rhs is None:
        lhs = rhs = [("X", r, nu) for r in range(1, p + 1) for nu in range(4)]
    else:
        lhs, rhs = _module_list(args.lhs, p), _module_list(args.rhs, p)
    rows = fusion_rows(p, lhs, rhs)
    ok = all(r.get("match", True) for r in rows)
    if args.format == "md":
        sys.stdout.write(fusion_markdown(p, rows))
    elif len(rows) == 1 and args.lhs is not None:
        emit({k: rows[0][k] for k in ("summands",)})
    else:
        emit({"p": p, "rows": rows, "all_match": ok})
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# strata, nichols, braid-eval


def cell_json(cell):
    return [list(e) if strata.is_fixed(e) else e for e in cell]


def _braiding_for(args):
    if args.braiding:
        return build_braiding(("file", read_braiding_file(args.braiding)))
    return p1.rank_one_mixed(args.p)


def run_strata(args):
    if args.m < 0 or args.n < 1:
        raise InputError("need m >= 0 and n >= 1")
    ks = range(args.n, 2 * args.n + 1)
    if args.k is not None:
        if not args.n <= args.k <= 2 * args.n:
            raise InputError("k must lie in [n, 2n]")
        ks = [args.k]
    cells = {str(k): [cell_json(c) for c in strata.enumerate_cells(args.m, args.n, k)] for k in ks}
    out = {"m": args.m, "n": args.n, "cells": cells,
           "top_cells": strata.top_cell_count(args.m, args.n), "d2_zero": None}
    status = EXIT_OK
    if args.check_d2:
        rep = strata.check_d_squared(_braiding_for(args), args.m, args.n)
        out["d2_zero"] = rep.passed
        status = EXIT_OK if rep.passed else EXIT_FAIL
    emit(out)
    return status


def degree_cap(default):
    env = os.environ.get("NICHOLS_MAX_DEGREE")
    if env is None:
        return default
    try:
        v = int(env)
    except ValueError as exc:
        raise InputError("NICHOLS_MAX_DEGREE must be an integer") from exc
    if v < 0:
        raise InputError("NICHOLS_MAX_DEGREE must be non-negative")
    return v


def run_nichols(args):
    if args.braiding:
        br = braidrep.load_braiding(read_braiding_file(args.braiding))
        default = 4
    else:
        if args.p < 2:
            raise InputError("p must be at least 2")
        br = p1.P1Context(args.p).x_braiding()
        default = args.p
    cap = degree_cap(default if args.max_degree is None else args.max_degree)
    emit({"dims": shuffle_hopf.ShuffleAlgebra(br).hilbert_series(cap)})
    return EXIT_OK


def render_scalar(x):
    """'q^k' when x is a power of q = exp(4 pi i / N), otherwise the coefficient JSON."""
    if not isinstance(x, Cyclotomic):
        x = Cyclotomic.const(1, Fraction(x))
    e, n = x.phase_exponent(), x.order
    if e is None:
        return x.to_json()
    if n % 2 == 1:
        # q generates the odd-order roots, so halve e modulo n
        return "q^%d" % (e * (n + 1) // 2 % n)
    if e % 2 == 0:
        return "q^%d" % (e // 2)
    return x.to_json()


def parse_element(args, n):
    terms = {}
    for w in args.word or []:
        try:
            gens = tuple(int(t) for t in w.replace(",", " ").split())
        except ValueError as exc:
            raise InputError("braid words are lists of generator indices: %r" % (w,)) from exc
        if any(not 1 <= abs(g) < n for g in gens):
            raise InputError("generator out of range in %r" % (w,))
        terms[gens] = terms.get(gens, 0) + 1
    elem = BraidElement(n, terms) if terms else None
    named = []
    if args.bbin:
        r, s = (int(t) for t in args.bbin.split(","))
        named.append(braidrep.Bbin(r, s))
    if args.bfac is not None:
        named.append(braidrep.Bfac(args.bfac))
    for e in named:
        if e.n != n:
            raise InputError("element acts on %d strands but %d spaces were given" % (e.n, n))
        elem = e if elem is None else elem + e
    if elem is None:
        raise InputError("give at least one --word, --bbin or --bfac")
    return elem


def run_braid_eval(args):
    br = _braiding_for(args)
    spaces = tuple(args.spaces.split())
    if not spaces or any(s not in br.dims for s in spaces):
        raise InputError("spaces must be labels among %s" % sorted(br.dims))
    elem = parse_element(args, len(spaces))
    op = br.evaluate(elem, spaces)
    blocks = []
    for (dom, cod) in sorted(op.blocks, key=repr):
        m = op.blocks[(dom, cod)]
        entries = [[int(i), int(j), render_scalar(m[i, j])]
                   for i, j in zip(*np.nonzero(np.vectorize(lambda v: not _zero(v))(m)))]
        if entries:
            blocks.append({"from": list(dom), "to": list(cod), "entries": entries})
    emit({"spaces": list(spaces), "blocks": blocks})
    return EXIT_OK


def _zero(v):
    return v.is_zero() if isinstance(v, Cyclotomic) else v == 0


# ---------------------------------------------------------------------------
# entry point


def emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n")


def build_parser():
    ap = argparse.ArgumentParser(prog="qshuffle", description="Exact quantum shuffle computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--suite", action="append", choices=SUITES + ("all",), required=True)
    v.add_argument("--p", type=int, action="append", help="rank-one parameter (repeatable)")
    v.add_argument("--max-degree", type=int)
    v.add_argument("--braiding", help="JSON braiding file used instead of the built-in braidings")
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--no-timing", action="store_true", help="omit wall times")
    v.set_defaults(func=run_verify)

    f = sub.add_parser("fusion", help="decompose fusion products of rank-one modules")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--lhs", action="append", help="module X:r:nu (comma list allowed)")
    f.add_argument("--rhs", action="append")
    f.add_argument("--format", choices=("json", "md"), default="json")
    f.set_defaults(func=run_fusion)

    s = sub.add_parser("strata", help="cells of the configuration space complex")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--check-d2", action="store_true")
    s.add_argument("--p", type=int, default=3)
    s.add_argument("--braiding")
    s.set_defaults(func=run_strata)

    n = sub.add_parser("nichols", help="Hilbert series of a Nichols algebra")
    n.add_argument("--p", type=int, default=3)
    n.add_argument("--max-degree", type=int)
    n.add_argument("--braiding")
    n.set_defaults(func=run_nichols)

    b = sub.add_parser("braid-eval", help="evaluate a braid group algebra element")
    b.add_argument("--spaces", required=True, help="space labels, e.g. 'X X Y'")
    b.add_argument("--word", action="append", help="generator indices, e.g. '1 2 1'")
    b.add_argument("--bbin", help="braided binomial r,s")
    b.add_argument("--bfac", type=int, help="braided factorial on n strands")
    b.add_argument("--p", type=int, default=3)
    b.add_argument("--braiding")
    b.set_defaults(func=run_braid_eval)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BraidingError as exc:
        sys.stderr.write("braiding invalid: %s\n" % exc)
        return EXIT_BRAIDING
    except (InputError, ValueError, KeyError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
