"""Acceptance criteria 1-10, one test each.

Every test prints a single PASS/FAIL line with a short detail.  Run this file
directly (python tests/test_acceptance.py) to get only those lines.
"""

import time

import pytest

from qshuffle import braidrep as B
from qshuffle import p1 as P
from qshuffle import shuffle_hopf as H
from qshuffle import strata as S
from qshuffle import ydmod as Y
from qshuffle.cli import suite_fusion
from qshuffle.strata import Cell

PRIMES = (2, 3, 5)

# The twelve terms of the differential on the cell (Y X)(X X)(X Y): sign, braid
# word (rightmost generator acts first) and the target cell as its two lines.
TWELVE_TERMS = [
    (-1, (), ((0, 1), (3, 0))),
    (+1, (), ((0, 3), (1, 0))),
    (-1, (4,), ((0, 1), (3, 0))),
    (+1, (2,), ((0, 3), (1, 0))),
    (-1, (3, 4), ((0, 1), (3, 0))),
    (+1, (3, 2), ((0, 3), (1, 0))),
    (-1, (5, 4), ((0, 1), (2, 1))),
    (+1, (1, 2), ((1, 2), (1, 0))),
    (-1, (3, 5, 4), ((0, 1), (2, 1))),
    (+1, (1, 3, 2), ((1, 2), (1, 0))),
    (-1, (4, 3, 5, 4), ((0, 1), (1, 2))),
    (+1, (2, 1, 3, 2), ((2, 1), (1, 0))),
]


def rank_one_spaces():
    return [("rank1 p=%d" % p, P.P1Context(p).x_braiding()) for p in PRIMES]


def two_dim_space(extra=()):
    return ("jordanian", B.jordanian_plane(extra))


def mixed_spaces():
    return [("rank1 p=%d" % p, P.rank_one_mixed(p)) for p in PRIMES] + \
        [two_dim_space(("Y", "Z", "W"))]


def failures(reports):
    return [r for r in reports if not r.passed]


# ---------------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    reports, certified = [], 0
    for _, br in rank_one_spaces() + [two_dim_space()]:
        strands = None if br.all_phase() else 9
        got = B.shuffle_identity_reports(br, max_index=4, max_bb=3, operator_strands=strands)
        certified += sum(1 for r in got if r.name == "summed-split-group-algebra")
        reports += got
    elapsed = time.perf_counter() - start
    bad = failures(reports)
    ok = not bad and elapsed < 60
    return ok, "%d identities (%d certified in the braid group algebra), %d failed, %.1f s" % (
        len(reports), certified, len(bad), elapsed)


def criterion_2():
    reports = []
    for _, br in rank_one_spaces() + [two_dim_space()]:
        reports += [H.check_bialgebra(br, r, s) for r in range(7) for s in range(7 - r) if r + s]
        reports += [H.check_antipode(br, r) for r in range(1, 7)]
    bad = failures(reports)
    return not bad, "%d identities, %d failed" % (len(reports), len(bad))


def criterion_3():
    reports = []
    for _, br in mixed_spaces():
        reports.append(Y.check_bimodule(br, 2))
        reports += [Y.check_yd_axiom(br, r, s) for r in range(4) for s in range(4)]
        reports += [Y.check_relative_antipode(br, s, t) for s in range(5) for t in range(5 - s)]
        reports += [Y.check_sigma2(br, s) for s in range(5)]
        reports += [Y.check_action_property(br, r, s, t)
                    for r in range(5) for s in range(3) for t in range(3)]
        reports += [Y.check_t_relation(br, r) for r in range(5)]
    bad = failures(reports)
    return not bad, "%d identities, %d failed" % (len(reports), len(bad))


def criterion_4():
    reports = []
    for _, br in mixed_spaces():
        reports += suite_fusion(br, {"max_degree": 2})
    bad = failures(reports)
    return not bad, "%d identities, %d failed" % (len(reports), len(bad))


def criterion_5():
    start = time.perf_counter()
    problems = []
    for name, br in [("rank1 p=3", P.rank_one_mixed(3)), two_dim_space(("Y",))]:
        for m, n in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 2)]:
            if not S.check_d_squared(br, m, n):
                problems.append("d^2 %s (%d,%d)" % (name, m, n))
        for j in range(4):
            for l1 in range(3):
                for l2 in range(3):
                    if not S.check_mu_sum(br, j, l1, l2):
                        problems.append("mu-sum %s %s" % (name, (j, l1, l2)))
    got = sorted(S.differential_terms(Cell(((0, 1), 2, (1, 0)))))
    if got != sorted(TWELVE_TERMS):
        problems.append("twelve terms differ")
    from math import comb
    for m in range(4):
        for n in range(1, 5):
            if len(S.enumerate_cells(m, n, 2 * n)) != comb(n + m, n):
                problems.append("top cells (%d,%d)" % (m, n))
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 120
    return ok, "%s, %.1f s" % ("; ".join(problems) or "all strata checks hold", elapsed)


def criterion_6():
    ctx = P.P1Context(3)
    problems = []
    P1m = P.build_named(ctx, "P", 1, 0)
    P2m = P.build_named(ctx, "P", 2, 0)
    for M, want in [(P1m, ("P", 1, 0)), (P2m, ("P", 2, 0))]:
        if M.dim != 6 or not P.is_indecomposable(M) or P.identify(M)[0] != want:
            problems.append("projective %s" % (want,))
    X = {(r, nu): P.build_named(ctx, "X", r, nu) for r in (1, 2, 3) for nu in (0, 1)}
    st = P.realize(ctx, "steinberg", P.steinberg_vectors(ctx))
    if not P.is_isomorphic(st, X[(3, 0)], 3):
        problems.append("steinberg")
    if P.decompose_fusion(ctx, X[(3, 0)], X[(3, 0)]).names() != [("P", 1, 0), ("X", 3, 0)]:
        problems.append("X3 X3")
    if P.decompose_fusion(ctx, X[(2, 0)], X[(3, 0)]).names() != [("P", 2, 0)]:
        problems.append("X2 X3")
    X11 = X[(1, 1)]
    for z in [(1, 1), (1, 2), (2, -1)]:
        mz = (-z[0], z[1])
        O, Om = P.build_named(ctx, "O", nu=0, z=z), P.build_named(ctx, "O", nu=0, z=mz)
        D, C = P.fusion_module(ctx, X11, O), P.fusion_module(ctx, O, X11)
        if not P.is_isomorphic(D, P.build_named(ctx, "O", nu=1, z=mz), 2):
            problems.append("X1(1) O(z) for z=%s" % (z,))
        if not P.is_isomorphic(C, P.build_named(ctx, "O", nu=1, z=z), 2):
            problems.append("O(z) X1(1) for z=%s" % (z,))
        if P.is_isomorphic(D, C, 2):
            problems.append("products commute for z=%s" % (z,))
        image = [P.braid(ctx, v) for v in D.basis]
        target = P.fusion_module(ctx, Om, X11)
        if not P.same_span(image, target.basis):
            problems.append("braiding image for z=%s" % (z,))
        for v in D.basis:
            if P.vec_sub(P.braid(ctx, P.act_F(ctx, v)), P.act_F(ctx, P.braid(ctx, v))) or \
                    P.vec_sub(P.braid(ctx, P.act_E(ctx, v)), P.act_E(ctx, P.braid(ctx, v))):
                problems.append("braiding not a morphism for z=%s" % (z,))
                break
        if not P.same_span([P.theaut(ctx, v) for v in O.basis], Om.basis):
            problems.append("theta on O(z)")
    for M in list(X.values()) + [P1m, P2m]:
        if not P.same_span([P.theaut(ctx, v) for v in M.basis], M.basis):
            problems.append("theta on %s" % M.name)
    if not P.theaut_checks(ctx) or not P.theaut_algebra_check(ctx):
        problems.append("theta automorphism")
    return not problems, "; ".join(problems) or "all module checks hold"


def criterion_7():
    start = time.perf_counter()
    rows = []
    for p in (2, 3):
        rows += P.fusion_table(P.P1Context(p))
    elapsed = time.perf_counter() - start
    bad = [r for r in rows if not r["match"]]
    ok = not bad and elapsed < 300
    return ok, "%d products, %d differ from the formula, %.1f s" % (len(rows), len(bad), elapsed)


def criterion_8():
    reports = [P.efk_relations(P.P1Context(p)) for p in PRIMES]
    return all(reports), ", ".join("p=%d %d cases" % (p, r.cases) for p, r in zip(PRIMES, reports))


def criterion_9():
    got = {p: H.ShuffleAlgebra(P.P1Context(p).x_braiding()).hilbert_series(p) for p in (2, 3, 5, 7)}
    ok = all(dims == [1] * p + [0] for p, dims in got.items())
    return ok, " ".join("p=%d %s" % (p, d) for p, d in got.items())


def criterion_10():
    details, ok = [], True
    for p in (2, 3):
        rep, counts = P.consistency_checks(P.P1Context(p))
        ok = ok and rep.passed
        details.append("p=%d %d coefficients%s" % (p, rep.cases, "" if rep.passed else " FAILED"))
    return ok, ", ".join(details)


CRITERIA = {
    1: ("shuffle identities", criterion_1),
    2: ("Hopf identities", criterion_2),
    3: ("bimodule and Yetter-Drinfeld identities", criterion_3),
    4: ("fusion identities", criterion_4),
    5: ("strata complex", criterion_5),
    6: ("p=3 modules", criterion_6),
    7: ("fusion tables", criterion_7),
    8: ("E F K relations", criterion_8),
    9: ("Nichols Hilbert series", criterion_9),
    10: ("closed forms against generic evaluation", criterion_10),
}


def run_criterion(n):
    title, fn = CRITERIA[n]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:        # a crash is a failure, reported on the same line
        ok, detail = False, "error: %r" % (exc,)
    line = "criterion %2d %s: %s (%s) [%.1f s]" % (n, "PASS" if ok else "FAIL", title, detail,
                                                  time.perf_counter() - start)
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, acceptance_line):
    ok, line = run_criterion(n)
    acceptance_line(line)
    assert ok, line


if __name__ == "__main__":
    import sys
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
