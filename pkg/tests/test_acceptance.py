"""Acceptance gate: ten criteria, each printing an explicit pass line.

Exact arithmetic throughout, so every comparison is equality with zero
tolerance.  The module-scoped workspace shares its disk cache across
criteria, which keeps the heavy weight-14/16 blocks to one computation.
"""

import filecmp
import os
import random
from fractions import Fraction

import pytest

from hamcohom.cli import main
from hamcohom.coboundary import apply_d
from hamcohom.invariants import character_multiplicity, expand_in_basis
from hamcohom.linformgb import SparseMatrix, kernel_basis, normal_form
from hamcohom.pipeline import (Workspace, cohomology_table, factorize,
                               feasible_degrees, omega_cochain)
from hamcohom.rationals import Q

JOBS = min(4, os.cpu_count() or 1)


@pytest.fixture(scope="module")
def ws(tmp_path_factory):
    cache = str(tmp_path_factory.mktemp("acceptance-cache"))
    return Workspace(cache_dir=cache, jobs=JOBS)


def ok(criterion, detail=""):
    print("\nACCEPTANCE %s: pass%s" % (criterion, " (%s)" % detail if detail else ""))


# -- 1. d^2 = 0 ---------------------------------------------------------------

D2_WEIGHTS = (-2, 0, 2, 4, 6, 8, 14, 16)


@pytest.mark.parametrize("algebra", ["ham", "ham0"])
@pytest.mark.parametrize("w", D2_WEIGHTS)
def test_criterion_1_d_squared_zero(ws, algebra, w):
    checked = 0
    mats = {m: ws.matrix(algebra, w, m) for m in feasible_degrees(algebra, w)}
    for m, a in mats.items():
        b = mats.get(m + 1)
        if a is not None and b is not None:
            assert b.matrix.compose(a.matrix).is_zero(), \
                "d^2 != 0 on %s at (w=%d, m=%d)" % (algebra, w, m)
            checked += 1
    ok("criterion 1 [%s, w=%d]" % (algebra, w),
       "%d consecutive pairs exactly zero" % checked)


# -- 2. weight-16 table -------------------------------------------------------

def test_criterion_2_weight16_table(ws):
    t = cohomology_table("ham0", 16, degrees=range(3, 9), workspace=ws)
    dims = [r.dim for r in t.rows]
    ranks_in = [r.rank_in for r in t.rows]
    bettis = [r.betti for r in t.rows]
    assert dims == [12, 61, 126, 147, 95, 24]
    assert ranks_in == [0, 12, 49, 77, 70, 24]
    assert bettis == [0, 0, 0, 0, 1, 0]
    ok("criterion 2", "dims %s, ranks %s, Betti %s" % (dims, ranks_in, bettis))


# -- 3. weight-14 table -------------------------------------------------------

def test_criterion_3_weight14_table(ws):
    t = cohomology_table("ham", 14, degrees=range(8, 11), workspace=ws)
    dims = [r.dim for r in t.rows]
    assert dims == [232, 113, 25]
    r8 = t.row(9).rank_in   # rank of d0: C^8 -> C^9
    r9 = t.row(10).rank_in  # rank of d0: C^9 -> C^10
    assert r8 == 87 and r9 == 25
    assert t.row(9).betti == 1 and t.row(10).betti == 0
    ok("criterion 3", "dims %s, rank(C8->C9)=87, rank(C9->C10)=25, "
       "Betti(9)=1, Betti(10)=0" % (dims,))


# -- 4. low-weight ham cohomology ---------------------------------------------

def test_criterion_4_gkf_reproduction(ws):
    for w in (2, 4, 6):
        t = cohomology_table("ham", w, workspace=ws)
        assert all(r.betti == 0 for r in t.rows), "H(w=%d) != 0" % w
    t8 = cohomology_table("ham", 8, workspace=ws)
    nonzero = [(r.degree, r.betti) for r in t8.rows if r.betti]
    assert nonzero == [(7, 1)]
    ok("criterion 4", "w in {2,4,6} acyclic; w=8 Betti only at m=7, value 1")


# -- 5. weight-10 factorization verdict ---------------------------------------

def test_criterion_5_weight10_verdict(ws):
    t = cohomology_table("ham0", 10, workspace=ws)
    assert t.row(5).betti == 1
    rep = factorize(10, workspace=ws)
    assert rep.verdict == "isomorphism"
    ok("criterion 5", "dim H^5(ham0)_10 = 1, factorize(10) = isomorphism")


# -- 6. weight-16 factorization verdict ---------------------------------------

def test_criterion_6_weight16_verdict(ws):
    rep = factorize(16, workspace=ws)
    assert rep.verdict == "isomorphism"
    assert rep.image_gb_size == 70
    assert rep.kernel_gb_size == 71
    gb_e_target = ws.image_gb("ham", 14, rep.degree_target - 1)
    assert len(gb_e_target) == 87
    assert rep.nf_support > 0
    ok("criterion 6", "factorize(16) = isomorphism; |GB_e|=70, |GB_k|=71, "
       "NF nonzero against the 87-element image basis")


# -- 7. character cross-check -------------------------------------------------

def test_criterion_7_character_cross_check(ws):
    checked = 0
    cases = [(alg, w, m) for alg in ("ham", "ham0")
             for w in (-2, 0, 2, 4, 6, 8, 10)
             for m in feasible_degrees(alg, w)]
    for alg, w, m in cases:
        basis = ws.basis(alg, w, m)
        assert basis.dim == character_multiplicity(m, w, alg, True), \
            (alg, w, m)
        checked += 1
    ok("criterion 7", "%d (m, w) blocks, zero discrepancies" % checked)


# -- 8. kernel-oracle equivalence ---------------------------------------------

def _dense_rref(rows):
    m = [list(map(Fraction, r)) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots, r = [], 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def test_criterion_8_kernel_oracle_equivalence():
    rng = random.Random(2024)
    trials = 120
    for trial in range(trials):
        nrows = rng.randint(1, 20)
        ncols = rng.randint(1, 30)
        N = SparseMatrix(nrows, ncols)
        dense = [[Fraction(0)] * ncols for _ in range(nrows)]
        for i in range(nrows):
            for j in range(ncols):
                if rng.random() < 0.3:
                    v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                    if v:
                        N.entries[(i + 1, j + 1)] = Q(v)
                        dense[i][j] = v
        gb = kernel_basis(N)
        rref, pivots = _dense_rref(dense)
        free = [c for c in range(ncols) if c not in pivots]
        oracle = []
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -rref[i][f]
            oracle.append(v)
        got = [[Fraction(str(form.coeffs.get(c + 1, 0))) for c in range(ncols)]
               for form in gb.forms]
        span_got = frozenset(tuple(r) for r in _dense_rref(got)[0]) if got else frozenset()
        span_want = frozenset(tuple(r) for r in _dense_rref(oracle)[0]) if oracle else frozenset()
        assert span_got == span_want, trial
    ok("criterion 8", "%d random matrices, spans identical" % trials)


# -- 9. omega sanity ----------------------------------------------------------

def test_criterion_9_omega_sanity(ws):
    omega = omega_cochain()
    assert apply_d(omega, "d0").is_zero()
    basis2 = ws.basis("ham", -2, 2)
    form = expand_in_basis(omega, basis2, "omega")
    gb_e = ws.image_gb("ham", -2, 1)
    assert not normal_form(form, gb_e).is_zero()
    ok("criterion 9", "d0(omega) = 0 and omega is not d0-exact")


# -- 10. determinism across --jobs --------------------------------------------

def test_criterion_10_jobs_determinism(ws, tmp_path_factory):
    """Re-export the criterion 2/3/6 artifacts under --jobs 1 and --jobs N
    and compare files byte for byte.  The single-job side reuses the shared
    cache; the multi-job side recomputes every basis from scratch."""
    out1 = tmp_path_factory.mktemp("jobs1")
    outN = tmp_path_factory.mktemp("jobsN")
    cacheN = str(tmp_path_factory.mktemp("cacheN"))

    def run(argv):
        assert main(argv) == 0

    variants = [
        (out1, ["--cache-dir", ws.cache_dir, "--jobs", "1"]),
        (outN, ["--cache-dir", cacheN, "--jobs", str(max(2, JOBS))]),
    ]
    for dirname, extra in variants:
        d = str(dirname)
        run(extra + ["table", "--algebra", "ham0", "--weight", "16",
                     "--degrees", "3..8", "--out", os.path.join(d, "t16.tsv")])
        run(extra + ["table", "--algebra", "ham", "--weight", "14",
                     "--degrees", "8..10", "--out", os.path.join(d, "t14.tsv")])
        run(extra + ["factorize", "--weight", "16",
                     "--out", os.path.join(d, "f16.txt")])
        run(extra + ["export", "--what", "basis", "--algebra", "ham0",
                     "--weight", "16", "--degree", "7",
                     "--out", os.path.join(d, "b16m7.txt")])
        run(extra + ["export", "--what", "matrix", "--algebra", "ham0",
                     "--weight", "16", "--degree", "6",
                     "--out", os.path.join(d, "m16d6.txt")])
        run(extra + ["export", "--what", "matrix", "--algebra", "ham",
                     "--weight", "14", "--degree", "8",
                     "--out", os.path.join(d, "m14d8.txt")])

    names = ["t16.tsv", "t14.tsv", "f16.txt", "b16m7.txt", "m16d6.txt",
             "m14d8.txt"]
    for name in names:
        a, b = os.path.join(str(out1), name), os.path.join(str(outN), name)
        assert filecmp.cmp(a, b, shallow=False), "artifact %s differs" % name
    ok("criterion 10", "%d artifacts bit-identical across jobs" % len(names))
