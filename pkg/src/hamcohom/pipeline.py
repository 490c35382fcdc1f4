"""Orchestration: cohomology tables, generators, and the wedge-factorization
verdict, with optional on-disk checkpoints of bases and matrices.

The contractual complexes are the relative ones: d1 acts on the ham0
complexes and d0 on the ham complexes.
"""

import os
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import serialize
from .cochain import CochainVector, enumerate_shapes, single_word, wedge
from .coboundary import CoboundaryMatrix, apply_d, coboundary_matrix
from .invariants import (InvariantBasis, character_multiplicity, expand_in_basis,
                         trivial_basis)
from .linformgb import (EchelonBasis, LinearForm, image_basis, kernel_basis,
                        normal_form, quotient_basis, rank)
from .polyalg import MonomialDual
from .rationals import Q

OP_FOR_ALGEBRA = {"ham": "d0", "ham0": "d1"}


def omega_cochain() -> CochainVector:
    """The transverse symplectic 2-cochain z[0,1]^z[1,1] of weight -2."""
    return single_word((MonomialDual(0, 1), MonomialDual(1, 1)))


def feasible_degrees(algebra: str, w: int, relative: bool = True) -> List[int]:
    """Degrees whose graded ambient space is nonzero."""
    # minimal part sums bound the degree: parts >= 3 beyond the k_1 (<= 2)
    # and k_2 allowance, so the scan below terminates quickly.
    out = []
    m = 0
    misses = 0
    while misses < 4:
        if enumerate_shapes(m, w, algebra, relative):
            out.append(m)
            misses = 0
        else:
            misses += 1
        m += 1
    return out


class Workspace:
    """Caches invariant bases and coboundary matrices, optionally on disk."""

    def __init__(self, cache_dir: Optional[str] = None, jobs: int = 1):
        self.cache_dir = cache_dir
        self.jobs = max(1, jobs)
        self._bases: Dict[Tuple, InvariantBasis] = {}
        self._matrices: Dict[Tuple, CoboundaryMatrix] = {}
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)

    def _path(self, kind: str, algebra: str, relative: bool, w: int, m: int) -> str:
        rel = "rel" if relative else "abs"
        return os.path.join(self.cache_dir,
                            "%s_%s_%s_w%d_m%d.txt" % (kind, algebra, rel, w, m))

    def basis(self, algebra: str, w: int, m: int,
              relative: bool = True) -> InvariantBasis:
        key = ("basis", algebra, relative, w, m)
        if key in self._bases:
            return self._bases[key]
        path = self._path("basis", algebra, relative, w, m) if self.cache_dir else None
        if path and os.path.exists(path):
            basis = serialize.import_basis(path)
        else:
            basis = trivial_basis(m, w, algebra, relative, jobs=self.jobs)
            if path:
                serialize.export_basis(basis, path)
        self._bases[key] = basis
        return basis

    def matrix(self, algebra: str, w: int, m: int,
               relative: bool = True) -> Optional[CoboundaryMatrix]:
        """d: C^m -> C^{m+1}, or None when either side is zero-dimensional."""
        key = ("matrix", algebra, relative, w, m)
        if key in self._matrices:
            return self._matrices[key]
        src = self.basis(algebra, w, m, relative)
        dst = self.basis(algebra, w, m + 1, relative)
        if src.dim == 0 or dst.dim == 0:
            return None
        op = OP_FOR_ALGEBRA[algebra]
        path = self._path("matrix", algebra, relative, w, m) if self.cache_dir else None
        if path and os.path.exists(path):
            M = serialize.import_matrix(path)
            if (M.rows, M.cols) != (dst.dim, src.dim):
                raise ValueError("cached matrix %s has stale dimensions" % path)
            cm = CoboundaryMatrix(src, dst, op, M)
        else:
            cm = coboundary_matrix(src, dst, op)
            if path:
                serialize.export_matrix(cm.matrix, path)
        self._matrices[key] = cm
        return cm

    def rank_out(self, algebra: str, w: int, m: int, relative: bool = True) -> int:
        cm = self.matrix(algebra, w, m, relative)
        return rank(cm.matrix) if cm is not None else 0

    def image_gb(self, algebra: str, w: int, m: int,
                 relative: bool = True) -> EchelonBasis:
        """Echelon basis of d(C^m) in the coordinates of C^{m+1}."""
        cm = self.matrix(algebra, w, m, relative)
        if cm is None:
            dst = self.basis(algebra, w, m + 1, relative)
            return EchelonBasis(dst.dim)
        return image_basis(cm.matrix)

    def kernel_gb(self, algebra: str, w: int, m: int,
                  relative: bool = True) -> EchelonBasis:
        """Echelon basis of ker(d on C^m) in the coordinates of C^m."""
        cm = self.matrix(algebra, w, m, relative)
        if cm is None:
            src = self.basis(algebra, w, m, relative)
            # whole space is the kernel
            forms = [LinearForm(src.dim, {j: Q(1)}) for j in range(1, src.dim + 1)]
            return EchelonBasis(src.dim, forms)
        return kernel_basis(cm.matrix)


@dataclass
class CohomologyRow:
    degree: int
    dim: int
    rank_in: int   # rank of d: C^{m-1} -> C^m
    rank_out: int  # rank of d: C^m -> C^{m+1}
    betti: int


@dataclass
class CohomologyTable:
    algebra: str
    relative: bool
    weight: int
    rows: List[CohomologyRow] = field(default_factory=list)
    gaps: List[int] = field(default_factory=list)  # degrees skipped on budget

    def row(self, m: int) -> Optional[CohomologyRow]:
        for r in self.rows:
            if r.degree == m:
                return r
        return None

    def dims(self) -> List[int]:
        return [r.dim for r in self.rows]

    def bettis(self) -> List[int]:
        return [r.betti for r in self.rows]

    def to_text(self) -> str:
        lines = ["# algebra=%s relative=%d weight=%d" %
                 (self.algebra, int(self.relative), self.weight),
                 "degree\tdim\trank_in\trank_out\tbetti"]
        for r in self.rows:
            lines.append("%d\t%d\t%d\t%d\t%d" %
                         (r.degree, r.dim, r.rank_in, r.rank_out, r.betti))
        for m in self.gaps:
            lines.append("%d\t-\t-\t-\t-\t(skipped: budget exceeded)" % m)
        return "\n".join(lines) + "\n"


def cohomology_table(algebra: str, w: int, relative: bool = True,
                     degrees: Optional[range] = None,
                     workspace: Optional[Workspace] = None,
                     time_budget: Optional[float] = None) -> CohomologyTable:
    """Per-degree dim / rank / Betti data of one weight-graded complex.

    A time budget (seconds) stops before starting further degrees and lists
    them as explicit gaps instead of truncating silently.
    """
    ws = workspace or Workspace()
    if degrees is None:
        degrees = feasible_degrees(algebra, w, relative)
    degrees = list(degrees)
    table = CohomologyTable(algebra, relative, w)
    start = time.time()
    ranks: Dict[int, int] = {}

    def rank_out(m: int) -> int:
        if m not in ranks:
            ranks[m] = ws.rank_out(algebra, w, m, relative)
        return ranks[m]

    for m in degrees:
        if time_budget is not None and time.time() - start > time_budget:
            table.gaps.append(m)
            continue
        dim = ws.basis(algebra, w, m, relative).dim
        r_in = rank_out(m - 1) if m >= 1 else 0
        r_out = rank_out(m)
        table.rows.append(CohomologyRow(m, dim, r_in, r_out, dim - r_in - r_out))
    return table


def generator(algebra: str, w: int, m: int, relative: bool = True,
              workspace: Optional[Workspace] = None) -> List[CochainVector]:
    """Cohomology generators at (m, w): quotient basis lifted to cochains."""
    ws = workspace or Workspace()
    gb_e = ws.image_gb(algebra, w, m - 1, relative)
    gb_k = ws.kernel_gb(algebra, w, m, relative)
    gb_q = quotient_basis(gb_k, gb_e)
    basis = ws.basis(algebra, w, m, relative)
    out = []
    op = OP_FOR_ALGEBRA[algebra]
    for form in gb_q.forms:
        h = CochainVector(m, w)
        for j, c in form.coeffs.items():
            for word, u in basis.vectors[j - 1].terms.items():
                h.add_term(word, c * u)
        if not apply_d(h, op).is_zero():
            raise AssertionError("generator at (m=%d, w=%d) is not closed" % (m, w))
        if normal_form(form, gb_e).is_zero():
            raise AssertionError("generator at (m=%d, w=%d) is exact" % (m, w))
        out.append(h)
    return out


@dataclass
class FactorizationReport:
    """Verdict on whether wedging with omega is an isomorphism in cohomology."""

    weight_source: int
    degree_source: Optional[int]
    weight_target: int
    degree_target: Optional[int]
    betti_source: Optional[int]
    betti_target: Optional[int]
    image_gb_size: Optional[int]
    kernel_gb_size: Optional[int]
    nf_support: Optional[int]  # support size of NF(omega^h) against the image
    verdict: str               # isomorphism | trivial | indeterminate
    notes: List[str] = field(default_factory=list)
    generator_form: Optional[LinearForm] = None
    wedged_form: Optional[LinearForm] = None
    nf_form: Optional[LinearForm] = None

    def to_text(self) -> str:
        lines = [
            "source: ham0 relative, weight=%d, degree=%s" %
            (self.weight_source, self.degree_source),
            "target: ham relative, weight=%d, degree=%s" %
            (self.weight_target, self.degree_target),
            "betti_source: %s" % (self.betti_source,),
            "betti_target: %s" % (self.betti_target,),
            "image_gb_size: %s" % (self.image_gb_size,),
            "kernel_gb_size: %s" % (self.kernel_gb_size,),
            "nf_support: %s" % (self.nf_support,),
            "verdict: %s" % (self.verdict,),
        ]
        for n in self.notes:
            lines.append("note: %s" % n)
        if self.nf_form is not None:
            lines.append("nf: %s" % self.nf_form)
        return "\n".join(lines) + "\n"


def factorize(w_source: int, degree: Optional[int] = None,
              workspace: Optional[Workspace] = None,
              time_budget: Optional[float] = None) -> FactorizationReport:
    """Check whether omega^ : H^m(ham0)_w -> H^{m+2}(ham)_{w-2} is an
    isomorphism, by the non-exactness criterion NF(omega^h, image basis).
    """
    if w_source % 2:
        raise ValueError("odd weights have vanishing cohomology; nothing to factor")
    ws = workspace or Workspace()
    w_target = w_source - 2
    report = FactorizationReport(w_source, degree, w_target, None,
                                 None, None, None, None, None, "indeterminate")

    if degree is None:
        src_table = cohomology_table("ham0", w_source, True, workspace=ws,
                                     time_budget=time_budget)
        hits = [r.degree for r in src_table.rows if r.betti != 0]
        if not hits:
            report.notes.append("source cohomology vanishes in all computed degrees")
            report.verdict = "indeterminate"
            return report
        if len(hits) > 1:
            report.notes.append("multiple source degrees with nonzero Betti: %s"
                                % hits)
            report.verdict = "indeterminate"
            return report
        degree = hits[0]
    m = degree
    report.degree_source = m
    report.degree_target = m + 2

    gb_e = ws.image_gb("ham0", w_source, m - 1)
    gb_k = ws.kernel_gb("ham0", w_source, m)
    report.image_gb_size = len(gb_e)
    report.kernel_gb_size = len(gb_k)
    gb_q = quotient_basis(gb_k, gb_e)
    report.betti_source = len(gb_q)
    if report.betti_source == 0:
        report.notes.append("source cohomology is zero at degree %d" % m)
        return report
    if report.betti_source > 1:
        report.notes.append("source cohomology is %d-dimensional; factorization "
                            "verdict needs a 1-dimensional source" %
                            report.betti_source)

    gens = generator("ham0", w_source, m, workspace=ws)
    report.generator_form = expand_in_basis(gens[0], ws.basis("ham0", w_source, m),
                                            "generator")

    # target Betti number at degree m+2 of the ham complex
    dim_t = ws.basis("ham", w_target, m + 2).dim
    r_in = ws.rank_out("ham", w_target, m + 1)
    r_out = ws.rank_out("ham", w_target, m + 2)
    report.betti_target = dim_t - r_in - r_out

    wedged = wedge(omega_cochain(), gens[0])
    target_basis = ws.basis("ham", w_target, m + 2)
    hbar = expand_in_basis(wedged, target_basis, "omega^h")
    report.wedged_form = hbar
    gb_e_target = ws.image_gb("ham", w_target, m + 1)
    nf = normal_form(hbar, gb_e_target)
    report.nf_form = nf
    report.nf_support = len(nf.coeffs)

    if nf.is_zero():
        report.verdict = "trivial"
    elif report.betti_source == 1 and report.betti_target == 1:
        report.verdict = "isomorphism"
    else:
        report.verdict = "indeterminate"
        report.notes.append("NF nonzero but Betti numbers are not both 1")
    return report
