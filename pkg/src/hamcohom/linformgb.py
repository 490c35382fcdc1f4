"""Groebner-basis toolkit for linear homogeneous polynomials.

For linear forms a reduced Groebner basis under the order y_1 > y_2 > ...
is exactly a reduced row-echelon basis, so everything here is specialized
Gaussian elimination over exact rationals.  The Groebner vocabulary is kept
in the API names (Basis / NF / GB_e / GB_k) for traceability.

All bases are monic (leading coefficient 1): contractual quantities
(cardinalities, spans, zero tests) do not depend on the normalization, and
monic bases are reproducible.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .rationals import Q, rat_parse, rat_str


@dataclass
class LinearForm:
    """Sparse linear homogeneous polynomial in variables y_1 .. y_nvars.

    Variable indices are 1-based; the order is y_1 > y_2 > ..., so the
    leading variable is the smallest stored index.
    """

    nvars: int
    coeffs: Dict[int, object] = field(default_factory=dict)

    def lead(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def copy(self) -> "LinearForm":
        return LinearForm(self.nvars, dict(self.coeffs))

    def axpy(self, c, other: "LinearForm") -> None:
        """self += c * other, dropping zeros."""
        if not c:
            return
        coeffs = self.coeffs
        for i, v in other.coeffs.items():
            w = coeffs.get(i)
            w = c * v if w is None else w + c * v
            if w:
                coeffs[i] = w
            else:
                del coeffs[i]

    def scaled(self, c) -> "LinearForm":
        return LinearForm(self.nvars, {i: c * v for i, v in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join("%s*y%d" % (rat_str(self.coeffs[i]), i)
                          for i in sorted(self.coeffs))


@dataclass
class EchelonBasis:
    """Reduced row-echelon ("reduced Groebner") basis of linear forms.

    Forms are monic with pairwise distinct leading variables, stored by
    increasing leading index (i.e. decreasing order y_1 > y_2 > ...), and
    each leading variable is absent from every other form.
    """

    nvars: int
    forms: List[LinearForm] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.forms)

    def leads(self) -> List[int]:
        return [f.lead() for f in self.forms]

    def span_contains(self, h: LinearForm) -> bool:
        return normal_form(h, self).is_zero()


def echelon(forms: Iterable[LinearForm], nvars: Optional[int] = None) -> EchelonBasis:
    """Reduced monic echelon basis of the span of the given forms."""
    pivots: Dict[int, LinearForm] = {}
    nv = nvars
    for form in forms:
        if nv is None:
            nv = form.nvars
        elif form.nvars != nv:
            raise ValueError("mixed ambient variable counts")
        f = form.copy()
        while f.coeffs:
            lead = f.lead()
            p = pivots.get(lead)
            if p is None:
                break
            f.axpy(-f.coeffs[lead], p)
        if not f.coeffs:
            continue
        lead = f.lead()
        lc = f.coeffs[lead]
        if lc != 1:
            f = f.scaled(Q(1) / lc)
        # keep the basis fully reduced: clear the new pivot from stored forms
        for p in pivots.values():
            c = p.coeffs.get(lead)
            if c:
                p.axpy(-c, f)
        pivots[lead] = f
    basis = EchelonBasis(0 if nv is None else nv)
    basis.forms = [pivots[i] for i in sorted(pivots)]
    return basis


def normal_form(h: LinearForm, basis: EchelonBasis) -> LinearForm:
    """Unique remainder of h with no basis leading variable in its support."""
    f = h.copy()
    for p in basis.forms:
        c = f.coeffs.get(p.lead())
        if c:
            f.axpy(-c, p)
    return f


@dataclass
class SparseMatrix:
    """Sparse exact-rational matrix, entries keyed by (row, col), 1-based."""

    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def set(self, i: int, j: int, v) -> None:
        if v:
            self.entries[(i, j)] = v
        else:
            self.entries.pop((i, j), None)

    def nnz(self) -> int:
        return len(self.entries)

    def column_forms(self) -> List[LinearForm]:
        """Columns as linear forms in y_1..y_rows: [g_1..g_cols] = [y..] M."""
        cols: Dict[int, Dict[int, object]] = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, {})[i] = v
        return [LinearForm(self.rows, cols.get(j, {})) for j in range(1, self.cols + 1)]

    def row_forms(self) -> List[LinearForm]:
        """Rows as linear forms in c_1..c_cols: [f_1..f_rows] = [c..] tN."""
        rows: Dict[int, Dict[int, object]] = {}
        for (i, j), v in self.entries.items():
            rows.setdefault(i, {})[j] = v
        return [LinearForm(self.cols, rows.get(i, {})) for i in range(1, self.rows + 1)]

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_col: Dict[int, Dict[int, object]] = {}
        for (i, j), v in other.entries.items():
            by_col.setdefault(j, {})[i] = v
        self_by_col: Dict[int, Dict[int, object]] = {}
        for (i, k), v in self.entries.items():
            self_by_col.setdefault(k, {})[i] = v
        out = SparseMatrix(self.rows, other.cols)
        for j, col in by_col.items():
            acc: Dict[int, object] = {}
            for k, v in col.items():
                for i, u in self_by_col.get(k, {}).items():
                    w = acc.get(i)
                    w = u * v if w is None else w + u * v
                    if w:
                        acc[i] = w
                    else:
                        del acc[i]
            for i, w in acc.items():
                out.entries[(i, j)] = w
        return out

    def is_zero(self) -> bool:
        return not self.entries


def image_basis(M: SparseMatrix) -> EchelonBasis:
    """GB_e: echelon basis of the column span of M (basis of g(X))."""
    return echelon(M.column_forms(), nvars=M.rows)


def rank(M: SparseMatrix) -> int:
    """Exact rank over the rationals."""
    return len(image_basis(M))


def kernel_basis(N: SparseMatrix) -> EchelonBasis:
    """Echelon basis of ker(f) for the map f with matrix N, via the
    transpose trick: echelonize the rows of N in auxiliary c-variables,
    reduce h = sum c_j y_j, and echelonize the resulting y-coefficients.
    """
    gb_tr = echelon(N.row_forms(), nvars=N.cols)
    mu = N.cols
    # h = sum_j c_j y_j as a c-indexed table of y-forms
    h: Dict[int, LinearForm] = {j: LinearForm(mu, {j: Q(1)}) for j in range(1, mu + 1)}
    for g in gb_tr.forms:
        lead = g.lead()
        phi = h.pop(lead, None)
        if phi is None or phi.is_zero():
            continue
        for cvar, q in g.coeffs.items():
            if cvar == lead:
                continue
            tgt = h.get(cvar)
            if tgt is None:
                tgt = h[cvar] = LinearForm(mu)
            tgt.axpy(-q, phi)
    return echelon((h[j] for j in sorted(h)), nvars=mu)


def quotient_basis(gb_k: EchelonBasis, gb_e: EchelonBasis) -> EchelonBasis:
    """GB_{k/e}: basis of ker/im; requires span(gb_e) <= span(gb_k)."""
    for f in gb_e.forms:
        if not normal_form(f, gb_k).is_zero():
            raise ValueError("image is not contained in kernel (d^2 != 0 upstream?)")
    return echelon((normal_form(f, gb_e) for f in gb_k.forms), nvars=gb_k.nvars)
