"""Plain-text export/import of bases, matrices, and echelon forms.

All formats are line-oriented, exact (rationals as p/q), and round-trip
bit-for-bit.  Parse errors always carry the offending line number.
"""

import re
from typing import Dict, List, Tuple

from .cochain import CochainVector, WedgeWord
from .invariants import InvariantBasis, ambient_basis
from .linformgb import EchelonBasis, LinearForm, SparseMatrix
from .polyalg import MonomialDual
from .rationals import Q, rat_parse, rat_str

_FACTOR_RE = re.compile(r"^z\[(\d+),(\d+)\]$")


class ParseError(ValueError):
    def __init__(self, path: str, lineno: int, msg: str):
        super().__init__("%s:%d: %s" % (path, lineno, msg))
        self.path = path
        self.lineno = lineno


def word_str(word: WedgeWord) -> str:
    return "^".join(str(f) for f in word) if word else "1"


def term_str(word: WedgeWord, coeff) -> str:
    return "%s * %s" % (rat_str(coeff), word_str(word))


def parse_term(line: str, path: str, lineno: int) -> Tuple[WedgeWord, object]:
    try:
        coeff_s, word_s = line.split(" * ", 1)
        coeff = rat_parse(coeff_s)
    except ValueError:
        raise ParseError(path, lineno, "malformed term %r" % line)
    if word_s == "1":
        return (), coeff
    factors = []
    for piece in word_s.split("^"):
        m = _FACTOR_RE.match(piece.strip())
        if not m:
            raise ParseError(path, lineno, "malformed wedge factor %r" % piece)
        r, R = int(m.group(1)), int(m.group(2))
        if not (R >= 1 and 0 <= r <= R):
            raise ParseError(path, lineno, "invalid indices in %r" % piece)
        factors.append(MonomialDual(r, R))
    word = tuple(factors)
    if len(set(word)) != len(word):
        raise ParseError(path, lineno, "repeated wedge factor in %r" % line)
    if any(a.sort_key() > b.sort_key() for a, b in zip(word, word[1:])):
        raise ParseError(path, lineno, "wedge factors out of canonical order")
    return word, coeff


def _header(line: str, tag: str, keys: List[str], path: str, lineno: int) -> Dict[str, int]:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise ParseError(path, lineno, "expected %r header, got %r" % (tag, line))
    got = {}
    for p in parts[1:]:
        if "=" not in p:
            raise ParseError(path, lineno, "malformed header field %r" % p)
        k, v = p.split("=", 1)
        try:
            got[k] = int(v) if k != "algebra" else v
        except ValueError:
            raise ParseError(path, lineno, "non-integer header field %r" % p)
    missing = [k for k in keys if k not in got]
    if missing:
        raise ParseError(path, lineno, "missing header fields %s" % missing)
    return got


def export_basis(basis: InvariantBasis, path: str) -> None:
    amb = basis.ambient
    with open(path, "w") as fh:
        fh.write("basis algebra=%s relative=%d weight=%d degree=%d vectors=%d\n"
                 % (amb.algebra, int(amb.relative), amb.weight, amb.degree,
                    basis.dim))
        order = amb.index
        for i, v in enumerate(basis.vectors):
            fh.write("vector index=%d terms=%d\n" % (i + 1, len(v.terms)))
            for word in sorted(v.terms, key=order.__getitem__):
                fh.write(term_str(word, v.terms[word]) + "\n")


def import_basis(path: str) -> InvariantBasis:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty basis file")
    hd = _header(lines[0], "basis",
                 ["algebra", "relative", "weight", "degree", "vectors"], path, 1)
    amb = ambient_basis(hd["degree"], hd["weight"], hd["algebra"],
                        bool(hd["relative"]))
    basis = InvariantBasis(amb)
    order = amb.index
    ln = 1
    for _ in range(hd["vectors"]):
        if ln >= len(lines):
            raise ParseError(path, ln + 1, "truncated basis file")
        vhd = _header(lines[ln], "vector", ["terms"], path, ln + 1)
        ln += 1
        v = CochainVector(hd["degree"], hd["weight"])
        for _ in range(vhd["terms"]):
            if ln >= len(lines):
                raise ParseError(path, ln + 1, "truncated vector block")
            word, coeff = parse_term(lines[ln], path, ln + 1)
            ln += 1
            if word not in order:
                raise ParseError(path, ln, "word %s not in the (m=%d, w=%d) "
                                 "ambient basis" % (word_str(word),
                                                    hd["degree"], hd["weight"]))
            if word in v.terms:
                raise ParseError(path, ln, "duplicate word %s" % word_str(word))
            v.terms[word] = coeff
        if not v.terms:
            raise ParseError(path, ln, "empty basis vector")
        basis.vectors.append(v)
        basis.pivots.append(min(v.terms, key=order.__getitem__))
    if ln != len(lines):
        raise ParseError(path, ln + 1, "trailing content after %d vectors"
                         % hd["vectors"])
    return basis


def export_cochain(v: CochainVector, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("cochain weight=%d degree=%d terms=%d\n"
                 % (v.weight, v.degree, len(v.terms)))
        for word in sorted(v.terms):
            fh.write(term_str(word, v.terms[word]) + "\n")


def import_cochain(path: str) -> CochainVector:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty cochain file")
    hd = _header(lines[0], "cochain", ["weight", "degree", "terms"], path, 1)
    v = CochainVector(hd["degree"], hd["weight"])
    if hd["terms"] != len(lines) - 1:
        raise ParseError(path, len(lines), "expected %d term lines, found %d"
                         % (hd["terms"], len(lines) - 1))
    for k, line in enumerate(lines[1:], start=2):
        word, coeff = parse_term(line, path, k)
        if len(word) != hd["degree"]:
            raise ParseError(path, k, "term degree %d != header degree %d"
                             % (len(word), hd["degree"]))
        if word in v.terms:
            raise ParseError(path, k, "duplicate word %s" % word_str(word))
        v.terms[word] = coeff
    return v


def export_matrix(M: SparseMatrix, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("matrix rows=%d cols=%d nnz=%d\n" % (M.rows, M.cols, M.nnz()))
        for (i, j) in sorted(M.entries):
            fh.write("%d %d %s\n" % (i, j, rat_str(M.entries[(i, j)])))


def import_matrix(path: str) -> SparseMatrix:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty matrix file")
    hd = _header(lines[0], "matrix", ["rows", "cols", "nnz"], path, 1)
    M = SparseMatrix(hd["rows"], hd["cols"])
    if hd["nnz"] != len(lines) - 1:
        raise ParseError(path, len(lines), "expected %d entry lines, found %d"
                         % (hd["nnz"], len(lines) - 1))
    for k, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(path, k, "malformed entry %r" % line)
        try:
            i, j, v = int(parts[0]), int(parts[1]), rat_parse(parts[2])
        except ValueError:
            raise ParseError(path, k, "malformed entry %r" % line)
        if not (1 <= i <= M.rows and 1 <= j <= M.cols):
            raise ParseError(path, k, "entry (%d, %d) outside %dx%d"
                             % (i, j, M.rows, M.cols))
        if (i, j) in M.entries:
            raise ParseError(path, k, "duplicate entry (%d, %d)" % (i, j))
        if not v:
            raise ParseError(path, k, "explicit zero entry (%d, %d)" % (i, j))
        M.entries[(i, j)] = v
    return M


def export_echelon(basis: EchelonBasis, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("echelon nvars=%d forms=%d\n" % (basis.nvars, len(basis)))
        for f in basis.forms:
            fh.write(str(f) + "\n")


_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)\*y(\d+)$")


def parse_form(line: str, nvars: int, path: str, lineno: int) -> LinearForm:
    coeffs: Dict[int, object] = {}
    if line.strip() == "0":
        return LinearForm(nvars)
    for piece in line.split(" + "):
        m = _TERM_RE.match(piece.strip())
        if not m:
            raise ParseError(path, lineno, "malformed form term %r" % piece)
        i = int(m.group(2))
        if not 1 <= i <= nvars:
            raise ParseError(path, lineno, "variable y%d outside 1..%d"
                             % (i, nvars))
        if i in coeffs:
            raise ParseError(path, lineno, "duplicate variable y%d" % i)
        coeffs[i] = rat_parse(m.group(1))
    return LinearForm(nvars, coeffs)


def import_echelon(path: str) -> EchelonBasis:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty echelon file")
    hd = _header(lines[0], "echelon", ["nvars", "forms"], path, 1)
    if hd["forms"] != len(lines) - 1:
        raise ParseError(path, len(lines), "expected %d form lines, found %d"
                         % (hd["forms"], len(lines) - 1))
    basis = EchelonBasis(hd["nvars"])
    last_lead = 0
    for k, line in enumerate(lines[1:], start=2):
        f = parse_form(line, hd["nvars"], path, k)
        lead = f.lead()
        if lead is None:
            raise ParseError(path, k, "zero form in echelon basis")
        if f.coeffs[lead] != 1:
            raise ParseError(path, k, "non-monic leading coefficient")
        if lead <= last_lead:
            raise ParseError(path, k, "leading variables not strictly increasing")
        last_lead = lead
        basis.forms.append(f)
    return basis
