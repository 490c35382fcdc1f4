"""Coboundary operators d0 (on ham) and d1 (on ham0) and their matrices.

On dual generators,
    d z[r,R] = -1/2 * sum_{A+B=2+R} <z[r,R], {z~[a,A], z~[b,B]}> z[a,A]^z[b,B]
with A, B >= 1 for d0 and A, B >= 2 for d1; the operator extends to wedge
words as an odd derivation (Koszul sign (-1)^(k-1) on the k-th factor).
Both the ordered double count and the -1/2 prefactor are kept as displayed,
so the resulting coefficients are integers.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from . import cochain
from .cochain import CochainVector, WedgeWord
from .invariants import InvariantBasis, expand_in_basis
from .linformgb import SparseMatrix
from .polyalg import MonomialDual, poisson_bracket
from .rationals import Q

OPS = ("d0", "d1")


@lru_cache(maxsize=None)
def d_on_dual(r: int, R: int, op: str) -> Tuple[Tuple[int, WedgeWord], ...]:
    """d of a single dual generator: tuple of (integer coeff, 2-factor word)."""
    if op not in OPS:
        raise ValueError("op must be 'd0' or 'd1', got %r" % (op,))
    lo = 1 if op == "d0" else 2
    acc: Dict[WedgeWord, int] = {}
    for A in range(lo, R + 2 - lo + 1):
        B = R + 2 - A
        a_min = max(0, r + 1 - B)
        a_max = min(A, r + 1)
        for a in range(a_min, a_max + 1):
            b = r + 1 - a
            term = poisson_bracket(a, A, b, B)
            if term is None:
                continue
            sign, word = cochain.normalize(
                (MonomialDual(a, A), MonomialDual(b, B)))
            if not sign:
                continue
            c = acc.get(word, 0) - sign * term.coeff  # -1/2 applied below
            if c:
                acc[word] = c
            else:
                acc.pop(word, None)
    out = []
    for word, c in acc.items():
        half, rem = divmod(c, 2)
        assert rem == 0, "ordered double count must be even"
        out.append((half, word))
    return tuple(out)


def apply_d(v: CochainVector, op: str) -> CochainVector:
    """Coboundary of a cochain vector; degree +1, weight preserved."""
    out = CochainVector(v.degree + 1, v.weight)
    for word, coeff in v.terms.items():
        sign = 1
        for k, f in enumerate(word):
            if op == "d1" and f.R == 1:
                raise ValueError("d1 is undefined on words with degree-1 factors")
            rest = word[:k] + word[k + 1:]
            for c, pair in d_on_dual(f.r, f.R, op):
                s2, newword = cochain.normalize(pair + rest)
                if s2:
                    out.add_term(newword, coeff * (sign * s2 * c))
            sign = -sign
    return out


@dataclass
class CoboundaryMatrix:
    """Matrix of d between consecutive invariant bases (rows: target)."""

    source: InvariantBasis
    target: InvariantBasis
    op: str
    matrix: SparseMatrix

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols


def coboundary_matrix(src: InvariantBasis, dst: InvariantBasis,
                      op: str) -> CoboundaryMatrix:
    """Expand d of every source basis vector in the target invariant basis.

    Fails loudly if any image falls outside span(dst): d commutes with the
    sp(2) action and preserves the relative constraints, so a nonzero
    residual indicates an invariance bug.
    """
    sa, ta = src.ambient, dst.ambient
    if (ta.degree, ta.weight) != (sa.degree + 1, sa.weight):
        raise ValueError("target basis is not the successor block of the source")
    M = SparseMatrix(dst.dim, src.dim)
    for j, v in enumerate(src.vectors):
        image = apply_d(v, op)
        form = expand_in_basis(image, dst, what="d(column %d)" % (j + 1))
        for i, c in form.coeffs.items():
            M.entries[(i, j + 1)] = c
    return CoboundaryMatrix(src, dst, op, M)
