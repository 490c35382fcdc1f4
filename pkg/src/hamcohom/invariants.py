"""sp(2)-trivial (relative) subspaces of the graded cochain spaces.

The sl(2) generators act on wedge words as derivations and preserve each
shape block, so the trivial isotypic component is computed shape by shape:
inside a shape, it is ker(E) restricted to the H-eigenvalue-0 words, by
complete reducibility.  F-annihilation is asserted afterwards rather than
imposed, which catches convention errors cheaply.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import cochain
from .cochain import CochainVector, Shape, WedgeWord, enumerate_shapes, wedge_basis
from .linformgb import LinearForm, SparseMatrix, echelon
from .polyalg import sl2_on_dual_cached
from .rationals import Q
from .sparselin import sparse_nullspace


def word_h_eigenvalue(word: WedgeWord) -> int:
    return sum(f.R - 2 * f.r for f in word)


@dataclass
class GradedAmbientBasis:
    """Concatenated wedge bases of all shapes of one (m, w) block."""

    degree: int
    weight: int
    algebra: str
    relative: bool
    shapes: List[Shape]
    words: List[WedgeWord]
    index: Dict[WedgeWord, int]
    shape_slices: List[Tuple[int, int]]

    @property
    def dim(self) -> int:
        return len(self.words)


def ambient_basis(m: int, w: int, algebra: str = "ham",
                  relative: bool = True) -> GradedAmbientBasis:
    shapes = enumerate_shapes(m, w, algebra, relative)
    words: List[WedgeWord] = []
    slices: List[Tuple[int, int]] = []
    for s in shapes:
        start = len(words)
        words.extend(wedge_basis(s))
        slices.append((start, len(words)))
    index = {word: i for i, word in enumerate(words)}
    return GradedAmbientBasis(m, w, algebra, relative, shapes, words, index, slices)


def apply_sl2_word(g: str, word: WedgeWord):
    """Derivation action of a generator on a word: list of (coeff, word)."""
    out = []
    for k, f in enumerate(word):
        for c, f2 in sl2_on_dual_cached(g, f.r, f.R):
            sign, newword = cochain.normalize(word[:k] + (f2,) + word[k + 1:])
            if sign:
                out.append((c * sign, newword))
    return out


def apply_sl2_vector(g: str, v: CochainVector) -> CochainVector:
    out = CochainVector(v.degree, v.weight)
    for word, coeff in v.terms.items():
        for c, w2 in apply_sl2_word(g, word):
            out.add_term(w2, coeff * c)
    return out


def sl2_operator_matrix(g: str, basis: GradedAmbientBasis) -> SparseMatrix:
    """Matrix of the derivation action in ambient coordinates (1-based)."""
    M = SparseMatrix(basis.dim, basis.dim)
    for j, word in enumerate(basis.words):
        for c, w2 in apply_sl2_word(g, word):
            i = basis.index[w2]
            key = (i + 1, j + 1)
            v = M.entries.get(key, 0) + c
            if v:
                M.entries[key] = v
            else:
                M.entries.pop(key, None)
    return M


def _char_poly_for_part(j: int, k: int) -> Dict[int, int]:
    """H-eigenvalue generating function of Lambda^k S_j as {eigenvalue: count}.

    Elementary symmetric polynomial e_k in the variables q^(j-2r), r = 0..j,
    computed by the standard DP over the factor list.
    """
    # e[t] after processing each eigenvalue
    e: List[Dict[int, int]] = [{0: 1}] + [dict() for _ in range(k)]
    for r in range(j + 1):
        lam = j - 2 * r
        for t in range(min(k, r + 1), 0, -1):
            for mu, c in e[t - 1].items():
                e[t][mu + lam] = e[t].get(mu + lam, 0) + c
    return e[k]


def shape_character(shape: Shape) -> Dict[int, int]:
    """H-eigenvalue multiplicities of the whole shape block."""
    acc = {0: 1}
    for j, k in shape.parts:
        part = _char_poly_for_part(j, k)
        nxt: Dict[int, int] = {}
        for mu, c in acc.items():
            for nu, d in part.items():
                nxt[mu + nu] = nxt.get(mu + nu, 0) + c * d
        acc = nxt
    return acc


def shape_trivial_multiplicity(shape: Shape) -> int:
    ch = shape_character(shape)
    return ch.get(0, 0) - ch.get(2, 0)


def character_multiplicity(m: int, w: int, algebra: str = "ham",
                           relative: bool = True) -> int:
    """Weight-count oracle for the trivial multiplicity: m_0 - m_2."""
    return sum(shape_trivial_multiplicity(s)
               for s in enumerate_shapes(m, w, algebra, relative))


@dataclass
class InvariantBasis:
    """Echelonized basis of the trivial isotypic component of one block."""

    ambient: GradedAmbientBasis
    vectors: List[CochainVector] = field(default_factory=list)
    pivots: List[WedgeWord] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.vectors)


def shape_trivial_vectors(shape: Shape) -> List[Dict[WedgeWord, object]]:
    """Trivial-component basis inside one shape block.

    Returns reduced monic vectors over that shape's words, pivot first in
    canonical word order.
    """
    words = wedge_basis(shape)
    eig = [word_h_eigenvalue(wd) for wd in words]
    w0 = [i for i, e in enumerate(eig) if e == 0]
    if not w0:
        return []
    w2_index: Dict[WedgeWord, int] = {}
    for i, e in enumerate(eig):
        if e == 2:
            w2_index[words[i]] = len(w2_index)
    # E maps the eigenvalue-0 slice into the eigenvalue-2 slice of the same shape
    rows: List[Dict[int, object]] = [{} for _ in range(len(w2_index))]
    for col, i in enumerate(w0):
        for c, w2 in apply_sl2_word("E", words[i]):
            row = rows[w2_index[w2]]
            v = row.get(col, 0) + c
            if v:
                row[col] = v
            else:
                del row[col]
    kernel = sparse_nullspace(rows, len(w0))
    # canonical form: reduced monic echelon in the shape's word order
    gb = echelon((LinearForm(len(w0), {j + 1: Q(c) for j, c in vec.items()})
                  for vec in kernel), nvars=max(len(w0), 1))
    out = []
    for form in gb.forms:
        vec = {words[w0[j - 1]]: c for j, c in form.coeffs.items()}
        out.append(vec)
    return out


def _verify_annihilated(shape: Shape, vecs) -> None:
    for vec in vecs:
        for g in ("H", "F"):
            acc: Dict[WedgeWord, object] = {}
            for word, coeff in vec.items():
                for c, w2 in apply_sl2_word(g, word):
                    v = acc.get(w2)
                    v = coeff * c if v is None else v + coeff * c
                    if v:
                        acc[w2] = v
                    else:
                        del acc[w2]
            if acc:
                raise AssertionError(
                    "trivial-component vector not annihilated by %s in shape %s"
                    % (g, shape))


def trivial_basis(m: int, w: int, algebra: str = "ham", relative: bool = True,
                  jobs: int = 1, _pool=None) -> InvariantBasis:
    """Echelon basis of the sp(2)-trivial component of the (m, w) block."""
    ambient = ambient_basis(m, w, algebra, relative)
    if jobs > 1 and len(ambient.shapes) > 1 and _pool is None:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(jobs) as pool:
            per_shape = pool.map(shape_trivial_vectors, ambient.shapes, chunksize=1)
    elif _pool is not None:
        per_shape = _pool.map(shape_trivial_vectors, ambient.shapes, chunksize=1)
    else:
        per_shape = [shape_trivial_vectors(s) for s in ambient.shapes]

    basis = InvariantBasis(ambient)
    order = {word: i for i, word in enumerate(ambient.words)}
    for shape, vecs in zip(ambient.shapes, per_shape):
        _verify_annihilated(shape, vecs)
        expected = shape_trivial_multiplicity(shape)
        if len(vecs) != expected:
            raise AssertionError(
                "shape %s: kernel dimension %d != character multiplicity %d"
                % (shape, len(vecs), expected))
        for vec in vecs:
            pivot = min(vec, key=order.__getitem__)
            basis.vectors.append(CochainVector(m, w, dict(vec)))
            basis.pivots.append(pivot)
    return basis


def expand_in_basis(v: CochainVector, basis: InvariantBasis,
                    what: str = "vector") -> LinearForm:
    """Coordinates of v in an invariant basis as a linear form in y_1..y_dim.

    Raises if v is not exactly in the span (residual must vanish).
    """
    residual = dict(v.terms)
    coeffs: Dict[int, object] = {}
    for i, (vec, pivot) in enumerate(zip(basis.vectors, basis.pivots)):
        c = residual.get(pivot)
        if not c:
            continue
        coeffs[i + 1] = c
        for word, u in vec.terms.items():
            r = residual.get(word)
            r = -c * u if r is None else r - c * u
            if r:
                residual[word] = r
            else:
                residual.pop(word, None)
    if residual:
        raise AssertionError("%s does not lie in the span of the %d-dim basis "
                             "at (m=%d, w=%d)" % (what, basis.dim,
                                                  basis.ambient.degree,
                                                  basis.ambient.weight))
    return LinearForm(basis.dim, coeffs)
