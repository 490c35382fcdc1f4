"""Exterior-algebra bookkeeping for the graded cochain spaces.

A Shape is the multiplicity vector {k_j} of a (degree, weight) pair: a
partition of w + 2m into m parts j with k_j <= dim S_j = j + 1 on the plane.
Wedge words are sign-normalized products of distinct dual monomials, stored
sorted under the canonical (R, r) factor order so they are usable hash keys.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from .polyalg import MonomialDual
from .rationals import Q

# dim S_j on the symplectic plane (n = 1)
def part_dim(j: int) -> int:
    return j + 1


WedgeWord = Tuple[MonomialDual, ...]


@dataclass(frozen=True)
class Shape:
    """Multiset of homogeneity degrees: tuple of (part j, count k_j), j ascending."""

    parts: Tuple[Tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.parts)

    @property
    def weight(self) -> int:
        return sum((j - 2) * k for j, k in self.parts)

    def multiplicity_vector(self) -> Tuple[int, ...]:
        if not self.parts:
            return ()
        top = self.parts[-1][0]
        mult = dict(self.parts)
        return tuple(mult.get(j, 0) for j in range(1, top + 1))

    def basis_size(self) -> int:
        n = 1
        for j, k in self.parts:
            n *= comb(part_dim(j), k)
        return n

    def __str__(self) -> str:
        return "{" + ", ".join("k%d=%d" % (j, k) for j, k in self.parts) + "}"


def min_part(algebra: str, relative: bool) -> Tuple[int, ...]:
    """Parts excluded by the algebra and the relative condition."""
    if algebra not in ("ham", "ham0"):
        raise ValueError("algebra must be 'ham' or 'ham0', got %r" % (algebra,))
    excluded = set()
    if algebra == "ham0":
        excluded.add(1)
    if relative:
        excluded.add(2)
    return tuple(sorted(excluded))


def enumerate_shapes(m: int, w: int, algebra: str = "ham",
                     relative: bool = True) -> List[Shape]:
    """All shapes for degree m and weight w, in canonical order.

    Canonical order is lexicographic on the multiplicity vector (k_1, k_2, ...).
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    excluded = set(min_part(algebra, relative))
    total = w + 2 * m
    out: List[Shape] = []

    def rec(j: int, count: int, budget: int, acc: List[Tuple[int, int]]):
        if count == 0:
            if budget == 0:
                out.append(Shape(tuple(acc)))
            return
        if j > budget:  # every remaining part is at least j
            return
        hi = min(part_dim(j), count, budget // j) if j not in excluded else 0
        for k in range(hi, -1, -1):
            acc_k = acc + [(j, k)] if k else acc
            rec(j + 1, count - k, budget - j * k, acc_k)

    if total >= 0:
        rec(1, m, total, [])
    out.sort(key=Shape.multiplicity_vector, reverse=True)
    return out


def wedge_basis(shape: Shape) -> List[WedgeWord]:
    """Canonically ordered basis words of the tensor factor of a shape."""
    blocks = []
    for j, k in shape.parts:
        blocks.append([tuple(MonomialDual(r, j) for r in rs)
                       for rs in combinations(range(part_dim(j)), k)])
    words = []
    for combo in product(*blocks):
        word: WedgeWord = tuple(f for block in combo for f in block)
        words.append(word)
    return words


def normalize(factors: Sequence[MonomialDual]) -> Tuple[int, WedgeWord]:
    """Sort factors under (R, r); returns (permutation sign, word) or (0, ())."""
    fs = list(factors)
    sign = 1
    # insertion sort; factor lists are short
    for i in range(1, len(fs)):
        f = fs[i]
        key = f.sort_key()
        j = i
        while j > 0 and fs[j - 1].sort_key() > key:
            fs[j] = fs[j - 1]
            j -= 1
            sign = -sign
        fs[j] = f
    for a, b in zip(fs, fs[1:]):
        if a == b:
            return 0, ()
    return sign, tuple(fs)


@dataclass
class CochainVector:
    """Sparse rational vector in the (m, w) cochain space."""

    degree: int
    weight: int
    terms: Dict[WedgeWord, object] = field(default_factory=dict)

    def add_term(self, word: WedgeWord, coeff) -> None:
        c = self.terms.get(word)
        c = coeff if c is None else c + coeff
        if c:
            self.terms[word] = c
        else:
            self.terms.pop(word, None)

    def scaled(self, c) -> "CochainVector":
        if not c:
            return CochainVector(self.degree, self.weight)
        return CochainVector(self.degree, self.weight,
                             {w: c * v for w, v in self.terms.items()})

    def __iadd__(self, other: "CochainVector") -> "CochainVector":
        assert (self.degree, self.weight) == (other.degree, other.weight)
        for w, v in other.terms.items():
            self.add_term(w, v)
        return self

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, CochainVector)
                and (self.degree, self.weight) == (other.degree, other.weight)
                and self.terms == other.terms)


def word_degree(word: WedgeWord) -> int:
    return len(word)


def word_weight(word: WedgeWord) -> int:
    return sum(f.R - 2 for f in word)


def word_from_factors(factors: Sequence[MonomialDual]):
    """(sign, word) of an arbitrary factor list; sign 0 on repeats."""
    return normalize(factors)


def wedge(u: CochainVector, v: CochainVector) -> CochainVector:
    """Graded-commutative wedge product; degrees and weights add."""
    out = CochainVector(u.degree + v.degree, u.weight + v.weight)
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            sign, word = normalize(wu + wv)
            if sign:
                out.add_term(word, cu * cv * sign)
    return out


def single_word(word: WedgeWord, coeff=None) -> CochainVector:
    c = Q(1) if coeff is None else coeff
    return CochainVector(word_degree(word), word_weight(word), {word: c})
