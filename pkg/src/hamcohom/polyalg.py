"""Exact algebra of divided-power monomials on the symplectic plane.

The Lie algebra of formal Hamiltonian vector fields on R^2 is identified
with polynomial potentials under the Poisson bracket {f,g} = f_x g_y - f_y g_x
(Darboux coordinates, {x,y} = 1).  Dual basis elements z[r,R] pair with the
divided-power monomials x^r/r! * y^(R-r)/(R-r)!.

Everything here is pure and deterministic; structure constants are integers.
"""

from functools import lru_cache
from math import comb
from typing import NamedTuple, Optional


class MonomialDual(NamedTuple):
    """The dual z[r,R] of x^r/r! * y^(R-r)/(R-r)!, with R >= 1, 0 <= r <= R."""

    r: int
    R: int

    @property
    def weight(self) -> int:
        return self.R - 2

    def sort_key(self):
        # canonical order: by homogeneous degree R, then by x-exponent r
        return (self.R, self.r)

    def __str__(self) -> str:
        return "z[%d,%d]" % (self.r, self.R)


class BracketTerm(NamedTuple):
    """One term c * z~[r,R] of a Poisson bracket of monomials."""

    coeff: int
    r: int
    R: int


def _check_indices(a: int, A: int) -> None:
    if A < 1 or not 0 <= a <= A:
        raise ValueError("invalid monomial indices (r=%r, R=%r)" % (a, A))


def poisson_bracket(a: int, A: int, b: int, B: int) -> Optional[BracketTerm]:
    """Structure constant of {z~[a,A], z~[b,B]} in the divided-power basis.

    Returns the unique term c * z~[a+b-1, A+B-2], or None when the bracket
    is zero in the algebra (constants, i.e. A+B-2 = 0, count as zero).
    """
    _check_indices(a, A)
    _check_indices(b, B)
    R = A + B - 2
    r = a + b - 1
    if R < 1 or r < 0 or r > R:
        return None
    # d/dx lowers r and divides by nothing in divided powers; recombining the
    # product into divided powers produces binomial factors.
    c = 0
    if a >= 1 and b <= B - 1:  # f_x * g_y
        c += comb(r, a - 1) * comb(R - r, A - a)
    if b >= 1 and a <= A - 1:  # - f_y * g_x
        c -= comb(r, a) * comb(R - r, A - a - 1)
    if c == 0:
        return None
    return BracketTerm(c, r, R)


def pairing(z: MonomialDual, a: int, A: int) -> int:
    """Kronecker pairing <z[r,R], z~[a,A]>."""
    _check_indices(a, A)
    return 1 if (z.r, z.R) == (a, A) else 0


# sl(2) generators, realized as the quadratic Hamiltonians
#   E = x^2/2,  H = xy,  F = y^2/2.
# On dual elements the induced (Lie-derivative) actions below satisfy
# [H,E] = 2E, [H,F] = -2F, [E,F] = H; the eigenvalue sign of H is fixed by
# this single constant and asserted at import time.
SL2_GENERATORS = ("E", "H", "F")
H_EIGENVALUE_SIGN = +1  # H acts on z[r,R] with eigenvalue +(R - 2r)


def sl2_on_dual(g: str, z: MonomialDual):
    """Action of an sl(2) generator on a dual basis element.

    Returns a list of (integer coefficient, MonomialDual) pairs.
    """
    r, R = z.r, z.R
    if g == "H":
        lam = H_EIGENVALUE_SIGN * (R - 2 * r)
        return [(lam, z)] if lam else []
    if g == "E":
        return [(-r, MonomialDual(r - 1, R))] if r > 0 else []
    if g == "F":
        return [(-(R - r), MonomialDual(r + 1, R))] if r < R else []
    raise ValueError("unknown sl(2) generator %r" % (g,))


@lru_cache(maxsize=None)
def sl2_on_dual_cached(g: str, r: int, R: int):
    return tuple(sl2_on_dual(g, MonomialDual(r, R)))


def _assert_sl2_relations(max_R: int = 4) -> None:
    # [H,E] = 2E, [H,F] = -2F, [E,F] = H on a small span; guards the sign
    # constant against accidental edits.
    def act(g, vec):
        out = {}
        for z, c in vec.items():
            for c2, z2 in sl2_on_dual(g, z):
                out[z2] = out.get(z2, 0) + c * c2
        return {z: c for z, c in out.items() if c}

    def comm(g1, g2, vec):
        a = act(g1, act(g2, vec))
        b = act(g2, act(g1, vec))
        d = {z: a.get(z, 0) - b.get(z, 0) for z in set(a) | set(b)}
        return {z: c for z, c in d.items() if c}

    for R in range(1, max_R + 1):
        for r in range(R + 1):
            v = {MonomialDual(r, R): 1}
            he = comm("H", "E", v)
            assert he == {z: 2 * c for z, c in act("E", v).items()}, "[H,E] != 2E"
            hf = comm("H", "F", v)
            assert hf == {z: -2 * c for z, c in act("F", v).items()}, "[H,F] != -2F"
            ef = comm("E", "F", v)
            assert ef == act("H", v), "[E,F] != H"


_assert_sl2_relations()
