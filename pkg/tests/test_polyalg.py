"""Bracket structure constants against an independent polynomial oracle."""

from fractions import Fraction
from itertools import product

import pytest

from hamcohom.polyalg import (MonomialDual, poisson_bracket, sl2_on_dual,
                              _assert_sl2_relations)


def poly_monomial(r, R):
    """x^r/r! * y^(R-r)/(R-r)! as {(i, j): coeff} with exact coefficients."""
    from math import factorial
    return {(r, R - r): Fraction(1, factorial(r) * factorial(R - r))}


def poly_bracket(f, g):
    """{f, g} = f_x g_y - f_y g_x on coefficient dicts."""
    out = {}
    def dx(p):
        return {(i - 1, j): c * i for (i, j), c in p.items() if i}
    def dy(p):
        return {(i, j - 1): c * j for (i, j), c in p.items() if j}
    def mul(p, q):
        acc = {}
        for (i, j), c in p.items():
            for (k, l), d in q.items():
                key = (i + k, j + l)
                acc[key] = acc.get(key, 0) + c * d
        return acc
    for table, sign in ((mul(dx(f), dy(g)), 1), (mul(dy(f), dx(g)), -1)):
        for key, c in table.items():
            out[key] = out.get(key, 0) + sign * c
    return {k: c for k, c in out.items() if c}


def bracket_as_dict(a, A, b, B):
    term = poisson_bracket(a, A, b, B)
    if term is None:
        return {}
    return {(term.r, term.R): term.coeff}


@pytest.mark.parametrize("A,B", [(A, B) for A in range(1, 7)
                                 for B in range(1, 7)])
def test_bracket_matches_polynomial_oracle(A, B):
    from math import factorial
    for a in range(A + 1):
        for b in range(B + 1):
            got = bracket_as_dict(a, A, b, B)
            oracle = poly_bracket(poly_monomial(a, A), poly_monomial(b, B))
            # drop constants: they are zero in the algebra of potentials
            oracle = {k: c for k, c in oracle.items() if sum(k) >= 1}
            # convert oracle back to divided-power coordinates
            conv = {}
            for (i, j), c in oracle.items():
                conv[(i, i + j)] = c * factorial(i) * factorial(j)
            conv = {k: c for k, c in conv.items() if c}
            assert got == conv, (a, A, b, B)


def test_bracket_antisymmetry_exhaustive():
    for A in range(1, 7):
        for B in range(1, 13 - A):
            for a in range(A + 1):
                for b in range(B + 1):
                    lhs = bracket_as_dict(a, A, b, B)
                    rhs = bracket_as_dict(b, B, a, A)
                    assert lhs == {k: -c for k, c in rhs.items()}


def test_jacobi_identity():
    def add(u, v, s=1):
        out = dict(u)
        for k, c in v.items():
            out[k] = out.get(k, 0) + s * c
            if not out[k]:
                del out[k]
        return out

    def br(u, v):
        out = {}
        for (a, A), c in u.items():
            for (b, B), d in v.items():
                out = add(out, {k: c * d * e
                                for k, e in bracket_as_dict(a, A, b, B).items()})
        return out

    mons = [(a, A) for A in range(1, 5) for a in range(A + 1)]
    for (x, y, z) in product(mons, repeat=3):
        if x[1] + y[1] + z[1] > 10:
            continue
        u, v, w = {x: 1}, {y: 1}, {z: 1}
        acc = add(add(br(u, br(v, w)), br(v, br(w, u))), br(w, br(u, v)))
        assert acc == {}, (x, y, z)


def test_sl2_relations_hold_widely():
    _assert_sl2_relations(max_R=10)


def test_h_eigenvalue_and_ladder():
    z = MonomialDual(1, 4)
    assert sl2_on_dual("H", z) == [(2, z)]
    assert sl2_on_dual("E", z) == [(-1, MonomialDual(0, 4))]
    assert sl2_on_dual("F", z) == [(-3, MonomialDual(2, 4))]
    assert sl2_on_dual("E", MonomialDual(0, 3)) == []
    assert sl2_on_dual("F", MonomialDual(3, 3)) == []


def test_bracket_rejects_bad_indices():
    with pytest.raises(ValueError):
        poisson_bracket(2, 1, 0, 1)
    with pytest.raises(ValueError):
        poisson_bracket(0, 0, 0, 1)


def test_constant_bracket_is_zero():
    # {z~[0,1], z~[1,1]} lands in degree 0: zero in the algebra
    assert poisson_bracket(0, 1, 1, 1) is None
