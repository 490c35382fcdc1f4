"""Sparsity-aware exact nullspace used inside block computations.

The reduced-echelon routines in linformgb pivot strictly by the variable
order, which is what their contracts require, but first-position pivoting
fills in badly on the very sparse sl(2) operator blocks.  This routine picks
pivots by a deterministic Markowitz-style rule (sparsest row, then least
occupied column, ties by index) and returns an unnormalized spanning set of
the nullspace; callers re-echelonize the small result canonically.
"""

from typing import Dict, List

from .rationals import Q


def sparse_nullspace(rows: List[Dict[int, object]], ncols: int) -> List[Dict[int, object]]:
    """Nullspace spanning set of the matrix with the given sparse rows.

    Column indices are 0-based here.  Returns one vector per free column,
    each a dict col -> rational with the free column set to 1.
    """
    rows = [{c: Q(v) for c, v in r.items()} for r in rows if r]
    occ: Dict[int, set] = {}
    for ri, row in enumerate(rows):
        for c in row:
            occ.setdefault(c, set()).add(ri)
    active = set(range(len(rows)))
    pivots: Dict[int, int] = {}  # col -> row index

    while active:
        ri = min(active, key=lambda i: (len(rows[i]), i))
        row = rows[ri]
        if not row:
            active.discard(ri)
            continue
        pc = min(row, key=lambda c: (len(occ[c]), c))
        piv = row[pc]
        for rj in list(occ[pc]):
            if rj == ri:
                continue
            other = rows[rj]
            factor = other[pc] / piv
            for c, v in row.items():
                w = other.get(c)
                w = -factor * v if w is None else w - factor * v
                if w:
                    other[c] = w
                    occ.setdefault(c, set()).add(rj)
                else:
                    del other[c]
                    occ[c].discard(rj)
            if not other:
                active.discard(rj)
        pivots[pc] = ri
        active.discard(ri)

    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec: Dict[int, object] = {f: Q(1)}
        for pc, ri in pivots.items():
            row = rows[ri]
            v = row.get(f)
            if v:
                vec[pc] = -v / row[pc]
        out.append(vec)
    return out
