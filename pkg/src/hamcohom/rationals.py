"""Exact rational scalar type used everywhere in this package.

gmpy2.mpq is an order of magnitude faster than fractions.Fraction on the
elimination-heavy workloads here; both expose the same arithmetic surface,
so we fall back transparently.
"""

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


def rat_str(q) -> str:
    """Render a rational as 'p' or 'p/q' (no spaces)."""
    return str(q)


def rat_parse(s: str):
    """Parse 'p' or 'p/q' back into a rational."""
    return Q(s)
