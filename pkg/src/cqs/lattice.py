"""Continued fractions and toric equations of the cyclic quotient surfaces.

The singularity of type (n, q) is encoded by the negative continued
fraction n/(n-q) = [a_2, ..., a_{e-1}] with all entries at least 2.  The
dual exponent sequences (i_eps) and (j_eps) solve the same three-term
recursion from opposite ends; i_1 = j_e = n and i_2 = n - q provide
cross-checks that we assert internally rather than trust.
"""

from __future__ import annotations

from fractions import Fraction

from .ring import Polynomial, ring_from_names, zname


class InvalidEntry(ValueError):
    """A continued-fraction entry below 2 (or an empty expansion)."""


class LengthMismatch(ValueError):
    """Row lengths of a quasi-matrix do not fit together."""


def _check_entries(a):
    a = list(a)
    if not a:
        raise InvalidEntry("empty continued fraction")
    for x in a:
        if not isinstance(x, int) or x < 2:
            raise InvalidEntry("continued fraction entry %r < 2" % (x,))
    return a


def cf_eval(a):
    """Evaluate [a_2, ..., a_{e-1}] to the pair (n, q)."""
    a = _check_entries(a)
    x = Fraction(a[-1])
    for entry in reversed(a[:-1]):
        x = entry - 1 / x
    n = x.numerator
    q = n - x.denominator
    return n, q


def exponent_seqs(a):
    """The two exponent sequences (i_1..i_e) and (j_1..j_e).

    i runs the recursion downward from i_e = 0, i_{e-1} = 1; j upward
    from j_1 = 0, j_2 = 1; entry a_eps sits at position eps.
    """
    a = _check_entries(a)
    e = len(a) + 2
    i = [0] * (e + 1)          # 1-based; i[eps] = i_eps
    i[e], i[e - 1] = 0, 1
    for eps in range(e - 1, 1, -1):
        i[eps - 1] = a[eps - 2] * i[eps] - i[eps + 1]
    j = [0] * (e + 1)
    j[1], j[2] = 0, 1
    for eps in range(2, e):
        j[eps + 1] = a[eps - 2] * j[eps] - j[eps - 1]
    n, q = cf_eval(a)
    assert i[1] == n and j[e] == n and i[2] == n - q, \
        "exponent recursion disagrees with the continued fraction"
    return tuple(i[1:]), tuple(j[1:])


def coordinate_ring(e):
    """The ring in z_1 .. z_e."""
    return ring_from_names([zname(k) for k in range(1, e + 1)])


def toric_eqs(a, ring=None):
    """The binomials z_{eps-1} z_{eps+1} - z_eps^{a_eps}, eps = 2..e-1."""
    a = _check_entries(a)
    e = len(a) + 2
    R = ring if ring is not None else coordinate_ring(e)
    out = []
    for eps in range(2, e):
        out.append(R.var(zname(eps - 1)) * R.var(zname(eps + 1))
                   - R.var(zname(eps)) ** a[eps - 2])
    return out


def quasi_minors(f, g, h):
    """All quasi-minors of the 2-row array with connecting entries h.

    For columns i < j the minor is f_i g_j - g_i (h_i ... h_{j-1}) f_j.
    Rows f and g must have equal length m, h length m - 1.  Returned in
    lexicographic column order (i, j), 1-based in the docstring but
    0-based in the code.
    """
    f, g, h = list(f), list(g), list(h)
    if len(f) != len(g):
        raise LengthMismatch("rows of different length")
    if len(h) != len(f) - 1:
        raise LengthMismatch("need one connecting entry per adjacent column pair")
    if not f:
        raise LengthMismatch("empty quasi-matrix")
    out = []
    m = len(f)
    for i in range(m):
        for j in range(i + 1, m):
            mid = f[i].ring.one()
            for eps in range(i, j):
                mid = mid * h[eps]
            out.append(f[i] * g[j] - g[i] * mid * f[j])
    return out


def standard_quasi_matrix(a, ring=None):
    """The rows (z_1..z_{e-1}), (z_2..z_e) and connecting entries
    z_eps^{a_eps - 2}; its quasi-minors are the equations of the
    monomial-cone component."""
    a = _check_entries(a)
    e = len(a) + 2
    R = ring if ring is not None else coordinate_ring(e)
    f = [R.var(zname(k)) for k in range(1, e)]
    g = [R.var(zname(k)) for k in range(2, e + 1)]
    h = [R.var(zname(eps)) ** (a[eps - 2] - 2) for eps in range(2, e)]
    return f, g, h


def quasi_minor_eqs(a, ring=None):
    """All quasi-minors of the standard quasi-matrix of (a_2..a_{e-1}).

    Minor (delta, eps) with 2 <= delta <= eps <= e - 1 works out to

        z_{delta-1} z_{eps+1}
            - z_delta z_eps prod_{beta=delta}^{eps} z_beta^{a_beta - 2},

    which for delta = eps recovers the toric binomial.  This is the full
    generating set of the cone ideal, not just the adjacent minors.
    """
    return quasi_minors(*standard_quasi_matrix(a, ring))
