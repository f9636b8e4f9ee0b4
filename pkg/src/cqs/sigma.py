"""Repeated synthetic division of the deformed bottom-line equations.

For each position eps the deformed bottom equation is a monic polynomial
Z_eps^(00) of degree a_eps in z_eps whose lower coefficients are the base
parameters s_eps_1, ..., s_eps_{a-1}.  The constant term is not free: we
work in the gauge where z = r_eps is a root of Z_eps^(00), so the would-be
parameter of degree a is eliminated.  Dividing off the linear factors
L = z - l and R = z - r repeatedly produces the two-index family

    Z^(ij) = quotient after i divisions by L and j divisions by R,
    sigma^(ij) = the remainder picked up in the last division.

Since later divisions are applied to earlier quotients, the result does
not depend on the interleaving of left and right steps (the tests check
this exhaustively); we always divide on the right first.  Degrees drop by
one per step, so Z^(ij) = 1 once i + j reaches a_eps and 0 beyond, while
sigma^(ij) = 1 at i + j = a_eps + 1 and 0 beyond; no special cases are
needed, plain division produces these values.

The roots l_eps, r_eps are themselves variables at interior positions
3 <= eps <= e - 2 and are pinned to 0 at the two ends.  At the ends every
division is by z, so the remainders collapse to single parameters:
sigma^(ij) = s_eps_{a-i-j+1} there, with s_eps_0 meaning 1.
"""

from __future__ import annotations

from .ring import Polynomial, lname, ring_from_names, rname, sname, zname


class UndefinedSigma(ValueError):
    """sigma^(00) names nothing: remainders start with the first division."""


class SigmaContext:
    """All Z^(ij) and sigma^(ij) for one vector of bottom degrees.

    ``a`` lists the degrees a_2, ..., a_{e-1}.  The context owns a ring
    with the variables z_1..z_e, the interior roots l_eps, r_eps and the
    base parameters s_eps_m, plus a memo table for both families.  The
    memo is filled compute-then-publish, so concurrent readers at worst
    recompute a value; they never observe a partial one.
    """

    def __init__(self, a):
        a = tuple(a)
        if not a:
            raise ValueError("empty degree vector")
        for x in a:
            if not isinstance(x, int) or x < 1:
                raise ValueError("degrees must be integers >= 1")
        self.a = a
        self.e = len(a) + 2
        names = [zname(eps) for eps in range(1, self.e + 1)]
        for eps in range(3, self.e - 1):
            names += [lname(eps), rname(eps)]
        for eps in range(2, self.e):
            names += [sname(eps, m) for m in range(1, self.entry(eps))]
        self.ring = ring_from_names(names)
        self._memo = {}

    def entry(self, eps):
        """The degree a_eps, for 2 <= eps <= e - 1."""
        if not 2 <= eps <= self.e - 1:
            raise ValueError("no equation at position %d" % eps)
        return self.a[eps - 2]

    def is_interior(self, eps):
        return 3 <= eps <= self.e - 2

    # -- roots and linear factors -------------------------------------

    def left_root(self, eps):
        """l_eps as a ring element; 0 outside the interior."""
        if not 1 <= eps <= self.e:
            raise ValueError("position %d outside 1..%d" % (eps, self.e))
        if self.is_interior(eps):
            return self.ring.var(lname(eps))
        return self.ring.zero()

    def right_root(self, eps):
        if not 1 <= eps <= self.e:
            raise ValueError("position %d outside 1..%d" % (eps, self.e))
        if self.is_interior(eps):
            return self.ring.var(rname(eps))
        return self.ring.zero()

    def left_factor(self, eps):
        """L_eps = z_eps - l_eps."""
        return self.ring.var(zname(eps)) - self.left_root(eps)

    def right_factor(self, eps):
        """R_eps = z_eps - r_eps."""
        return self.ring.var(zname(eps)) - self.right_root(eps)

    def sigma_base(self, eps, m):
        """The parameter s_eps_m for 1 <= m < a_eps."""
        if not 1 <= m < self.entry(eps):
            raise ValueError("no base parameter s%d_%d" % (eps, m))
        return self.ring.var(sname(eps, m))

    # -- the two division families ------------------------------------

    def z_poly(self, eps, i, j):
        """Z_eps^(ij), the quotient after i left and j right divisions."""
        if i < 0 or j < 0:
            raise ValueError("negative division counts")
        a = self.entry(eps)
        key = ("Z", eps, i, j)
        got = self._memo.get(key)
        if got is not None:
            return got
        if i > 0:
            q, _ = self.z_poly(eps, i - 1, j).div_rem_in_var(
                zname(eps), self.left_root(eps))
        elif j > 0:
            q, _ = self.z_poly(eps, 0, j - 1).div_rem_in_var(
                zname(eps), self.right_root(eps))
        else:
            z = self.ring.var(zname(eps))
            q = z ** a
            for m in range(1, a):
                q = q + self.sigma_base(eps, m) * z ** (a - m)
            # pin the absolute term by requiring Z^(00)(r_eps) = 0
            q = q - q.eval_subst({zname(eps): self.right_root(eps)})
        self._memo[key] = q
        return q

    def sigma_poly(self, eps, i, j):
        """sigma_eps^(ij): the remainder of the division producing Z^(ij)."""
        if i == 0 and j == 0:
            raise UndefinedSigma("sigma^(00) is not defined")
        if i < 0 or j < 0:
            raise ValueError("negative division counts")
        key = ("sigma", eps, i, j)
        got = self._memo.get(key)
        if got is not None:
            return got
        if i > 0:
            p = self.z_poly(eps, i - 1, j).eval_subst(
                {zname(eps): self.left_root(eps)})
        else:
            p = self.z_poly(eps, 0, j - 1).eval_subst(
                {zname(eps): self.right_root(eps)})
        self._memo[key] = p
        return p

    # -- recognising derived polynomials ------------------------------

    def _table(self):
        """Name every nonconstant Z^(ij) and sigma^(ij), by value."""
        key = ("table",)
        got = self._memo.get(key)
        if got is not None:
            return got
        table = {}
        for eps in range(2, self.e):
            a = self.entry(eps)
            for i in range(a + 2):
                for j in range(a + 2 - i):
                    z = self.z_poly(eps, i, j)
                    if len(z) > 1:
                        table.setdefault(z, "Z%d^(%d%d)" % (eps, i, j))
                    if i == j == 0:
                        continue
                    s = self.sigma_poly(eps, i, j)
                    if len(s) > 1:
                        table.setdefault(s, "sigma%d^(%d%d)" % (eps, i, j))
        self._memo[key] = table
        return table

    def recognize(self, p):
        """The name of a memoized Z or sigma equal to ``p``, or None.

        Products of base parameters frequently reproduce whole derived
        polynomials; printing those under their two-index name is what
        makes the output comparable with hand computations.
        """
        if not isinstance(p, Polynomial):
            return None
        return self._table().get(p)
