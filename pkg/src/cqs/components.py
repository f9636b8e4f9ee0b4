"""Pyramids of equations for the reduced deformation components.

A sparse colouring of the dot triangle on the lines 2..e-1 picks one
reduced component of the base space.  Its equations come as a
triangular array P_{delta,eps} (2 <= delta <= eps <= e-1): the bottom
entries P_{eps,eps} are perturbed powers of the coordinates z_eps, and
every higher entry is the product of its two lower neighbours divided
either by the corner factor z_delta (z_eps + t_eps), when (delta, eps)
is a dot of the extended triangle, or by P_{delta+1,eps-1}, when the
dot is white.  The equation carried by an entry is

    z_{delta-1} (z_{eps+1} + t_{eps+1})  =  P_{delta,eps}.

Sparsity is exactly what makes all divisions in the recursion exact, so
the constructors do not insist on it: a bad colouring runs into an
inexact division sooner or later and NotDivisible propagates, which is
the honest failure mode (a test feeds one in on purpose).  What they do
rule out up front is a line whose dot count exceeds its continued
fraction entry; such a component is simply absent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import InvalidEntry, _check_entries, coordinate_ring
from .ring import (NotDivisible, Polynomial, Ring, ring_from_names, stname,
                   tname, zname)
from .triangle import ColouredTriangle, triangle_data


class Absent(ValueError):
    """The component does not occur: a_eps < k_eps on some line."""


@dataclass(frozen=True)
class Pyramid:
    """Right-hand sides of one component's equations, keyed (delta, eps).

    params holds the non-coordinate ring variables in ring order; it is
    empty for an undeformed pyramid.
    """

    a: tuple
    triangle: ColouredTriangle
    ring: Ring
    entries: dict
    params: tuple

    @property
    def e(self) -> int:
        return len(self.a) + 2

    @property
    def top(self) -> Polynomial:
        return self.entries[2, self.e - 1]

    def zt(self, eps) -> Polynomial:
        """z_eps + t_eps, where t_eps = 0 whenever the ring lacks it."""
        v = self.ring.var(zname(eps))
        if tname(eps) in self.ring.index:
            v = v + self.ring.var(tname(eps))
        return v

    def lhs(self, delta, eps) -> Polynomial:
        """Left-hand side z_{delta-1} (z_{eps+1} + t_{eps+1})."""
        return self.ring.var(zname(delta - 1)) * self.zt(eps + 1)

    def equations(self):
        """All (lhs, rhs) pairs, by increasing span, left to right."""
        e = self.e
        for span in range(e - 2):
            for delta in range(2, e - span):
                yield self.lhs(delta, delta + span), \
                    self.entries[delta, delta + span]


def _validate(a, t):
    a = _check_entries(a)
    if len(a) < 2:
        raise InvalidEntry("need at least two entries (e >= 4)")
    e = len(a) + 2
    if (t.delta, t.eps) != (2, e - 1):
        raise ValueError("triangle lines %d..%d do not match e = %d"
                         % (t.delta, t.eps, e))
    return a, e


def _absent_check(a, data):
    for eps in sorted(data.k):
        if a[eps - 2] < data.k[eps]:
            raise Absent("a_%d = %d < k_%d = %d"
                         % (eps, a[eps - 2], eps, data.k[eps]))


def _run_recursion(e, ext, bottom, corner):
    entries = {}
    for eps in range(2, e):
        entries[eps, eps] = bottom(eps)
    for span in range(1, e - 2):
        for delta in range(2, e - span):
            eps = delta + span
            num = entries[delta, eps - 1] * entries[delta + 1, eps]
            div = corner(delta, eps) if (delta, eps) in ext \
                else entries[delta + 1, eps - 1]
            entries[delta, eps] = num.div_exact(div)
    return entries


def component_pyramid(a, t):
    """The undeformed pyramid: equations of the cone itself.

    Bottom entries are z_eps^{a_eps} and the top entry works out to the
    product over all lines of (z_beta^{a_beta - k_beta})^{alpha_beta}.
    """
    a, e = _validate(a, t)
    data = triangle_data(t, check=False)
    _absent_check(a, data)
    R = coordinate_ring(e)
    z = {k: R.var(zname(k)) for k in range(1, e + 1)}
    entries = _run_recursion(e, t.extended_black(),
                             lambda eps: z[eps] ** a[eps - 2],
                             lambda delta, eps: z[delta] * z[eps])
    return Pyramid(tuple(a), t, R, entries, ())


def deformed_component_family(a, t):
    """The deformed pyramid over the component's parameter space.

    Each line beta contributes parameters st<beta>_1 .. up to degree
    a_beta - k_beta; an interior line with alpha_beta = 1 contributes
    t<beta> as well.  Bottom entries read, with S the perturbed power
    z^{a-k} + st_1 z^{a-k-1} + ... + st_{a-k},

        (z_eps + t_eps)^{alpha_{eps-1}} * S * z_eps^{alpha_{eps+1}}
                                                  if alpha_eps = 1,
        S * z_eps^{k_eps}                         if alpha_eps > 1,

    with alpha taken as 0 outside 2..e-1 and t_eps = 0 where absent.
    Every parameter set to zero recovers component_pyramid(a, t).
    """
    a, e = _validate(a, t)
    data = triangle_data(t, check=False)
    _absent_check(a, data)
    names = [zname(k) for k in range(1, e + 1)]
    for eps in range(2, e):
        names += [stname(eps, m)
                  for m in range(1, a[eps - 2] - data.k[eps] + 1)]
        if 3 <= eps <= e - 2 and data.alpha[eps] == 1:
            names.append(tname(eps))
    R = ring_from_names(names)
    z = {k: R.var(zname(k)) for k in range(1, e + 1)}

    def zt(eps):
        v = z[eps]
        if tname(eps) in R.index:
            v = v + R.var(tname(eps))
        return v

    def bottom(eps):
        d = a[eps - 2] - data.k[eps]
        s = z[eps] ** d
        for m in range(1, d + 1):
            s = s + R.var(stname(eps, m)) * z[eps] ** (d - m)
        if data.alpha[eps] == 1:
            return (zt(eps) ** data.alpha.get(eps - 1, 0) * s
                    * z[eps] ** data.alpha.get(eps + 1, 0))
        return s * z[eps] ** data.k[eps]

    entries = _run_recursion(e, t.extended_black(), bottom,
                             lambda delta, eps: z[delta] * zt(eps))
    return Pyramid(tuple(a), t, R, entries, tuple(R.names[e:]))


def versal_coordinates(p, eps):
    """Pull-back of the base coordinates s_eps^(1..a_eps-1) to p's ring.

    Dividing P_{eps,eps} by its factor z_eps + t_eps leaves a monic
    polynomial of degree a_eps - 1 in z_eps whose coefficient list is
    exactly how the big deformation's coordinates restrict to this
    component.  Returns the list [s^(1), ..., s^(a_eps-1)].
    """
    if not 2 <= eps <= p.e - 1:
        raise ValueError("eps = %d outside 2..%d" % (eps, p.e - 1))
    t_eps = p.zt(eps) - p.ring.var(zname(eps))
    q, rem = p.entries[eps, eps].div_rem_in_var(zname(eps), -t_eps)
    if not rem.is_zero():
        raise NotDivisible("z%d + t%d does not divide P_%d,%d"
                           % (eps, eps, eps, eps))
    cs = q.coeffs_in_var(zname(eps))
    d = p.a[eps - 2] - 1
    return [cs.get(d - m, p.ring.zero()) for m in range(1, d + 1)]
