"""One pyramid of equations over the joint base of all components.

Every sparse colouring deforms the toric equations into a family over
its own parameters.  Those families glue: over the parameter ring of a
SigmaContext the pair (delta, eps) carries the equation

    L_{delta-1} R_{eps+1} = P_{delta,eps},    2 <= delta <= eps <= e-1,

with L_eps = z_eps - l_eps and R_eps = z_eps - r_eps.  The bottom
entries are the deformed powers Z_eps^(00); a higher entry is the sum,
over all alpha-trees of height eps - delta, of the product of the
tree's Z- and sigma-factors read at the positions delta..eps.

The product recursion of the component pyramids survives only as a
congruence: L_delta R_eps P_{delta,eps} - P_{delta,eps-1} P_{delta+1,eps}
lies in the ideal spanned by the smaller-span equations together with
the relations among the parameters.  Those relations, the generators
of the base ideal, come in three families: (l_eps - r_eps)
sigma_eps^(11) at interior positions, and the lambda and rho
coefficients obtained by evaluating an entry at z = l resp. z = r.
verify_congruence checks the congruence with exact normal forms; a
nonzero remainder raises instead of passing silently.

When every entry a_eps equals 2 (the cone over the rational normal
curve) the tree sums collapse to short closed forms, implemented here
next to the identities they satisfy.  one_chart translates everything
to the coordinates adapted to corner deformations (t_eps, st_eps_m),
in which the glued equations of the smallest interesting case e = 5
can be written out in full (glued_family_e5).
"""

from __future__ import annotations

import weakref
from math import comb

from .ideals import IdealHandle, effective_limits
from .lattice import exponent_seqs
from .ring import (Ring, lname, ring_from_names, rname, sname, stname,
                   tname, zname)
from .trees import (ModeMismatch, enumerate_alpha_gamma_trees,
                    enumerate_alpha_trees, height, symbolic_term)


class CongruenceFails(ArithmeticError):
    """The glueing congruence left a nonzero normal form."""

    def __init__(self, delta, eps, remainder):
        self.delta = delta
        self.eps = eps
        self.remainder = remainder
        super().__init__(
            "congruence fails at (%d, %d): remainder has %d terms"
            % (delta, eps, len(remainder)))


class NotRnc(ValueError):
    """A closed form was asked for outside the all-twos case."""


# ---------------------------------------------------------------------------
# the glued pyramid

_entry_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _check_pair(ctx, delta, eps):
    if not 2 <= delta <= eps <= ctx.e - 1:
        raise ValueError("pair (%d, %d) outside 2 <= delta <= eps <= %d"
                         % (delta, eps, ctx.e - 1))


def evaluate_term(ctx, factors, eps):
    """Multiply out a factor list from trees.symbolic_term.

    The factor at offset d is read at position eps - d, so a tree of
    height h covers the positions eps - h .. eps.
    """
    out = ctx.ring.one()
    for f in factors:
        pos = eps - f.offset
        if f.family == "Z":
            out = out * ctx.z_poly(pos, f.i, f.j)
        else:
            out = out * ctx.sigma_poly(pos, f.i, f.j)
    return out


def pyramid_entry(ctx, delta, eps):
    """The right-hand side P_{delta,eps} of the glued equation.

    Span zero returns the deformed power Z_eps^(00) itself; positive
    spans sum one term per alpha-tree of height eps - delta.
    """
    _check_pair(ctx, delta, eps)
    cache = _entry_cache.setdefault(ctx, {})
    got = cache.get((delta, eps))
    if got is not None:
        return got
    if delta == eps:
        val = ctx.z_poly(eps, 0, 0)
    else:
        val = ctx.ring.zero()
        for tree in enumerate_alpha_trees(eps - delta):
            val = val + evaluate_term(ctx, symbolic_term(tree, "P"), eps)
    cache[delta, eps] = val
    return val


def base_coefficient(ctx, delta, eps, mode):
    """lambda_{delta,eps} or rho_{delta,eps}, summed over the same trees.

    mode "lambda" replaces each Z^(ij) by sigma^(i+1,j), which is what
    evaluating P_{delta,eps} at z_beta = l_beta produces; mode "rho"
    replaces it by sigma^(i,j+1), the value at z_beta = r_beta.  The
    tests confirm both routes agree.
    """
    if mode not in ("lambda", "rho"):
        raise ModeMismatch("base coefficients take mode 'lambda' or 'rho'")
    _check_pair(ctx, delta, eps)
    if delta == eps:
        raise ValueError("base coefficients need positive span")
    val = ctx.ring.zero()
    for tree in enumerate_alpha_trees(eps - delta):
        val = val + evaluate_term(ctx, symbolic_term(tree, mode), eps)
    return val


def base_ideal_gens(ctx):
    """Generators of the base ideal, (e-2)(e-4) in all.

    In order: (l_eps - r_eps) sigma_eps^(11) for interior eps, then the
    lambda coefficients for 2 <= delta < eps <= e-2, then the rho
    coefficients for 3 <= delta < eps <= e-1.
    """
    e = ctx.e
    gens = []
    for eps in range(3, e - 1):
        gens.append((ctx.left_root(eps) - ctx.right_root(eps))
                    * ctx.sigma_poly(eps, 1, 1))
    for delta in range(2, e - 2):
        for eps in range(delta + 1, e - 1):
            gens.append(base_coefficient(ctx, delta, eps, "lambda"))
    for delta in range(3, e - 1):
        for eps in range(delta + 1, e):
            gens.append(base_coefficient(ctx, delta, eps, "rho"))
    return gens


def family_equations(ctx):
    """All ((delta, eps), lhs, rhs) by increasing span, left to right."""
    e = ctx.e
    out = []
    for span in range(e - 2):
        for delta in range(2, e - span):
            eps = delta + span
            lhs = ctx.left_factor(delta - 1) * ctx.right_factor(eps + 1)
            out.append(((delta, eps), lhs, pyramid_entry(ctx, delta, eps)))
    return out


def _window_gens(ctx, delta, eps):
    """Generators of the recursion ideal, split by kind.

    Returns (equations, parameter_gens): every equation of smaller span
    whose positions lie in delta..eps, and the parameter relations of
    that window, namely the interior products (l - r) sigma^(11) plus
    the lambda and rho coefficients of smaller span restricted to their
    usual index ranges.
    """
    e = ctx.e
    span = eps - delta
    eqs = []
    for beta in range(delta, eps + 1):
        for gamma in range(beta, eps + 1):
            if gamma - beta >= span:
                continue
            lhs = ctx.left_factor(beta - 1) * ctx.right_factor(gamma + 1)
            eqs.append(lhs - pyramid_entry(ctx, beta, gamma))
    params = []
    for beta in range(delta, eps + 1):
        if ctx.is_interior(beta):
            params.append((ctx.left_root(beta) - ctx.right_root(beta))
                          * ctx.sigma_poly(beta, 1, 1))
    for beta in range(delta, min(e - 2, eps)):
        for gamma in range(beta + 1, min(e - 2, eps) + 1):
            if gamma - beta < span:
                params.append(base_coefficient(ctx, beta, gamma, "lambda"))
    for beta in range(max(3, delta), eps):
        for gamma in range(beta + 1, eps + 1):
            if gamma - beta < span:
                params.append(base_coefficient(ctx, beta, gamma, "rho"))
    return eqs, params


def glue_ideal(ctx, delta, eps, limits=None):
    """The ideal modulo which the recursion for P_{delta,eps} holds."""
    _check_pair(ctx, delta, eps)
    if eps - delta < 1:
        raise ValueError("the recursion starts at span one")
    eqs, params = _window_gens(ctx, delta, eps)
    return IdealHandle(eqs + params, limits=limits)


def family_grading(ctx):
    """Weights making the whole family quasi-homogeneous.

    The lattice exponent sequences satisfy i_{eps-1} + i_{eps+1}
    = a_eps i_eps and likewise for j, so w_eps = i_eps + j_eps gives
    every equation L_{delta-1} R_{eps+1} = P_{delta,eps} a single
    weighted degree w_{delta-1} + w_{eps+1} once the parameters carry
    w(l_eps) = w(r_eps) = w_eps and w(s_eps_m) = m w_eps.  Returns the
    weight tuple aligned with ctx.ring.names.
    """
    iseq, jseq = exponent_seqs(ctx.a)
    w = {}
    for k in range(1, ctx.e + 1):
        w[zname(k)] = iseq[k - 1] + jseq[k - 1]
    for eps in range(2, ctx.e):
        weps = w[zname(eps)]
        if ctx.is_interior(eps):
            w[lname(eps)] = weps
            w[rname(eps)] = weps
        for m in range(1, ctx.entry(eps)):
            w[sname(eps, m)] = m * weps
    return tuple(w[name] for name in ctx.ring.names)


def _residual(ctx, delta, eps, nf):
    """L_delta R_eps P_{delta,eps} - P_{delta,eps-1} P_{delta+1,eps},
    with nf applied after every product to keep intermediates small."""
    big = nf(ctx.left_factor(delta) * ctx.right_factor(eps))
    big = nf(big * nf(pyramid_entry(ctx, delta, eps)))
    small = nf(nf(pyramid_entry(ctx, delta, eps - 1))
               * nf(pyramid_entry(ctx, delta + 1, eps)))
    return big - small


def verify_congruence(ctx, delta, eps, limits=None):
    """Check one instance of the glueing congruence exactly.

    Everything in sight is homogeneous under family_grading and the
    residual lives in the single weighted degree w_{delta-1} + w_delta
    + w_eps + w_{eps+1}, so the computation moves to a ring graded by
    those weights and the recursion ideal only needs its basis
    completed up to that degree.  The truncated reduction is still
    conclusive both ways: a zero normal form is a membership
    certificate, a nonzero one a counterexample, raised as
    CongruenceFails.
    """
    _check_pair(ctx, delta, eps)
    if eps - delta < 1:
        raise ValueError("the recursion starts at span one")
    eqs, params = _window_gens(ctx, delta, eps)
    weights = family_grading(ctx)
    wz = {name: wt for name, wt in zip(ctx.ring.names, weights)}
    bound = (wz[zname(delta - 1)] + wz[zname(delta)]
             + wz[zname(eps)] + wz[zname(eps + 1)])
    graded = Ring(ctx.ring.names, weights=weights)
    caps = dict(effective_limits(limits))
    caps["max_degree"] = max(caps["max_degree"], bound)
    handle = IdealHandle([g.map_to(graded) for g in eqs + params],
                         limits=caps, truncate=(None, bound))

    def nf(p):
        if p.ring != graded:
            p = p.map_to(graded)
        return handle.normal_form(p)

    rem = _residual(ctx, delta, eps, nf)
    if not rem.is_zero():
        raise CongruenceFails(delta, eps, rem.map_to(ctx.ring))


# ---------------------------------------------------------------------------
# printable term symbols

def term_display(tree):
    """The column symbols of one tree term, as written by hand.

    Columns run left to right from the deepest position; each column
    lists the pairs ij top to bottom, the Z-factor first and below it
    the sigma-factors of nodes further down the column.
    """
    span = height(tree)
    cols: list = [[] for _ in range(span + 1)]
    for f in symbolic_term(tree, "P"):
        cols[span - f.offset].append("%d%d" % (f.i, f.j))
    return tuple(tuple(reversed(c)) for c in cols)


def symbolic_expansion(span):
    """Displays of all terms of a span-`span` entry, in enumeration order."""
    if span < 1:
        raise ValueError("span must be at least one")
    return tuple(term_display(t) for t in enumerate_alpha_trees(span))


def remainder_trees(span):
    """The gamma-trees left over when a span-`span` entry is computed.

    Returns (tree, l) pairs where l counts the nodes of the open chain;
    the remainder term carries the cofactor L_{eps-l}.
    """
    if span < 2:
        return ()
    out = []
    for l in range(2, span + 1):
        out.extend((t, l) for t in enumerate_alpha_gamma_trees(span, l))
    return tuple(out)


# ---------------------------------------------------------------------------
# closed forms over the cone over the rational normal curve

def _require_rnc(ctx):
    if any(entry != 2 for entry in ctx.a):
        raise NotRnc("closed forms need every entry equal to 2")


def rnc_closed_form(ctx, delta, eps):
    """P_{delta,eps} when all a_eps = 2, without tree enumeration.

    Span zero is Z_eps^(00); otherwise the sum collapses to

        Z_delta^(10) Z_eps^(01)
            + sum over 0 < g < eps - delta of
                  sigma_{eps-g}^(11) Z_{delta+g}^(10).
    """
    _require_rnc(ctx)
    _check_pair(ctx, delta, eps)
    if delta == eps:
        return ctx.z_poly(eps, 0, 0)
    val = ctx.z_poly(delta, 1, 0) * ctx.z_poly(eps, 0, 1)
    for g in range(1, eps - delta):
        val = val + ctx.sigma_poly(eps - g, 1, 1) * ctx.z_poly(delta + g, 1, 0)
    return val


def rnc_base_coefficient(ctx, delta, eps, mode):
    """lambda and rho of the all-twos case in closed form."""
    if mode not in ("lambda", "rho"):
        raise ModeMismatch("base coefficients take mode 'lambda' or 'rho'")
    _require_rnc(ctx)
    _check_pair(ctx, delta, eps)
    if delta == eps:
        raise ValueError("base coefficients need positive span")
    def s11(beta):
        return ctx.sigma_poly(beta, 1, 1)

    if mode == "lambda":
        val = ctx.ring.zero()
        for g in range(eps - delta):
            val = val + s11(eps - g) * ctx.sigma_poly(delta + g, 2, 0)
        return val
    val = s11(delta) * ctx.sigma_poly(eps, 0, 2)
    for g in range(1, eps - delta):
        val = val + s11(eps - g) * s11(delta + g)
    return val


def rnc_cube_identity(ctx, eps):
    """Both sides of the exact cube relation at an interior position.

    Returns (cube, combination) with cube = (sigma_eps^(11))^3 and
    combination = sigma_eps^(11) rho_{eps-1,eps+1}
    - sigma_{eps-1}^(11) rho_{eps,eps+1}; the two agree as polynomials
    for 3 < eps < e - 1.  The superficially similar combination ending
    in rho_{eps-1,eps} is not an identity; a test pins its residual.
    """
    _require_rnc(ctx)
    if not 4 <= eps <= ctx.e - 2:
        raise ValueError("the relation needs 3 < eps < e - 1")
    cube = ctx.sigma_poly(eps, 1, 1) ** 3
    combination = (
        ctx.sigma_poly(eps, 1, 1)
        * rnc_base_coefficient(ctx, eps - 1, eps + 1, "rho")
        - ctx.sigma_poly(eps - 1, 1, 1)
        * rnc_base_coefficient(ctx, eps, eps + 1, "rho"))
    return cube, combination


# ---------------------------------------------------------------------------
# the corner-deformation chart

def one_chart(ctx):
    """Coordinates of the chart that gauges every left root to zero.

    Returns (chart, phi).  The chart ring carries the z's, the interior
    shifts t_eps and per position the quotient coefficients st_eps_m
    defined by factoring the bottom polynomial as

        Z_eps^(00) = (z_eps + t_eps)(z^{a-1} + st_1 z^{a-2} + ... + st_{a-1}),

    with t_eps = 0 at the two ends.  phi re-expresses a polynomial of
    ctx.ring in those coordinates: l_eps -> 0, r_eps -> -t_eps and
    s_eps_m -> st_eps_m + t_eps st_eps_{m-1}.
    """
    e = ctx.e
    names = [zname(k) for k in range(1, e + 1)]
    for eps in range(2, e):
        if ctx.is_interior(eps):
            names.append(tname(eps))
        names += [stname(eps, m) for m in range(1, ctx.entry(eps))]
    chart = ring_from_names(names)
    combined = ring_from_names(list(ctx.ring.names) + names)
    subst = {}
    for eps in range(2, e):
        if ctx.is_interior(eps):
            t = combined.var(tname(eps))
            subst[lname(eps)] = combined.zero()
            subst[rname(eps)] = -t
        prev = combined.one()
        for m in range(1, ctx.entry(eps)):
            cur = combined.var(stname(eps, m))
            if ctx.is_interior(eps):
                subst[sname(eps, m)] = cur + t * prev
            else:
                subst[sname(eps, m)] = cur
            prev = cur

    def phi(p):
        return p.map_to(combined).eval_subst(subst).map_to(chart)

    return chart, phi


def deformed_power(chart, eps, m):
    """z_eps^m + st_1 z^{m-1} + ... + st_m in chart coordinates."""
    if m < 0:
        raise ValueError("negative degree")
    z = chart.var(zname(eps))
    val = z ** m
    for k in range(1, m + 1):
        val = val + chart.var(stname(eps, k)) * z ** (m - k)
    return val


def tilde_coefficients(chart, eps, a):
    """The st-coefficients rewritten in the basis of powers of z + t.

    Dividing the bottom polynomial by z instead of z + t leaves the
    monic polynomial (Z^(00) - t st_{a-1}) / z; expanding it as
    sum st~_m (z + t)^{a-1-m} defines st~_0 = 1, ..., st~_{a-1}.  The
    list is produced by repeated synthetic division, so it is exact by
    construction; tilde_binomial gives the closed formula.
    """
    z = chart.var(zname(eps))
    t = chart.var(tname(eps)) if tname(eps) in chart.index else chart.zero()
    top = ((z + t) * deformed_power(chart, eps, a - 1)
           - t * chart.var(stname(eps, a - 1)))
    quotient, rem = top.div_rem_in_var(zname(eps), chart.zero())
    assert rem.is_zero()
    out = []
    for _ in range(a - 1):
        quotient, rem = quotient.div_rem_in_var(zname(eps), -t)
        out.append(rem)
    out.append(quotient)  # the leading coefficient, always 1
    out.reverse()
    return out


def tilde_binomial(chart, eps, a):
    """The closed formula for the same list:

        st~_m = sum over 0 <= k <= m of
                    C(a-2-k, m-k) (-t)^{m-k} st_k,

    with st_0 = 1 and the convention C(n, 0) = 1 for every n."""
    t = chart.var(tname(eps)) if tname(eps) in chart.index else chart.zero()
    sts = [chart.one()] + [chart.var(stname(eps, m)) for m in range(1, a)]
    out = []
    for m in range(a):
        val = chart.zero()
        for k in range(m + 1):
            n, d = a - 2 - k, m - k
            if d == 0:
                c = 1
            elif n < d:
                c = 0
            else:
                c = comb(n, d)
            if c:
                val = val + c * (-t) ** d * sts[k]
        out.append(val)
    return out


def glued_family_e5(ctx):
    """The six equations of the glued family at e = 5, written out.

    Returns (chart, phi, equations, base) where equations lists
    ((delta, eps), lhs, rhs) in chart coordinates and base holds the
    three products generating the base ideal there.  The third
    right-hand side uses the combination Z~ = Z^(a3-1) + t_3 Z^(a3-2),
    which satisfies z_3 Z~ = (z_3 + t_3) Z^(a3-1) - t_3 st3_{a3-1}.
    """
    if ctx.e != 5:
        raise ValueError("the written-out family is the e = 5 case")
    chart, phi = one_chart(ctx)
    a2, a3, a4 = ctx.a
    z = {k: chart.var(zname(k)) for k in range(1, 6)}
    t3 = chart.var(tname(3))
    s3_top = chart.var(stname(3, a3 - 1))

    def P(eps, m):
        return deformed_power(chart, eps, m)

    tilde3 = P(3, a3 - 1) + t3 * P(3, a3 - 2)
    equations = [
        ((2, 4), z[1] * z[5],
         P(2, a2 - 1) * P(3, a3 - 2) * P(4, a4 - 1)
         + s3_top * P(2, a2 - 2) * P(3, a3 - 1) * P(4, a4 - 2)),
        ((2, 3), z[1] * z[4], P(2, a2 - 1) * P(3, a3 - 1)),
        ((3, 4), z[2] * z[5], tilde3 * P(4, a4 - 1)),
        ((2, 2), z[1] * (z[3] + t3), z[2] * P(2, a2 - 1)),
        ((3, 3), z[2] * z[4], P(3, a3 - 1) * (z[3] + t3)),
        ((4, 4), z[3] * z[5], z[4] * P(4, a4 - 1)),
    ]
    base = [
        chart.var(stname(2, a2 - 1)) * s3_top,
        t3 * s3_top,
        s3_top * chart.var(stname(4, a4 - 1)),
    ]
    return chart, phi, equations, base
