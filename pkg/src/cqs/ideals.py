"""Exact Groebner bases over the rationals, sized for desk-scale ideals.

The monomial order lives in the Ring (graded revlex, optionally with a
leading elimination block), so packed keys compare correctly as plain
integers and all the machinery here works on term dictionaries.  The
completion is Buchberger's algorithm with the product and chain
criteria and normal pair selection; every surviving remainder is
rescaled to integer coefficients with content 1, which keeps the
rationals from snowballing while staying exact.  The published basis
is reduced and monic, hence
unique for the ideal and order; normal forms against it are canonical.

Everything is capped.  A computation that exceeds the configured basis
size, degree or pair budget raises ResourceLimit instead of grinding
on; callers report that as "inconclusive", never as success or silent
failure.  Caps can be overridden through the CQS_GB_LIMITS environment
variable, e.g. ``CQS_GB_LIMITS=max_basis=200,max_pairs=10000``.
"""

from __future__ import annotations

import heapq
import math
import os
from fractions import Fraction

from .ring import Polynomial, Ring, _normc


class ResourceLimit(RuntimeError):
    """A Groebner computation hit a configured cap."""


DEFAULT_LIMITS = {
    "max_basis": 4000,
    "max_degree": 120,
    "max_pairs": 2_000_000,
}


def _env_limits():
    raw = os.environ.get("CQS_GB_LIMITS", "")
    out = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in DEFAULT_LIMITS:
            raise ValueError("unknown limit %r in CQS_GB_LIMITS" % key)
        out[key] = int(val)
    return out


def effective_limits(limits=None):
    merged = dict(DEFAULT_LIMITS)
    merged.update(_env_limits())
    if limits:
        for key in limits:
            if key not in DEFAULT_LIMITS:
                raise ValueError("unknown limit %r" % key)
        merged.update(limits)
    return merged


def _strip_content(p):
    """Scale to integer coefficients, content 1, positive leading sign."""
    if p.is_zero():
        return p
    coeffs = list(p.terms.values())
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in coeffs:
        num = math.gcd(num, int(c * den))
    scale = Fraction(den, num)
    if p.terms[p.lt_key()] < 0:
        scale = -scale
    return p * scale


def _monic(p):
    return p * (Fraction(1) / Fraction(p.lc()))


class _Heap:
    """Max-heap of monomial keys with lazy deduplication."""

    __slots__ = ("_h", "_seen")

    def __init__(self):
        self._h = []
        self._seen = set()

    def push(self, key):
        if key not in self._seen:
            self._seen.add(key)
            heapq.heappush(self._h, -key)

    def pop_max(self):
        key = -heapq.heappop(self._h)
        self._seen.discard(key)
        return key

    def __bool__(self):
        return bool(self._h)


def _reduce_terms(ring, terms, basis, top_only=False):
    """Divide a term dict by ``basis`` (list of (ltkey, lc, terms)).

    Returns the remainder dict.  With ``top_only`` the division stops as
    soon as the leading term has no divisor, leaving the tail untouched;
    that is all Buchberger needs and is much cheaper on long tails.

    The basis entries are expected to carry integer coefficients with a
    positive leading one.  Division then runs on integers throughout:
    whenever a leading coefficient does not divide the term being
    cancelled, the whole work polynomial is rescaled (pseudo-division),
    and the accumulated scale is divided out of every emitted term at
    the end.  The result is the exact remainder of the input, not of a
    multiple of it.
    """
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        work = dict(terms)
    else:
        work = {k: int(c * den) for k, c in terms.items()}
    heap = _Heap()
    for k in work:
        heap.push(k)
    out = {}
    scale = 1
    div_key = ring.div_key
    mul_key = ring.mul_key
    while heap:
        k = heap.pop_max()
        c = work.pop(k, 0)
        if not c:
            continue
        for ltk, lc, gterms in basis:
            q = div_key(k, ltk)
            if q is None:
                continue
            if lc != 1 and c % lc:
                mult = lc // math.gcd(c, lc)
                if mult != 1:
                    for kk in work:
                        work[kk] *= mult
                    scale *= mult
                    c *= mult
            factor = c // lc if lc != 1 else c
            for tk, tc in gterms.items():
                if tk == ltk:
                    continue
                nk = mul_key(tk, q)
                nc = work.get(nk, 0) - factor * tc
                if nc:
                    work[nk] = nc
                    heap.push(nk)
                else:
                    work.pop(nk, None)
            break
        else:
            out[k] = (c, scale)
            if top_only:
                for kk, cc in work.items():
                    if cc:
                        out[kk] = (cc, scale)
                break
    result = {}
    for k, (c, s) in out.items():
        sd = s * den
        result[k] = c if sd == 1 else _normc(Fraction(c, sd))
    return result


def _as_triple(p):
    k = p.lt_key()
    return (k, p.terms[k], p.terms)


class IdealHandle:
    """An ideal with its reduced Groebner basis, immutable once built.

    Use :func:`groebner_basis` to construct one; the constructor itself
    runs the completion.

    ``truncate=(weights, bound)`` asks for a degree-truncated basis of
    an ideal whose generators are all homogeneous under the given
    variable weights (one per ring variable, checked).  Passing None
    for the weights falls back to the ring's own grading, which for a
    weighted ring is the natural choice.  Only S-pairs with weighted
    lcm degree up to the bound are completed, which is exactly what
    membership tests below the bound need: a homogeneous polynomial of
    degree d is only ever reduced by basis elements of degree at most
    d.  normal_form then refuses input carrying any term above the
    bound, since its result would prove nothing there.
    """

    __slots__ = ("ring", "gens", "gb", "truncate", "_reducers")

    def __init__(self, gens, limits=None, _select="normal", truncate=None):
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("need at least one nonzero generator")
        ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators from different rings")
        self.ring = ring
        self.gens = tuple(gens)
        if truncate is not None:
            weights, bound = truncate
            if weights is not None:
                weights = tuple(weights)
                if len(weights) != ring.nvars:
                    raise ValueError("one weight per ring variable required")
            for g in gens:
                if len({self._wdeg(weights, k) for k in g.terms}) != 1:
                    raise ValueError("generators must be homogeneous for "
                                     "the truncation weights")
            truncate = (weights, bound)
        self.truncate = truncate
        self.gb = self._buchberger(effective_limits(limits), _select)
        self._reducers = [_as_triple(_strip_content(g)) for g in self.gb]

    def _wdeg(self, weights, key):
        if weights is None:
            return self.ring.tdeg(key)
        exps = self.ring.unpack(key)
        return sum(e * w for e, w in zip(exps, weights))

    # -- completion ----------------------------------------------------

    def _buchberger(self, limits, select):
        ring = self.ring
        weights = bound = None
        if self.truncate is not None:
            weights, bound = self.truncate
        G = []
        lt = []
        exps = []
        triples = []
        pairs = {}   # (i, j) with i > j -> packed lcm; queue of live pairs
        heap = []

        def sortkey(i, j, lcm):
            # normal selection pops the smallest lcm, ties by pair index
            return (lcm, i, j) if select == "normal" else (i, j, lcm)

        def update(t):
            """Queue pairs of element t per Gebauer and Moeller.

            The M criterion drops a new pair when another new lcm
            properly divides its lcm; F keeps one pair per lcm value,
            none when some pair of the class has coprime leads; B
            drops old pairs whose lcm is a proper multiple of the new
            lead.  A truncation bound filters the survivors only, so
            no pruning decision ever depends on a skipped pair.
            """
            texp, tlt = exps[t], lt[t]
            clcm = [ring.pack(tuple(map(max, texp, exps[i])))
                    for i in range(t)]
            cand = sorted((clcm[i], i) for i in range(t))
            kept = []
            for lcm_i, i in cand:
                for lcm_k, _ in kept:
                    if lcm_k != lcm_i and ring.div_key(lcm_i,
                                                       lcm_k) is not None:
                        break
                else:
                    kept.append((lcm_i, i))
            chosen = []
            pos = 0
            while pos < len(kept):
                end = pos
                while end < len(kept) and kept[end][0] == kept[pos][0]:
                    end += 1
                group = kept[pos:end]
                lcm_v = group[0][0]
                if not any(lcm_v == ring.mul_key(tlt, lt[i])
                           for _, i in group):
                    chosen.append(group[0])
                pos = end
            for (i, j), lcm_ij in list(pairs.items()):
                if (ring.div_key(lcm_ij, tlt) is not None
                        and lcm_ij != clcm[i] and lcm_ij != clcm[j]):
                    del pairs[i, j]
            for lcm_v, i in chosen:
                if bound is not None and self._wdeg(weights, lcm_v) > bound:
                    continue
                pairs[t, i] = lcm_v
                heapq.heappush(heap, sortkey(t, i, lcm_v))

        def append(h):
            G.append(h)
            lt.append(h.lt_key())
            exps.append(ring.unpack(h.lt_key()))
            triples.append(_as_triple(h))
            if len(G) > limits["max_basis"]:
                raise ResourceLimit("basis size cap exceeded (%d)" % len(G))
            update(len(G) - 1)

        for g in self.gens:
            g = _strip_content(g)
            if g not in G:
                append(g)
        processed = 0
        while heap:
            key = heapq.heappop(heap)
            if select == "normal":
                lcm, i, j = key
            else:
                i, j, lcm = key
            if pairs.pop((i, j), None) is None:
                continue
            processed += 1
            if processed > limits["max_pairs"]:
                raise ResourceLimit("pair budget exhausted (%d)" % processed)
            s = self._spoly(G[i], G[j], lcm)
            rem = _reduce_terms(ring, s.terms, triples, top_only=True)
            if not rem:
                continue
            rem = _reduce_terms(ring, rem, triples)
            h = _strip_content(Polynomial(ring, rem))
            if ring.tdeg(h.lt_key()) > limits["max_degree"]:
                raise ResourceLimit("degree cap exceeded by %s" % h.lt_key())
            append(h)
        return self._interreduce(G)

    def _spoly(self, f, g, lcm):
        ring = self.ring
        mf = ring.div_key(lcm, f.lt_key())
        mg = ring.div_key(lcm, g.lt_key())
        return (Polynomial(ring, {mf: g.lc()}) * f
                - Polynomial(ring, {mg: f.lc()}) * g)

    def _interreduce(self, G):
        ring = self.ring
        # minimal basis: drop g when some other lead divides its lead;
        # among equal leads only the earliest survives
        keep = []
        for i, g in enumerate(G):
            ki = g.lt_key()
            redundant = False
            for j, h in enumerate(G):
                if j == i or ring.div_key(ki, h.lt_key()) is None:
                    continue
                if h.lt_key() != ki or j < i:
                    redundant = True
                    break
            if not redundant:
                keep.append(g)
        # then reduce every tail against the others
        out = []
        for i, g in enumerate(keep):
            others = [_as_triple(h) for j, h in enumerate(keep) if j != i]
            rem = _reduce_terms(ring, g.terms, others)
            if rem:
                out.append(_monic(Polynomial(ring, rem)))
        out.sort(key=lambda p: p.lt_key())
        return tuple(out)

    # -- queries --------------------------------------------------------

    def normal_form(self, f):
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        if self.truncate is not None:
            weights, bound = self.truncate
            for key in f.terms:
                if self._wdeg(weights, key) > bound:
                    raise ValueError("normal form above the truncation "
                                     "bound is inconclusive")
        return Polynomial(self.ring, _reduce_terms(self.ring, f.terms,
                                                   self._reducers))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def __repr__(self):
        return "IdealHandle(%d gens, gb size %d)" % (len(self.gens),
                                                     len(self.gb))


def groebner_basis(gens, limits=None, select="normal"):
    """Reduced Groebner basis handle for the given generators."""
    return IdealHandle(gens, limits=limits, _select=select)


def normal_form(f, handle):
    return handle.normal_form(f)


def radical_member_bounded(f, handle, max_pow):
    """Smallest k <= max_pow with f^k in the ideal, else None (unknown).

    Powers are reduced incrementally, so the k-th step works on the
    normal form of the previous one rather than on f^k itself.
    """
    if max_pow < 1:
        raise ValueError("max_pow must be at least 1")
    p = handle.ring.one()
    for k in range(1, max_pow + 1):
        p = handle.normal_form(p * f)
        if p.is_zero():
            return k
    return None


def saturate_by_element(handle, f, limits=None):
    """The saturation (I : f^infinity) as a new handle over the same ring.

    Classic elimination: adjoin an inverse variable y with y*f = 1, take
    a basis in an order eliminating y, and keep what does not involve y.
    """
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    ring = handle.ring
    aux = "y"
    while aux in ring.names:
        aux += "y"
    ext = Ring((aux,) + ring.names, elim=(aux,))
    gens = [g.map_to(ext) for g in handle.gens]
    gens.append(ext.var(aux) * f.map_to(ext) - ext.one())
    eliminated = [g for g in IdealHandle(gens, limits=limits).gb
                  if aux not in g.variables()]
    if not eliminated:
        raise ValueError("saturation is the unit ideal or empty")
    return IdealHandle([g.map_to(ring) for g in eliminated], limits=limits)


def ideal_equal(h1, h2):
    """Mutual membership of generators (hence equality of the ideals)."""
    return (all(h1.contains(g) for g in h2.gens)
            and all(h2.contains(g) for g in h1.gens))
