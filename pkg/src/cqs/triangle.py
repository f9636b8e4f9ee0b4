"""Sparse coloured triangles of dots and their combinatorial data.

A coloured triangle with vertex (delta, eps) consists of the dots
(a, b) with delta <= a, b <= eps and b >= a + 2, each black or white;
we store the black set.  Row b - a = 2 is the bottom row, the single
dot (delta, eps) the vertex, and the height is eps - delta - 1.  The
*extended* triangle adds the always-black base row (a, a + 1).  The
line l_k through index k consists of all dots with a coordinate equal
to k.

A triangle is sparse when every sub-triangle (itself included) contains
at most height-many black dots, with equality exactly when the
sub-triangle's vertex is black.  Sparse triangles of height h are
counted by the Catalan number C_{h+1} and biject with polygon
subdivisions; they index the reduced components of the deformation
space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import re


class NotSparse(ValueError):
    """The operation needs a sparse triangle."""


class IndexOutOfRange(ValueError):
    """Blow-up or blow-down index outside the allowed range."""


class NotBlowDownable(ValueError):
    """Blowing down at this index is not possible."""


def _shift_set(black, s):
    return frozenset((a + s, b + s) for a, b in black)


class ColouredTriangle:
    __slots__ = ("delta", "eps", "black")

    def __init__(self, delta, eps, black=()):
        if eps < delta:
            raise ValueError("need delta <= eps")
        black = frozenset(tuple(d) for d in black)
        for a, b in black:
            if not (delta <= a and b <= eps and b >= a + 2):
                raise ValueError("dot (%d,%d) outside triangle (%d,%d)"
                                 % (a, b, delta, eps))
        self.delta = delta
        self.eps = eps
        self.black = black

    @property
    def height(self):
        return self.eps - self.delta - 1

    def dots(self):
        """All dot positions, bottom row first, left to right."""
        out = []
        for span in range(2, self.eps - self.delta + 1):
            for a in range(self.delta, self.eps - span + 1):
                out.append((a, a + span))
        return out

    def extended_black(self):
        base = {(a, a + 1) for a in range(self.delta, self.eps)}
        return self.black | base

    def sub(self, a, b):
        """Sub-triangle with vertex (a, b), keeping the black dots inside."""
        if not (self.delta <= a <= b <= self.eps):
            raise ValueError("sub-triangle out of range")
        inside = frozenset(d for d in self.black if a <= d[0] and d[1] <= b)
        return ColouredTriangle(a, b, inside)

    def line_black(self, k, extended=True):
        """Black dots on the line l_k."""
        src = self.extended_black() if extended else self.black
        return {d for d in src if d[0] == k or d[1] == k}

    def is_sparse(self):
        for a in range(self.delta, self.eps - 1):
            for b in range(a + 2, self.eps + 1):
                cnt = sum(1 for p, q in self.black if a <= p and q <= b)
                h = b - a - 1
                if cnt > h:
                    return False
                if (cnt == h) != ((a, b) in self.black):
                    return False
        return True

    # -- text format and drawing ----------------------------------------

    def format(self):
        dots = "".join("(%d,%d)" % d for d in sorted(self.black))
        return "%d,%d;black=%s" % (self.delta, self.eps, dots)

    _FMT = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*"
                      r"(?:;\s*black\s*=\s*((?:\(\s*\d+\s*,\s*\d+\s*\))*)\s*)?$")

    @classmethod
    def parse(cls, text):
        m = cls._FMT.match(text)
        if m is None:
            raise ValueError("cannot parse triangle %r" % text)
        delta, eps = int(m.group(1)), int(m.group(2))
        black = []
        if m.group(3):
            for pair in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", m.group(3)):
                black.append((int(pair[0]), int(pair[1])))
        return cls(delta, eps, black)

    def ascii_art(self, extended=False):
        low = 1 if extended else 2
        top = self.eps - self.delta
        if top < low:
            return "(empty)"
        rows = []
        ext = self.extended_black()
        for span in range(top, low - 1, -1):
            cells = []
            for a in range(self.delta, self.eps - span + 1):
                d = (a, a + span)
                cells.append("*" if (d in self.black or (extended and d in ext and span == 1)) else "o")
            rows.append(" " * (span - low) + " ".join(cells))
        return "\n".join(rows)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, ColouredTriangle)
                and (self.delta, self.eps, self.black)
                == (other.delta, other.eps, other.black))

    def __hash__(self):
        return hash((self.delta, self.eps, self.black))

    def __repr__(self):
        return "ColouredTriangle(%r)" % self.format()


@lru_cache(maxsize=None)
def _sparse_sets(h):
    """Black sets of all sparse triangles with vertex (2, h+3).

    Follows the Segner-style decomposition by the highest black dot
    (2, beta) on l_2: the part above l_beta is empty, the triangles
    (3, beta) and (beta, eps) are free, and the rest of l_2 is forced.
    """
    if h <= 0:
        return (frozenset(),)
    eps = h + 3
    out = []
    for B in _sparse_sets(h - 1):        # nothing black on l_2
        out.append(_shift_set(B, 1))
    for beta in range(4, eps + 1):
        for A in _sparse_sets(beta - 4):
            As = _shift_set(A, 1)                 # sits at (3, beta)
            for B in _sparse_sets(eps - beta - 1):
                cur = set(As) | set(_shift_set(B, beta - 2)) | {(2, beta)}
                for gamma in range(beta - 1, 3, -1):
                    inside = sum(1 for p, q in cur if gamma < q <= beta)
                    if inside == beta - gamma:
                        cur.add((2, gamma))
                out.append(frozenset(cur))
    return tuple(out)


def enumerate_sparse(height, delta=2):
    """All sparse triangles of the given height with vertex
    (delta, delta + height + 1), in the decomposition order."""
    return [ColouredTriangle(delta, delta + height + 1, _shift_set(B, delta - 2))
            for B in _sparse_sets(height)]


@dataclass(frozen=True)
class TriangleData:
    """Weights of the black dots and the derived alpha and k numbers."""
    weights: dict
    alpha: dict
    k: dict


def triangle_data(t, check=True):
    """Dot weights, alpha_eps and k_eps of a sparse triangle.

    The weight of a black dot is one plus the total weight in the open
    sector above it; alpha_eps is one plus the total weight above the
    line l_eps; k_eps counts the black dots on l_eps in the extended
    triangle, minus one when alpha_eps > 1.

    The formulas make sense for arbitrary colourings; pass check=False
    to skip the sparsity gate (the numbers then carry no geometric
    meaning, but downstream constructions can run and fail honestly).
    """
    if check and not t.is_sparse():
        raise NotSparse(t.format())
    weights = {}

    def w(dot):
        if dot not in weights:
            a, b = dot
            weights[dot] = 1 + sum(w(d) for d in t.black
                                   if d[0] < a and d[1] > b)
        return weights[dot]

    for d in t.black:
        w(d)
    alpha = {}
    k = {}
    ext = t.extended_black()
    for e in range(t.delta, t.eps + 1):
        alpha[e] = 1 + sum(weights[d] for d in t.black if d[0] < e < d[1])
        online = sum(1 for d in ext if d[0] == e or d[1] == e)
        k[e] = online - 1 if alpha[e] > 1 else online
    return TriangleData(weights, alpha, k)


def alpha_by_intersections(t):
    """Recompute alpha by the rule alpha_eps = alpha_beta + alpha_gamma,
    where (beta, eps), (eps, gamma) are the highest black dots on the two
    half-lines of l_eps (extended) and (beta, gamma) must be black.

    Used as an independent cross-check of triangle_data.
    """
    data = triangle_data(t)
    ext = t.extended_black()
    alpha = {}
    for e in range(t.delta, t.eps + 1):
        above = [d for d in t.black if d[0] < e < d[1]]
        if not above:
            alpha[e] = 1
            continue
        left = [d[0] for d in ext if d[1] == e]
        right = [d[1] for d in ext if d[0] == e]
        if not left or not right:
            raise NotSparse("no intersection dots at %d" % e)
        beta, gamma = min(left), max(right)
        if (beta, gamma) not in t.black:
            raise NotSparse("(%d,%d) should be black" % (beta, gamma))
        alpha[e] = data.alpha[beta] + data.alpha[gamma]
    return alpha


def blow_up(t, idx):
    """Insert a new, dot-free line l_idx, shifting indices >= idx up.

    For an interior index the old base dot (idx-1, idx) turns into the
    real black dot (idx-1, idx+1) of the result.
    """
    lo, hi = t.delta, t.eps + 1
    if not lo <= idx <= hi:
        raise IndexOutOfRange("blow-up index %d outside [%d,%d]" % (idx, lo, hi))

    def s(b):
        return b if b < idx else b + 1

    black = {(s(a), s(b)) for a, b in t.black}
    if lo < idx < hi:
        black.add((idx - 1, idx + 1))
    return ColouredTriangle(t.delta, t.eps + 1, black)


def blow_down(t, idx):
    """Inverse of blow_up: remove the line l_idx.

    Possible when l_idx carries no black dots and, for an interior
    index, the dot (idx-1, idx+1) is black.
    """
    lo, hi = t.delta, t.eps
    if not lo <= idx <= hi:
        raise IndexOutOfRange("blow-down index %d outside [%d,%d]" % (idx, lo, hi))
    if t.line_black(idx, extended=False):
        raise NotBlowDownable("black dots on l_%d" % idx)
    black = set(t.black)
    if lo < idx < hi:
        if (idx - 1, idx + 1) not in black:
            raise NotBlowDownable("dot (%d,%d) is white" % (idx - 1, idx + 1))
        black.remove((idx - 1, idx + 1))

    def s(b):
        return b if b < idx else b - 1

    return ColouredTriangle(t.delta, t.eps - 1, {(s(a), s(b)) for a, b in black})


def to_subdivision(t):
    """The polygon subdivision matching a sparse triangle.

    Vertices of the polygon are '*', delta, delta+1, ..., eps in cyclic
    order.  Every black dot gives a diagonal; the subdivision is
    completed by the diagonals from '*' to every index not strictly
    under a black dot.  Returns a frozenset of diagonals, each a tuple.
    """
    if not t.is_sparse():
        raise NotSparse(t.format())
    diags = {(a, b) for a, b in t.black}
    for v in range(t.delta + 1, t.eps):
        if not any(a < v < b for a, b in t.black):
            diags.add(("*", v))
    return frozenset(diags)


def from_subdivision(delta, eps, diags):
    """Inverse of to_subdivision: keep the diagonals avoiding '*'."""
    black = {d for d in diags if d[0] != "*"}
    return ColouredTriangle(delta, eps, black)
