"""Exact sparse multivariate polynomial arithmetic over the rationals.

A monomial is a single packed Python integer.  The packing is chosen so
that comparing two packed keys with ``<`` is exactly the graded reverse
lexicographic comparison of the monomials (block-graded for elimination
orders).  For variables v_1 > v_2 > ... > v_n with exponents
(e_1, ..., e_n) a key holds, from the most significant field down,

    [total degree] [CMAX - e_n] [CMAX - e_{n-1}] ... [CMAX - e_1]

Integer comparison then compares total degree first and, on ties, finds
the *last* variable with differing exponent and prefers the smaller one,
which is degrevlex.  Each exponent field is 16 bits wide with a guard
bit, so a product of monomials is one integer addition (minus the base
key) and a divisibility test is one subtraction plus a guard-bit mask.
Exponents must stay below 32767; nothing in this package gets anywhere
near that.

For an elimination order the variables are split into priority blocks,
each block getting its own degree field followed by its own complement
fields.  All packing stays linear in the exponents, so the same
add/subtract tricks work unchanged.

Coefficients are Python ints or fractions.Fraction; a Fraction with
denominator 1 is normalised back to int.  Polynomials are immutable by
convention: no public method mutates ``terms``.
"""

from __future__ import annotations

from fractions import Fraction
import re

FIELD_BITS = 16
EXP_MASK = (1 << 15) - 1
CMAX = EXP_MASK
DEG_BITS = 32
DEG_MASK = (1 << 31) - 1


class NotDivisible(ArithmeticError):
    """Raised by exact division when the quotient does not exist."""


class RootInvolvesVar(ValueError):
    """Raised when a synthetic-division root depends on the division variable."""


def _normc(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Ring:
    """A polynomial ring with a fixed variable order and monomial order.

    ``names`` lists the variables from largest to smallest.  With
    ``elim`` given, those variables form a leading block and the order
    becomes the block elimination order (graded revlex inside each
    block); otherwise it is plain graded revlex.  ``weights`` turns the
    grading into a weighted one: the degree fields accumulate w_i per
    unit of exponent, so key comparison becomes weighted degrevlex and
    ``tdeg`` reports the weighted degree.  Weights must be positive so
    that the result is still a monomial order.
    """

    __slots__ = ("names", "index", "nvars", "blocks", "weights", "_blockof",
                 "_shift", "_degshift", "_adders", "BASE", "GUARDS",
                 "_varkey")

    def __init__(self, names, elim=None, weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {s: i for i, s in enumerate(names)}
        self.nvars = len(names)
        if weights is not None:
            weights = tuple(weights)
            if len(weights) != self.nvars:
                raise ValueError("need one weight per variable")
            for w in weights:
                if not isinstance(w, int) or w < 1:
                    raise ValueError("weights must be positive integers")
        self.weights = weights
        if elim:
            eset = set(elim)
            if not eset <= set(names):
                raise ValueError("elimination block contains unknown variables")
            b1 = tuple(i for i, s in enumerate(names) if s in eset)
            b2 = tuple(i for i, s in enumerate(names) if s not in eset)
            self.blocks = (b1, b2) if b2 else (b1,)
        else:
            self.blocks = (tuple(range(self.nvars)),)

        # Assign bit positions, building from the least significant end:
        # blocks in reverse priority, inside a block the complement fields
        # in (global) variable order v_1 first, then the block degree.
        shift = [0] * self.nvars
        blockof = [0] * self.nvars
        degshift = []
        pos = 0
        for bi in range(len(self.blocks) - 1, -1, -1):
            for vi in self.blocks[bi]:
                shift[vi] = pos
                blockof[vi] = bi
                pos += FIELD_BITS
            degshift.append(pos)
            pos += DEG_BITS
        degshift.reverse()
        self._shift = tuple(shift)
        self._degshift = tuple(degshift)
        self._blockof = tuple(blockof)
        self._adders = tuple(
            ((weights[i] if weights else 1) << degshift[blockof[i]])
            - (1 << shift[i]) for i in range(self.nvars))
        base = 0
        guards = 0
        for i in range(self.nvars):
            base += CMAX << shift[i]
            guards |= 1 << (shift[i] + FIELD_BITS - 1)
        for d in degshift:
            guards |= 1 << (d + DEG_BITS - 1)
        self.BASE = base
        self.GUARDS = guards
        self._varkey = tuple(base + self._adders[i] for i in range(self.nvars))

    # -- monomial keys -------------------------------------------------

    def pack(self, exps) -> int:
        key = self.BASE
        for i, e in enumerate(exps):
            if e:
                if not 0 <= e <= CMAX:
                    raise OverflowError("exponent out of range")
                key += e * self._adders[i]
        return key

    def unpack(self, key) -> tuple:
        sh = self._shift
        return tuple(CMAX - ((key >> sh[i]) & EXP_MASK)
                     for i in range(self.nvars))

    def mul_key(self, k1, k2) -> int:
        return k1 + k2 - self.BASE

    def div_key(self, k1, k2):
        """Packed key of m1/m2, or None when m2 does not divide m1."""
        d = k1 - k2 + self.BASE
        if d < 0 or d & self.GUARDS:
            return None
        return d

    def lcm_key(self, k1, k2) -> int:
        e1 = self.unpack(k1)
        e2 = self.unpack(k2)
        return self.pack(tuple(map(max, e1, e2)))

    def tdeg(self, key) -> int:
        return sum((key >> d) & DEG_MASK for d in self._degshift)

    def deg_in(self, key, name) -> int:
        i = self.index[name]
        return CMAX - ((key >> self._shift[i]) & EXP_MASK)

    # -- element constructors -------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.BASE: 1})

    def const(self, c) -> "Polynomial":
        c = _normc(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        return Polynomial(self, {self.BASE: c} if c else {})

    def var(self, name) -> "Polynomial":
        return Polynomial(self, {self._varkey[self.index[name]]: 1})

    def monomial(self, exps, c=1) -> "Polynomial":
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def poly(self, termmap) -> "Polynomial":
        """Build from {exponent tuple: coefficient}."""
        d = {}
        for exps, c in termmap.items():
            if c:
                d[self.pack(exps)] = _normc(c)
        return Polynomial(self, d)

    def __repr__(self):
        return "Ring(%s)" % ",".join(self.names)

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.names == other.names
                and self.blocks == other.blocks
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.names, self.blocks, self.weights))


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lt_key(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    def lc(self):
        return self.terms[self.lt_key()]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(self.ring.tdeg(k) for k in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        return max(self.ring.deg_in(k, name) for k in self.terms)

    def variables(self):
        """Names that occur with positive exponent, in ring order."""
        seen = set()
        for k in self.terms:
            for n, e in zip(self.ring.names, self.ring.unpack(k)):
                if e:
                    seen.add(n)
        return [n for n in self.ring.names if n in seen]

    def constant_part(self):
        return self.terms.get(self.ring.BASE, 0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("mixed rings; use map_to first")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        big, small = (self.terms, other.terms)
        if len(big) < len(small):
            big, small = small, big
        d = dict(big)
        for k, c in small.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = _normc(s)
            else:
                del d[k]
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self.terms)
        for k, c in other.terms.items():
            s = d.get(k, 0) - c
            if s:
                d[k] = _normc(s)
            else:
                del d[k]
        return Polynomial(self.ring, d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial(self.ring,
                              {k: _normc(c * other) for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        base = self.ring.BASE
        out = {}
        for k1, c1 in a.items():
            k1b = k1 - base
            for k2, c2 in b.items():
                k = k1b + k2
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        for k, c in out.items():
            out[k] = _normc(c)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        sq = self
        while n:
            if n & 1:
                result = result * sq
            n >>= 1
            if n:
                sq = sq * sq
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- substitution and division -----------------------------------------

    def eval_subst(self, subst):
        """Substitute polynomials or numbers for variables, by name.

        Unlisted variables stay untouched.  All values must live in this
        ring (numbers are coerced).
        """
        ring = self.ring
        vals = {}
        for name, v in subst.items():
            i = ring.index[name]
            if isinstance(v, (int, Fraction)):
                v = ring.const(v)
            elif v.ring is not ring and v.ring != ring:
                raise ValueError("substitution value in wrong ring")
            vals[i] = v
        if not vals:
            return self
        powcache = {i: {0: ring.one(), 1: v} for i, v in vals.items()}

        def power(i, e):
            cache = powcache[i]
            if e not in cache:
                cache[e] = cache[e - 1] * cache[1] if e - 1 in cache \
                    else power(i, e - 1) * cache[1]
            return cache[e]

        out = ring.zero()
        adders = ring._adders
        shift = ring._shift
        for k, c in self.terms.items():
            rest = k
            factor = None
            for i in vals:
                e = CMAX - ((k >> shift[i]) & EXP_MASK)
                if e:
                    rest -= e * adders[i]
                    p = power(i, e)
                    factor = p if factor is None else factor * p
            t = Polynomial(ring, {rest: c})
            out = out + (t if factor is None else t * factor)
        return out

    def map_to(self, ring):
        """Re-express in another ring, matching variables by name."""
        if ring == self.ring:
            return Polynomial(ring, dict(self.terms))
        out = {}
        src = self.ring
        for k, c in self.terms.items():
            exps = src.unpack(k)
            tgt = [0] * ring.nvars
            for n, e in zip(src.names, exps):
                if e:
                    if n not in ring.index:
                        raise ValueError("variable %s missing in target ring" % n)
                    tgt[ring.index[n]] = e
            out[ring.pack(tgt)] = c
        return Polynomial(ring, out)

    def div_exact(self, g):
        """Quotient self/g, raising NotDivisible when it fails."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        rem = dict(self.terms)
        out = {}
        glt = g.lt_key()
        glc = g.terms[glt]
        gbase = [(k - ring.BASE, c) for k, c in g.terms.items() if k != glt]
        while rem:
            ltk = max(rem)
            q = ring.div_key(ltk, glt)
            if q is None:
                raise NotDivisible("leading term %s not divisible" % ring.unpack(ltk).__repr__())
            c = rem[ltk]
            qc = _normc(Fraction(c, glc) if c % glc else c // glc) \
                if isinstance(c, int) and isinstance(glc, int) else _normc(Fraction(c) / glc)
            out[q] = qc
            del rem[ltk]
            qb = q - ring.BASE
            for kb, gc in gbase:
                k = qb + kb + ring.BASE
                s = rem.get(k, 0) - qc * gc
                if s:
                    rem[k] = _normc(s)
                else:
                    rem.pop(k, None)
        return Polynomial(ring, out)

    def coeffs_in_var(self, name):
        """Split into {degree in name: polynomial not involving name}."""
        ring = self.ring
        i = ring.index[name]
        sh = ring._shift[i]
        ad = ring._adders[i]
        out = {}
        for k, c in self.terms.items():
            e = CMAX - ((k >> sh) & EXP_MASK)
            out.setdefault(e, {})[k - e * ad] = c
        return {e: Polynomial(ring, d) for e, d in out.items()}

    def div_rem_in_var(self, name, root):
        """Synthetic division by (name - root): returns (q, rem) with
        self == q*(v - root) + rem and rem free of v."""
        ring = self.ring
        if isinstance(root, (int, Fraction)):
            root = ring.const(root)
        if name in root.variables():
            raise RootInvolvesVar("root involves %s" % name)
        cs = self.coeffs_in_var(name)
        if not cs:
            return ring.zero(), ring.zero()
        D = max(cs)
        v = ring.var(name)
        q = ring.zero()
        b = ring.zero()
        for d in range(D, 0, -1):
            b = cs.get(d, ring.zero()) + root * b
            q = q + b * v ** (d - 1)
        rem = cs.get(0, ring.zero()) + root * b
        return q, rem

    # -- printing and serialisation -----------------------------------------

    def _fmt_mono(self, key):
        parts = []
        for n, e in zip(self.ring.names, self.ring.unpack(key)):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append("%s^%d" % (n, e))
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = self._fmt_mono(k)
            neg = c < 0
            c = -c if neg else c
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = "%s*%s" % (c, mono)
            if not out:
                out.append("-" + body if neg else body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    __repr__ = __str__

    def to_json(self):
        return {
            "vars": list(self.ring.names),
            "terms": [{"c": str(self.terms[k]),
                       "e": list(self.ring.unpack(k))}
                      for k in sorted(self.terms, reverse=True)],
        }

    @staticmethod
    def from_json(data, ring=None):
        if ring is None:
            ring = Ring(data["vars"])
        out = {}
        for t in data["terms"]:
            c = Fraction(t["c"])
            out[ring.pack(t["e"])] = _normc(c)
        return Polynomial(ring, out)


# -- naming conventions ------------------------------------------------------
#
# The whole package uses one naming scheme for ring variables:
#   z3       coordinate z_3
#   l3, r3   the two shift parameters attached to z_3
#   s3_2     base deformation parameter sigma_3^(2)
#   t3       the t-parameter of the component equations
#   st3_2    the parameter written with a tilde in the component equations
# Derived sigma_eps^(i j) are *polynomials* in these, not variables.

def zname(e):
    return "z%d" % e


def lname(e):
    return "l%d" % e


def rname(e):
    return "r%d" % e


def sname(e, m):
    return "s%d_%d" % (e, m)


def tname(e):
    return "t%d" % e


def stname(e, m):
    return "st%d_%d" % (e, m)


_NAME_RE = re.compile(
    r"^(?:z(?P<z>\d+)|l(?P<l>\d+)|r(?P<r>\d+)|s(?P<s>\d+)_(?P<sm>\d+)"
    r"|t(?P<t>\d+)|st(?P<st>\d+)_(?P<stm>\d+))$")


def _name_sort_key(name):
    m = _NAME_RE.match(name)
    if m is None:
        return (9, 0, 0, name)
    if m.group("z"):
        return (0, int(m.group("z")), 0, name)
    if m.group("l"):
        return (1, int(m.group("l")), 0, name)
    if m.group("r"):
        return (1, int(m.group("r")), 1, name)
    if m.group("st"):
        return (4, int(m.group("st")), int(m.group("stm")), name)
    if m.group("s"):
        return (2, int(m.group("s")), int(m.group("sm")), name)
    return (3, int(m.group("t")), 0, name)


def ring_from_names(names, elim=None):
    """Ring over the given names in the package's canonical order:
    z-block, then l/r by index, then s, t, st parameters, then anything
    else alphabetically."""
    ordered = sorted(set(names), key=_name_sort_key)
    return Ring(ordered, elim=elim)


# -- a small parser for the interchange text format ---------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>[-+*^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ValueError("bad character %r in polynomial" % text[pos])
            break
        pos = m.end()
        if m.group("num"):
            out.append(("num", int(m.group("num"))))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def poly_names(text):
    return {t[1] for t in _tokenize(text) if t[0] == "name"}


def parse_poly(text, ring):
    """Parse '+ - * ^ ( )' polynomial text into a ring element."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def atom():
        kind, val = peek()
        if kind == "op" and val == "(":
            take()
            e = expr()
            kind, val = take()
            if val != ")":
                raise ValueError("missing )")
            return e
        if kind == "op" and val == "-":
            take()
            return -atom()
        if kind == "num":
            take()
            return ring.const(val)
        if kind == "name":
            take()
            return ring.var(val)
        raise ValueError("unexpected token %r" % (val,))

    def factor():
        a = atom()
        while peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be a number")
            a = a ** val
        return a

    def term():
        a = factor()
        while peek() == ("op", "*"):
            take()
            a = a * factor()
        return a

    def expr():
        kind, val = peek()
        neg = False
        if kind == "op" and val in "+-":
            take()
            neg = val == "-"
        a = term()
        if neg:
            a = -a
        while peek()[0] == "op" and peek()[1] in "+-":
            _, op = take()
            b = term()
            a = a - b if op == "-" else a + b
        return a

    result = expr()
    if pos != len(toks):
        raise ValueError("trailing tokens in polynomial")
    return result
