"""Noncommutative rewrite engine for U(su(n)) and its Taylor extension.

Elements are kept in PBW normal form: sums of monomials

    (lowering word) * (rational function of the Cartan h_i) * (raising word),

with the generators inside each word sorted by a fixed normal ordering of the
positive roots.  A TaylorElement additionally carries a truncation bound N:
monomials of total raising degree > N are dropped, and equality is understood
modulo that filtration.

Generators are index pairs (i, j), i != j, for e_ij; Cartan letters are
rational functions of h1..h_{n-1}, h_i = e_ii - e_{i+1,i+1}.  Coefficients are
stored with a polynomial numerator and a factored denominator: every
denominator that the projector series produces is a product of integer shifts
of linear forms in the h_i, and keeping the factors explicit makes shifting
h -> h + s and pole detection cheap.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy import S
from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _poly_ring

from .algebra import NormalOrdering, RootSystemData
from .exact import Radical

__all__ = [
    "Coeff",
    "CartanRational",
    "RewriteEngine",
    "TaylorElement",
    "rewrite_word",
    "h_symbols",
    "SingularWeightError",
    "TruncationError",
]


class SingularWeightError(ArithmeticError):
    """A coefficient denominator vanishes at the requested weight."""


class TruncationError(ValueError):
    """The truncation bound is too small for the requested application."""


_H_CACHE = {}
_RING_CACHE = {}


def h_symbols(n):
    """Cartan symbols h1..h_{n-1} for su(n)."""
    if n not in _H_CACHE:
        _H_CACHE[n] = tuple(sympy.Symbol("h%d" % i) for i in range(1, n))
    return _H_CACHE[n]


def _qq(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, sympy.Rational):
        return QQ(int(x.p), int(x.q))
    return QQ(x)


def _frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


def cartan_ring(n):
    """Polynomial ring QQ[h1..h_{n-1}] shared by all engines of one rank."""
    if n not in _RING_CACHE:
        _RING_CACHE[n] = _poly_ring(
            ",".join("h%d" % i for i in range(1, n)), QQ
        )[0]
    return _RING_CACHE[n]


class Coeff:
    """Rational function of the h_i with the denominator kept factored.

    num is a polynomial (sympy PolyElement over QQ); den maps a linear form,
    encoded as a tuple (a_1, ..., a_{n-1}, c) of Fractions standing for
    a.h + c with monic leading coefficient, to its multiplicity.  The pair is
    not reduced on construction (zero testing only needs the numerator);
    reduced() divides out denominator factors before evaluation or printing.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den=None):
        self.ring = ring
        self.num = num
        self.den = den or {}

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, ring, q):
        return cls(ring, ring.ground_new(_qq(q)))

    @classmethod
    def from_expr(cls, ring, expr):
        """Parse a sympy expression; the denominator must factor into linear
        forms of the h_i."""
        expr = sympy.cancel(sympy.together(sympy.sympify(expr)))
        num, den = sympy.fraction(expr)
        syms = h_symbols(len(ring.gens) + 1)
        out_num = ring.from_expr(num.subs(zip(syms, (g.as_expr() for g in ring.gens))))
        factors = {}
        const, flist = sympy.factor_list(den)
        scale = _qq(sympy.Rational(const))
        for f, mult in flist:
            poly = sympy.Poly(f, *syms)
            if poly.total_degree() > 1:
                raise ValueError("nonlinear denominator factor: %s" % f)
            coeffs = [Fraction(int(c.p), int(c.q)) for c in
                      (poly.coeff_monomial(s) or S.Zero for s in syms)]
            c0 = poly.coeff_monomial(1) or S.Zero
            c0 = Fraction(int(c0.p), int(c0.q))
            lead = next((c for c in coeffs if c), None)
            if lead is None:
                scale *= _qq(c0) ** mult
                continue
            key = tuple(c / lead for c in coeffs) + (c0 / lead,)
            scale *= _qq(lead) ** mult
            factors[key] = factors.get(key, 0) + mult
        return cls(ring, out_num * (QQ(1) / scale), factors)

    def key_poly(self, key):
        p = self.ring.ground_new(_qq(key[-1]))
        for g, a in zip(self.ring.gens, key[:-1]):
            if a:
                p = p + g * _qq(a)
        return p

    # -- predicates ---------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return not self.den and self.num == self.ring.one

    def __hash__(self):
        return hash((self.num, tuple(sorted(self.den.items()))))

    def __eq__(self, other):
        """Semantic equality as rational functions."""
        if not isinstance(other, Coeff):
            other = Coeff.from_rational(self.ring, other)
        return not (self - other).num

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Coeff):
            return other
        return Coeff.from_rational(self.ring, other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Coeff(self.ring, self.num * _qq(other), self.den)
        other = self._coerce(other)
        den = dict(self.den)
        for k, m in other.den.items():
            den[k] = den.get(k, 0) + m
        return Coeff(self.ring, self.num * other.num, den)

    __rmul__ = __mul__

    def __neg__(self):
        return Coeff(self.ring, -self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        den = {}
        for k in set(self.den) | set(other.den):
            den[k] = max(self.den.get(k, 0), other.den.get(k, 0))
        na, nb = self.num, other.num
        for k, m in den.items():
            da, db = m - self.den.get(k, 0), m - other.den.get(k, 0)
            if da or db:
                p = self.key_poly(k)
                if da:
                    na = na * p**da
                if db:
                    nb = nb * p**db
        return Coeff(self.ring, na + nb, den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def shift(self, svec, scale=1):
        """h_k -> h_k + scale * svec[k], exactly, in place of substitution."""
        if not any(svec) or scale == 0:
            return self
        num = self.num
        if not num.is_ground:
            for g, s in zip(self.ring.gens, svec):
                if s:
                    num = num.compose(g, g + QQ(scale * s))
        den = {}
        for k, m in self.den.items():
            delta = sum(a * scale * s for a, s in zip(k[:-1], svec))
            den[k[:-1] + (k[-1] + delta,)] = m
        return Coeff(self.ring, num, den)

    # -- normal form --------------------------------------------------

    def reduced(self):
        """Divide out denominator factors from the numerator where possible."""
        if not self.num:
            return Coeff(self.ring, self.num)
        num, den = self.num, {}
        for k, m in self.den.items():
            p = self.key_poly(k)
            while m > 0:
                q, r = num.div(p)
                if r:
                    break
                num, m = q, m - 1
            if m:
                den[k] = m
        return Coeff(self.ring, num, den)

    def evaluate(self, values):
        """Value at h = values (sequence of Fractions); Fraction result.

        Raises SingularWeightError naming the vanishing factor if the reduced
        denominator hits zero.
        """
        c = self.reduced()
        if not c.num:
            return Fraction(0)
        den = Fraction(1)
        for k, m in c.den.items():
            v = sum(a * x for a, x in zip(k[:-1], values)) + k[-1]
            if v == 0:
                raise SingularWeightError(
                    "denominator factor %s vanishes at weight %s"
                    % (c.key_poly(k).as_expr(), tuple(map(str, values)))
                )
            den *= v**m
        pairs = list(zip(c.ring.gens, (_qq(v) for v in values)))
        return _frac(c.num.evaluate(pairs)) / den

    def as_expr(self):
        """Canonical sympy expression, for display and interop."""
        c = self.reduced()
        e = c.num.as_expr()
        for k, m in sorted(c.den.items()):
            e = e / c.key_poly(k).as_expr() ** m
        return e

    def __repr__(self):
        return "Coeff(%s)" % self.as_expr()


class CartanRational:
    """Rational function of the Cartan symbols, canonicalized via cancel().

    Thin wrapper over a sympy expression; numerator/denominator are exposed
    as polynomials of the canonical form.
    """

    __slots__ = ("expr",)

    def __init__(self, expr):
        self.expr = sympy.cancel(sympy.sympify(expr))

    @property
    def numerator(self):
        return sympy.fraction(self.expr)[0]

    @property
    def denominator(self):
        return sympy.fraction(self.expr)[1]

    def __add__(self, other):
        return CartanRational(self.expr + _expr(other))

    def __mul__(self, other):
        return CartanRational(self.expr * _expr(other))

    def __sub__(self, other):
        return CartanRational(self.expr - _expr(other))

    def __truediv__(self, other):
        return CartanRational(self.expr / _expr(other))

    def __neg__(self):
        return CartanRational(-self.expr)

    def __eq__(self, other):
        return sympy.cancel(self.expr - _expr(other)) == 0

    def __hash__(self):
        return hash(self.expr)

    def __repr__(self):
        return "CartanRational(%s)" % self.expr


def _expr(x):
    if isinstance(x, CartanRational):
        return x.expr
    if isinstance(x, Coeff):
        return x.as_expr()
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def fraction_to_sympy(c):
    return sympy.Rational(c.numerator, c.denominator)


def radical_to_sympy(r):
    return sympy.Add(*(fraction_to_sympy(c) * sympy.sqrt(d) for d, c in r.terms.items()))


def sympy_to_radical(x):
    """Convert an exact sympy number (rationals and square roots) to Radical."""
    x = sympy.nsimplify(sympy.expand(x))
    terms = {}

    def absorb(coeff, rad):
        terms[rad] = terms.get(rad, Fraction(0)) + coeff

    for addend in sympy.Add.make_args(x):
        coeff, rest = addend.as_coeff_Mul()
        if not coeff.is_Rational:
            raise ValueError("not a radical number: %s" % x)
        c = Fraction(int(coeff.p), int(coeff.q))
        if rest == 1:
            absorb(c, 1)
        elif rest.is_Pow and rest.exp == sympy.Rational(1, 2) and rest.base.is_Integer:
            absorb(c, int(rest.base))
        elif rest.is_Pow and rest.exp == sympy.Rational(1, 2) and rest.base.is_Rational:
            q = Fraction(int(rest.base.p), int(rest.base.q))
            r = Radical.sqrt(q) * Radical.from_rational(c)
            for d, cc in r.terms.items():
                absorb(cc, d)
        else:
            raise ValueError("not a radical number: %s" % x)
    return Radical(terms)


class RewriteEngine:
    """Straightening engine for one su(n) with one fixed normal ordering.

    Holds the rewrite caches; all results are exact (truncation is applied
    only when assembling TaylorElements).
    """

    def __init__(self, sys: RootSystemData, order: NormalOrdering = None):
        from .algebra import default_ordering, validate_normal_ordering

        self.sys = sys
        self.n = sys.n
        if order is None:
            order = default_ordering(sys)
        elif not isinstance(order, NormalOrdering):
            order = NormalOrdering(tuple(tuple(r) for r in order))
        ok, viol = validate_normal_ordering(sys, order.sequence)
        if not ok:
            raise ValueError("not a normal ordering, violations: %r" % viol)
        self.order = order
        self.h = h_symbols(self.n)
        self.ring = cartan_ring(self.n)
        self.coeff_one = Coeff(self.ring, self.ring.one)
        self._pos = {r: i for i, r in enumerate(order.sequence)}
        self._reduce_cache = {}
        self._shift_cache = {}

    # -- coefficients -------------------------------------------------

    def coeff(self, x):
        """Coerce a number, Fraction, sympy expression, or Coeff."""
        if isinstance(x, Coeff):
            return x
        if isinstance(x, (int, Fraction)):
            return Coeff.from_rational(self.ring, x)
        if isinstance(x, CartanRational):
            x = x.expr
        return Coeff.from_expr(self.ring, x)

    def recip_linear(self, factors):
        """1 / prod of linear forms; each factor is (svec over h, const)."""
        den = {}
        for svec, c in factors:
            key = tuple(Fraction(a) for a in svec) + (Fraction(c),)
            den[key] = den.get(key, 0) + 1
        return Coeff(self.ring, self.ring.one, den)

    # -- letters ------------------------------------------------------

    def is_raising(self, g):
        return g[0] < g[1]

    def letter_key(self, g):
        i, j = g
        return self._pos[(min(i, j), max(i, j))]

    def shift_vector(self, g):
        """[h_k, e_g] = s_k e_g; returns tuple s over k = 1..n-1."""
        i, j = g
        return tuple(
            (k == i) - (k == j) - (k + 1 == i) + (k + 1 == j)
            for k in range(1, self.n)
        )

    def word_shift(self, letters):
        s = [0] * (self.n - 1)
        for g in letters:
            v = self.shift_vector(g)
            for k in range(self.n - 1):
                s[k] += v[k]
        return tuple(s)

    def shift_expr(self, coeff, svec, scale=1):
        """coeff with h_k -> h_k + scale*svec[k], memoized."""
        if not any(svec) or scale == 0:
            return coeff
        key = (coeff, svec, scale)
        try:
            return self._shift_cache[key]
        except KeyError:
            pass
        out = coeff.shift(svec, scale)
        self._shift_cache[key] = out
        return out

    def e_diag(self, i):
        """e_ii as a polynomial in the h_k (su(n) traceless)."""
        n = self.n
        p = self.ring.zero
        for k in range(1, n):
            p = p + self.ring.gens[k - 1] * QQ((1 if k >= i else 0) * n - k, n)
        return Coeff(self.ring, p)

    def h_span_vec(self, i, j):
        """Coefficient vector of e_ii - e_jj over the h_k."""
        v = [0] * (self.n - 1)
        lo, hi, sign = (i, j, 1) if i < j else (j, i, -1)
        for k in range(lo, hi):
            v[k - 1] = sign
        return tuple(v)

    def h_span(self, i, j):
        """e_ii - e_jj as a Coeff (i < j: h_i + ... + h_{j-1})."""
        p = self.ring.zero
        for k, a in enumerate(self.h_span_vec(i, j)):
            if a:
                p = p + self.ring.gens[k] * QQ(a)
        return Coeff(self.ring, p)

    def commutator(self, a, b):
        """[e_a, e_b] as a list of (sign, letter); letter is a generator pair
        or a Cartan Coeff."""
        i, j = a
        k, l = b
        out = []
        if j == k and i == l:
            out.append((1, self.h_span(i, j)))
            return out
        if j == k:
            out.append((1, (i, l)))
        if i == l:
            out.append((-1, (k, j)))
        return out

    # -- straightening ------------------------------------------------

    def _bad_pair(self, w, i):
        a, b = w[i], w[i + 1]
        a_h = not isinstance(a, tuple)
        b_h = not isinstance(b, tuple)
        if a_h:
            return True  # cartan letters sink to the right (merge with next)
        if b_h:
            return False
        ar, br = self.is_raising(a), self.is_raising(b)
        if ar and not br:
            return True
        if ar == br:
            return self.letter_key(a) > self.letter_key(b)
        return False

    def reduce(self, word):
        """Normal-order a word of letters; returns dict {(L, R): Coeff}.

        L and R are tuples of ((i,j), exp) in ordering sequence order; the
        coefficient sits between them.  Exact (no truncation).  Every
        intermediate word is memoized, so repeated straightening of the same
        subproblems (ubiquitous in series products) costs nothing.
        """
        return self._reduce(tuple(word))

    def _find_bad(self, w):
        for i in range(len(w) - 1):
            if self._bad_pair(w, i):
                return i
        return -1

    def _reduce(self, word):
        cached = self._reduce_cache.get(word)
        if cached is not None:
            return cached
        w = word
        i = self._find_bad(w)
        if i < 0:
            gens = [x for x in w if isinstance(x, tuple)]
            tail = [x for x in w if not isinstance(x, tuple)]
            f = tail[0] if tail else self.coeff_one
            low = [g for g in gens if not self.is_raising(g)]
            high = [g for g in gens if self.is_raising(g)]
            if not f.is_one():
                # L R f = L f(h - s_R) R
                f = self.shift_expr(f, self.word_shift(high), scale=-1)
            out = {(self._pack(low), self._pack(high)): f}
            self._reduce_cache[word] = out
            return out
        a, b = w[i], w[i + 1]
        out = {}

        def absorb(sub, sign=1):
            for k, v in sub.items():
                if sign < 0:
                    v = -v
                cur = out.get(k)
                out[k] = v if cur is None else cur + v

        if not isinstance(a, tuple):
            if isinstance(b, tuple):
                # f(h) e = e f(h + s_e)
                nw = w[:i] + (b, self.shift_expr(a, self.shift_vector(b))) + w[i + 2 :]
                absorb(self._reduce(nw))
            else:
                absorb(self._reduce(w[:i] + (a * b,) + w[i + 2 :]))
        else:
            absorb(self._reduce(w[:i] + (b, a) + w[i + 2 :]))
            for sign, letter in self.commutator(a, b):
                absorb(self._reduce(w[:i] + (letter,) + w[i + 2 :]), sign)
        out = {k: v for k, v in out.items() if v}
        self._reduce_cache[word] = out
        return out

    def _pack(self, letters):
        packed = []
        for g in letters:
            if packed and packed[-1][0] == g:
                packed[-1][1] += 1
            else:
                packed.append([g, 1])
        return tuple((g, e) for g, e in packed)

    @staticmethod
    def unpack(packed):
        out = []
        for g, e in packed:
            out.extend([g] * e)
        return out

    # -- element constructors ----------------------------------------

    def zero(self, bound):
        return TaylorElement(self, bound, {})

    def one(self, bound):
        return TaylorElement(self, bound, {((), ()): self.coeff_one})

    def monomial(self, lowering, coeff, raising, bound):
        key = (tuple(lowering), tuple(raising))
        return TaylorElement(self, bound, {key: self.coeff(coeff)})

    def generator(self, i, j, bound):
        if i == j:
            raise ValueError("diagonal letters are Cartan polynomials")
        if i < j:
            return self.monomial((), 1, (((i, j), 1),), bound)
        return self.monomial((((i, j), 1),), 1, (), bound)

    def cartan(self, expr, bound):
        return self.monomial((), expr, (), bound)


def rewrite_word(word, sys, order=None, N=64, engine=None):
    """Reduce an arbitrary word to PBW normal form as a TaylorElement.

    word items are generator pairs (i, j), Cartan letters ('h', k), Cartan
    expressions (sympy or Coeff), or (item, exponent) pairs.
    """
    eng = engine if engine is not None else RewriteEngine(sys, order)
    letters = []
    for item in word:
        exp = 1
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], tuple):
            item, exp = item  # ((i,j), e) or (('h',k), e)
        if isinstance(item, tuple) and item[0] == "h":
            item = Coeff(eng.ring, eng.ring.gens[item[1] - 1])
        elif not isinstance(item, tuple):
            item = eng.coeff(item)
        letters.extend([item] * exp)
    terms = eng.reduce(letters)
    out = TaylorElement(eng, N, dict(terms))
    return out._pruned()


class TaylorElement:
    """Truncated formal sum of PBW normal monomials."""

    __slots__ = ("engine", "bound", "terms")

    def __init__(self, engine, bound, terms):
        self.engine = engine
        self.bound = bound
        self.terms = terms

    # -- structure ----------------------------------------------------

    @staticmethod
    def degree(packed):
        return sum(e for _, e in packed)

    def raising_degree(self, key):
        return self.degree(key[1])

    def _pruned(self):
        self.terms = {
            k: v for k, v in self.terms.items() if self.degree(k[1]) <= self.bound
        }
        return self

    def canonical(self):
        out = {}
        for k, v in self.terms.items():
            v = v.reduced()
            if v:
                out[k] = v
        return TaylorElement(self.engine, self.bound, out)

    def monomials(self):
        """Sorted list of (lowering, coeff, raising) for stable output."""
        items = sorted(self.terms.items(), key=lambda kv: (self.degree(kv[0][0]) + self.degree(kv[0][1]), kv[0]))
        return [(L, self.terms[(L, R)], R) for (L, R), _ in items]

    # -- arithmetic ---------------------------------------------------

    def _check_compat(self, other):
        if self.engine is not other.engine:
            if (
                self.engine.sys != other.engine.sys
                or self.engine.order != other.engine.order
            ):
                raise ValueError("incompatible root systems or orderings")

    def __add__(self, other):
        self._check_compat(other)
        bound = min(self.bound, other.bound)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            cur = terms.get(k)
            terms[k] = v if cur is None else cur + v
        return TaylorElement(self.engine, bound, terms)._pruned()

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TaylorElement(self.engine, self.bound, {k: -v for k, v in self.terms.items()})

    def scale(self, c):
        c = self.engine.coeff(c)
        return TaylorElement(self.engine, self.bound, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TaylorElement):
            return self.scale(other)
        self._check_compat(other)
        eng = self.engine
        bound = min(self.bound, other.bound)
        acc = {}
        for (La, Ra), ca in self.terms.items():
            ra_letters = eng.unpack(Ra)
            for (Lb, Rb), cb in other.terms.items():
                core = eng.reduce(tuple(ra_letters + eng.unpack(Lb)))
                for (L1, R1), c1 in core.items():
                    # La ca L1 c1 R1 cb Rb ; move ca right past L1, cb left past R1
                    mid = (
                        eng.shift_expr(ca, eng.word_shift(eng.unpack(L1)))
                        * c1
                        * eng.shift_expr(cb, eng.word_shift(eng.unpack(R1)), scale=-1)
                    )
                    lows = eng.reduce(tuple(eng.unpack(La) + eng.unpack(L1)))
                    highs = eng.reduce(tuple(eng.unpack(R1) + eng.unpack(Rb)))
                    for (L2, _e1), cl in lows.items():
                        for (_e2, R2), cr in highs.items():
                            if TaylorElement.degree(R2) > bound:
                                continue
                            key = (L2, R2)
                            v = cl * mid * cr
                            cur = acc.get(key)
                            acc[key] = v if cur is None else cur + v
                    del lows, highs
        out = TaylorElement(eng, bound, acc).canonical()
        return out

    def __rmul__(self, other):
        return self.scale(other)

    # -- involution ---------------------------------------------------

    def star(self):
        """Antilinear anti-involution with e_ij* = e_ji, h* = h."""
        eng = self.engine
        acc = {}
        for (L, R), c in self.terms.items():
            word = [(j, i) for (i, j) in reversed(eng.unpack(R))]
            word.append(c)
            word.extend((j, i) for (i, j) in reversed(eng.unpack(L)))
            for key, v in eng.reduce(tuple(word)).items():
                cur = acc.get(key)
                acc[key] = v if cur is None else cur + v
        return TaylorElement(eng, self.bound, acc).canonical()._pruned()

    # -- evaluation ---------------------------------------------------

    def evaluate_cartan(self, weight):
        """Substitute h_i -> weight[i] (1-based); coefficients become numbers.

        Raises SingularWeightError naming the vanishing factor if a
        denominator hits zero.
        """
        eng = self.engine
        values = [Fraction(weight.get(i, 0)) for i in range(1, eng.n)]
        out = {}
        for k, v in self.terms.items():
            val = v.evaluate(values)
            if val != 0:
                out[k] = Coeff.from_rational(eng.ring, val)
        return TaylorElement(eng, self.bound, out)

    # -- comparison ---------------------------------------------------

    def residual(self, other, deg=None):
        """Monomials of self - other with raising degree <= deg (default: the
        common bound); empty list means equality modulo the filtration."""
        diff = (self - other).canonical()
        if deg is None:
            deg = diff.bound
        return [
            (L, c, R)
            for (L, R), c in sorted(diff.terms.items())
            if self.degree(R) <= deg
        ]

    def equals_mod_filtration(self, other, deg=None):
        return not self.residual(other, deg)

    def is_zero_mod_filtration(self, deg=None):
        if deg is None:
            deg = self.bound
        canon = self.canonical()
        return all(self.degree(R) > deg for (_L, R) in canon.terms)

    # -- output -------------------------------------------------------

    @staticmethod
    def _word_str(packed, transpose=False):
        parts = []
        for (i, j), e in packed:
            name = "e%d%d" % ((j, i) if transpose else (i, j))
            parts.append(name if e == 1 else "%s^%d" % (name, e))
        return " ".join(parts)

    def dump(self):
        """Stable debug form: `e21^a e31^b * [num/den] * e12^c e13^d` lines."""
        lines = []
        for L, c, R in self.canonical().monomials():
            num, den = sympy.fraction(c.as_expr())
            cs = "[%s]" % num if den == 1 else "[(%s)/(%s)]" % (num, den)
            seg = [s for s in (self._word_str(L), cs, self._word_str(R)) if s]
            lines.append(" * ".join(seg))
        return "\n".join(lines) if lines else "0"

    def __repr__(self):
        return "TaylorElement(N=%d,\n%s\n)" % (self.bound, self.dump())
