"""su(2) coupling layer: lowering monomials, general projection operators,
Clebsch-Gordan coefficients by two independent routes, and 6j/9j symbols.

The closed-form CGC is the alternating factorial sum; the projector route
builds the coupled-system extremal projector on an explicit tensor module and
reads the coefficients off as exact matrix elements.  Both routes carry the
Condon-Shortley phases: the projector route through the positive square root
of the diagonal normalization, the closed form through its printed signs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import build_root_system
from .exact import Radical, factorial_ratio, sqrt_of_rational
from .pbw import RewriteEngine
from .projector import extremal_projector
from .repmod import ModuleVector, apply_element, mat_vec, su2_irrep, tensor

__all__ = [
    "ScaledElement",
    "lowering_monomial",
    "general_projector",
    "cgc_closed",
    "cgc_projector",
    "sixj",
    "ninej",
]

_SYS2 = build_root_system(2)
_ENG2 = None


def su2_engine():
    global _ENG2
    if _ENG2 is None:
        _ENG2 = RewriteEngine(_SYS2)
    return _ENG2


def _half(x):
    """Coerce to an exact half-integer Fraction."""
    f = Fraction(x)
    if (2 * f).denominator != 1:
        raise ValueError("not a half-integer: %s" % (x,))
    return f


def _valid_jm(j, m):
    return abs(m) <= j and (j - m).denominator == 1


def _triad(a, b, c):
    """su(2) coupling triangle: |a-b| <= c <= a+b with integer perimeter."""
    return (a + b + c).denominator == 1 and abs(a - b) <= c <= a + b


class ScaledElement:
    """A TaylorElement with an overall Radical scalar factored out.

    Coefficients of TaylorElements are rational functions of the Cartan
    elements, while the normalizations of the lowering monomials are square
    roots; keeping the scalar separate keeps both sides exact.
    """

    __slots__ = ("scalar", "element")

    def __init__(self, scalar, element):
        self.scalar = scalar
        self.element = element

    def star(self):
        return ScaledElement(self.scalar, self.element.star())

    def apply(self, v, M, singular="raise"):
        return apply_element(self.element, v, M, singular=singular).scale(self.scalar)

    def __repr__(self):
        return "ScaledElement(%s, %r)" % (self.scalar, self.element)


def lowering_monomial(j, m, N=None, engine=None):
    """F_{m;j} = sqrt((j+m)!/((2j)!(j-m)!)) J_-^{j-m}; maps |jj> to |jm>."""
    j, m = _half(j), _half(m)
    if not _valid_jm(j, m):
        raise ValueError("invalid (j, m) = (%s, %s)" % (j, m))
    eng = engine if engine is not None else su2_engine()
    k = int(j - m)
    if N is None:
        N = int(2 * j)
    scalar = sqrt_of_rational(factorial_ratio([j + m], [2 * j, j - m]))
    word = ((((2, 1), k),) if k else ())
    return ScaledElement(scalar, eng.monomial(word, 1, (), N))


def general_projector(j, m, mprime, N=None, engine=None):
    """P^j_{m;m'} = F_{m;j} P F_{j;m'}: maps |jm'> to |jm>, kills the rest."""
    j, m, mp = _half(j), _half(m), _half(mprime)
    for mm in (m, mp):
        if not _valid_jm(j, mm):
            raise ValueError("invalid (j, m) = (%s, %s)" % (j, mm))
    eng = engine if engine is not None else su2_engine()
    if N is None:
        N = int(2 * j)
    left = lowering_monomial(j, m, N=N, engine=eng)
    right = lowering_monomial(j, mp, N=N, engine=eng).star()
    P = extremal_projector(_SYS2, N=N, engine=eng)
    return ScaledElement(
        left.scalar * right.scalar, left.element * P * right.element
    )


# -- closed-form CGC --------------------------------------------------


@lru_cache(maxsize=None)
def _cgc_closed(j1, m1, j2, m2, j3, m3):
    pref = Fraction(2 * j3 + 1) * factorial_ratio(
        [j2 - m2, j3 + m3, j1 + j2 + j3 + 1, j1 + j2 - j3, j1 - j2 + j3],
        [j1 + m1, j1 - m1, j2 + m2, j3 - m3, -j1 + j2 + j3],
    )
    total = Fraction(0)
    for n in range(int(min(j2 - m2, j1 + j2 - j3)) + 1):
        term = factorial_ratio(
            [2 * j2 - n, j1 + j2 - m3 - n],
            [n, j2 - m2 - n, j1 + j2 - j3 - n, j1 + j2 + j3 + 1 - n],
        )
        total += Fraction((-1) ** int(j1 + j2 - j3 - n)) * term
    return sqrt_of_rational(pref) * Radical.from_rational(total)


def cgc_closed(j1, m1, j2, m2, j3, m3):
    """(j1 m1 j2 m2 | j3 m3) by the alternating factorial-sum formula.

    Total on its domain: any selection-rule failure returns 0.
    """
    j1, m1 = _half(j1), _half(m1)
    j2, m2 = _half(j2), _half(m2)
    j3, m3 = _half(j3), _half(m3)
    if m1 + m2 != m3:
        return Radical.from_rational(0)
    if not (_valid_jm(j1, m1) and _valid_jm(j2, m2) and _valid_jm(j3, m3)):
        return Radical.from_rational(0)
    if not _triad(j1, j2, j3):
        return Radical.from_rational(0)
    return _cgc_closed(j1, m1, j2, m2, j3, m3)


# -- projector-route CGC ----------------------------------------------


@lru_cache(maxsize=None)
def _coupled_module(j1, j2):
    M = tensor(su2_irrep(j1), su2_irrep(j2))
    P = extremal_projector(_SYS2, N=M.weight_diameter, engine=su2_engine())
    return M, P


@lru_cache(maxsize=None)
def _projected_tower(j1, j2, j3):
    """P applied to |j1 j1>|j2 j3-j1>, then lowered step by step.

    Returns (diagonal element as Fraction, dict m3 -> raw J_-^{j3-m3} P v0).
    """
    M, P = _coupled_module(j1, j2)
    v0_idx = int(j2 - (j3 - j1))  # first factor at m = j1 (index 0)
    v0 = ModuleVector({v0_idx: 1})
    pv = apply_element(P, v0, M)
    diag = pv.coords.get(v0_idx)
    if diag is None:
        return None
    lowered = {j3: pv}
    jminus = M.matrix((2, 1))
    w = pv
    m3 = j3
    while m3 > -j3:
        w = ModuleVector(mat_vec(jminus, w.coords))
        m3 -= 1
        lowered[m3] = w
    return diag.to_rational(), lowered


def cgc_projector(j1, m1, j2, m2, j3, m3):
    """(j1 m1 j2 m2 | j3 m3) as a matrix element of P^{j3}_{m3;j3}.

    The general projection operator of the coupled system is applied to
    |j1 j1>|j2 j3-j1> and the result is paired with <j1 m1|<j2 m2|; the
    normalization is the positive square root of the diagonal element.
    """
    j1, m1 = _half(j1), _half(m1)
    j2, m2 = _half(j2), _half(m2)
    j3, m3 = _half(j3), _half(m3)
    if m1 + m2 != m3:
        return Radical.from_rational(0)
    if not (_valid_jm(j1, m1) and _valid_jm(j2, m2) and _valid_jm(j3, m3)):
        return Radical.from_rational(0)
    if not _triad(j1, j2, j3):
        return Radical.from_rational(0)
    data = _projected_tower(j1, j2, j3)
    if data is None:
        return Radical.from_rational(0)
    diag, lowered = data
    d2 = int(2 * j2) + 1
    bra = int(j1 - m1) * d2 + int(j2 - m2)
    val = lowered[m3].coords.get(bra)
    if val is None:
        return Radical.from_rational(0)
    scalar = sqrt_of_rational(factorial_ratio([j3 + m3], [2 * j3, j3 - m3]))
    return val * scalar * sqrt_of_rational(Fraction(1) / diag)


# -- recoupling symbols -----------------------------------------------


def _proj_range(j):
    m = j
    while m >= -j:
        yield m
        m -= 1


@lru_cache(maxsize=None)
def _sixj(a, b, c, d, e, f):
    # contraction definition: couple (a b) c then (c d) e against
    # (b d) f then (a f) e, at total projection M = e
    total = Radical.from_rational(0)
    M = e
    for m1 in _proj_range(a):
        for m2 in _proj_range(b):
            m3 = M - m1 - m2
            if abs(m3) > d:
                continue
            c1 = cgc_closed(a, m1, b, m2, c, m1 + m2)
            if not c1:
                continue
            c2 = cgc_closed(c, m1 + m2, d, m3, e, M)
            if not c2:
                continue
            c3 = cgc_closed(b, m2, d, m3, f, m2 + m3)
            if not c3:
                continue
            c4 = cgc_closed(a, m1, f, m2 + m3, e, M)
            if not c4:
                continue
            total = total + c1 * c2 * c3 * c4
    phase = Fraction((-1) ** int(a + b + d + e))
    norm = sqrt_of_rational(Fraction(1, (int(2 * c) + 1) * (int(2 * f) + 1)))
    return total * norm * Radical.from_rational(phase)


def sixj(a, b, c, d, e, f):
    """{a b c; d e f}, zero unless all four coupling triangles hold."""
    a, b, c = _half(a), _half(b), _half(c)
    d, e, f = _half(d), _half(e), _half(f)
    if min(a, b, c, d, e, f) < 0:
        return Radical.from_rational(0)
    for t in ((a, b, c), (c, d, e), (b, d, f), (a, e, f)):
        if not _triad(*t):
            return Radical.from_rational(0)
    return _sixj(a, b, c, d, e, f)


def ninej(rows):
    """{a b c; d e f; g h i} as the standard 6j contraction over one spin."""
    (a, b, c), (d, e, f), (g, h, i) = [tuple(_half(x) for x in r) for r in rows]
    lo = max(abs(a - i), abs(b - f), abs(d - h))
    hi = min(a + i, b + f, d + h)
    total = Radical.from_rational(0)
    x = lo
    while x <= hi:
        term = sixj(a, b, c, f, i, x) * sixj(d, e, f, b, x, h) * sixj(g, h, i, x, a, d)
        total = total + term * Radical.from_rational(
            Fraction((2 * x + 1) * (-1) ** int(2 * x))
        )
        x += 1
    return total
