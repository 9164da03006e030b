"""PBW normal ordering engine: coefficients, straightening, star, evaluation."""

import random
from fractions import Fraction

import pytest
import sympy

from extremal.algebra import build_root_system
from extremal.pbw import (
    Coeff,
    RewriteEngine,
    SingularWeightError,
    rewrite_word,
)
from extremal.repmod import (
    apply_element,
    mat_eq,
    mat_mul,
    matrix_of,
    su2_irrep,
    su3_irrep,
)

SU2 = build_root_system(2)
SU3 = build_root_system(3)


@pytest.fixture(scope="module")
def eng3():
    return RewriteEngine(SU3)


@pytest.fixture(scope="module")
def eng2():
    return RewriteEngine(SU2)


# -- Coeff ------------------------------------------------------------


def test_coeff_rational_arithmetic(eng3):
    a = Coeff.from_rational(eng3.ring, Fraction(1, 2))
    b = Coeff.from_rational(eng3.ring, 3)
    assert (a + b).evaluate([0, 0]) == Fraction(7, 2)
    assert (a * b).evaluate([0, 0]) == Fraction(3, 2)
    assert (-a).evaluate([0, 0]) == Fraction(-1, 2)
    assert not (a - a)
    assert b and a


def test_coeff_from_expr_with_denominator(eng3):
    h1, h2 = sympy.symbols("h1 h2")
    c = Coeff.from_expr(eng3.ring, (h1 + 2) / (h2 + 1))
    assert c.evaluate([2, 3]) == Fraction(4, 4)
    with pytest.raises(SingularWeightError):
        c.evaluate([0, -1])


def test_coeff_shift(eng3):
    h1, h2 = sympy.symbols("h1 h2")
    c = Coeff.from_expr(eng3.ring, (h1 + 1) / (h2 + 2))
    s = c.shift((1, -1), scale=2)  # h1 -> h1 + 2, h2 -> h2 - 2
    assert s.evaluate([0, 2]) == Fraction(3, 2)
    ref = Coeff.from_expr(eng3.ring, (h1 + 3) / h2)
    assert s == ref


def test_coeff_reduced_cancellation(eng3):
    h1, h2 = sympy.symbols("h1 h2")
    c = Coeff.from_expr(eng3.ring, (h1 + 1) * (h2 + 2) / (h2 + 2))
    r = c.reduced()
    assert not r.den
    assert r == Coeff.from_expr(eng3.ring, h1 + 1)


def test_coeff_semantic_equality(eng3):
    h1, h2 = sympy.symbols("h1 h2")
    a = Coeff.from_expr(eng3.ring, (h1 ** 2 - 1) / (h1 + 1))
    b = Coeff.from_expr(eng3.ring, h1 - 1)
    assert a == b


# -- straightening ----------------------------------------------------


def test_su2_commutator(eng2):
    # e12 e21 = e21 e12 + h1
    x = rewrite_word([(1, 2), (2, 1)], SU2, engine=eng2, N=8)
    y = rewrite_word([(2, 1), (1, 2)], SU2, engine=eng2, N=8)
    h = eng2.cartan(sympy.Symbol("h1"), 8)
    assert x.equals_mod_filtration(y + h)


def test_su3_commutators(eng3):
    # [e12, e23] = e13, [e12, e31] = -e32, [e13, e31] = h1 + h2
    def comm(a, b):
        return rewrite_word([a, b], SU3, engine=eng3, N=8) - rewrite_word(
            [b, a], SU3, engine=eng3, N=8
        )

    h1, h2 = sympy.symbols("h1 h2")
    assert comm((1, 2), (2, 3)).equals_mod_filtration(eng3.generator(1, 3, 8))
    assert comm((1, 2), (3, 1)).equals_mod_filtration(-eng3.generator(3, 2, 8))
    assert comm((1, 3), (3, 1)).equals_mod_filtration(eng3.cartan(h1 + h2, 8))
    assert comm((1, 2), (1, 3)).equals_mod_filtration(eng3.zero(8))


def test_cartan_letters_shift_through(eng3):
    # h1 e12 = e12 (h1 + 2)
    h1 = sympy.Symbol("h1")
    lhs = rewrite_word([("h", 1), (1, 2)], SU3, engine=eng3, N=8)
    rhs = eng3.generator(1, 2, 8) * eng3.cartan(h1 + 2, 8)
    assert lhs.equals_mod_filtration(rhs)


def test_multiplication_associative(eng3):
    a = rewrite_word([(2, 1), (1, 3)], SU3, engine=eng3, N=6)
    b = rewrite_word([(1, 2), (3, 2)], SU3, engine=eng3, N=6)
    c = rewrite_word([(2, 3), (1, 2)], SU3, engine=eng3, N=6)
    assert ((a * b) * c).equals_mod_filtration(a * (b * c), deg=4)


def test_rewrite_matches_module_action():
    # normal-ordered form of random words acts identically to the raw
    # matrix product on an explicit module
    M = su3_irrep(1, 1)
    eng = RewriteEngine(SU3)
    letters = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
    rng = random.Random(7)
    for _ in range(25):
        word = [rng.choice(letters) for _ in range(rng.randint(1, 4))]
        x = rewrite_word(word, SU3, engine=eng, N=M.weight_diameter)
        lhs = matrix_of(x, M)
        prod = None
        for g in word:
            m = M.matrix(g)
            prod = m if prod is None else mat_mul(prod, m)
        assert mat_eq(lhs, prod)


def test_exponent_letters():
    eng = RewriteEngine(SU2)
    a = rewrite_word([((1, 2), 3)], SU2, engine=eng, N=8)
    b = rewrite_word([(1, 2), (1, 2), (1, 2)], SU2, engine=eng, N=8)
    assert a.equals_mod_filtration(b)


# -- star involution --------------------------------------------------


def test_star_on_generators(eng3):
    e12 = eng3.generator(1, 2, 8)
    assert e12.star().equals_mod_filtration(eng3.generator(2, 1, 8))
    h1 = eng3.cartan(sympy.Symbol("h1"), 8)
    assert h1.star().equals_mod_filtration(h1)


def test_star_is_involution(eng3):
    x = rewrite_word([(2, 1), (1, 3), (3, 2), (1, 2)], SU3, engine=eng3, N=8)
    assert x.star().star().equals_mod_filtration(x)


def test_star_antimultiplicative(eng3):
    a = rewrite_word([(2, 1), (1, 2)], SU3, engine=eng3, N=6)
    b = rewrite_word([(1, 3), (3, 2)], SU3, engine=eng3, N=6)
    assert (a * b).star().equals_mod_filtration(b.star() * a.star(), deg=4)


# -- evaluation and output -------------------------------------------


def test_evaluate_cartan():
    eng = RewriteEngine(SU2)
    h1 = sympy.Symbol("h1")
    x = eng.monomial((((2, 1), 1),), (h1 + 1) / (h1 + 3), (((1, 2), 1),), 8)
    y = x.evaluate_cartan({1: 1})
    ((L, R), c), = y.terms.items()
    assert c.evaluate([0]) == Fraction(1, 2)
    with pytest.raises(SingularWeightError):
        x.evaluate_cartan({1: -3})


def test_dump_stable():
    eng = RewriteEngine(SU2)
    x = rewrite_word([(1, 2), (2, 1)], SU2, engine=eng, N=8)
    assert x.dump() == "[h1]\ne21 * [1] * e12"


def test_apply_element_su2():
    # e12 e21 acts as J+ J-; on the highest vector of spin 1/2 it is the
    # identity, on the lowest it is zero
    M = su2_irrep(Fraction(1, 2))
    x = rewrite_word([(1, 2), (2, 1)], SU2, N=M.weight_diameter)
    assert apply_element(x, M.basis_vector("m=1/2"), M) == M.basis_vector("m=1/2")
    assert apply_element(x, M.basis_vector("m=-1/2"), M).is_zero()
