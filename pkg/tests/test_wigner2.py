"""su(2) coupling: CGC by two routes, unitarity, symmetries, 6j and 9j."""

from fractions import Fraction

import pytest

from extremal.exact import Radical, sqrt_of_rational
from extremal.repmod import su2_irrep
from extremal.wigner2 import (
    cgc_closed,
    cgc_projector,
    general_projector,
    lowering_monomial,
    ninej,
    sixj,
)

HALF = Fraction(1, 2)


def _rat(q):
    return Radical.from_rational(Fraction(q))


def _jrange(lo, hi):
    j = Fraction(lo)
    while j <= hi:
        yield j
        j += HALF


def _mrange(j):
    m = j
    while m >= -j:
        yield m
        m -= 1


def test_cgc_known_values():
    # (1/2 1/2 1/2 -1/2 | 0 0) = 1/sqrt(2); singlet antisymmetric
    assert cgc_closed(HALF, HALF, HALF, -HALF, 0, 0) == sqrt_of_rational(HALF)
    assert cgc_closed(HALF, -HALF, HALF, HALF, 0, 0) == -sqrt_of_rational(HALF)
    # stretched states are exactly 1
    assert cgc_closed(1, 1, HALF, HALF, Fraction(3, 2), Fraction(3, 2)) == _rat(1)
    # (1 0 1 0 | 2 0) = sqrt(2/3)
    assert cgc_closed(1, 0, 1, 0, 2, 0) == sqrt_of_rational(Fraction(2, 3))
    # (1 0 1 0 | 1 0) = 0
    assert not cgc_closed(1, 0, 1, 0, 1, 0)


def test_cgc_selection_rules():
    assert not cgc_closed(1, 1, 1, 1, 1, 1)          # m3 out of range via sum
    assert not cgc_closed(1, 0, HALF, HALF, 2, HALF)  # triangle violated
    assert not cgc_closed(HALF, HALF, HALF, HALF, 0, 1)


def test_dual_route_agreement():
    for j1 in _jrange(HALF, Fraction(3, 2)):
        for j2 in _jrange(HALF, 1):
            for j3 in _jrange(abs(j1 - j2), j1 + j2):
                for m3 in _mrange(j3):
                    for m1 in _mrange(j1):
                        m2 = m3 - m1
                        if abs(m2) > j2:
                            continue
                        a = cgc_closed(j1, m1, j2, m2, j3, m3)
                        b = cgc_projector(j1, m1, j2, m2, j3, m3)
                        assert a == b, (j1, m1, j2, m2, j3, m3)


def test_cgc_orthogonality():
    j1, j2 = Fraction(1), Fraction(3, 2)
    allowed = [abs(j1 - j2) + k for k in range(int(2 * min(j1, j2)) + 1)]
    # rows: sum over m1 m2 of C(j3 m3) C(j3' m3') = delta
    for j3 in allowed:
        for j3p in allowed:
            for m3 in _mrange(min(j3, j3p)):
                s = Radical.from_rational(0)
                for m1 in _mrange(j1):
                    m2 = m3 - m1
                    if abs(m2) > j2:
                        continue
                    s = s + cgc_closed(j1, m1, j2, m2, j3, m3) * cgc_closed(
                        j1, m1, j2, m2, j3p, m3
                    )
                assert s == _rat(1 if j3 == j3p else 0)


def test_cgc_swap_symmetry():
    # (j2 m2 j1 m1 | j3 m3) = (-1)^(j1+j2-j3) (j1 m1 j2 m2 | j3 m3)
    cases = [
        (1, 0, HALF, HALF, Fraction(3, 2), HALF),
        (1, 1, 1, -1, 1, 0),
        (Fraction(3, 2), HALF, 1, 0, Fraction(3, 2), HALF),
    ]
    for j1, m1, j2, m2, j3, m3 in cases:
        lhs = cgc_closed(j2, m2, j1, m1, j3, m3)
        rhs = cgc_closed(j1, m1, j2, m2, j3, m3)
        phase = (-1) ** int(Fraction(j1) + Fraction(j2) - Fraction(j3))
        assert lhs == rhs * _rat(phase)


def test_lowering_monomial_action():
    j = Fraction(3, 2)
    M = su2_irrep(j)
    top = M.basis_vector("m=3/2")
    for m in _mrange(j):
        out = lowering_monomial(j, m).apply(top, M)
        assert out == M.basis_vector("m=%s" % m)


def test_general_projector_action():
    j = 1
    M = su2_irrep(j)
    P = general_projector(j, 0, 1)
    assert P.apply(M.basis_vector("m=1"), M) == M.basis_vector("m=0")
    assert P.apply(M.basis_vector("m=0"), M).is_zero()
    with pytest.raises(ValueError):
        general_projector(1, 2, 0)


def test_sixj_special_values():
    assert sixj(1, 1, 1, 1, 1, 1) == _rat(Fraction(1, 6))
    # {a b c; 0 c b} = (-1)^(a+b+c)/sqrt((2b+1)(2c+1))
    for a, b, c in [(1, 1, 1), (2, 1, 1), (1, HALF, HALF), (Fraction(3, 2), 1, HALF)]:
        val = sixj(a, b, c, 0, c, b)
        expect = sqrt_of_rational(
            Fraction(1, (int(2 * b) + 1) * (int(2 * c) + 1))
        ) * _rat((-1) ** int(a + b + c))
        assert val == expect
    assert not sixj(1, 1, 3, 1, 1, 1)  # broken triangle


def test_sixj_orthogonality():
    # sum_x (2x+1) {a b x; c d p} {a b x; c d q} = delta_pq / (2p+1)
    a = b = c = d = 1
    for p in (0, 1, 2):
        for q in (0, 1, 2):
            s = Radical.from_rational(0)
            for x in (0, 1, 2):
                s = s + sixj(a, b, x, c, d, p) * sixj(a, b, x, c, d, q) * _rat(
                    2 * x + 1
                )
            assert s == _rat(Fraction(1, 2 * p + 1) if p == q else 0)


def test_ninej_values():
    # all-ones symbol vanishes by the row-swap antisymmetry
    assert not ninej(((1, 1, 1), (1, 1, 1), (1, 1, 1)))
    # tabulated rational values
    assert ninej(((1, 1, 2), (1, 1, 2), (2, 2, 2))) == _rat(Fraction(-1, 150))
    assert ninej(((HALF, HALF, 1), (HALF, HALF, 1), (1, 1, 2))) == _rat(
        Fraction(1, 9)
    )
    assert ninej(
        ((1, HALF, Fraction(3, 2)), (HALF, 1, Fraction(3, 2)), (Fraction(3, 2), Fraction(3, 2), 1))
    ) == _rat(Fraction(-1, 144))
