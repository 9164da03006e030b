"""Explicit modules: matrices, defining relations, application of elements."""

from fractions import Fraction

import pytest

from extremal.algebra import build_root_system
from extremal.exact import Radical, sqrt_of_rational
from extremal.pbw import RewriteEngine, SingularWeightError, rewrite_word
from extremal.repmod import (
    TruncationError,
    apply_element,
    casimir_matrix_su2,
    mat_add,
    mat_eq,
    mat_identity,
    mat_mul,
    mat_scale,
    su2_irrep,
    su3_irrep,
    tensor,
)

SU2 = build_root_system(2)
SU3 = build_root_system(3)


def _commutator(M, a, b):
    return mat_add(mat_mul(M.matrix(a), M.matrix(b)),
                   mat_scale(mat_mul(M.matrix(b), M.matrix(a)), -1))


def _diag_diff(M, i, j):
    """Matrix of e_ii - e_jj from the stored weights (su(3): partial sums of h)."""
    out = {}
    for idx, w in enumerate(M.weights):
        v = sum(w[k] for k in range(min(i, j) - 1, max(i, j) - 1))
        if i > j:
            v = -v
        if v:
            out[(idx, idx)] = Radical.from_rational(v)
    return out


def test_su2_irrep_shape():
    M = su2_irrep(Fraction(3, 2))
    assert M.dim == 4
    assert M.weights == [(Fraction(3),), (Fraction(1),), (Fraction(-1),), (Fraction(-3),)]
    assert M.weight_diameter == 3
    with pytest.raises(ValueError):
        su2_irrep(Fraction(1, 3))
    with pytest.raises(ValueError):
        su2_irrep(-1)


def test_su2_defining_relations():
    for j in (Fraction(1, 2), 1, Fraction(5, 2)):
        M = su2_irrep(j)
        # [e12, e21] = h1
        assert mat_eq(_commutator(M, (1, 2), (2, 1)), M.matrix(("h", 1)))
        # [h1, e12] = 2 e12
        assert mat_eq(_commutator(M, ("h", 1), (1, 2)), mat_scale(M.matrix((1, 2)), 2))


def test_su2_casimir_scalar():
    for j in (Fraction(1, 2), 1, 2, Fraction(7, 2)):
        M = su2_irrep(j)
        c = Fraction(j) * (Fraction(j) + 1)
        assert mat_eq(casimir_matrix_su2(M), mat_scale(mat_identity(M.dim), c))


def test_su2_lowering_reconstruction():
    # J-^k |j j> = sqrt(k! (2j)!/(2j-k)!) |j, j-k>
    import math

    from extremal.repmod import mat_vec

    j = 2
    M = su2_irrep(j)
    coords = dict(M.basis_vector("m=2").coords)
    low = M.matrix((2, 1))
    for k in range(1, 2 * j + 1):
        coords = mat_vec(low, coords)
        n2 = Fraction(math.factorial(k) * math.factorial(2 * j)) / math.factorial(2 * j - k)
        target = M.basis_vector("m=%d" % (j - k)).scale(sqrt_of_rational(n2))
        assert coords == target.coords


def test_su3_dims_and_weights():
    cases = {(1, 0): 3, (0, 1): 3, (2, 0): 6, (1, 1): 8, (2, 1): 15, (3, 0): 10}
    for (lam, mu), d in cases.items():
        M = su3_irrep(lam, mu)
        assert M.dim == d
        assert M.weights[0] == (Fraction(lam), Fraction(mu))
    with pytest.raises(ValueError):
        su3_irrep(-1, 0)
    with pytest.raises(ValueError):
        su3_irrep(4, 4)


def test_su3_defining_relations():
    for lam, mu in ((1, 0), (0, 1), (2, 0), (1, 1)):
        M = su3_irrep(lam, mu)
        gens = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
        for a in gens:
            for b in gens:
                comm = _commutator(M, a, b)
                i, j = a
                k, l = b
                if j == k and i == l:
                    assert mat_eq(comm, _diag_diff(M, i, j)), (a, b)
                else:
                    expect = {}
                    if j == k:
                        expect = dict(M.matrix((i, l)))
                    if i == l:
                        sub = M.matrix((k, j))
                        for key, v in sub.items():
                            expect[key] = expect.get(key, Radical.from_rational(0)) - v
                    expect = {key: v for key, v in expect.items() if v}
                    assert mat_eq(comm, expect), (a, b)


def test_su3_cartan_eigenvalues_match_shifts():
    # [h_k, e_ij] = s_k e_ij with the engine's shift vector
    eng = RewriteEngine(SU3)
    M = su3_irrep(1, 1)
    for g in ((1, 2), (2, 3), (1, 3), (2, 1), (3, 2), (3, 1)):
        s = eng.shift_vector(g)
        for k in (1, 2):
            comm = _commutator(M, ("h", k), g)
            assert mat_eq(comm, mat_scale(M.matrix(g), s[k - 1])), (g, k)


def test_tensor_module():
    A = su3_irrep(1, 0)
    B = su3_irrep(0, 1)
    T = tensor(A, B)
    assert T.dim == 9
    # weights add componentwise: (1,0) highest + (0,1) highest
    assert T.weights[0] == (Fraction(1), Fraction(1))
    for idx, (ta, tb) in enumerate(T.tags):
        wa = A.weights[A.index(ta)]
        wb = B.weights[B.index(tb)]
        assert T.weights[idx] == (wa[0] + wb[0], wa[1] + wb[1])
    with pytest.raises(ValueError):
        tensor(A, su2_irrep(1))


def test_truncation_guard():
    M = su2_irrep(2)
    x = rewrite_word([(1, 2)], SU2, N=1)
    with pytest.raises(TruncationError):
        apply_element(x, M.basis_vector(0), M)


def test_singular_routing():
    import sympy

    eng = RewriteEngine(SU2)
    M = su2_irrep(1)
    h1 = sympy.Symbol("h1")
    # 1/(h1 + 2) vanishes at the m = -1 component (weight -2, non-dominant)
    x = eng.cartan(1 / (h1 + 2), M.weight_diameter)
    v = M.basis_vector("m=1") + M.basis_vector("m=-1")
    with pytest.raises(SingularWeightError):
        apply_element(x, v, M)
    out = apply_element(x, v, M, singular="zero")
    assert out == M.basis_vector("m=1").scale(Fraction(1, 4))
    # a pole on a dominant component is a real error even under "zero"
    y = eng.cartan(1 / h1, M.weight_diameter)
    with pytest.raises(SingularWeightError):
        apply_element(y, M.basis_vector("m=0"), M, singular="zero")
