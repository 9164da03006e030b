"""Gelfand-Tsetlin basis for su(3) adapted to su(3) > u_Y(1) x su_T(2) > u(1).

Basis vectors of the irrep (lam, mu) are labeled (j, t, t_z): hypercharge
y = -(2*lam + mu)/3 + 2j, T-spin t, projection t_z.  Each vector is produced
by the explicit lowering operator

    N_jt * P^t_{t_z;t} * e31^(j + mu/2 - t) * e21^(j - mu/2 + t) |h>,

where P^t is the general projection operator of the T-spin su(2) subalgebra
(T+ = e23, T- = e32, T0 = (e22 - e33)/2) and N_jt a closed-form factorial
normalization.  Generator matrices in the GT basis are then read off by exact
inner products.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import build_root_system
from .exact import Radical, factorial_ratio, sqrt_of_rational
from .pbw import RewriteEngine
from .projector import projector_factor
from .repmod import ModuleVector, apply_element, mat_vec, su3_irrep

__all__ = [
    "enumerate_gt_labels",
    "gt_hypercharge",
    "gt_norm_factor",
    "gt_vector",
    "generator_matrix_elements",
    "su3_engine",
]

_SYS3 = build_root_system(3)
_ENG3 = None


def su3_engine():
    global _ENG3
    if _ENG3 is None:
        _ENG3 = RewriteEngine(_SYS3)
    return _ENG3


@lru_cache(maxsize=None)
def t_projector(N):
    """Extremal projector of the T-spin su(2) subalgebra, the (2,3) factor."""
    return projector_factor(_SYS3, (2, 3), N, engine=su3_engine()).series


def _half(x):
    f = Fraction(x)
    if (2 * f).denominator != 1:
        raise ValueError("not a half-integer: %s" % (x,))
    return f


def admissible_jt(lam, mu, j, t):
    """The four label inequalities plus the integrality of mu/2 + j + t."""
    mu2 = Fraction(mu, 2)
    if j < 0 or t < 0:
        return False
    if (mu2 + j + t).denominator != 1:
        return False
    return (
        mu2 + j - t >= 0
        and -mu2 + j + t >= 0
        and mu2 - j + t >= 0
        and mu2 + j + t <= lam + mu
    )


def enumerate_gt_labels(lam, mu):
    """All (j, t, t_z) labels of (lam, mu) in a fixed deterministic order.

    Order: ascending j, then ascending t, then descending t_z; the first
    label is the highest-weight one (0, mu/2, mu/2).
    """
    lam, mu = int(lam), int(mu)
    out = []
    for jj in range(0, 2 * (lam + mu) + 1):
        for tt in range(0, 2 * (lam + mu) + 1):
            j, t = Fraction(jj, 2), Fraction(tt, 2)
            if not admissible_jt(lam, mu, j, t):
                continue
            tz = t
            while tz >= -t:
                out.append((j, t, tz))
                tz -= 1
    return out


def gt_hypercharge(lam, mu, j):
    return -Fraction(2 * lam + mu, 3) + 2 * Fraction(j)


def gt_norm_factor(lam, mu, j, t):
    """Normalization N^{(lam mu)}_{jt}: positive square root of a factorial
    ratio that makes the lowering-operator vector unit length."""
    lam, mu = int(lam), int(mu)
    j, t = _half(j), _half(t)
    if not admissible_jt(lam, mu, j, t):
        raise ValueError("inadmissible (j, t) = (%s, %s) for (%d, %d)" % (j, t, lam, mu))
    mu2 = Fraction(mu, 2)
    ratio = factorial_ratio(
        [lam + mu2 - j + t + 1, lam + mu2 - j - t, mu2 + j + t + 1, mu2 - j + t],
        [lam, mu, lam + mu + 1, j + mu2 - t, j - mu2 + t, 2 * t + 1],
    )
    return sqrt_of_rational(ratio)


def _pow_apply(mat, coords, k):
    for _ in range(int(k)):
        coords = mat_vec(mat, coords)
        if not coords:
            break
    return coords


def gt_vector(lam, mu, label, module=None):
    """The GT basis vector for `label` as exact coordinates in the realized
    module of su3_irrep(lam, mu)."""
    lam, mu = int(lam), int(mu)
    j, t, tz = (_half(x) for x in label)
    if not admissible_jt(lam, mu, j, t) or abs(tz) > t or (t - tz).denominator != 1:
        raise ValueError("inadmissible GT label %s for (%d, %d)" % (label, lam, mu))
    M = module if module is not None else su3_irrep(lam, mu)
    mu2 = Fraction(mu, 2)
    a, b = j + mu2 - t, j - mu2 + t
    coords = _pow_apply(M.matrix((2, 1)), {0: Radical.from_rational(1)}, b)
    coords = _pow_apply(M.matrix((3, 1)), coords, a)
    v = apply_element(
        t_projector(M.weight_diameter), ModuleVector(coords), M, singular="zero"
    )
    v = ModuleVector(_pow_apply(M.matrix((3, 2)), v.coords, t - tz))
    scalar = sqrt_of_rational(factorial_ratio([t + tz], [2 * t, t - tz]))
    return v.scale(gt_norm_factor(lam, mu, j, t) * scalar)


@lru_cache(maxsize=None)
def _gt_basis(lam, mu):
    M = su3_irrep(lam, mu)
    labels = tuple(enumerate_gt_labels(lam, mu))
    vecs = tuple(gt_vector(lam, mu, lab, module=M) for lab in labels)
    return M, labels, vecs


def generator_matrix_elements(lam, mu):
    """Sparse matrices of every e_ij over the GT basis, plus the label list.

    Entry (r, c) of matrix g is <gt_r| g |gt_c>, exact over Radical.
    """
    M, labels, vecs = _gt_basis(lam, mu)
    out = {}
    for i in range(1, 4):
        for g in ((i, jj) for jj in range(1, 4) if jj != i):
            pm = M.matrix(g)
            mat = {}
            for c, vc in enumerate(vecs):
                img = ModuleVector(mat_vec(pm, vc.coords))
                if img.is_zero():
                    continue
                for r, vr in enumerate(vecs):
                    dot = vr.inner(img)
                    if dot:
                        mat[(r, c)] = dot
            out[g] = mat
    return labels, out
