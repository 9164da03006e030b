"""Root-system data for su(n) and normal orderings of the positive roots.

Roots are keyed by index pairs (i, j) with i < j, standing for eps_i - eps_j;
the raising generator attached to (i, j) is e_ij and the lowering one is e_ji.
The inner product is normalized so every root has (gamma, gamma) = 2, which
makes the per-root denominator shifts of the projector factors integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

__all__ = [
    "Root",
    "RootSystemData",
    "NormalOrdering",
    "build_root_system",
    "validate_normal_ordering",
    "enumerate_normal_orderings",
]

Root = tuple  # (i, j) with i < j


@dataclass(frozen=True)
class RootSystemData:
    """Positive roots of su(n) with pairings and the e_ij correspondence."""

    n: int
    positive_roots: tuple
    simple_roots: tuple

    @property
    def rank(self):
        return self.n - 1

    def inner_product(self, g, d):
        """(gamma, delta) with (eps_i, eps_j) = delta_ij, so (gamma,gamma)=2."""
        (i, j), (k, l) = g, d
        return Fraction((i == k) - (i == l) - (j == k) + (j == l))

    def rho_pairing(self, g):
        """(rho, gamma) = j - i for gamma = eps_i - eps_j."""
        i, j = g
        return Fraction(j - i)

    def root_to_generator(self, g):
        """Raising generator index pair for the root: (i, j) itself."""
        return g

    def is_composite(self, g):
        return g not in self.simple_roots


@dataclass(frozen=True)
class NormalOrdering:
    """A permutation of the positive roots with every composite root between
    its two constituents."""

    sequence: tuple


def build_root_system(n):
    if not (2 <= n <= 6):
        raise ValueError("su(n) rank out of supported range: n=%r" % (n,))
    roots = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    simple = tuple((i, i + 1) for i in range(1, n))
    return RootSystemData(n=n, positive_roots=roots, simple_roots=simple)


def _composition_triples(sys):
    """All (alpha, beta, gamma) of positive roots with alpha + beta = gamma."""
    out = []
    for (i, j) in sys.positive_roots:
        for k in range(i + 1, j):
            out.append(((i, k), (k, j), (i, j)))
    return out


def validate_normal_ordering(sys, seq):
    """Check the betweenness condition; returns (ok, violations).

    violations lists (alpha, beta, gamma) triples with gamma = alpha + beta
    where gamma is not strictly between alpha and beta in seq.
    """
    seq = tuple(seq)
    if sorted(seq) != sorted(sys.positive_roots):
        raise ValueError("sequence is not a permutation of the positive roots")
    pos = {r: i for i, r in enumerate(seq)}
    violations = []
    for a, b, g in _composition_triples(sys):
        lo, hi = sorted((pos[a], pos[b]))
        if not (lo < pos[g] < hi):
            violations.append((a, b, g))
    return (not violations), violations


def enumerate_normal_orderings(sys):
    """All normal orderings, by brute-force filtering of the permutations."""
    if sys.rank > 3:
        raise ValueError("enumeration guarded to rank <= 3")
    out = []
    for perm in permutations(sys.positive_roots):
        ok, _ = validate_normal_ordering(sys, perm)
        if ok:
            out.append(NormalOrdering(sequence=perm))
    return out


def default_ordering(sys):
    """Lexicographic-first valid normal ordering; for su(3) this is
    ((1,2),(1,3),(2,3)), matching the factorized product form."""
    if sys.rank <= 3:
        return enumerate_normal_orderings(sys)[0]
    # Rank > 3: the lexicographic order of (i, j) pairs is normal for su(n).
    seq = tuple(sorted(sys.positive_roots))
    ok, _ = validate_normal_ordering(sys, seq)
    if not ok:  # pragma: no cover - lexicographic order is always normal
        raise RuntimeError("lexicographic ordering unexpectedly invalid")
    return NormalOrdering(sequence=seq)
