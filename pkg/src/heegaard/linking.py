"""Torsion linking form of the glued manifold, directly from the blocks.

Gamma(theta, vartheta) = <Q theta, P vartheta> mod 1 on torsion
representatives.  Symmetry and representative independence follow from the
block relations and are asserted by the test suite rather than assumed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm

from .exact import PhaseQ, vec_dot
from .homology import torsion_elements
from .splitting import GluingData


class LinkingMatrix:
    """Gram matrix of the linking form over the SNF torsion generators."""

    __slots__ = ("generators", "gram")

    def __init__(self, generators, gram):
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "gram", tuple(tuple(row) for row in gram))

    def __setattr__(self, name, value):
        raise AttributeError("LinkingMatrix is immutable")

    def __repr__(self) -> str:
        rows = [[str(ph) for ph in row] for row in self.gram]
        return f"LinkingMatrix(gram={rows})"


def linking_form(G: GluingData, theta, vartheta) -> PhaseQ:
    """<Q theta, P vartheta> reduced mod 1, on explicit representatives.

    Both arguments must satisfy the torsion constraint P·x integral;
    anything else is rejected, since the form is only defined there.
    """
    vecs = []
    for name, raw in (("theta", theta), ("vartheta", vartheta)):
        vec = tuple(Fraction(x) for x in raw)
        if len(vec) != G.genus:
            raise ValueError(f"{name} has length {len(vec)}, expected {G.genus}")
        image = G.P.apply(vec)
        if any(x.denominator != 1 for x in image):
            raise ValueError(f"{name} is not a torsion representative: P·{name} is not integral")
        vecs.append(vec)
    t, v = vecs
    return PhaseQ(vec_dot(G.Q.apply(t), G.P.apply(v)))


@lru_cache(maxsize=None)
def linking_matrix(G: GluingData) -> LinkingMatrix:
    """Gram matrix over the canonical SNF generators; symmetric mod 1."""
    T = torsion_elements(G)
    r = len(T.dims)
    gens = [T.by_index(tuple(1 if i == j else 0 for j in range(r))) for i in range(r)]
    gram = [[linking_form(G, gi, gj) for gj in gens] for gi in gens]
    return LinkingMatrix(gens, gram)


@lru_cache(maxsize=None)
def gram_integerized(G: GluingData) -> tuple:
    """The gram matrix scaled onto a common denominator L.

    Returns (L, g) with g[i][j] = L * Gamma(gen_i, gen_j) as plain ints, so
    downstream sums can run in integer arithmetic mod L.
    """
    lm = linking_matrix(G)
    dens = [ph.denominator for row in lm.gram for ph in row]
    L = lcm(*dens) if dens else 1
    g = tuple(
        tuple(int(ph.value * L) for ph in row)
        for row in lm.gram
    )
    return L, g


@lru_cache(maxsize=None)
def is_nondegenerate(G: GluingData) -> bool:
    """True iff only the identity pairs to zero with every torsion class.

    Scans the whole torsion group; by bilinearity it is enough to test each
    class against the generators, which keeps the scan in integer
    arithmetic.
    """
    T = torsion_elements(G)
    dims = T.dims
    if not dims:
        return True
    L, g = gram_integerized(G)
    r = len(dims)
    for a in product(*(range(d) for d in dims)):
        if not any(a):
            continue
        # Gamma(theta_a, gen_j) = sum_i a_i g[i][j] / L by bilinearity
        if all(sum(a[i] * g[i][j] for i in range(r)) % L == 0 for j in range(r)):
            return False
    return True
