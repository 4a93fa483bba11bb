"""First homology of the glued manifold as the cokernel of the P block.

The Smith form P = U D V turns coker P into Z^{b1} + sum of Z_{d_i}.
Torsion classes get canonical rational representatives theta in [0,1)^g
with P theta integral, built from the diagonal coordinates phi = V theta.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

from .exact import IntMatrix, SmithDecomposition, frac_mod1, integer_kernel, smith_normal_form
from .splitting import GluingData


class HomologyProfile:
    """Free rank, invariant factors, and the Smith data they came from."""

    __slots__ = ("b1", "invariant_factors", "torsion_order", "snf_of_P")

    def __init__(self, b1: int, invariant_factors: tuple, snf_of_P: SmithDecomposition):
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "invariant_factors", tuple(invariant_factors))
        object.__setattr__(self, "torsion_order", prod(invariant_factors, start=1))
        object.__setattr__(self, "snf_of_P", snf_of_P)

    def __setattr__(self, name, value):
        raise AttributeError("HomologyProfile is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomologyProfile)
            and self.b1 == other.b1
            and self.invariant_factors == other.invariant_factors
        )

    def __hash__(self) -> int:
        return hash((self.b1, self.invariant_factors))

    def __repr__(self) -> str:
        return (
            f"HomologyProfile(b1={self.b1}, invariant_factors="
            f"{list(self.invariant_factors)}, torsion_order={self.torsion_order})"
        )


class TorsionRep:
    """A flat representative: rational vector in [0,1)^g, P-image integral."""

    __slots__ = ("theta",)

    def __init__(self, theta):
        vals = tuple(Fraction(x) for x in theta)
        for x in vals:
            if not 0 <= x < 1:
                raise ValueError(f"component {x} is outside [0, 1)")
        object.__setattr__(self, "theta", vals)

    def __setattr__(self, name, value):
        raise AttributeError("TorsionRep is immutable")

    def __len__(self) -> int:
        return len(self.theta)

    def __iter__(self):
        return iter(self.theta)

    def __getitem__(self, i) -> Fraction:
        return self.theta[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, TorsionRep) and self.theta == other.theta

    def __hash__(self) -> int:
        return hash(self.theta)

    def __repr__(self) -> str:
        return f"TorsionRep(({', '.join(str(x) for x in self.theta)}))"


@lru_cache(maxsize=None)
def homology_profile(G: GluingData) -> HomologyProfile:
    """H1 of the glued manifold: b1 plus the invariant factors of coker P.

    Factors equal to 1 are dropped; b1 counts the zero diagonal entries of
    the Smith form of P.
    """
    snf = smith_normal_form(G.P)
    diag = snf.diagonal
    b1 = sum(1 for d in diag if d == 0)
    factors = tuple(d for d in diag if d >= 2)
    return HomologyProfile(b1, factors, snf)


class TorsionElements(Sequence):
    """The torsion subgroup of coker P as a random-access sequence.

    Element number k corresponds to the mixed-radix multi-index over the
    invariant factors (last index fastest), so concurrent consumers can
    partition [0, len) without coordination.  The identity sits at k = 0.
    """

    def __init__(self, G: GluingData):
        profile = homology_profile(G)
        snf = profile.snf_of_P
        diag = snf.diagonal
        self._dims = profile.invariant_factors
        self._positions = tuple(i for i, d in enumerate(diag) if d >= 2)
        self._free_positions = tuple(i for i, d in enumerate(diag) if d == 0)
        self._v = snf.V
        self._vinv = snf.v_inverse
        self._genus = G.genus
        self._order = profile.torsion_order

    @property
    def dims(self) -> tuple:
        """Invariant factors d_1 | d_2 | ... labelling the multi-index."""
        return self._dims

    def __len__(self) -> int:
        return self._order

    def __getitem__(self, k: int) -> TorsionRep:
        if not isinstance(k, int):
            raise TypeError("indices must be integers")
        if k < 0:
            k += self._order
        if not 0 <= k < self._order:
            raise IndexError(k)
        idx = []
        for d in reversed(self._dims):
            k, a = divmod(k, d)
            idx.append(a)
        return self.by_index(tuple(reversed(idx)))

    def by_index(self, index: tuple) -> TorsionRep:
        """Canonical representative of the multi-index (a_1, ..., a_r)."""
        if len(index) != len(self._dims):
            raise ValueError(f"expected {len(self._dims)} indices, got {len(index)}")
        phi = [Fraction(0)] * self._genus
        for a, d, pos in zip(index, self._dims, self._positions):
            phi[pos] = Fraction(a % d, d)
        theta = self._vinv.apply(phi)
        return TorsionRep(tuple(frac_mod1(x) for x in theta))

    def index_of(self, rep) -> tuple:
        """Multi-index of any torsion representative (not just canonical ones).

        Raises ValueError if the vector carries a free-mode component or
        fails the integrality constraint, i.e. does not represent a torsion
        class of coker P.
        """
        theta = tuple(Fraction(x) for x in rep)
        if len(theta) != self._genus:
            raise ValueError("representative has wrong length")
        phi = self._v.apply(theta)
        index = []
        for d, pos in zip(self._dims, self._positions):
            a = frac_mod1(phi[pos]) * d
            if a.denominator != 1:
                raise ValueError(f"coordinate {pos} is not a multiple of 1/{d}")
            index.append(int(a))
        for pos in range(self._genus):
            if pos not in self._positions and frac_mod1(phi[pos]) != 0:
                raise ValueError("vector has a component outside the torsion subgroup")
        return tuple(index)

    def add(self, a: TorsionRep, b: TorsionRep) -> TorsionRep:
        """Group sum with the result re-canonicalized."""
        ia, ib = self.index_of(a), self.index_of(b)
        return self.by_index(tuple((x + y) % d for x, y, d in zip(ia, ib, self._dims)))

    def kernel_count(self, k: int) -> int:
        """|{theta : k.theta = identity}|, the k-torsion count."""
        return prod((gcd(k, d) for d in self._dims), start=1)


@lru_cache(maxsize=None)
def torsion_elements(G: GluingData) -> TorsionElements:
    """All torsion classes of coker P, identity included, as canonical reps."""
    return TorsionElements(G)


def free_flat_basis(G: GluingData) -> list:
    """Q-basis of the free flat modes {x in Q^g : P x = 0}; dimension b1."""
    snf = homology_profile(G).snf_of_P
    r = snf.rank
    vinv = snf.v_inverse
    return [
        tuple(Fraction(e) for e in vinv.col(j)) for j in range(r, G.genus)
    ]


def curvature_lattice_basis(G: GluingData) -> list:
    """Integer basis of the curvature label lattice ker P† (rank b1)."""
    return integer_kernel(G.P.transpose())
