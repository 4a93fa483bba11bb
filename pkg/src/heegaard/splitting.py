"""Gluing data for Heegaard splittings: validation and constructors.

A genus-g splitting is recorded by four integer g x g blocks R, P, S, Q,
the action of the gluing map on the standard homology basis of the
surface, arranged as the 2g x 2g matrix [[R, P], [S, Q]].  Validity means
the six block relations below, which are equivalent to the matrix being
anti-symplectic for the surface intersection form J.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Iterable

from .exact import IntMatrix


class ValidationError(ValueError):
    """Rejected gluing blocks; carries the named violations."""

    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


def _as_block(x, name: str) -> IntMatrix:
    if isinstance(x, IntMatrix):
        return x
    try:
        return IntMatrix.from_rows(x)
    except (TypeError, ValueError) as exc:
        raise ValidationError([f"block {name} is not an integer matrix: {exc}"]) from exc


def _coerce_blocks(r, p, s, q) -> tuple:
    blocks = tuple(_as_block(x, n) for x, n in zip((r, p, s, q), "RPSQ"))
    g = blocks[0].rows
    for b, n in zip(blocks, "RPSQ"):
        if not b.is_square or b.rows != g:
            raise ValidationError(
                [f"dimension mismatch: block {n} is {b.rows}x{b.cols}, expected {g}x{g}"]
            )
    if g < 1:
        raise ValidationError(["genus must be at least 1"])
    return blocks


def _fmt(m: IntMatrix) -> str:
    if m.shape == (1, 1):
        return str(m[0, 0])
    return str([list(row) for row in m.to_rows()])


def block_relation_violations(r, p, s, q) -> list:
    """Evaluate the six block relations, returning one line per failure.

    Each line names the relation and prints both sides (or the defect
    against the identity), so a report can show exactly what failed.
    """
    R, P, S, Q = _coerce_blocks(r, p, s, q)
    g = R.rows
    I = IntMatrix.identity(g)
    Rt, Pt, St, Qt = (b.transpose() for b in (R, P, S, Q))
    out = []
    pairs = [
        ("Q†P = P†Q", Qt @ P, Pt @ Q),
        ("P†S − Q†R = 1", Pt @ S - Qt @ R, I),
        ("S†R = R†S", St @ R, Rt @ S),
        ("RP† = PR†", R @ Pt, P @ Rt),
        ("SP† − QR† = 1", S @ Pt - Q @ Rt, I),
        ("SQ† = QS†", S @ Qt, Q @ St),
    ]
    for name, lhs, rhs in pairs:
        if lhs != rhs:
            if rhs == I and "1" in name:
                out.append(f"{name.split(' = ')[0]} = {_fmt(lhs)} ≠ 1")
            else:
                a, b = name.split(" = ")
                out.append(f"{a} = {_fmt(lhs)} ≠ {_fmt(rhs)} = {b}")
    return out


class GluingData:
    """Validated gluing blocks of a genus-g Heegaard splitting.

    Construction runs the full six-relation validation and raises
    ValidationError otherwise, so every live instance is valid.  Instances
    are immutable and hashable (partition sums memoize on them).
    """

    __slots__ = ("genus", "R", "P", "S", "Q")

    def __init__(self, r, p, s, q):
        R, P, S, Q = _coerce_blocks(r, p, s, q)
        bad = block_relation_violations(R, P, S, Q)
        if bad:
            raise ValidationError(bad)
        object.__setattr__(self, "genus", R.rows)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "Q", Q)

    def __setattr__(self, name, value):
        raise AttributeError("GluingData is immutable")

    @property
    def matrix(self) -> IntMatrix:
        """The full 2g x 2g gluing matrix [[R, P], [S, Q]]."""
        return blocks_to_matrix(self.R, self.P, self.S, self.Q)

    @property
    def matrix_inverse(self) -> IntMatrix:
        """Closed-form inverse [[−Q†, P†], [S†, −R†]] of the gluing matrix."""
        return blocks_to_matrix(
            -self.Q.transpose(),
            self.P.transpose(),
            self.S.transpose(),
            -self.R.transpose(),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GluingData)
            and self.genus == other.genus
            and self.R == other.R
            and self.P == other.P
            and self.S == other.S
            and self.Q == other.Q
        )

    def __hash__(self) -> int:
        return hash((self.genus, self.R, self.P, self.S, self.Q))

    def __repr__(self) -> str:
        return (
            f"GluingData(genus={self.genus}, R={self.R.to_rows()}, "
            f"P={self.P.to_rows()}, S={self.S.to_rows()}, Q={self.Q.to_rows()})"
        )


def validate(r, p, s, q) -> GluingData:
    """Validate four candidate blocks, returning GluingData on success.

    Raises ValidationError whose .violations lists every failed relation
    by name with both sides printed.
    """
    return GluingData(r, p, s, q)


def intersection_form(genus: int) -> IntMatrix:
    """The surface intersection form J = [[0, I], [−I, 0]] on 2g generators."""
    g = genus
    rows = []
    for i in range(2 * g):
        row = [0] * (2 * g)
        if i < g:
            row[g + i] = 1
        else:
            row[i - g] = -1
        rows.append(row)
    return IntMatrix.from_rows(rows)


def blocks_to_matrix(R: IntMatrix, P: IntMatrix, S: IntMatrix, Q: IntMatrix) -> IntMatrix:
    g = R.rows
    rows = []
    for i in range(g):
        rows.append(list(R.row(i)) + list(P.row(i)))
    for i in range(g):
        rows.append(list(S.row(i)) + list(Q.row(i)))
    return IntMatrix.from_rows(rows)


def matrix_to_blocks(M: IntMatrix) -> tuple:
    if not M.is_square or M.rows % 2:
        raise ValueError("gluing matrix must be square of even size")
    g = M.rows // 2
    sub = lambda r0, c0: IntMatrix.from_rows(
        [[M[r0 + i, c0 + j] for j in range(g)] for i in range(g)]
    )
    return sub(0, 0), sub(0, g), sub(g, 0), sub(g, g)


def anti_symplectic_check(r, p, s, q) -> bool:
    """True iff the assembled matrix M satisfies M†JM = −J.

    Takes raw blocks so that invalid candidates can be probed; agrees with
    the six-relation validator on every input.
    """
    R, P, S, Q = _coerce_blocks(r, p, s, q)
    M = blocks_to_matrix(R, P, S, Q)
    J = intersection_form(R.rows)
    return M.transpose() @ J @ M == -J


def _egcd(a: int, b: int) -> tuple:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def lens(p: int, q: int) -> GluingData:
    """Genus-1 splitting of the lens space L(p, q).

    p = 1 gives the 3-sphere, p = 0 (with q = ±1) gives S¹ x S².
    Negative p is normalized to |p| with q negated.  The completion (r, s)
    of the gluing matrix solves p·s − q·r = 1 with |r| minimal, preferring
    s ≥ 0, then |s| minimal, then r ≥ 0; downstream invariants do not
    depend on the choice.
    """
    p, q = int(p), int(q)
    if p < 0:
        p, q = -p, -q
    if gcd(p, q) != 1:
        raise ValueError(f"lens({p}, {q}) requires gcd(p, q) = 1")
    if p == 0:
        # −q·r = 1 forces r = −q; pick the smallest nonnegative s
        r, s = -q, 0
    else:
        g, x, y = _egcd(p, q)
        assert g == 1
        # p·x + q·y = 1, so (r0, s0) = (−y, x); the solution line is
        # r = r0 + p·t, s = s0 + q·t
        r0, s0 = -y, x
        t_center = round(-r0 / p)
        best = None
        for t in range(t_center - 2, t_center + 3):
            r, s = r0 + p * t, s0 + q * t
            key = (abs(r), 0 if s >= 0 else 1, abs(s), 0 if r >= 0 else 1)
            if best is None or key < best[0]:
                best = (key, r, s)
        _, r, s = best
    return GluingData([[r]], [[p]], [[s]], [[q]])


def connected_sum(g1: GluingData, g2: GluingData) -> GluingData:
    """Block-diagonal join; the manifold is the connected sum."""

    def diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
        n1, n2 = a.rows, b.rows
        rows = [list(a.row(i)) + [0] * n2 for i in range(n1)]
        rows += [[0] * n1 + list(b.row(i)) for i in range(n2)]
        return IntMatrix.from_rows(rows)

    return GluingData(
        diag(g1.R, g2.R), diag(g1.P, g2.P), diag(g1.S, g2.S), diag(g1.Q, g2.Q)
    )


def stabilize(g: GluingData) -> GluingData:
    """Connected sum with the genus-1 splitting of S³; genus grows by one."""
    return connected_sum(g, lens(1, 0))


def _transvection_vectors(genus: int) -> list:
    """Vectors generating the transvection word alphabet.

    Standard basis vectors e_i (longitudes), f_i (meridians), the sums
    e_i + f_i, and consecutive-handle mixers.
    """
    g = genus
    n = 2 * g

    def unit(i):
        v = [0] * n
        v[i] = 1
        return tuple(v)

    def add(u, v):
        return tuple(a + b for a, b in zip(u, v))

    vecs = []
    for i in range(g):
        e, f = unit(i), unit(g + i)
        vecs += [e, f, add(e, f)]
    for i in range(g - 1):
        e0, e1 = unit(i), unit(i + 1)
        f0, f1 = unit(g + i), unit(g + i + 1)
        vecs += [add(e0, e1), add(f0, f1), add(e0, f1)]
    return vecs


def _transvection(v: tuple, c: int, J: IntMatrix) -> IntMatrix:
    # T = 1 + c·v·(v†J); symplectic for every integer c since v†Jv = 0
    n = len(v)
    col = IntMatrix(n, 1, v)
    row = col.transpose() @ J
    return IntMatrix.identity(n) + (col @ row).scale(c)


def random_splitting(genus: int, seed: int, word_length: int) -> GluingData:
    """Seeded random valid splitting: M = M₀ · (word of transvections).

    M₀ is the block swap [[0, I], [I, 0]], the standard genus-g splitting
    of the 3-sphere; right-multiplying by a symplectic word keeps the
    anti-symplectic property, so every output is valid by construction.
    The result is a deterministic function of (genus, seed, word_length).
    """
    if genus < 1:
        raise ValueError("genus must be at least 1")
    if word_length < 0:
        raise ValueError("word_length must be nonnegative")
    g = genus
    rng = random.Random(f"heegaard:{genus}:{seed}:{word_length}")
    J = intersection_form(g)
    vecs = _transvection_vectors(g)
    W = IntMatrix.identity(2 * g)
    for _ in range(word_length):
        v = vecs[rng.randrange(len(vecs))]
        c = rng.choice((1, -1))
        W = W @ _transvection(v, c, J)
    zero = IntMatrix.zeros(g, g)
    ident = IntMatrix.identity(g)
    M0 = blocks_to_matrix(zero, ident, ident, zero)
    R, P, S, Q = matrix_to_blocks(M0 @ W)
    return GluingData(R, P, S, Q)
