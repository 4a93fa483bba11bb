"""Exact integer and rational kernels: matrices, Smith normal form, phases.

Everything here is immutable and pure, and no floating point appears
anywhere in this module.  Rationals are `fractions.Fraction`; phases live
in Q/Z with a canonical reduced representative in [0, 1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

# Exact rational scalar used throughout the package.  Always stored in
# lowest terms with a positive denominator, which Fraction guarantees.
RationalQ = Fraction


def frac_mod1(x: int | Fraction) -> Fraction:
    """Canonical representative of a rational modulo 1, in [0, 1)."""
    f = Fraction(x)
    # gcd(n mod d, d) == gcd(n, d) == 1, so the result is already reduced
    return Fraction(f.numerator % f.denominator, f.denominator)


def vec_dot(u: Sequence, v: Sequence):
    """Exact dot product <u, v> of equal-length numeric vectors."""
    if len(u) != len(v):
        raise ValueError(f"dot product length mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


class IntMatrix:
    """Immutable integer matrix, entries row-major, arbitrary precision.

    Supports the small exact-linear-algebra vocabulary the rest of the
    package needs: products, transpose, application to rational vectors.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        ent = tuple(int(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(ent) != rows * cols:
            raise ValueError(
                f"entry count {len(ent)} does not equal rows*cols = {rows * cols}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # ----- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        """Build from an iterable of equal-length row iterables."""
        mat = [tuple(int(e) for e in row) for row in rows]
        m = len(mat)
        n = len(mat[0]) if mat else 0
        if any(len(r) != n for r in mat):
            raise ValueError("ragged rows")
        return cls(m, n, [e for row in mat for e in row])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    # ----- access -------------------------------------------------------

    def __getitem__(self, key) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> tuple:
        return tuple(self.row(i) for i in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # ----- algebra ------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        a, b = self.entries, other.entries
        n, p = self.cols, other.cols
        out = []
        for i in range(self.rows):
            base = i * n
            for j in range(p):
                out.append(sum(a[base + k] * b[k * p + j] for k in range(n)))
        return IntMatrix(self.rows, p, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return IntMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} - {other.shape}")
        return IntMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product; vec entries may be int or Fraction."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match cols {self.cols}")
        return tuple(
            sum(self.entries[i * self.cols + j] * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    # ----- protocol -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({list(list(r) for r in self.to_rows())!r})"


class PhaseQ:
    """A point of Q/Z written as the reduced fraction in [0, 1).

    Represents the unit phase e^{2*pi*i*value}.  Addition is mod 1, every
    element has finite order, and equality/hashing are exact, which is what
    lets phase multisets deduplicate reliably.
    """

    __slots__ = ("value", "_hash")

    def __init__(self, value: int | Fraction = 0):
        object.__setattr__(self, "value", frac_mod1(value))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _wrap(cls, reduced: Fraction) -> "PhaseQ":
        # fast path for callers that guarantee 0 <= reduced < 1
        self = object.__new__(cls)
        object.__setattr__(self, "value", reduced)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("PhaseQ is immutable")

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def order(self) -> int:
        """Order of the phase in the group Q/Z (1 for the zero phase)."""
        return self.value.denominator

    def __add__(self, other: "PhaseQ") -> "PhaseQ":
        return PhaseQ(self.value + other.value)

    def __neg__(self) -> "PhaseQ":
        return PhaseQ(-self.value)

    def __sub__(self, other: "PhaseQ") -> "PhaseQ":
        return PhaseQ(self.value - other.value)

    def __mul__(self, k: int | Fraction) -> "PhaseQ":
        return PhaseQ(self.value * k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, PhaseQ) and self.value == other.value

    def __lt__(self, other: "PhaseQ") -> bool:
        return self.value < other.value

    def __hash__(self) -> int:
        # hash((num, den)) is much cheaper than Fraction.__hash__ and only
        # needs to be consistent with __eq__, which admits PhaseQ alone
        h = self._hash
        if h is None:
            h = hash((self.value.numerator, self.value.denominator))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"PhaseQ({self.value})"

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


class SmithDecomposition:
    """Factorization A = U @ D @ V with U, V unimodular and D diagonal.

    Nonzero diagonal entries of D are positive and form a divisibility
    chain d1 | d2 | ... | dr; zeros trail.  The diagonal is canonical for
    the input matrix, while U and V are not unique.
    """

    __slots__ = ("U", "D", "V", "_v_inverse")

    def __init__(self, U: IntMatrix, D: IntMatrix, V: IntMatrix):
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "_v_inverse", None)

    def __setattr__(self, name, value):
        raise AttributeError("SmithDecomposition is immutable")

    @property
    def diagonal(self) -> tuple:
        d = self.D
        return tuple(d[i, i] for i in range(min(d.rows, d.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def v_inverse(self) -> IntMatrix:
        """Exact integer inverse of V, computed once on demand."""
        if self._v_inverse is None:
            object.__setattr__(self, "_v_inverse", unimodular_inverse(self.V))
        return self._v_inverse

    def __repr__(self) -> str:
        return f"SmithDecomposition(diagonal={list(self.diagonal)!r})"


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with tracked unimodular transforms.

    Parameters
    ----------
    A : IntMatrix
        Any integer matrix, including zero and non-square ones.

    Returns
    -------
    SmithDecomposition
        U, D, V with A = U @ D @ V exactly, U and V unimodular, and the
        diagonal of D the canonical invariant-factor chain.

    Pivoting picks the smallest-magnitude nonzero entry to limit entry
    growth; all arithmetic is on Python ints, so intermediate blowup is
    legal, just slower.
    """
    m, n = A.rows, A.cols
    work = [list(A.row(i)) for i in range(m)]
    # invariant maintained by every elementary step: A == u @ work @ v
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        work[i], work[j] = work[j], work[i]
        for r in range(m):
            u[r][i], u[r][j] = u[r][j], u[r][i]

    def row_addmul(i, j, c):
        # work: row i += c * row j, so u: col j -= c * col i
        wi, wj = work[i], work[j]
        for t in range(n):
            wi[t] += c * wj[t]
        for r in range(m):
            u[r][j] -= c * u[r][i]

    def row_negate(i):
        work[i] = [-e for e in work[i]]
        for r in range(m):
            u[r][i] = -u[r][i]

    def col_swap(i, j):
        for r in range(m):
            work[r][i], work[r][j] = work[r][j], work[r][i]
        v[i], v[j] = v[j], v[i]

    def col_addmul(i, j, c):
        # work: col i += c * col j, so v: row j -= c * row i
        for r in range(m):
            work[r][i] += c * work[r][j]
        vi, vj = v[i], v[j]
        for t in range(n):
            vj[t] -= c * vi[t]

    def col_negate(i):
        for r in range(m):
            work[r][i] = -work[r][i]
        v[i] = [-e for e in v[i]]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing submatrix becomes the pivot
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = work[i][j]
                if e != 0 and (best is None or abs(e) < best):
                    best = abs(e)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])

        while True:
            # Euclidean clearing of column t and row t; each swap strictly
            # shrinks |pivot|, so this terminates
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if work[i][t]:
                        q = work[i][t] // work[t][t]
                        if q:
                            row_addmul(i, t, -q)
                        if work[i][t]:
                            row_swap(t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if work[t][j]:
                        q = work[t][j] // work[t][t]
                        if q:
                            col_addmul(j, t, -q)
                        if work[t][j]:
                            col_swap(t, j)
                            dirty = True
            # divisibility fix-up: fold in a row holding a non-multiple,
            # which drives the pivot down to a gcd on the next pass
            bad_row = None
            for i in range(t + 1, m):
                if any(work[i][j] % work[t][t] for j in range(t + 1, n)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            row_addmul(t, bad_row, 1)
        if work[t][t] < 0:
            row_negate(t)
        t += 1

    U = IntMatrix.from_rows(u) if m else IntMatrix(0, 0, [])
    V = IntMatrix.from_rows(v) if n else IntMatrix(0, 0, [])
    D = IntMatrix.from_rows(work) if m else IntMatrix(0, n, [])
    return SmithDecomposition(U, D, V)


def unimodular_inverse(M: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix.

    Gauss-Jordan over Fraction; raises ValueError if M is singular or the
    inverse is not integral (i.e. M was not unimodular).
    """
    if not M.is_square:
        raise ValueError("only square matrices can be inverted")
    n = M.rows
    aug = [
        [Fraction(M[i, j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [e * inv for e in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    out = []
    for i in range(n):
        for j in range(n):
            e = aug[i][j + n]
            if e.denominator != 1:
                raise ValueError("matrix is invertible over Q but not unimodular")
            out.append(e.numerator)
    return IntMatrix(n, n, out)


def integer_kernel(A: IntMatrix) -> list:
    """Basis of the integer kernel lattice {x in Z^cols : A @ x = 0}.

    The basis vectors are the columns of V^-1 (from the Smith form
    A = U D V) that line up with zero diagonal entries, so the lattice
    they span is saturated: any integer solution is an integer combination
    of them.
    """
    snf = smith_normal_form(A)
    r = snf.rank
    if r == A.cols:
        return []
    vinv = snf.v_inverse
    return [vinv.col(j) for j in range(r, A.cols)]


def determinant(A: IntMatrix) -> int:
    """Exact determinant via the fraction-free Bareiss elimination."""
    if not A.is_square:
        raise ValueError("determinant requires a square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [list(A.row(i)) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: the division is exact by the Sylvester identity
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
