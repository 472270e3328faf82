"""Exact dense linear algebra: matrices, canonical subspaces, quotient charts.

Subspaces are kept in reduced row echelon form so that equality of subspaces
is equality of representations.  All rank decisions are exact; there is no
floating point anywhere.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar, _coerce


class DimensionMismatch(ValueError):
    """Operands live in different ambient spaces."""


class NotNilpotentError(ValueError):
    """A matrix expected to be (uni)potent is not."""


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_coerce(x) for x in row) for row in rows)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @classmethod
    def zeros(cls, r, c):
        return cls(tuple(tuple(ZERO for _ in range(c)) for _ in range(r)))

    @classmethod
    def from_columns(cls, cols):
        return cls(cols).transpose()

    @property
    def shape(self):
        if not self.rows:
            return (0, 0)
        return (len(self.rows), len(self.rows[0]))

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix(%r)" % ([[str(x) for x in row] for row in self.rows],)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("matrix shapes %r vs %r" % (self.shape, other.shape))
        return Matrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(tuple(tuple(-x for x in row) for row in self.rows))

    def scale(self, c):
        c = _coerce(c)
        return Matrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                "matmul shapes %r vs %r" % (self.shape, other.shape)
            )
        bt = other.transpose().rows
        out = []
        for row in self.rows:
            out_row = []
            for col in bt:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(tuple(out))

    def __pow__(self, k):
        n = self.nrows
        acc = Matrix.identity(n)
        base = self
        while k:
            if k & 1:
                acc = acc @ base
            base = base @ base
            k >>= 1
        return acc

    def transpose(self):
        if not self.rows:
            return self
        return Matrix(tuple(zip(*self.rows)))

    def conjugate(self):
        return Matrix(
            tuple(tuple(x.conjugate() for x in row) for row in self.rows)
        )

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column tuple)."""
        rows = [list(r) for r in self.rows]
        nr, nc = self.shape
        pivots = []
        pr = 0
        for pc in range(nc):
            src = None
            for r in range(pr, nr):
                if rows[r][pc]:
                    src = r
                    break
            if src is None:
                continue
            rows[pr], rows[src] = rows[src], rows[pr]
            if rows[pr][pc] != ONE:
                inv = ONE / rows[pr][pc]
                rows[pr] = [inv * x if x else x for x in rows[pr]]
            for r in range(nr):
                if r != pr and rows[r][pc]:
                    f = rows[r][pc]
                    rows[r] = [
                        x - f * y if y else x for x, y in zip(rows[r], rows[pr])
                    ]
            pivots.append(pc)
            pr += 1
            if pr == nr:
                break
        return Matrix(rows), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def right_kernel(self):
        """Rows spanning {v : self @ v = 0}, in echelon order."""
        R, pivots = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for fc in free:
            v = [ZERO] * nc
            v[fc] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -R.rows[r][fc]
            basis.append(tuple(v))
        return Matrix(tuple(basis)) if basis else Matrix.zeros(0, nc)

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("inverse of non-square matrix")
        aug = Matrix(
            tuple(
                row + tuple(ONE if i == j else ZERO for j in range(n))
                for i, row in enumerate(self.rows)
            )
        )
        R, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(tuple(row[n:] for row in R.rows))

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("det of non-square matrix")
        rows = [list(r) for r in self.rows]
        det = ONE
        for c in range(n):
            src = None
            for r in range(c, n):
                if rows[r][c]:
                    src = r
                    break
            if src is None:
                return ZERO
            if src != c:
                rows[c], rows[src] = rows[src], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = ONE / rows[c][c]
            for r in range(c + 1, n):
                if rows[r][c]:
                    f = rows[r][c] * inv
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return det


def vstack(*mats):
    mats = [m for m in mats if m.nrows]
    if not mats:
        raise ValueError("vstack of nothing")
    nc = mats[0].ncols
    if any(m.ncols != nc for m in mats):
        raise DimensionMismatch("vstack column mismatch")
    return Matrix(tuple(row for m in mats for row in m.rows))


def solve_left(A, b):
    """Solve x @ A = b for a row vector x, or return None if inconsistent."""
    At = A.transpose()
    aug = Matrix(tuple(row + (bx,) for row, bx in zip(At.rows, b)))
    R, pivots = aug.rref()
    na = A.nrows
    if na in pivots:
        return None
    x = [ZERO] * na
    for r, pc in enumerate(pivots):
        x[pc] = R.rows[r][na]
    return tuple(x)


def kron(a, b):
    """Kronecker product of two row vectors."""
    return tuple(x * y for x in a for y in b)


class Subspace:
    """Subspace of K^n in canonical (reduced row echelon) form."""

    __slots__ = ("n", "basis")

    def __init__(self, n, basis):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_rows(cls, n, rows):
        if not rows:
            return cls.zero(n)
        m = Matrix(rows)
        if m.ncols != n:
            raise DimensionMismatch("rows of length %d in K^%d" % (m.ncols, n))
        R, pivots = m.rref()
        return cls(n, Matrix(R.rows[: len(pivots)]))

    @classmethod
    def zero(cls, n):
        return cls(n, Matrix.zeros(0, n))

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n))

    @property
    def dim(self):
        return self.basis.nrows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return "Subspace(n=%d, dim=%d)" % (self.n, self.dim)

    def _check_ambient(self, other):
        if self.n != other.n:
            raise DimensionMismatch(
                "ambient dimensions %d vs %d" % (self.n, other.n)
            )

    def add(self, other):
        self._check_ambient(other)
        return Subspace.from_rows(
            self.n, tuple(self.basis.rows) + tuple(other.basis.rows)
        )

    def intersect(self, other):
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.n)
        stacked = vstack(self.basis, -other.basis)
        coeffs = stacked.transpose().right_kernel()
        ra = self.dim
        rows = []
        for coeff in coeffs.rows:
            v = [ZERO] * self.n
            for c, brow in zip(coeff[:ra], self.basis.rows):
                if c:
                    for j, x in enumerate(brow):
                        if x:
                            v[j] = v[j] + c * x
            rows.append(tuple(v))
        return Subspace.from_rows(self.n, rows)

    def contains_vector(self, v):
        return solve_left(self.basis, v) is not None if self.dim else all(
            not x for x in v
        )

    def contains(self, other):
        self._check_ambient(other)
        return all(self.contains_vector(row) for row in other.basis.rows)

    def coords(self, v):
        """Coordinates of v in the echelon basis, or None."""
        if self.dim == 0:
            return () if all(not x for x in v) else None
        return solve_left(self.basis, v)

    def apply(self, f):
        """Image under the linear map v |-> f @ v (f maps K^n to K^m)."""
        if f.ncols != self.n:
            raise DimensionMismatch("map domain %d vs ambient %d" % (f.ncols, self.n))
        if self.dim == 0:
            return Subspace.zero(f.nrows)
        img = self.basis @ f.transpose()
        return Subspace.from_rows(f.nrows, img.rows)

    def conjugate(self):
        return Subspace.from_rows(self.n, self.basis.conjugate().rows)

    def annihilator(self):
        """{phi : phi(u) = 0 for u in self}, in dual coordinates."""
        if self.dim == 0:
            return Subspace.full(self.n)
        return Subspace.from_rows(self.n, self.basis.right_kernel().rows)

    def tensor(self, other):
        rows = [
            kron(a, b) for a in self.basis.rows for b in other.basis.rows
        ]
        return Subspace.from_rows(self.n * other.n, rows)


def subspace_sum(a, b):
    return a.add(b)


def subspace_intersect(a, b):
    return a.intersect(b)


class Quotient:
    """Chart for S/T with a deterministic echelon-complement basis.

    The complement is chosen greedily from the echelon basis of S, so the
    chart is a pure function of (S, T).
    """

    __slots__ = ("S", "T", "complement")

    def __init__(self, S, T):
        S._check_ambient(T)
        if not S.contains(T):
            raise ValueError("T is not contained in S")
        current = T
        comp = []
        for row in S.basis.rows:
            if not current.contains_vector(row):
                comp.append(row)
                current = current.add(Subspace.from_rows(S.n, [row]))
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "complement", tuple(comp))

    def __setattr__(self, name, value):
        raise AttributeError("Quotient is immutable")

    @property
    def dim(self):
        return len(self.complement)

    def project_vector(self, v):
        """Coordinates of v + T in the complement basis (v must lie in S)."""
        rows = tuple(self.T.basis.rows) + self.complement
        if not rows:
            if any(x for x in v):
                raise ValueError("vector not in S")
            return ()
        sol = solve_left(Matrix(rows), v)
        if sol is None:
            raise ValueError("vector not in S")
        return sol[self.T.dim :]

    def project_subspace(self, U):
        """Image of ((U ∩ S) + T)/T as a subspace of the quotient chart."""
        inter = U.intersect(self.S)
        rows = [self.project_vector(r) for r in inter.basis.rows]
        return Subspace.from_rows(self.dim, rows)

    def lift(self, coords):
        v = [ZERO] * self.S.n
        for c, row in zip(coords, self.complement):
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] = v[j] + c * x
        return tuple(v)


def induced_filtration_on_quotient(steps, S, T):
    """Images ((F ∩ S) + T)/T of a list of filtration steps, in the
    deterministic chart of S/T."""
    chart = Quotient(S, T)
    return [chart.project_subspace(F) for F in steps]


def nilpotency_index(M):
    """Least k with M^k = 0, or None if M is not nilpotent (checked up to dim)."""
    n = M.nrows
    P = M
    for k in range(1, n + 1):
        if P.is_zero():
            return k
        P = P @ M
    return None if not P.is_zero() else n + 1


def log_unipotent(M):
    """Exact logarithm of a unipotent matrix: sum_{k>=1} (-1)^{k+1} (M-I)^k / k."""
    n = M.nrows
    N = M - Matrix.identity(n)
    if nilpotency_index(N) is None:
        raise NotNilpotentError("M - I is not nilpotent")
    acc = Matrix.zeros(n, n)
    P = N
    k = 1
    while not P.is_zero():
        sign = ONE if k % 2 == 1 else -ONE
        acc = acc + P.scale(sign / Scalar(k))
        P = P @ N
        k += 1
    return acc

def exp_nilpotent(D):
    """Exact exponential of a nilpotent matrix."""
    n = D.nrows
    if nilpotency_index(D) is None:
        raise NotNilpotentError("matrix is not nilpotent")
    acc = Matrix.identity(n)
    P = D
    k = 1
    fact = ONE
    while not P.is_zero():
        fact = fact / Scalar(k)
        acc = acc + P.scale(fact)
        P = P @ D
        k += 1
    return acc
