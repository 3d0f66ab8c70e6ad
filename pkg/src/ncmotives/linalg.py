"""Exact dense linear algebra over the rationals.

Scalars are python ints or ``fractions.Fraction``; every operation is exact.
Vectors are plain lists of scalars (row vectors unless stated otherwise),
matrices are dense and immutable by convention.  Pivoting is always "first
nonzero entry", so echelon forms, kernel bases and coordinates are
deterministic.
"""

from __future__ import annotations

from fractions import Fraction

Scalar = int | Fraction


def norm_scalar(x):
    """Collapse integral Fractions back to int (keeps arithmetic fast)."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec_is_zero(v) -> bool:
    return all(x == 0 for x in v)


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v):
    if c == 0:
        return [0] * len(v)
    return [norm_scalar(c * x) if x else 0 for x in v]


def vec_dot(u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return norm_scalar(s)


class Matrix:
    """Dense rows x cols matrix of exact scalars.

    Rows act on the left of column vectors in ``solve``/``kernel_basis``;
    the rest of the package multiplies row vectors on the right
    (``row_times``), which composes maps left to right.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix data has wrong shape")
        self.rows = rows
        self.cols = cols
        self.data = [[norm_scalar(x) for x in r] for r in data]

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer width of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    def copy_data(self):
        return [row[:] for row in self.data]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.data!r})"

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            [vec_add(a, b) for a, b in zip(self.data, other.data)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            [vec_sub(a, b) for a, b in zip(self.data, other.data)],
        )

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, [vec_scale(c, r) for r in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} times {other.rows}x{other.cols}"
            )
        out = [[0] * other.cols for _ in range(self.rows)]
        odata = other.data
        for i, row in enumerate(self.data):
            acc = out[i]
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(odata[k]):
                        if b:
                            acc[j] += a * b
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return norm_scalar(sum(self.data[i][i] for i in range(self.rows)))

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- elimination ------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot column list)."""
        return _rref(self.copy_data(), self.cols)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right null space {v : M v = 0}, as column vectors
        (returned as plain lists).  Empty iff the matrix is injective on
        columns.  Free coordinates are taken in ascending column order and
        each basis vector has a 1 in its free coordinate."""
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [0] * self.cols
            v[free] = 1
            for r, p in enumerate(pivots):
                v[p] = norm_scalar(-rows[r][free])
            basis.append(v)
        return basis

    def left_kernel_basis(self):
        """Basis of {v : v M = 0} (row vectors)."""
        return self.transpose().kernel_basis()

    def solve(self, b):
        """Any exact solution x of M x = b (b of length rows), or None."""
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        aug = [self.data[i][:] + [b[i]] for i in range(self.rows)]
        rows, pivots = _rref(aug, self.cols + 1)
        if self.cols in pivots:
            return None
        x = [0] * self.cols
        for r, p in enumerate(pivots):
            x[p] = rows[r][self.cols]
        return x

    def det(self):
        """Determinant by fraction-free-ish Gaussian elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = self.copy_data()
        det = Fraction(1)
        for col in range(n):
            piv = None
            for r in range(col, n):
                if m[r][col] != 0:
                    piv = r
                    break
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            pv = m[col][col]
            det *= pv
            for r in range(col + 1, n):
                f = as_fraction(m[r][col]) / pv
                if f:
                    m[r] = [norm_scalar(x - f * y) for x, y in zip(m[r], m[col])]
        return norm_scalar(det)


def row_times(v, m: Matrix):
    """Row vector times matrix: the action of a map on an element."""
    if len(v) != m.rows:
        raise ValueError("row vector has wrong length")
    out = [0] * m.cols
    for i, a in enumerate(v):
        if a:
            for j, b in enumerate(m.data[i]):
                if b:
                    out[j] += a * b
    return [norm_scalar(x) for x in out]


def _rref(rows, width):
    """In-place reduced row echelon form with first-nonzero pivoting."""
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(width):
        piv = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        if pv != 1:
            inv = Fraction(1) / as_fraction(pv)
            rows[r] = [norm_scalar(x * inv) if x else 0 for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [
                    norm_scalar(x - f * y) if y else x
                    for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows[:r] + rows[r:], pivots


class RowBasis:
    """A subspace of Q^n kept in reduced row echelon form.

    The stored rows are the canonical RREF basis of the span, so two
    RowBasis objects for the same subspace hold identical rows no matter
    the insertion order.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> "RowBasis":
        new = RowBasis(self.ambient)
        new.rows = [r[:] for r in self.rows]
        new.pivots = self.pivots[:]
        return new

    def reduce(self, v):
        """Residual of v after reduction modulo the span."""
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [norm_scalar(x - c * y) if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return vec_is_zero(self.reduce(v))

    def coords(self, v):
        """Coefficients of v over the stored rows, or None if v is outside."""
        v = list(v)
        cs = [0] * len(self.rows)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = v[p]
            if c:
                cs[i] = c
                v = [norm_scalar(x - c * y) if y else x for x, y in zip(v, row)]
        if not vec_is_zero(v):
            return None
        return cs

    def add(self, v) -> bool:
        """Insert v into the span.  Returns True if the dimension grew."""
        v = self.reduce(v)
        p = next((j for j, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        pv = v[p]
        if pv != 1:
            inv = Fraction(1) / as_fraction(pv)
            v = [norm_scalar(x * inv) if x else 0 for x in v]
        # keep existing rows reduced against the new pivot
        for i, row in enumerate(self.rows):
            c = row[p]
            if c:
                self.rows[i] = [
                    norm_scalar(x - c * y) if y else x for x, y in zip(row, v)
                ]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < p:
            pos += 1
        self.rows.insert(pos, v)
        self.pivots.insert(pos, p)
        return True

    def extend(self, vectors):
        for v in vectors:
            self.add(v)
        return self


def span_equal(u: RowBasis, v: RowBasis) -> bool:
    """Mutual containment of two subspaces."""
    if u.ambient != v.ambient:
        return False
    return all(v.contains(r) for r in u.rows) and all(u.contains(r) for r in v.rows)
