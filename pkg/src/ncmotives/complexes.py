"""Bounded cochain complexes of modules and perfect complexes.

Grading is cohomological: d^n maps degree n to degree n+1 and d^n d^{n+1} = 0
as matrices in the row convention.  The shift is defined by

    shift(C, k)^n = C^{n-k},   d_{shift} = (-1)^k d,

so shifting by 1 moves content one degree up; with the Hom-complex convention
of homalg.py this makes H^i Hom(M, N) compute morphisms M -> N shifted down
by i, matching the indexing used throughout the derived-invariants layer.

A PerfectComplex is a bounded complex whose degree-n component is the direct
sum of indecomposable projectives e_i A, recorded as the tuple of idempotent
indices ("copies").  Differentials are stored as raw matrices on the
underlying coordinates; each block from a copy with idempotent e to a copy
with idempotent f is left multiplication by an element of f A e, and the
block decomposition is recomputed and verified at construction, which is
exactly right-linearity of the differential.
"""

from __future__ import annotations

from .algebra import Algebra, scalar_algebra
from .linalg import Matrix, RowBasis, norm_scalar
from .modules import Module, direct_sum_modules, projective_module, zero_module


class Complex:
    __slots__ = ("algebra", "components", "differentials", "lo", "hi")

    def __init__(self, algebra: Algebra, components: dict, differentials: dict, check=True):
        self.algebra = algebra
        self.components = {n: m for n, m in components.items() if m.dim > 0}
        degs = sorted(self.components)
        self.lo = degs[0] if degs else 0
        self.hi = degs[-1] if degs else -1
        self.differentials = {}
        for n, d in differentials.items():
            src = self.component_dim(n)
            tgt = self.component_dim(n + 1)
            if d.rows != src or d.cols != tgt:
                raise ValueError(f"differential at degree {n} has wrong shape")
            if src and tgt and not d.is_zero():
                self.differentials[n] = d
        if check:
            self._check_d_squared()

    def _check_d_squared(self):
        for n, d in self.differentials.items():
            nxt = self.differentials.get(n + 1)
            if nxt is not None and not (d * nxt).is_zero():
                raise ValueError(f"d^2 != 0 at degree {n}")

    def is_zero(self) -> bool:
        return not self.components

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def component(self, n) -> Module:
        m = self.components.get(n)
        return m if m is not None else zero_module(self.algebra)

    def component_dim(self, n) -> int:
        m = self.components.get(n)
        return m.dim if m is not None else 0

    def differential(self, n) -> Matrix:
        d = self.differentials.get(n)
        if d is None:
            return Matrix.zeros(self.component_dim(n), self.component_dim(n + 1))
        return d

    def euler_characteristic(self) -> int:
        return sum((-1 if n % 2 else 1) * m.dim for n, m in self.components.items())

    def total_dim(self) -> int:
        return sum(m.dim for m in self.components.values())

    def homology(self, n):
        """(dimension, representative rows) of H^n = ker d^n / im d^{n-1}."""
        dim_n = self.component_dim(n)
        if dim_n == 0:
            return 0, []
        cycles = self.differential(n).left_kernel_basis()
        boundaries = RowBasis(dim_n)
        prev = self.differentials.get(n - 1)
        if prev is not None:
            for r in prev.data:
                boundaries.add(r)
        reps = []
        w = boundaries.copy()
        for v in cycles:
            if w.add(v):
                reps.append(v)
        return len(reps), reps

    def homology_dims(self) -> dict:
        return {n: self.homology(n)[0] for n in self.degrees() if self.component_dim(n)}

    def shift(self, k: int) -> "Complex":
        comps = {n + k: m for n, m in self.components.items()}
        sign = -1 if k % 2 else 1
        diffs = {
            n + k: (d if sign == 1 else d.scale(-1))
            for n, d in self.differentials.items()
        }
        return Complex(self.algebra, comps, diffs, check=False)

    def __repr__(self):
        dims = {n: m.dim for n, m in sorted(self.components.items())}
        return f"<Complex {dims} over {self.algebra!r}>"


def homology_dims_equal(c1, c2) -> bool:
    c1 = as_complex(c1)
    c2 = as_complex(c2)
    degs = set(c1.components) | set(c2.components)
    return all(c1.homology(n)[0] == c2.homology(n)[0] for n in degs)


class ChainMap:
    """Degreewise map of complexes commuting with the differentials."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source, target, maps: dict, check=True):
        self.source = source
        self.target = target
        self.maps = {}
        for n, f in maps.items():
            if f.rows != source.component_dim(n) or f.cols != target.component_dim(n):
                raise ValueError(f"chain map component at degree {n} has wrong shape")
            if f.rows and f.cols and not f.is_zero():
                self.maps[n] = f
        if check:
            self.check()

    def map_at(self, n) -> Matrix:
        f = self.maps.get(n)
        if f is None:
            return Matrix.zeros(self.source.component_dim(n), self.target.component_dim(n))
        return f

    def check(self):
        degs = set(self.source.components) | set(self.target.components)
        for n in degs:
            lhs = self.source.differential(n) * self.map_at(n + 1)
            rhs = self.map_at(n) * self.target.differential(n)
            if lhs != rhs:
                raise ValueError(f"not a chain map at degree {n}")
        return True


def cone(f: ChainMap) -> Complex:
    """Mapping cone: cone(f)^n = X^{n+1} (+) Y^n with d(x, y) =
    (-d x, f x + d y)."""
    x, y = f.source, f.target
    a = x.algebra
    degs = {n - 1 for n in x.components} | set(y.components)
    comps = {}
    for n in degs:
        total, _ = direct_sum_modules(a, [x.component(n + 1), y.component(n)])
        if total.dim:
            comps[n] = total
    diffs = {}
    for n in comps:
        sx = x.component_dim(n + 1)
        sy = y.component_dim(n)
        tx = x.component_dim(n + 2)
        ty = y.component_dim(n + 1)
        if tx + ty == 0:
            continue
        dx = x.differential(n + 1)
        fx = f.map_at(n + 1)
        dy = y.differential(n)
        rows = []
        for r in range(sx):
            rows.append([norm_scalar(-v) for v in dx.data[r]] + fx.data[r][:])
        for r in range(sy):
            rows.append([0] * tx + dy.data[r][:])
        diffs[n] = Matrix(sx + sy, tx + ty, rows)
    return Complex(a, comps, diffs)


# -- perfect complexes ---------------------------------------------------------


class PerfectComplex:
    """Bounded complex of finite direct sums of the projectives e_i A.

    copies[n] is the tuple of idempotent indices of the degree-n summands.
    Underlying coordinates concatenate the monomial bases of the summands in
    order.  block_elements(n) recovers, for every pair of copies, the algebra
    element whose left multiplication is the corresponding block of d^n; the
    reassembly check at construction certifies the differential is a module
    map.
    """

    __slots__ = ("algebra", "copies", "differentials", "_cache")

    def __init__(self, algebra: Algebra, copies: dict, differentials: dict, check=True):
        self.algebra = algebra
        self.copies = {n: tuple(c) for n, c in copies.items() if c}
        self.differentials = {}
        self._cache = {}
        for n, d in differentials.items():
            src = self.component_dim(n)
            tgt = self.component_dim(n + 1)
            if d.rows != src or d.cols != tgt:
                raise ValueError(f"differential at degree {n} has wrong shape")
            if src and tgt and not d.is_zero():
                self.differentials[n] = d
        if check:
            self.check()

    @property
    def lo(self):
        return min(self.copies) if self.copies else 0

    @property
    def hi(self):
        return max(self.copies) if self.copies else -1

    def is_zero(self):
        return not self.copies

    def degrees(self):
        return range(self.lo, self.hi + 1) if self.copies else range(0)

    def copies_at(self, n):
        return self.copies.get(n, ())

    def copy_offsets(self, n):
        key = ("offsets", n)
        if key not in self._cache:
            offs = []
            off = 0
            for i in self.copies_at(n):
                offs.append(off)
                off += len(self.algebra.projective_basis(i))
            self._cache[key] = (offs, off)
        return self._cache[key]

    def component_dim(self, n) -> int:
        return self.copy_offsets(n)[1]

    def component(self, n) -> Module:
        key = ("component", n)
        if key not in self._cache:
            mods = [projective_module(self.algebra, i)[0] for i in self.copies_at(n)]
            self._cache[key] = direct_sum_modules(self.algebra, mods)[0]
        return self._cache[key]

    def differential(self, n) -> Matrix:
        d = self.differentials.get(n)
        if d is None:
            return Matrix.zeros(self.component_dim(n), self.component_dim(n + 1))
        return d

    def to_complex(self) -> Complex:
        c = self._cache.get("as_complex")
        if c is None:
            c = Complex(
                self.algebra,
                {n: self.component(n) for n in self.copies},
                dict(self.differentials),
                check=False,
            )
            self._cache["as_complex"] = c
        return c

    def generator_position(self, n, c) -> int:
        """Underlying coordinate of the idempotent generator of copy c."""
        a = self.algebra
        i = self.copies_at(n)[c]
        basis = a.projective_basis(i)
        gen = a.idempotent_basis_indices()[i]
        return self.copy_offsets(n)[0][c] + basis.index(gen)

    def block_elements(self, n):
        """dict (from_copy, to_copy) -> algebra coordinate vector z with
        z in e_{to} A e_{from}; the block of d^n from copy c to copy c' is
        left multiplication by z."""
        key = ("blocks", n)
        if key not in self._cache:
            a = self.algebra
            d = self.differentials.get(n)
            out = {}
            if d is not None:
                offs_t, _ = self.copy_offsets(n + 1)
                tcopies = self.copies_at(n + 1)
                for c in range(len(self.copies_at(n))):
                    row = d.data[self.generator_position(n, c)]
                    for c2, i2 in enumerate(tcopies):
                        basis2 = a.projective_basis(i2)
                        off = offs_t[c2]
                        z = [0] * a.dim
                        nonzero = False
                        for r, t in enumerate(basis2):
                            v = row[off + r]
                            if v:
                                z[t] = v
                                nonzero = True
                        if nonzero:
                            out[(c, c2)] = z
            self._cache[key] = out
        return self._cache[key]

    def check(self):
        """d^2 = 0 and right-linearity of every differential (the latter via
        reassembly from the generator blocks)."""
        for n, d in self.differentials.items():
            nxt = self.differentials.get(n + 1)
            if nxt is not None and not (d * nxt).is_zero():
                raise ValueError(f"d^2 != 0 at degree {n}")
        for n in list(self.differentials):
            if self._assemble(n) != self.differentials[n]:
                raise ValueError(f"differential at degree {n} is not a module map")
        return True

    def _assemble(self, n) -> Matrix:
        blocks = self.block_elements(n)
        return assemble_block_matrix(
            self.algebra, self.copies_at(n), self.copies_at(n + 1), blocks
        )

    def shift(self, k: int) -> "PerfectComplex":
        sign = -1 if k % 2 else 1
        return PerfectComplex(
            self.algebra,
            {n + k: c for n, c in self.copies.items()},
            {
                n + k: (d if sign == 1 else d.scale(-1))
                for n, d in self.differentials.items()
            },
            check=False,
        )

    def euler_copy_weights(self):
        """Alternating-sum multiplicity of each idempotent over all degrees."""
        w = [0] * len(self.algebra.idempotents)
        for n, cs in self.copies.items():
            s = -1 if n % 2 else 1
            for i in cs:
                w[i] += s
        return w

    def homology(self, n):
        return self.to_complex().homology(n)

    def homology_dims(self):
        return self.to_complex().homology_dims()

    def total_dim(self):
        return sum(self.component_dim(n) for n in self.copies)

    def __repr__(self):
        shape = {n: self.copies[n] for n in sorted(self.copies)}
        return f"<PerfectComplex {shape} over {self.algebra!r}>"


def assemble_block_matrix(a: Algebra, from_copies, to_copies, blocks) -> Matrix:
    """Matrix of a copy-indexed family of left multiplications.

    blocks maps (from_copy, to_copy) to the coordinates of z in e_to A e_from;
    the block sends a monomial h of e_from A to z * h expanded in the
    monomial basis of e_to A."""
    offs_s = []
    off = 0
    for i in from_copies:
        offs_s.append(off)
        off += len(a.projective_basis(i))
    rows_total = off
    offs_t = []
    off = 0
    for i in to_copies:
        offs_t.append(off)
        off += len(a.projective_basis(i))
    cols_total = off
    data = [[0] * cols_total for _ in range(rows_total)]
    for (c, c2), z in blocks.items():
        basis_s = a.projective_basis(from_copies[c])
        basis_t = a.projective_basis(to_copies[c2])
        pos_t = {t: r for r, t in enumerate(basis_t)}
        for r, h in enumerate(basis_s):
            out = data[offs_s[c] + r]
            for g, coeff in enumerate(z):
                if not coeff:
                    continue
                prod = a.mul[g][h]
                for k, s in enumerate(prod):
                    if s:
                        out[offs_t[c2] + pos_t[k]] += coeff * s
    return Matrix(rows_total, cols_total, data)


def as_complex(x) -> Complex:
    if isinstance(x, PerfectComplex):
        return x.to_complex()
    if isinstance(x, Complex):
        return x
    if isinstance(x, Module):
        return Complex(x.algebra, {0: x}, {}, check=False)
    raise TypeError(f"cannot view {x!r} as a complex")


def single_module_complex(m: Module, degree: int = 0) -> Complex:
    return Complex(m.algebra, {degree: m}, {}, check=False)


def empty_perfect(a: Algebra) -> PerfectComplex:
    return PerfectComplex(a, {}, {}, check=False)


def scalar_complex(dims: dict, differentials: dict) -> Complex:
    """Complex of plain vector spaces (modules over the scalar algebra)."""
    q = scalar_algebra()
    comps = {
        n: Module(q, d, [Matrix.identity(d)]) for n, d in dims.items() if d > 0
    }
    return Complex(q, comps, differentials)
