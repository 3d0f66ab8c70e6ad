"""Right modules over the algebras of this package.

A module of dimension d stores one d x d action matrix per algebra basis
element.  Elements are row vectors and act on the right:

    row(m * b_j) = row(m) * action[j]

so action(x * y) = action(x) * action(y) as matrix products.  Bimodules are
right modules over tensor(opposite(A), B): the pair (a^op, b) acts as
"a on the left, b on the right".
"""

from __future__ import annotations

from .algebra import (
    Algebra,
    enveloping_algebra,
    opposite,
    swap_permutation,
    tensor,
)
from .linalg import Matrix, RowBasis, norm_scalar, row_times, vec_is_zero


class Module:
    __slots__ = ("algebra", "dim", "action")

    def __init__(self, algebra: Algebra, dim: int, action, check=False):
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        if len(self.action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element required")
        for m in self.action:
            if m.rows != dim or m.cols != dim:
                raise ValueError("action matrix has wrong shape")
        if check:
            self.check()

    def __repr__(self):
        return f"<Module dim={self.dim} over {self.algebra!r}>"

    def act_matrix(self, coeffs) -> Matrix:
        """Action matrix of the algebra element with the given coordinates."""
        out = None
        for k, c in enumerate(coeffs):
            if not c:
                continue
            term = self.action[k] if c == 1 else self.action[k].scale(c)
            out = term if out is None else out + term
        return out if out is not None else Matrix.zeros(self.dim, self.dim)

    def act_vector(self, v, coeffs):
        out = [0] * self.dim
        for k, c in enumerate(coeffs):
            if not c:
                continue
            w = row_times(v, self.action[k])
            for t, x in enumerate(w):
                if x:
                    out[t] += c * x
        return [norm_scalar(x) for x in out]

    def idempotent_dims(self):
        """Dimension vector: dim(M e_i) per idempotent (trace of an
        idempotent action matrix is its rank, exactly)."""
        dims = []
        for e in self.algebra.idempotents:
            t = self.act_matrix(e).trace()
            if not isinstance(t, int):
                raise ValueError("idempotent action has non-integral trace")
            dims.append(t)
        return dims

    def check(self):
        """Full module axioms: unit acts as identity, action respects the
        structure constants on all basis pairs."""
        a = self.algebra
        if self.act_matrix(a.unit) != Matrix.identity(self.dim):
            raise ValueError("unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = self.action[i] * self.action[j]
                rhs = self.act_matrix(a.mul[i][j])
                if lhs != rhs:
                    raise ValueError(
                        f"action incompatible with product of basis {i},{j}"
                    )
        return True


def zero_module(a: Algebra) -> Module:
    return Module(a, 0, [Matrix.zeros(0, 0)] * a.dim)


def regular_module(a: Algebra) -> Module:
    """A as a right module over itself."""
    m = a._cache.get("regular_module")
    if m is None:
        m = Module(a, a.dim, [a.right_matrix(j) for j in range(a.dim)])
        a._cache["regular_module"] = m
    return m


def projective_module(a: Algebra, i: int):
    """(Module for e_i A, monomial basis indices into A).

    The basis of e_i A is the set of basis monomials with left idempotent i,
    and the action is the restriction of right multiplication."""
    key = ("projective_module", i)
    if key not in a._cache:
        basis = a.projective_basis(i)
        pos = {t: r for r, t in enumerate(basis)}
        d = len(basis)
        action = []
        for j in range(a.dim):
            rows = []
            for t in basis:
                coeffs = a.mul[t][j]
                row = [0] * d
                for k, c in enumerate(coeffs):
                    if c:
                        row[pos[k]] = c
                rows.append(row)
            action.append(Matrix(d, d, rows))
        a._cache[key] = (Module(a, d, action), basis)
    return a._cache[key]


def direct_sum_modules(a: Algebra, mods):
    """(Module, offsets).  The zero-summand case gives the zero module."""
    dims = [m.dim for m in mods]
    total = sum(dims)
    offsets = []
    off = 0
    for d in dims:
        offsets.append(off)
        off += d
    action = []
    for j in range(a.dim):
        big = [[0] * total for _ in range(total)]
        for m, o in zip(mods, offsets):
            data = m.action[j].data
            for r in range(m.dim):
                row = big[o + r]
                src = data[r]
                for c in range(m.dim):
                    if src[c]:
                        row[o + c] = src[c]
        action.append(Matrix(total, total, big))
    return Module(a, total, action), offsets


def span_submodule(m: Module, generators):
    """Smallest submodule containing the generators.

    Returns (Module, RowBasis, inclusion matrix sub -> m)."""
    rb = RowBasis(m.dim)
    work = []
    for g in generators:
        if rb.add(g):
            work.append(list(g))
    while work:
        v = work.pop()
        for j in range(m.algebra.dim):
            w = row_times(v, m.action[j])
            if rb.add(w):
                work.append(w)
    return _submodule_from_rowbasis(m, rb)


def _submodule_from_rowbasis(m: Module, rb: RowBasis):
    d = rb.dim
    action = []
    for j in range(m.algebra.dim):
        rows = []
        for r in rb.rows:
            w = row_times(r, m.action[j])
            cs = rb.coords(w)
            if cs is None:
                raise ValueError("span is not action-closed")
            rows.append(cs)
        action.append(Matrix(d, d, rows))
    incl = Matrix.from_rows([r[:] for r in rb.rows], m.dim) if d else Matrix.zeros(0, m.dim)
    return Module(m.algebra, d, action), rb, incl


def kernel_submodule(m: Module, f: Matrix):
    """Kernel of a module map given by a matrix (rows of m mapping somewhere).

    Returns (Module, RowBasis, inclusion)."""
    rb = RowBasis(m.dim)
    for v in f.left_kernel_basis():
        rb.add(v)
    return _submodule_from_rowbasis(m, rb)


def quotient_module(m: Module, sub: RowBasis):
    """Quotient of m by an action-closed subspace.

    Returns (Module, projection matrix m -> quotient).  Quotient coordinates
    are the non-pivot positions of the subspace's echelon form."""
    free = [c for c in range(m.dim) if c not in set(sub.pivots)]
    qdim = len(free)
    proj_rows = []
    for t in range(m.dim):
        v = [0] * m.dim
        v[t] = 1
        red = sub.reduce(v)
        proj_rows.append([red[c] for c in free])
    proj = Matrix(m.dim, qdim, proj_rows)
    action = []
    for j in range(m.algebra.dim):
        rows = []
        for c in free:
            v = [0] * m.dim
            v[c] = 1
            w = row_times(v, m.action[j])
            red = sub.reduce(w)
            rows.append([red[x] for x in free])
        action.append(Matrix(qdim, qdim, rows))
    return Module(m.algebra, qdim, action), proj


def module_radical(m: Module) -> RowBasis:
    """The subspace m * rad(A) (a submodule)."""
    rad = m.algebra.radical()
    rb = RowBasis(m.dim)
    for t in range(m.dim):
        v = [0] * m.dim
        v[t] = 1
        for g in rad.rows:
            rb.add(m.act_vector(v, g))
    return rb


def simple_modules(a: Algebra):
    """One simple right module per idempotent: S_i = top of e_i A."""
    ms = a._cache.get("simple_modules")
    if ms is None:
        ms = []
        for i in range(len(a.idempotents)):
            p, _ = projective_module(a, i)
            s, _ = quotient_module(p, module_radical(p))
            ms.append(s)
        a._cache["simple_modules"] = ms
    return ms


def cover_data(m: Module):
    """Projective cover of m.

    Returns (copies, gens, cover): copies is the list of idempotent indices
    of the cover's indecomposable summands, gens the corresponding generator
    images in m (each lying in m e_i), and cover the matrix of the
    surjection, one block of rows per summand indexed by the monomial basis
    of e_i A.  Generators are found deterministically: candidate vectors
    basis_t * e_i are scanned in order and kept when they are new modulo the
    radical and the lifts already chosen."""
    a = m.algebra
    w = module_radical(m)
    copies = []
    gens = []
    for i in range(len(a.idempotents)):
        e = a.idempotents[i]
        img = m.act_matrix(e)
        for t in range(m.dim):
            v = img.data[t]
            if vec_is_zero(v):
                continue
            if w.add(v):
                copies.append(i)
                gens.append(list(v))
    rows = []
    for i, v in zip(copies, gens):
        _, basis = projective_module(a, i)
        for t in basis:
            rows.append(m.act_vector(v, a.basis_vector(t)))
    total = len(rows)
    cover = Matrix(total, m.dim, rows) if total else Matrix.zeros(0, m.dim)
    if m.dim and cover.rank() != m.dim:
        raise ValueError("projective cover is not surjective")
    return copies, gens, cover


# -- bimodules ----------------------------------------------------------------


def diagonal_bimodule(a: Algebra) -> Module:
    """A as an A-A-bimodule, i.e. a right module over tensor(op(A), A):
    the pair (x^op, y) sends m to x m y."""
    m = a._cache.get("diagonal_bimodule")
    if m is None:
        env = enveloping_algebra(a)
        action = []
        for t in range(env.dim):
            i, j = divmod(t, a.dim)
            action.append(a.left_matrix(i) * a.right_matrix(j))
        m = Module(env, a.dim, action)
        a._cache["diagonal_bimodule"] = m
    return m


def dual_bimodule(a: Algebra) -> Module:
    """The linear dual D(A) as an A-A-bimodule: (x phi y)(c) = phi(y c x).

    In dual-basis coordinates the pair (b_i^op, b_j) acts by the transpose
    of L_j R_i."""
    m = a._cache.get("dual_bimodule")
    if m is None:
        env = enveloping_algebra(a)
        action = []
        for t in range(env.dim):
            i, j = divmod(t, a.dim)
            action.append((a.left_matrix(j) * a.right_matrix(i)).transpose())
        m = Module(env, a.dim, action)
        a._cache["dual_bimodule"] = m
    return m


def left_structure_module(m: Module, a: Algebra) -> Module:
    """The left-module structure of an A-A-bimodule, as a right module over
    the opposite enveloping algebra.

    For a right module over E = tensor(op(A), A) the basis pair (x^op, y)
    acts as x m y; the left E-structure needed for balanced tensor products
    against right E-modules sends (x^op, y) to y m x, which is the right
    action of the swapped pair.  Index-permuting the action list therefore
    yields a right module over opposite(E)."""
    env = enveloping_algebra(a)
    if m.algebra is not env:
        raise ValueError("module is not a bimodule over tensor(op(A), A)")
    perm = swap_permutation(a, a)
    action = [m.action[perm[g]] for g in range(env.dim)]
    return Module(opposite(env), m.dim, action)
