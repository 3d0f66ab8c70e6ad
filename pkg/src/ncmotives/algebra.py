"""Finite-dimensional associative algebras with a distinguished idempotent set.

The constructors here produce exactly the inputs the rest of the package
supports: path algebras of finite acyclic quivers, their opposites, and
tensor products of such.  All of these come with a monomial basis in which
every basis element b satisfies e b f = b for a unique pair (e, f) of the
distinguished idempotents; the Peirce bookkeeping below depends on that.

Path composition convention: paths are read left to right, so for an arrow
a: i -> j the products satisfy e_i * a = a = a * e_j, and p * q is "p then q"
(nonzero only when p ends where q starts).
"""

from __future__ import annotations

from dataclasses import dataclass
from .linalg import Matrix, RowBasis, norm_scalar, vec_is_zero


class CyclicQuiverError(ValueError):
    """Raised for quivers whose path algebra would be infinite-dimensional."""


class AlgebraStructureError(ValueError):
    """Raised when an algebra lacks the monomial structure an operation needs."""


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: str


class Quiver:
    """A finite quiver; acyclicity is checked at construction."""

    def __init__(self, vertex_count: int, arrows):
        self.vertex_count = vertex_count
        self.arrows = [
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        ]
        labels = set()
        for a in self.arrows:
            if not (0 <= a.source < vertex_count and 0 <= a.target < vertex_count):
                raise ValueError(f"arrow {a} out of range")
            if a.label in labels:
                raise ValueError(f"duplicate arrow label {a.label!r}")
            labels.add(a.label)
        if self._has_cycle():
            raise CyclicQuiverError("quiver has a directed cycle")

    def _has_cycle(self) -> bool:
        out = [[] for _ in range(self.vertex_count)]
        indeg = [0] * self.vertex_count
        for a in self.arrows:
            out[a.source].append(a.target)
            indeg[a.target] += 1
        stack = [v for v in range(self.vertex_count) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen != self.vertex_count

    def __repr__(self):
        return f"Quiver({self.vertex_count}, {self.arrows!r})"


class Algebra:
    """Associative unital algebra given by structure constants.

    mul[i][j] is the coordinate vector of (basis_i * basis_j).  The unit and
    the complete orthogonal idempotent list are coordinate vectors.  Unit and
    idempotent axioms are checked at construction; associativity is cheap to
    check for the generated corpus and is exercised by the test suite.
    """

    def __init__(self, dim, labels, mul, unit, idempotents, meta=None, check=True):
        self.dim = dim
        self.labels = list(labels)
        self.mul = mul
        self.unit = [norm_scalar(x) for x in unit]
        self.idempotents = [[norm_scalar(x) for x in e] for e in idempotents]
        self.meta = meta or {}
        self._cache: dict = {}
        if check:
            self._check_basic()

    # -- construction-time sanity ----------------------------------------

    def _check_basic(self):
        if len(self.labels) != self.dim or len(self.unit) != self.dim:
            raise ValueError("inconsistent dimensions")
        if len(self.mul) != self.dim or any(len(r) != self.dim for r in self.mul):
            raise ValueError("structure constants have wrong shape")
        for i in range(self.dim):
            b = [1 if k == i else 0 for k in range(self.dim)]
            if self.multiply(self.unit, b) != b or self.multiply(b, self.unit) != b:
                raise ValueError(f"unit axiom fails on basis element {i}")
        tot = [0] * self.dim
        for r, e in enumerate(self.idempotents):
            if self.multiply(e, e) != e:
                raise ValueError(f"idempotent {r} is not idempotent")
            for s, f in enumerate(self.idempotents):
                if s != r and not vec_is_zero(self.multiply(e, f)):
                    raise ValueError(f"idempotents {r},{s} are not orthogonal")
            tot = [a + b for a, b in zip(tot, e)]
        if [norm_scalar(x) for x in tot] != self.unit:
            raise ValueError("idempotents do not sum to the unit")

    def __repr__(self):
        name = self.meta.get("name", "Algebra")
        return f"<{name} dim={self.dim}>"

    # -- multiplication ----------------------------------------------------

    def multiply(self, x, y):
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mul[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                c = a * b
                for k, s in enumerate(row[j]):
                    if s:
                        out[k] += c * s
        return [norm_scalar(v) for v in out]

    def basis_vector(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    def left_matrix(self, i) -> Matrix:
        """L_i with row convention: row(b_i * x) = row(x) * L_i."""
        mats = self._cache.get("left_matrices")
        if mats is None:
            mats = [None] * self.dim
            self._cache["left_matrices"] = mats
        if mats[i] is None:
            # row s of L_i holds the coordinates of b_i * b_s
            mats[i] = Matrix(self.dim, self.dim, [self.mul[i][s] for s in range(self.dim)])
        return mats[i]

    def right_matrix(self, j) -> Matrix:
        """R_j with row convention: row(x * b_j) = row(x) * R_j."""
        mats = self._cache.get("right_matrices")
        if mats is None:
            mats = [None] * self.dim
            self._cache["right_matrices"] = mats
        if mats[j] is None:
            mats[j] = Matrix(self.dim, self.dim, [self.mul[s][j] for s in range(self.dim)])
        return mats[j]

    # -- Peirce structure ---------------------------------------------------

    def idempotent_basis_indices(self):
        """Index of each distinguished idempotent inside the basis.

        The projective-module machinery requires each idempotent to be a
        basis monomial; path algebras and their opposites/tensors always
        satisfy this."""
        idx = self._cache.get("idem_indices")
        if idx is None:
            idx = []
            for r, e in enumerate(self.idempotents):
                nz = [k for k, x in enumerate(e) if x != 0]
                if len(nz) != 1 or e[nz[0]] != 1:
                    raise AlgebraStructureError(
                        f"idempotent {r} is not a basis monomial"
                    )
                idx.append(nz[0])
            self._cache["idem_indices"] = idx
        return idx

    def peirce(self):
        """(left, right) idempotent index per basis element: e_l b e_r = b."""
        pr = self._cache.get("peirce")
        if pr is None:
            left = [None] * self.dim
            right = [None] * self.dim
            for r, e in enumerate(self.idempotents):
                for t in range(self.dim):
                    b = self.basis_vector(t)
                    if self.multiply(e, b) == b:
                        if left[t] is not None:
                            raise AlgebraStructureError(
                                f"basis element {t} has two left idempotents"
                            )
                        left[t] = r
                    if self.multiply(b, e) == b:
                        if right[t] is not None:
                            raise AlgebraStructureError(
                                f"basis element {t} has two right idempotents"
                            )
                        right[t] = r
            if any(x is None for x in left) or any(x is None for x in right):
                raise AlgebraStructureError("basis is not adapted to the idempotents")
            pr = (left, right)
            self._cache["peirce"] = pr
        return pr

    def projective_basis(self, i):
        """Monomial basis indices of e_i * A (paths starting at i)."""
        key = ("proj_basis", i)
        if key not in self._cache:
            left, _ = self.peirce()
            self._cache[key] = [t for t in range(self.dim) if left[t] == i]
        return self._cache[key]

    def coprojective_basis(self, j):
        """Monomial basis indices of A * e_j (paths ending at j)."""
        key = ("coproj_basis", j)
        if key not in self._cache:
            _, right = self.peirce()
            self._cache[key] = [t for t in range(self.dim) if right[t] == j]
        return self._cache[key]

    def peirce_block(self, i, j):
        """Monomial basis indices of e_i A e_j."""
        key = ("peirce_block", i, j)
        if key not in self._cache:
            left, right = self.peirce()
            self._cache[key] = [
                t for t in range(self.dim) if left[t] == i and right[t] == j
            ]
        return self._cache[key]

    def peirce_dim(self, i, j) -> int:
        """dim(e_i A e_j)."""
        return len(self.peirce_block(i, j))

    # -- radical -------------------------------------------------------------

    def radical(self) -> RowBasis:
        """Jacobson radical via the regular trace form (characteristic zero:
        rad A is the kernel of (x, y) -> trace of left multiplication by xy)."""
        rad = self._cache.get("radical")
        if rad is None:
            tl = [self.left_matrix(k).trace() for k in range(self.dim)]
            gram = [
                [
                    norm_scalar(
                        sum(c * tl[k] for k, c in enumerate(self.mul[i][j]) if c)
                    )
                    for j in range(self.dim)
                ]
                for i in range(self.dim)
            ]
            rad = RowBasis(self.dim)
            for v in Matrix(self.dim, self.dim, gram).kernel_basis():
                rad.add(v)
            self._cache["radical"] = rad
        return rad

    def is_semisimple(self) -> bool:
        return self.radical().dim == 0


# -- constructors -------------------------------------------------------------


def _monomial_mul_table(dim, table):
    """Structure constants for a basis where products are single monomials.

    table[i][j] is a basis index or None."""
    zero = [0] * dim
    mul = []
    for i in range(dim):
        row = []
        for j in range(dim):
            k = table[i][j]
            if k is None:
                row.append(zero)
            else:
                v = [0] * dim
                v[k] = 1
                row.append(v)
        mul.append(row)
    return mul


def path_algebra(q: Quiver) -> Algebra:
    """Path algebra of a finite acyclic quiver.

    Basis: all paths, the length-0 path at vertex v labelled "e{v}" first,
    then longer paths ordered by (length, label).  Product is concatenation,
    zero when the endpoints do not match."""
    paths = [((), v, v, f"e{v}") for v in range(q.vertex_count)]
    frontier = list(paths)
    while frontier:
        new = []
        for arrows, src, tgt, label in frontier:
            for k, a in enumerate(q.arrows):
                if a.source == tgt:
                    alabel = a.label if not arrows else label + "*" + a.label
                    new.append((arrows + (k,), src, a.target, alabel))
        new.sort(key=lambda p: p[3])
        paths.extend(new)
        frontier = new
    # keyed by arrow tuple for nontrivial paths, by vertex for trivial ones
    def key_of(p):
        return ("v", p[1]) if not p[0] else ("a",) + p[0]

    index = {key_of(p): i for i, p in enumerate(paths)}
    dim = len(paths)
    table = [[None] * dim for _ in range(dim)]
    for i, (ar1, s1, t1, _) in enumerate(paths):
        for j, (ar2, s2, t2, _) in enumerate(paths):
            if t1 != s2:
                continue
            joined = ar1 + ar2
            k = index[("v", s1)] if not joined else index[("a",) + joined]
            table[i][j] = k
    unit = [0] * dim
    idems = []
    for v in range(q.vertex_count):
        e = [0] * dim
        e[v] = 1
        idems.append(e)
        unit[v] = 1
    return Algebra(
        dim,
        [p[3] for p in paths],
        _monomial_mul_table(dim, table),
        unit,
        idems,
        meta={"name": "path algebra", "quiver": q},
    )


def opposite(a: Algebra) -> Algebra:
    """Opposite algebra: same basis, reversed multiplication.  Involutive,
    and memoized so opposite(opposite(a)) is a itself."""
    cached = a._cache.get("opposite")
    if cached is not None:
        return cached
    mul = [[a.mul[j][i] for j in range(a.dim)] for i in range(a.dim)]
    op = Algebra(
        a.dim,
        a.labels,
        mul,
        a.unit,
        a.idempotents,
        meta={"name": f"op({a.meta.get('name', '?')})", "of": a},
        check=False,
    )
    a._cache["opposite"] = op
    op._cache["opposite"] = a
    return op


_SCALAR = None


def scalar_algebra() -> Algebra:
    """The rationals as a one-dimensional algebra (shared singleton)."""
    global _SCALAR
    if _SCALAR is None:
        _SCALAR = Algebra(
            1,
            ["1"],
            [[[1]]],
            [1],
            [[1]],
            meta={"name": "Q"},
        )
        _SCALAR._cache["opposite"] = _SCALAR
    return _SCALAR


def tensor(a: Algebra, b: Algebra) -> Algebra:
    """Tensor product algebra with basis pairs ordered a-major.

    Both factors sit in degree zero so no sign is involved.  Tensoring with
    the scalar singleton returns the other factor unchanged (the pair
    indexing then degenerates to the identity, so no relabelling is needed).
    Memoized per operand pair."""
    if a is scalar_algebra():
        return b
    if b is scalar_algebra():
        return a
    cache = a._cache.setdefault("tensor_with", [])
    for other, result in cache:
        if other is b:
            return result
    dim = a.dim * b.dim
    labels = [f"{la}|{lb}" for la in a.labels for lb in b.labels]
    zero = [0] * dim
    mul = []
    for i1 in range(a.dim):
        for j1 in range(b.dim):
            row = []
            for i2 in range(a.dim):
                ca = a.mul[i1][i2]
                ca_nz = [(k, c) for k, c in enumerate(ca) if c]
                for j2 in range(b.dim):
                    cb = b.mul[j1][j2]
                    cb_nz = [(k, c) for k, c in enumerate(cb) if c]
                    if not ca_nz or not cb_nz:
                        row.append(zero)
                        continue
                    v = [0] * dim
                    for ka, csa in ca_nz:
                        base = ka * b.dim
                        for kb, csb in cb_nz:
                            v[base + kb] = norm_scalar(csa * csb)
                    row.append(v)
            mul.append(row)
    unit = [0] * dim
    for i, x in enumerate(a.unit):
        if x:
            for j, y in enumerate(b.unit):
                if y:
                    unit[i * b.dim + j] = norm_scalar(x * y)
    idems = []
    for e in a.idempotents:
        for f in b.idempotents:
            v = [0] * dim
            for i, x in enumerate(e):
                if x:
                    for j, y in enumerate(f):
                        if y:
                            v[i * b.dim + j] = norm_scalar(x * y)
            idems.append(v)
    t = Algebra(
        dim,
        labels,
        mul,
        unit,
        idems,
        meta={
            "name": f"{a.meta.get('name', '?')} (x) {b.meta.get('name', '?')}",
            "factors": (a, b),
        },
        check=False,
    )
    cache.append((b, t))
    return t


# -- pair-index helpers for tensor algebras -----------------------------------


def split_pair_basis(left: Algebra, right: Algebra, t: int):
    """Decompose a basis index of tensor(left, right) into factor indices."""
    if left is scalar_algebra():
        return 0, t
    if right is scalar_algebra():
        return t, 0
    return divmod(t, right.dim)


def join_pair_basis(left: Algebra, right: Algebra, i: int, j: int) -> int:
    if left is scalar_algebra():
        return j
    if right is scalar_algebra():
        return i
    return i * right.dim + j


def split_pair_idempotent(left: Algebra, right: Algebra, r: int):
    if left is scalar_algebra():
        return 0, r
    if right is scalar_algebra():
        return r, 0
    return divmod(r, len(right.idempotents))


def join_pair_idempotent(left: Algebra, right: Algebra, i: int, j: int) -> int:
    if left is scalar_algebra():
        return j
    if right is scalar_algebra():
        return i
    return i * len(right.idempotents) + j


def enveloping_algebra(a: Algebra) -> Algebra:
    """tensor(opposite(a), a); bimodules over a are right modules over this."""
    return tensor(opposite(a), a)


def swap_permutation(a: Algebra, b: Algebra):
    """Basis permutation realizing the anti-isomorphism
    tensor(opposite(a), b) -> tensor(opposite(b), a), (x^op, y) -> (y^op, x)."""
    e_ab = tensor(opposite(a), b)
    perm = [0] * e_ab.dim
    for t in range(e_ab.dim):
        i, j = split_pair_basis(opposite(a), b, t)
        perm[t] = join_pair_basis(opposite(b), a, j, i)
    return perm
