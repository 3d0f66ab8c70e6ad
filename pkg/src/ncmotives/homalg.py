"""Hom complexes, balanced tensor products and duals of perfect complexes.

Everything here leans on one structural fact about the supported algebras:
a perfect complex has components (+) e A for distinguished idempotents e, so

    Hom_A(e A, N)  =  N e          (a hom is determined by the generator image)
    e(L^op (x) M)  restricted to M is projective, hence
    ((l^op, m)-summand) (x)_M Y  =  L e_l (x) (e_m Y)

which turns derived Hom and derived tensor into finite block bookkeeping
instead of large commutant solves.  Conventions:

* Hom complex: Hom^k = (+)_p Hom(M^p, N^{p+k}),  (df) = d_N f - (-1)^k f d_M.
  Its degree-k cohomology computes morphisms M -> shift(N, k) in the derived
  category; alternating sums of these dimensions form the Euler pairing.
* Tensor totalization: d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy.
* dual() applies Hom(-, ring) summandwise, negating degrees, transporting
  each left-multiplication block z to its image under the canonical
  anti-isomorphism tensor(op(A), B) -> tensor(op(B), A); it is a strict
  involution on perfect complexes.
"""

from __future__ import annotations

from .algebra import (
    Algebra,
    join_pair_basis,
    join_pair_idempotent,
    opposite,
    split_pair_basis,
    split_pair_idempotent,
    swap_permutation,
    tensor,
)
from .complexes import (
    Complex,
    PerfectComplex,
    as_complex,
    assemble_block_matrix,
    scalar_complex,
)
from .linalg import Matrix, RowBasis, norm_scalar, row_times
from .modules import Module


# -- right idempotent images ----------------------------------------------------


def idempotent_image(module: Module, idem_basis_index: int) -> RowBasis:
    """Row basis of the image of an idempotent basis element acting on the
    right (the subspace it projects onto)."""
    rb = RowBasis(module.dim)
    for r in module.action[idem_basis_index].data:
        rb.add(r)
    return rb


# -- Hom complexes ---------------------------------------------------------------


def hom_complex(m: PerfectComplex, n) -> Complex:
    """Total Hom complex of a perfect complex into a complex over the same
    algebra, as a complex of plain vector spaces."""
    n = as_complex(n)
    a = m.algebra
    if n.algebra is not a:
        raise ValueError("hom_complex arguments live over different algebras")
    if m.is_zero() or n.is_zero():
        return scalar_complex({}, {})
    idem_idx = a.idempotent_basis_indices()

    images: dict = {}

    def image_at(q, i):
        key = (q, i)
        if key not in images:
            images[key] = idempotent_image(n.component(q), idem_idx[i])
        return images[key]

    # layout: degree k |-> list of (p, copy, image RowBasis, offset)
    layout: dict[int, list] = {}
    dims: dict[int, int] = {}
    for k in range(n.lo - m.hi, n.hi - m.lo + 1):
        entries = []
        off = 0
        for p in m.degrees():
            q = p + k
            if not (n.lo <= q <= n.hi):
                continue
            for c, i in enumerate(m.copies_at(p)):
                img = image_at(q, i)
                if img.dim:
                    entries.append((p, c, img, off))
                    off += img.dim
        if entries:
            layout[k] = entries
            dims[k] = off

    index: dict[int, dict] = {
        k: {(p, c): (img, off) for (p, c, img, off) in entries}
        for k, entries in layout.items()
    }

    diffs: dict[int, Matrix] = {}
    for k, entries in layout.items():
        if k + 1 not in layout:
            continue
        tgt = index[k + 1]
        rows = []
        sign = -1 if k % 2 == 0 else 1  # -(-1)^k
        for p, c, img, _off in entries:
            q = p + k
            d_n = n.differentials.get(q)
            blocks = m.block_elements(p - 1)
            nq = n.component(q)
            for w in img.rows:
                out = [0] * dims[k + 1]
                # d_N o f : same copy, target degree q+1
                if d_n is not None and (p, c) in tgt:
                    timg, toff = tgt[(p, c)]
                    cs = timg.coords(row_times(w, d_n))
                    if cs is None:
                        raise AssertionError("image escaped its idempotent block")
                    for t, v in enumerate(cs):
                        if v:
                            out[toff + t] += v
                # -(-1)^k f o d_M : copies one degree down in M
                for (c2, cc), z in blocks.items():
                    if cc != c or (p - 1, c2) not in tgt:
                        continue
                    timg, toff = tgt[(p - 1, c2)]
                    val = row_times(w, nq.act_matrix(z))
                    cs = timg.coords(val)
                    if cs is None:
                        raise AssertionError("transport escaped its idempotent block")
                    for t, v in enumerate(cs):
                        if v:
                            out[toff + t] += sign * v
                rows.append([norm_scalar(x) for x in out])
        diffs[k] = Matrix(dims[k], dims[k + 1], rows)
    return scalar_complex(dims, diffs)


# -- balanced tensor product -----------------------------------------------------


def tensor_over(
    x: PerfectComplex,
    y,
    left: Algebra,
    middle: Algebra,
    right: Algebra,
    check: bool = True,
) -> Complex:
    """Total complex of x (x)_middle y.

    x must be a perfect complex over tensor(opposite(left), middle) -- its
    components are then projective as right middle-modules, so the result
    computes the derived tensor product.  y is any bounded complex of
    modules over tensor(opposite(middle), right).  The output is a complex
    of modules over tensor(opposite(left), right) whose degree-k component
    is the direct sum over p+q = k and copies (l, m) of

        (L e_l) (x) (e_m . Y^q).
    """
    y = as_complex(y)
    e_x = tensor(opposite(left), middle)
    e_y = tensor(opposite(middle), right)
    e_t = tensor(opposite(left), right)
    if not isinstance(x, PerfectComplex):
        raise ValueError(
            "the left tensor factor must be a perfect complex "
            "(resolve it over the middle algebra first)"
        )
    if x.algebra is not e_x:
        raise ValueError("x is not perfect over tensor(op(left), middle)")
    if y.algebra is not e_y:
        raise ValueError("y does not live over tensor(op(middle), right)")
    if x.is_zero() or y.is_zero():
        return Complex(e_t, {}, {}, check=False)

    mid_idem_idx = middle.idempotent_basis_indices()
    right_idem_count = len(right.idempotents)

    # left-action matrices of middle basis elements on the components of y
    yleft_cache: dict = {}

    def yleft(q, g_m):
        key = (q, g_m)
        if key not in yleft_cache:
            yq = y.component(q)
            acc = None
            for j, u in enumerate(right.unit):
                if not u:
                    continue
                mat = yq.action[join_pair_basis(opposite(middle), right, g_m, j)]
                mat = mat if u == 1 else mat.scale(u)
                acc = mat if acc is None else acc + mat
            yleft_cache[key] = acc if acc is not None else Matrix.zeros(yq.dim, yq.dim)
        return yleft_cache[key]

    yright_cache: dict = {}

    def yright(q, r):
        key = (q, r)
        if key not in yright_cache:
            yq = y.component(q)
            acc = None
            for i, u in enumerate(middle.unit):
                if not u:
                    continue
                mat = yq.action[join_pair_basis(opposite(middle), right, i, r)]
                mat = mat if u == 1 else mat.scale(u)
                acc = mat if acc is None else acc + mat
            yright_cache[key] = acc if acc is not None else Matrix.zeros(yq.dim, yq.dim)
        return yright_cache[key]

    yblock_cache: dict = {}

    def yblock(q, m_idem) -> RowBasis:
        key = (q, m_idem)
        if key not in yblock_cache:
            rb = RowBasis(y.component_dim(q))
            for r in yleft(q, mid_idem_idx[m_idem]).data:
                rb.add(r)
            yblock_cache[key] = rb
        return yblock_cache[key]

    # block layout per total degree: (p, copy, l, m, lblock, yb, offset)
    layout: dict[int, list] = {}
    dims: dict[int, int] = {}
    for k in range(x.lo + y.lo, x.hi + y.hi + 1):
        entries = []
        off = 0
        for p in x.degrees():
            q = k - p
            if not (y.lo <= q <= y.hi):
                continue
            for c, idem in enumerate(x.copies_at(p)):
                l_i, m_i = split_pair_idempotent(opposite(left), middle, idem)
                lblock = left.coprojective_basis(l_i)
                yb = yblock(q, m_i)
                if lblock and yb.dim:
                    entries.append((p, c, l_i, m_i, lblock, yb, off))
                    off += len(lblock) * yb.dim
        if entries:
            layout[k] = entries
            dims[k] = off
    if not layout:
        return Complex(e_t, {}, {}, check=False)

    index = {
        k: {(e[0], e[1]): e for e in entries} for k, entries in layout.items()
    }

    # components with their module structure over e_t
    components: dict[int, Module] = {}
    for k, entries in layout.items():
        total = dims[k]
        action = []
        for t in range(e_t.dim):
            a_i, r_i = split_pair_basis(opposite(left), right, t)
            big = [[0] * total for _ in range(total)]
            for (p, c, l_i, m_i, lblock, yb, off) in entries:
                q = k - p
                # left multiplication of basis a_i on L e_l, in block coords
                lrows = left.mul[a_i]
                lpos = {u: s for s, u in enumerate(lblock)}
                ydim = yb.dim
                # right action of r_i on the y block
                ymat = yright(q, r_i)
                yrows = []
                for v in yb.rows:
                    cs = yb.coords(row_times(v, ymat))
                    if cs is None:
                        raise AssertionError("right action escaped the block")
                    yrows.append(cs)
                for s, u in enumerate(lblock):
                    lrow = lrows[u]
                    for u2, cl in enumerate(lrow):
                        if not cl or u2 not in lpos:
                            continue
                        s2 = lpos[u2]
                        for vi in range(ydim):
                            src = off + s * ydim + vi
                            yr = yrows[vi]
                            dst_base = off + s2 * ydim
                            row = big[src]
                            for vj, cy in enumerate(yr):
                                if cy:
                                    row[dst_base + vj] += cl * cy
            action.append(Matrix(total, total, big))
        components[k] = Module(e_t, total, action)

    # differentials
    diffs: dict[int, Matrix] = {}
    for k, entries in layout.items():
        if k + 1 not in layout:
            continue
        tgt = index[k + 1]
        rows_out = [[0] * dims[k + 1] for _ in range(dims[k])]
        for (p, c, l_i, m_i, lblock, yb, off) in entries:
            q = k - p
            ydim = yb.dim
            # (a) identity (x) d_Y with sign (-1)^p
            d_y = y.differentials.get(q)
            if d_y is not None and (p, c) in tgt:
                (_, _, _, _, lblock2, yb2, off2) = tgt[(p, c)]
                sgn = -1 if p % 2 else 1
                for vi, v in enumerate(yb.rows):
                    cs = yb2.coords(row_times(v, d_y))
                    if cs is None:
                        raise AssertionError("d_Y escaped the block")
                    for s in range(len(lblock)):
                        row = rows_out[off + s * ydim + vi]
                        dst_base = off2 + s * yb2.dim
                        for vj, cy in enumerate(cs):
                            if cy:
                                row[dst_base + vj] += sgn * cy
            # (b) d_X (x) identity
            blocks = x.block_elements(p)
            for (cc, c2), z in blocks.items():
                if cc != c or (p + 1, c2) not in tgt:
                    continue
                (_, _, l2, m2, lblock2, yb2, off2) = tgt[(p + 1, c2)]
                lpos2 = {u: s for s, u in enumerate(lblock2)}
                for g, coeff in enumerate(z):
                    if not coeff:
                        continue
                    g_l, g_m = split_pair_basis(opposite(left), middle, g)
                    ymove = yleft(q, g_m)
                    ycoords = []
                    for v in yb.rows:
                        cs = yb2.coords(row_times(v, ymove))
                        if cs is None:
                            raise AssertionError("d_X transport escaped the block")
                        ycoords.append(cs)
                    for s, u in enumerate(lblock):
                        for u2, cl in enumerate(left.mul[u][g_l]):
                            if not cl or u2 not in lpos2:
                                continue
                            s2 = lpos2[u2]
                            dst_base = off2 + s2 * yb2.dim
                            cc2 = coeff * cl
                            for vi in range(ydim):
                                row = rows_out[off + s * ydim + vi]
                                for vj, cy in enumerate(ycoords[vi]):
                                    if cy:
                                        row[dst_base + vj] += cc2 * cy
        diffs[k] = Matrix(
            dims[k], dims[k + 1], [[norm_scalar(v) for v in r] for r in rows_out]
        )

    return Complex(e_t, components, diffs, check=check)


def tensor_euler_traces(x: PerfectComplex, y, left, middle, right) -> dict:
    """Alternating-sum traces of the idempotent actions on x (x)_middle y,
    keyed by idempotent index of tensor(opposite(left), right).

    These are the coordinates of the tensor complex's class in the simple
    basis, computed without assembling the complex: the (i, j) trace on the
    block for a copy (l, m) in degree p against Y^q factors as
    dim(e_i L e_l) * trace of the pair action (m, j) on Y^q."""
    y = as_complex(y)
    e_y = tensor(opposite(middle), right)
    if y.algebra is not e_y:
        raise ValueError("y does not live over tensor(op(middle), right)")
    mid_idem_idx = middle.idempotent_basis_indices()
    right_idem_idx = right.idempotent_basis_indices()
    n_l = len(left.idempotents)
    n_r = len(right.idempotents)

    # per degree q and pair (m, j): trace of the (m-left, j-right) projection
    tr_cache: dict = {}

    def ytrace(q, m_i, j_i):
        key = (q, m_i, j_i)
        if key not in tr_cache:
            yq = y.component(q)
            t = yq.action[
                join_pair_basis(
                    opposite(middle), right, mid_idem_idx[m_i], right_idem_idx[j_i]
                )
            ].trace()
            if not isinstance(t, int):
                raise AssertionError("idempotent trace is not integral")
            tr_cache[key] = t
        return tr_cache[key]

    out = {
        join_pair_idempotent(opposite(left), right, i, j): 0
        for i in range(n_l)
        for j in range(n_r)
    }
    for p in x.degrees():
        for idem in x.copies_at(p):
            l_i, m_i = split_pair_idempotent(opposite(left), middle, idem)
            for q in y.degrees():
                if y.component_dim(q) == 0:
                    continue
                s = -1 if (p + q) % 2 else 1
                for i in range(n_l):
                    d = left.peirce_dim(i, l_i)
                    if not d:
                        continue
                    for j in range(n_r):
                        t = ytrace(q, m_i, j)
                        if t:
                            out[
                                join_pair_idempotent(opposite(left), right, i, j)
                            ] += s * d * t
    return out


# -- duals ------------------------------------------------------------------------


def dual_perfect(x: PerfectComplex, left: Algebra, right: Algebra) -> PerfectComplex:
    """Summandwise dual Hom(-, ring) of a perfect complex over
    tensor(op(left), right), as a perfect complex over tensor(op(right), left).

    Degrees are negated; each left-multiplication block is transported along
    the canonical anti-isomorphism of the two tensor algebras.  Applying the
    construction twice returns the original complex on the nose."""
    e_ab = tensor(opposite(left), right)
    if x.algebra is not e_ab:
        raise ValueError("x is not perfect over tensor(op(left), right)")
    e_ba = tensor(opposite(right), left)
    if x.is_zero():
        return PerfectComplex(e_ba, {}, {}, check=False)
    perm = swap_permutation(left, right)

    def sigma_idem(r):
        i, j = split_pair_idempotent(opposite(left), right, r)
        return join_pair_idempotent(opposite(right), left, j, i)

    copies = {
        -n: tuple(sigma_idem(i) for i in cs) for n, cs in x.copies.items()
    }
    diffs: dict[int, Matrix] = {}
    for n in x.copies:
        blocks = x.block_elements(n)
        if not blocks:
            continue
        dual_blocks = {}
        for (c, c2), z in blocks.items():
            sz = [0] * e_ba.dim
            for g, coeff in enumerate(z):
                if coeff:
                    sz[perm[g]] = coeff
            dual_blocks[(c2, c)] = sz
        diffs[-n - 1] = assemble_block_matrix(
            e_ba, copies[-n - 1], copies[-n], dual_blocks
        )
    return PerfectComplex(e_ba, copies, diffs)
