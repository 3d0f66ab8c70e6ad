"""Hochschild homology with bimodule coefficients and the intersection pairing.

The production computation tensors the (short) minimal resolution of the
diagonal bimodule against the coefficients over the enveloping algebra;
HH_n is the cohomology of that complex in degree -n.  The bar complex
W (x) A^{(x) n} with the standard face-map differential is retained as an
independent oracle up to a degree cap: its terms grow like dim(W) dim(A)^n,
so its ranks are taken by a private sparse elimination (the dense Matrix
type remains the public contract of the linear algebra layer).

Intersection numbers of correspondences are alternating sums of Hochschild
dimensions of composed bimodules.  The Euler characteristic of a bounded
complex equals the alternating sum of its component dimensions, so these
need only the idempotent traces of the tensor complexes, never homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Algebra,
    join_pair_basis,
    opposite,
    scalar_algebra,
    tensor,
)
from .complexes import Complex, as_complex
from .derived import diagonal_resolution
from .homalg import tensor_euler_traces, tensor_over
from .linalg import as_fraction, norm_scalar
from .modules import Module, left_structure_module
from .resolutions import DEFAULT_CAP


@dataclass
class HHProfile:
    algebra: Algebra
    dims: list
    coefficients: str = ""

    def euler(self) -> int:
        return sum((-1) ** n * d for n, d in enumerate(self.dims))


def _left_structure_complex(w, a: Algebra) -> Complex:
    """Componentwise left-module structure of a complex of A-A-bimodules."""
    w = as_complex(w)
    comps = {n: left_structure_module(m, a) for n, m in w.components.items()}
    alg = opposite(tensor(opposite(a), a))
    return Complex(alg, comps, dict(w.differentials), check=False)


def hochschild(a: Algebra, w, top: int | None = None, cap: int = DEFAULT_CAP) -> HHProfile:
    """Hochschild homology dimensions of A with coefficients in a bimodule
    (or bounded complex of bimodules) over tensor(op(A), A).

    HH_n is the cohomology in degree -n of
    (diagonal resolution) (x)_{A^e} coefficients."""
    diag = diagonal_resolution(a, cap)
    wc = as_complex(w)
    q = scalar_algebra()
    env = tensor(opposite(a), a)
    if wc.algebra is not env:
        raise ValueError("coefficients are not bimodules over tensor(op(A), A)")
    t = tensor_over(diag, _left_structure_complex(wc, a), q, env, q, check=False)
    if top is None:
        top = max(0, -t.lo) if not t.is_zero() else 0
    dims = [t.homology(-n)[0] for n in range(top + 1)]
    return HHProfile(a, dims, coefficients="bimodule")


def hochschild_euler(a: Algebra, w, cap: int = DEFAULT_CAP) -> int:
    """Alternating sum of Hochschild dimensions, computed as the Euler
    characteristic of the tensor complex via idempotent traces only."""
    wc = as_complex(w)
    env = tensor(opposite(a), a)
    if wc.algebra is not env:
        raise ValueError("coefficients are not bimodules over tensor(op(A), A)")
    return _euler_from_traces(a, euler_idempotent_traces(wc, a), cap)


def _euler_from_traces(a: Algebra, traces: dict, cap: int) -> int:
    """Pair the alternating copy weights of the diagonal resolution against
    alternating idempotent traces of the coefficients (with the swap that
    realizes the left action)."""
    diag = diagonal_resolution(a, cap)
    weights = diag.euler_copy_weights()
    n_a = len(a.idempotents)
    total = 0
    for r, wgt in enumerate(weights):
        if not wgt:
            continue
        u, v = divmod(r, n_a)
        total += wgt * traces[v * n_a + u]
    if not isinstance(total, int):
        raise AssertionError("Hochschild Euler characteristic must be an integer")
    return total


def euler_idempotent_traces(c, algebra: Algebra) -> dict:
    """Alternating idempotent traces of a complex of bimodules over
    tensor(op(algebra), algebra), keyed by idempotent-pair index."""
    c = as_complex(c)
    env = tensor(opposite(algebra), algebra)
    if c.algebra is not env:
        raise ValueError("complex does not live over the enveloping algebra")
    idem_idx = env.idempotent_basis_indices()
    out = {}
    for r in range(len(env.idempotents)):
        s = 0
        for deg in c.degrees():
            comp = c.components.get(deg)
            if comp is None:
                continue
            t = comp.action[idem_idx[r]].trace()
            if t:
                s += ((-1) ** (deg % 2)) * t
        if not isinstance(s, int):
            raise AssertionError("idempotent trace is not integral")
        out[r] = s
    return out


# -- bar complex oracle ---------------------------------------------------------


def bar_oracle(a: Algebra, w: Module, top: int = 4) -> HHProfile:
    """Hochschild homology of A with coefficients in a single bimodule via
    the standard bar complex W (x) A^{(x) n}, n <= top.

    dims[n] = dim C_n - rank d_n - rank d_{n+1}."""
    env = tensor(opposite(a), a)
    if w.algebra is not env:
        raise ValueError("coefficients are not bimodules over tensor(op(A), A)")
    dim_w = w.dim
    dim_a = a.dim

    right_rows = []
    left_rows = []
    for t in range(dim_a):
        racc = None
        lacc = None
        for i, u in enumerate(a.unit):
            if not u:
                continue
            rmat = w.action[join_pair_basis(opposite(a), a, i, t)]
            lmat = w.action[join_pair_basis(opposite(a), a, t, i)]
            rmat = rmat if u == 1 else rmat.scale(u)
            lmat = lmat if u == 1 else lmat.scale(u)
            racc = rmat if racc is None else racc + rmat
            lacc = lmat if lacc is None else lacc + lmat
        right_rows.append([_sparse_row(r) for r in racc.data])
        left_rows.append([_sparse_row(r) for r in lacc.data])

    def comp_dim(n):
        return dim_w * dim_a**n

    ranks = [0] * (top + 2)  # ranks[n] = rank of d_n : C_n -> C_{n-1}
    for n in range(1, top + 2):
        rows = _bar_differential_rows(a, dim_w, right_rows, left_rows, n)
        ranks[n] = _sparse_rank(rows)
    dims = [comp_dim(n) - ranks[n] - ranks[n + 1] for n in range(top + 1)]
    return HHProfile(a, dims, coefficients="bar")


def _sparse_row(dense):
    return {j: v for j, v in enumerate(dense) if v}


def _bar_differential_rows(a: Algebra, dim_w, right_rows, left_rows, n):
    """Rows of d_n : W (x) A^{(x)n} -> W (x) A^{(x)n-1} as sparse dicts.

    d(w, t1..tn) = (w t1, t2..) + sum_i (-1)^i (w, .., t_i t_{i+1}, ..)
                   + (-1)^n (t_n w, t1..t_{n-1}).
    Basis index of (w, t1..tn) is w + dim_w * (t1 + dim_a * (t2 + ...))."""
    dim_a = a.dim
    mul = a.mul
    rows = []
    tuples = [()]
    for _ in range(n):
        tuples = [t + (x,) for t in tuples for x in range(dim_a)]

    def enc(widx, ts):
        idx = 0
        for t in reversed(ts):
            idx = idx * dim_a + t
        return widx + dim_w * idx

    sign_n = -1 if n % 2 else 1
    for ts in tuples:
        for widx in range(dim_w):
            row: dict = {}
            for w2, c in right_rows[ts[0]][widx].items():
                key = enc(w2, ts[1:])
                row[key] = row.get(key, 0) + c
            sign = 1
            for i in range(n - 1):
                sign = -sign
                prod = mul[ts[i]][ts[i + 1]]
                for k, c in enumerate(prod):
                    if c:
                        key = enc(widx, ts[:i] + (k,) + ts[i + 2 :])
                        row[key] = row.get(key, 0) + sign * c
            for w2, c in left_rows[ts[-1]][widx].items():
                key = enc(w2, ts[:-1])
                row[key] = row.get(key, 0) + sign_n * c
            row = {k: norm_scalar(v) for k, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def _sparse_rank(rows) -> int:
    """Exact rank of a sparse matrix given as row dicts.

    Greedy pivoting prefers short rows with a unit entry, which keeps the
    elimination integral for the incidence-like matrices the bar complex
    produces; other pivots fall back to exact fractions."""
    import heapq

    rows = [dict(r) for r in rows if r]
    col_to_rows: dict = {}
    for ri, r in enumerate(rows):
        for c in r:
            col_to_rows.setdefault(c, set()).add(ri)
    alive = set(range(len(rows)))
    heap = [(len(r), ri) for ri, r in enumerate(rows)]
    heapq.heapify(heap)
    rank = 0
    while heap:
        sz, ri = heapq.heappop(heap)
        if ri not in alive:
            continue
        row = rows[ri]
        if not row:
            alive.discard(ri)
            continue
        if len(row) != sz:
            heapq.heappush(heap, (len(row), ri))
            continue
        best = None
        for c, v in row.items():
            cand = (0 if v == 1 or v == -1 else 1, len(col_to_rows.get(c, ())), c)
            if best is None or cand < best[0]:
                best = (cand, c)
        piv_col = best[1]
        piv_val = row[piv_col]
        rank += 1
        alive.discard(ri)
        sharing = col_to_rows.pop(piv_col, set())
        for c in row:
            if c != piv_col and c in col_to_rows:
                col_to_rows[c].discard(ri)
        for rj in sharing:
            if rj not in alive:
                continue
            other = rows[rj]
            val = other.get(piv_col)
            if not val:
                continue
            if piv_val == 1:
                factor = val
            elif piv_val == -1:
                factor = -val
            else:
                factor = norm_scalar(as_fraction(val) / as_fraction(piv_val))
            for c, v in row.items():
                nv = norm_scalar(other.get(c, 0) - factor * v)
                if nv:
                    if c not in other:
                        col_to_rows.setdefault(c, set()).add(rj)
                    other[c] = nv
                else:
                    if c in other:
                        del other[c]
                        if c in col_to_rows:
                            col_to_rows[c].discard(rj)
            heapq.heappush(heap, (len(other), rj))
    return rank


# -- intersection numbers ---------------------------------------------------------


def intersection_number(x, y, cap: int = DEFAULT_CAP) -> Fraction:
    """Intersection pairing of correspondences x: (A,e) -> (B,e') and
    y: (B,e') -> (A,e): the bilinear combination over term pairs of the
    alternating Hochschild dimension sums of X_i (x)_B Y_j."""
    if x.source.algebra is not y.target.algebra or x.target.algebra is not y.source.algebra:
        raise ValueError("correspondence endpoints do not chain")
    a = x.source.algebra
    b = x.target.algebra
    total = Fraction(0)
    for cx, xt in x.terms:
        for cy, yt in y.terms:
            traces = tensor_euler_traces(xt, as_complex(yt), a, b, a)
            s = _euler_from_traces(a, traces, cap)
            total += as_fraction(cx) * as_fraction(cy) * s
    return total
