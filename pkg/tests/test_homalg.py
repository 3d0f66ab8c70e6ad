"""Hom complexes, tensor products and duals, cross-checked against a
commutant-equation solver that never uses the projective shortcut."""

from ncmotives.algebra import opposite, scalar_algebra, tensor
from ncmotives.complexes import Complex, PerfectComplex, single_module_complex
from ncmotives.corpus import random_perfect_complex
from ncmotives.derived import k0_class
from ncmotives.homalg import (
    dual_perfect,
    hom_complex,
    tensor_euler_traces,
    tensor_over,
)
from ncmotives.linalg import Matrix
from ncmotives.modules import (
    Module,
    projective_module,
    simple_modules,
)
from ncmotives.resolutions import projective_resolution


def brute_hom_dim(m1: Module, m2: Module) -> int:
    """dim Hom_A(M1, M2) by solving the commutant equations directly."""
    d1, d2 = m1.dim, m2.dim
    if d1 == 0 or d2 == 0:
        return 0
    rows = []
    for b in range(m1.algebra.dim):
        a1 = m1.action[b]
        a2 = m2.action[b]
        for r in range(d1):
            for c in range(d2):
                row = [0] * (d1 * d2)
                for k in range(d1):
                    if a1.data[r][k]:
                        row[k * d2 + c] += a1.data[r][k]
                for k in range(d2):
                    if a2.data[k][c]:
                        row[r * d2 + k] -= a2.data[k][c]
                rows.append(row)
    return len(Matrix(len(rows), d1 * d2, rows).kernel_basis())


def test_hom_of_projective_over_scalars(q):
    p, _ = projective_module(q, 0)
    res, _ = projective_resolution(p)
    h = hom_complex(res, res.to_complex())
    assert h.homology_dims() == {0: 1}


def test_hom_component_dims_match_brute_force(a2, a3, kronecker):
    for alg in (a2, a3, kronecker):
        mods = simple_modules(alg) + [projective_module(alg, i)[0] for i in range(len(alg.idempotents))]
        for m in mods:
            res, _ = projective_resolution(m)
            for n in mods:
                h = hom_complex(res, single_module_complex(n))
                # degree 0 of the Hom complex out of P^0 computes Hom(P^0, n)
                p0, _ = projective_module(alg, 0)
                # compare the full Hom-space dimension at each bidegree
                for p in res.degrees():
                    comp, _ = _component_module(res, alg, p)
                    assert h.component_dim(-p) == brute_hom_dim(comp, n)


def _component_module(res, alg, p):
    from ncmotives.modules import direct_sum_modules

    mods = [projective_module(alg, i)[0] for i in res.copies_at(p)]
    return direct_sum_modules(alg, mods)


def test_a2_ext_table_against_explicit_resolution(a2):
    """Ext dims for the A2 simples from a hand-written resolution and the
    commutant solver, compared with hom_complex homology."""
    s0, s1 = simple_modules(a2)
    # hand-built: S0 has resolution  P1 --(left mult by a)--> P0
    p0, basis0 = projective_module(a2, 0)
    p1, basis1 = projective_module(a2, 1)
    # map e1 |-> a, expressed on the monomial bases {e1} -> {e0, a}
    d = Matrix.from_rows([[0, 1]])
    # Hom(P0, S_j) and Hom(P1, S_j) and the induced map give Ext^0/Ext^1
    expected = {}
    for j, s in enumerate((s0, s1)):
        hom_p0 = brute_hom_dim(p0, s)
        hom_p1 = brute_hom_dim(p1, s)
        # the induced map Hom(P0,S) -> Hom(P1,S) is precomposition with d;
        # for 1-dimensional S it kills a hom iff the generator image dies
        # under the radical map, which happens exactly when j != 1
        # rank computed honestly below
        rank = 0
        if hom_p0 and hom_p1:
            # a hom P0 -> S sends e0 to some s-value v and a to v*a = 0;
            # precomposing with d maps the generator e1 to the image of a,
            # which is zero, so the induced map is zero
            rank = 0
        expected[(0, j)] = (hom_p0 - rank, hom_p1 - rank)
    res0, _ = projective_resolution(s0)
    for j, s in enumerate((s0, s1)):
        h = hom_complex(res0, single_module_complex(s))
        ext0, ext1 = expected[(0, j)]
        assert h.homology(0)[0] == ext0
        assert h.homology(1)[0] == ext1
    # the sink simple is projective: Ext^1(S1, -) = 0
    res1, _ = projective_resolution(s1)
    for s in (s0, s1):
        h = hom_complex(res1, single_module_complex(s))
        assert h.homology(1)[0] == 0


def test_ext_dims_match_arrow_counts(a2, a3, kronecker):
    # Ext^1(S_i, S_j) has dimension equal to the number of arrows i -> j
    from ncmotives.corpus import corpus_quiver

    for alg, name in ((a2, "A2"), (a3, "A3"), (kronecker, "Kronecker")):
        quiver = corpus_quiver(name)
        counts = {}
        for arr in quiver.arrows:
            counts[(arr.source, arr.target)] = counts.get((arr.source, arr.target), 0) + 1
        simples = simple_modules(alg)
        for i, si in enumerate(simples):
            res, _ = projective_resolution(si)
            for j, sj in enumerate(simples):
                h = hom_complex(res, single_module_complex(sj))
                assert h.homology(0)[0] == (1 if i == j else 0)
                assert h.homology(1)[0] == counts.get((i, j), 0)


def test_hom_shift_compatibility(a2, rng):
    m = random_perfect_complex(a2, rng)
    n = random_perfect_complex(a2, rng)
    h = hom_complex(m, n.to_complex()).homology_dims()
    h_shift = hom_complex(m, n.shift(1).to_complex()).homology_dims()
    degs = set(h) | {d - 1 for d in h_shift}
    for i in degs:
        assert h.get(i, 0) == h_shift.get(i + 1, 0)


def test_hom_dims_independent_of_resolution(a2, rng):
    """Two different resolutions of the same homology give equal Hom
    cohomology: pad the minimal resolution with an acyclic two-term piece."""
    s0, s1 = simple_modules(a2)
    res, _ = projective_resolution(s0)
    # acyclic complex P1 --id--> P1 in degrees -1, 0
    padded = PerfectComplex(
        a2,
        {n: res.copies_at(n) + ((1,) if n in (-1, 0) else ()) for n in res.degrees()},
        _padded_diffs(a2, res),
    )
    assert padded.homology_dims() == res.homology_dims()
    for target in (s0, s1):
        h1 = hom_complex(res, single_module_complex(target)).homology_dims()
        h2 = hom_complex(padded, single_module_complex(target)).homology_dims()
        degs = set(h1) | set(h2)
        assert all(h1.get(d, 0) == h2.get(d, 0) for d in degs)


def _padded_diffs(a2, res):
    # copies at -1: res(-1) + (1,); copies at 0: res(0) + (1,)
    from ncmotives.complexes import assemble_block_matrix

    blocks = dict(res.block_elements(-1))
    src = res.copies_at(-1) + (1,)
    tgt = res.copies_at(0) + (1,)
    e1 = [0] * a2.dim
    e1[a2.idempotent_basis_indices()[1]] = 1
    blocks[(len(src) - 1, len(tgt) - 1)] = e1
    return {-1: assemble_block_matrix(a2, src, tgt, blocks)}


def test_tensor_over_requires_perfect_left_factor(a2, q):
    from ncmotives.modules import diagonal_bimodule

    diag = single_module_complex(diagonal_bimodule(a2))
    try:
        tensor_over(diag, diag, q, a2, a2)
    except ValueError as exc:
        assert "perfect" in str(exc)
        return
    raise AssertionError("non-perfect left factor must be rejected")


def test_tensor_over_middle_algebra_mismatch(a2, kronecker, q, rng):
    x = random_perfect_complex(a2, rng)
    y = random_perfect_complex(kronecker, rng)
    try:
        tensor_over(x, y.to_complex(), q, a2, q)
    except ValueError:
        return
    raise AssertionError("algebra mismatch must be rejected")


def test_tensor_over_scalars_multiplies_dims(q, rng):
    x = random_perfect_complex(q, rng, max_width=1)
    y = random_perfect_complex(q, rng, max_width=1)
    t = tensor_over(x, y.to_complex(), q, q, q)
    for k in t.degrees():
        expected = sum(
            x.component_dim(p) * y.component_dim(k - p) for p in x.degrees()
        )
        assert t.component_dim(k) == expected


def test_tensor_unit_constraint(a2, rng):
    """A (x)_A M is quasi-isomorphic to M for the diagonal bimodule A."""
    from ncmotives.derived import diagonal_resolution

    q = scalar_algebra()
    diag = diagonal_resolution(a2)
    for _ in range(3):
        m = random_perfect_complex(a2, rng)
        # view M as a (Q, A)-bimodule complex and tensor on the left:
        # M (x)_A (diagonal) via the A-A-bimodule resolution
        t = tensor_over(m, diag.to_complex(), q, a2, a2)
        degs = set(t.components) | set(m.copies)
        for n in degs:
            assert t.homology(n)[0] == m.homology(n)[0]


def test_tensor_euler_traces_match_assembled(a2, kronecker, rng):
    q = scalar_algebra()
    e = tensor(opposite(a2), kronecker)
    e_rev = tensor(opposite(kronecker), a2)
    x = random_perfect_complex(e, rng, max_width=1)
    y = random_perfect_complex(e_rev, rng, max_width=1)
    t = tensor_over(x, y.to_complex(), a2, kronecker, a2)
    traces = tensor_euler_traces(x, y.to_complex(), a2, kronecker, a2)
    env = tensor(opposite(a2), a2)
    idem_idx = env.idempotent_basis_indices()
    for r in range(len(env.idempotents)):
        total = 0
        for n in t.degrees():
            comp = t.components.get(n)
            if comp is None:
                continue
            tr = comp.action[idem_idx[r]].trace()
            total += (-1 if n % 2 else 1) * tr
        assert total == traces[r]


def test_tensor_over_output_is_a_complex_of_modules(a2, qxq, kronecker, rng):
    """Deep structural validation: every component of a tensor product
    satisfies the full module axioms over the output algebra and every
    differential commutes with the action."""
    shapes = [(a2, kronecker, a2), (qxq, a2, qxq), (a2, a2, kronecker)]
    for left, middle, right in shapes:
        e_x = tensor(opposite(left), middle)
        e_y = tensor(opposite(middle), right)
        x = random_perfect_complex(e_x, rng, max_width=1)
        y = random_perfect_complex(e_y, rng, max_width=1)
        t = tensor_over(x, y.to_complex(), left, middle, right)
        for n in t.degrees():
            comp = t.components.get(n)
            if comp is None:
                continue
            comp.check()
            d = t.differentials.get(n)
            if d is None:
                continue
            nxt = t.components.get(n + 1)
            for b in range(comp.algebra.dim):
                assert comp.action[b] * d == d * nxt.action[b]


def test_dual_of_free_rank_one(a2):
    e = tensor(opposite(a2), a2)
    # hom algebra of (A2, A2); rank-one free = sum of all idempotent summands
    free = PerfectComplex(e, {0: tuple(range(len(e.idempotents)))}, {})
    d = dual_perfect(free, a2, a2)
    assert d.copies_at(0) and len(d.copies_at(0)) == len(e.idempotents)


def test_dual_is_strict_involution(a2, kronecker, rng):
    e = tensor(opposite(a2), kronecker)
    for _ in range(4):
        x = random_perfect_complex(e, rng)
        dd = dual_perfect(dual_perfect(x, a2, kronecker), kronecker, a2)
        assert dd.copies == x.copies
        assert dd.differentials == x.differentials


def test_dual_k0_naturality(a2, rng):
    """The class of the dual is the image of the class under the duality
    matrix computed on the simple basis."""
    from ncmotives.derived import simple_resolutions

    e = tensor(opposite(a2), opposite(a2))
    aop = opposite(a2)
    res = simple_resolutions(e)
    n = len(res)
    cols = [list(k0_class(dual_perfect(r, a2, aop)).coords) for r in res]
    for _ in range(4):
        x = random_perfect_complex(e, rng)
        kx = k0_class(x).coords
        expected = [sum(cols[i][t] * kx[i] for i in range(n)) for t in range(len(cols[0]))]
        assert list(k0_class(dual_perfect(x, a2, aop)).coords) == expected
