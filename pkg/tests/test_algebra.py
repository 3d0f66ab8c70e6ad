import pytest

from ncmotives.algebra import (
    AlgebraStructureError,
    CyclicQuiverError,
    Quiver,
    opposite,
    path_algebra,
    scalar_algebra,
    tensor,
)
from ncmotives.corpus import corpus_algebra, corpus_quiver


def count_paths_dfs(quiver):
    """Independent path counter: depth-first enumeration from every vertex."""
    out = [[] for _ in range(quiver.vertex_count)]
    for a in quiver.arrows:
        out[a.source].append(a.target)
    total = 0

    def walk(v):
        nonlocal total
        total += 1
        for w in out[v]:
            walk(w)

    for v in range(quiver.vertex_count):
        walk(v)
    return total


def test_single_vertex_is_scalars():
    a = path_algebra(Quiver(1, []))
    assert a.dim == 1
    assert a.multiply([1], [1]) == [1]


def test_a2_basis():
    a = corpus_algebra("A2")
    assert a.dim == 3
    assert set(a.labels) == {"e0", "e1", "a"}


def test_kronecker_dimension():
    assert corpus_algebra("Kronecker").dim == 4


@pytest.mark.parametrize("name", ["QxQ", "A2", "A3", "Kronecker"])
def test_path_count_matches_dfs(name):
    q = corpus_quiver(name)
    assert path_algebra(q).dim == count_paths_dfs(q)


def test_cyclic_quiver_rejected():
    with pytest.raises(CyclicQuiverError):
        Quiver(2, [(0, 1, "a"), (1, 0, "b")])


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        Quiver(2, [(0, 1, "a"), (0, 1, "a")])


@pytest.mark.parametrize("name", ["Q", "QxQ", "A2", "A3", "Kronecker"])
def test_associativity_all_triples(name):
    a = corpus_algebra(name)
    basis = [a.basis_vector(i) for i in range(a.dim)]
    for x in basis:
        for y in basis:
            xy = a.multiply(x, y)
            for z in basis:
                assert a.multiply(xy, z) == a.multiply(x, a.multiply(y, z))


def test_associativity_tensor_algebra():
    a = corpus_algebra("A2")
    e = tensor(opposite(a), a)
    basis = [e.basis_vector(i) for i in range(e.dim)]
    for x in basis[:4]:
        for y in basis:
            xy = e.multiply(x, y)
            for z in basis:
                assert e.multiply(xy, z) == e.multiply(x, e.multiply(y, z))


def test_opposite_of_scalars_is_scalars():
    q = scalar_algebra()
    assert opposite(q) is q


def test_opposite_is_involution():
    for name in ("A2", "Kronecker", "A3"):
        a = corpus_algebra(name)
        assert opposite(opposite(a)) is a
        op = opposite(a)
        for i in range(a.dim):
            for j in range(a.dim):
                assert op.mul[i][j] == a.mul[j][i]


def test_opposite_reverses_path_composition():
    a = corpus_algebra("A2")
    op = opposite(a)
    e0 = a.basis_vector(a.labels.index("e0"))
    arrow = a.basis_vector(a.labels.index("a"))
    # in A2 the arrow starts at vertex 0: e0 * a = a; in the opposite algebra
    # the same product reads a * e0 = a
    assert a.multiply(e0, arrow) == arrow
    assert op.multiply(arrow, e0) == arrow
    assert op.multiply(e0, arrow) == [0, 0, 0]


def test_tensor_unit_collapse():
    a = corpus_algebra("A2")
    q = scalar_algebra()
    assert tensor(q, a) is a
    assert tensor(a, q) is a


def test_tensor_dimensions_and_idempotents():
    a = corpus_algebra("A2")
    t = tensor(a, opposite(a))
    assert t.dim == 9
    assert len(t.idempotents) == 4
    b = corpus_algebra("Kronecker")
    tb = tensor(a, b)
    assert tb.dim == a.dim * b.dim
    assert len(tb.idempotents) == len(a.idempotents) * len(b.idempotents)


def test_tensor_memoized():
    a = corpus_algebra("A2")
    b = corpus_algebra("Kronecker")
    assert tensor(a, b) is tensor(a, b)


def test_tensor_associative_on_dims():
    a = corpus_algebra("A2")
    b = corpus_algebra("QxQ")
    c = corpus_algebra("Kronecker")
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert left.dim == right.dim
    assert len(left.idempotents) == len(right.idempotents)
    # structure constants agree under the canonical reindexing
    # (i,j,k) -> (i*dim_b + j)*dim_c + k in both parenthesizations
    for i in range(left.dim):
        for j in range(left.dim):
            assert left.mul[i][j] == right.mul[i][j]


def test_radical_is_arrow_span():
    for name in ("A2", "A3", "Kronecker"):
        a = corpus_algebra(name)
        rad = a.radical()
        trivial = len(a.idempotents)
        expected = a.dim - trivial
        assert rad.dim == expected
        # the radical is exactly the span of positive-length paths
        for t in range(trivial, a.dim):
            assert rad.contains(a.basis_vector(t))


def test_semisimple_detection():
    assert corpus_algebra("QxQ").is_semisimple()
    assert not corpus_algebra("A2").is_semisimple()


def test_peirce_requires_monomial_idempotents():
    from ncmotives.algebra import Algebra

    # QxQ presented with basis {1, u}, u^2 = 1: idempotents (1 +- u)/2 are
    # not basis monomials, so the projective machinery must refuse
    from fractions import Fraction

    a = Algebra(
        2,
        ["1", "u"],
        [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
        [1, 0],
        [[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)]],
    )
    with pytest.raises(AlgebraStructureError):
        a.idempotent_basis_indices()


def test_unit_axiom_enforced():
    from ncmotives.algebra import Algebra

    with pytest.raises(ValueError):
        Algebra(1, ["x"], [[[0]]], [1], [[1]])
