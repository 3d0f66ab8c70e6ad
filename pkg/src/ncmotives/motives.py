"""Motives over the supported algebras: objects (A, e), correspondences,
composition, trace, the two pairings on Hom-sets, and the kernel-equality
verdict.

A motive is an algebra with an idempotent endo-correspondence class; the
identity motive carries the class of the diagonal bimodule.  Correspondences
are rational combinations of perfect bimodule complexes, composed by the
derived tensor product over the middle algebra and compared at the level of
Grothendieck classes (the morphisms of the category are exactly those
classes).  Restricted Hom-sets are images of the projector e o - o e',
computed through cached composition tables on the simple bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, opposite, tensor
from .complexes import PerfectComplex
from .derived import (
    PairingMatrix,
    diagonal_resolution,
    euler_pairing,
    euler_pairing_classes,
    k0_class,
    kernel_left,
    kernel_right,
    serre,
    simple_resolutions,
)
from .homalg import dual_perfect, tensor_euler_traces
from .hochschild import intersection_number
from .linalg import Matrix, RowBasis, as_fraction, norm_scalar, span_equal
from .resolutions import DEFAULT_CAP, resolve_complex


def hom_algebra(a: Algebra, b: Algebra) -> Algebra:
    """The algebra whose module classes are correspondences a -> b."""
    return tensor(opposite(a), b)


# -- composition tables ---------------------------------------------------------


def composition_table(a: Algebra, b: Algebra, c: Algebra, cap: int = DEFAULT_CAP):
    """Classes of res(S_i) (x)_b res(S_j) over hom_algebra(a, c), for the
    simple bases of hom_algebra(a, b) and hom_algebra(b, c).  Composition of
    correspondence classes is the bilinear extension of this table."""
    e_ab = hom_algebra(a, b)
    e_bc = hom_algebra(b, c)
    cache = e_ab._cache.setdefault("composition_tables", [])
    for (bb, cc, tab) in cache:
        if bb is b and cc is c:
            return tab
    left = simple_resolutions(e_ab, cap)
    right = simple_resolutions(e_bc, cap)
    tab = []
    for x in left:
        row = []
        for y in right:
            traces = tensor_euler_traces(x, y.to_complex(), a, b, c)
            row.append([traces[r] for r in sorted(traces)])
        tab.append(row)
    cache.append((b, c, tab))
    return tab


def compose_classes(u, v, table):
    """Bilinear extension of a composition table to coordinate vectors."""
    n_out = len(table[0][0]) if table and table[0] else 0
    out = [Fraction(0)] * n_out
    for i, x in enumerate(u):
        if not x:
            continue
        for j, y in enumerate(v):
            if not y:
                continue
            coeff = as_fraction(x) * as_fraction(y)
            for k, t in enumerate(table[i][j]):
                if t:
                    out[k] += coeff * t
    return [norm_scalar(x) for x in out]


# -- motives and correspondences --------------------------------------------------


class NCMotive:
    """An algebra together with an idempotent correspondence class.

    idem=None means the identity motive (class of the diagonal bimodule).
    Idempotency e o e = e is verified at the class level on construction."""

    def __init__(self, algebra: Algebra, idem: "Correspondence | None" = None, name: str = ""):
        self.algebra = algebra
        self.idem = idem
        self.name = name or (f"({algebra.meta.get('name', '?')}, id)" if idem is None else f"({algebra.meta.get('name', '?')}, e)")
        if idem is not None:
            if idem.source.algebra is not algebra or idem.target.algebra is not algebra:
                raise ValueError("idempotent must be an endo-correspondence of the algebra")
            cls = idem.k0()
            table = composition_table(algebra, algebra, algebra)
            if compose_classes(cls, cls, table) != list(cls):
                raise ValueError("correspondence class is not idempotent")

    def idem_class(self):
        if self.idem is not None:
            return list(self.idem.k0())
        return identity_class(self.algebra)

    def is_identity(self) -> bool:
        return self.idem is None

    def __eq__(self, other):
        return (
            isinstance(other, NCMotive)
            and self.algebra is other.algebra
            and self.idem_class() == other.idem_class()
        )

    def __repr__(self):
        return f"<Motive {self.name}>"


def identity_class(a: Algebra):
    """Class of the diagonal bimodule in the simple basis of the enveloping
    algebra: the Peirce dimension vector."""
    n = len(a.idempotents)
    return [a.peirce_dim(i, j) for i in range(n) for j in range(n)]


class Correspondence:
    """Rational combination of perfect bimodule complexes between motives."""

    def __init__(self, source: NCMotive, target: NCMotive, terms, label: str = ""):
        self.source = source
        self.target = target
        self.terms = [(as_fraction(c), t) for c, t in terms]
        self.label = label
        e = hom_algebra(source.algebra, target.algebra)
        for _, t in self.terms:
            if t.algebra is not e:
                raise ValueError("term does not live over the Hom algebra")

    def k0(self):
        e = hom_algebra(self.source.algebra, self.target.algebra)
        n = len(e.idempotents)
        out = [Fraction(0)] * n
        for c, t in self.terms:
            for i, x in enumerate(k0_class(t).coords):
                if x:
                    out[i] += c * x
        return [norm_scalar(x) for x in out]

    def scale(self, c) -> "Correspondence":
        c = as_fraction(c)
        return Correspondence(
            self.source, self.target, [(c * x, t) for x, t in self.terms]
        )

    def add(self, other: "Correspondence") -> "Correspondence":
        if self.source != other.source or self.target != other.target:
            raise ValueError("cannot add correspondences with different endpoints")
        return Correspondence(self.source, self.target, self.terms + other.terms)

    def is_restricted(self) -> bool:
        """Whether the class lies in e o K0 o e' for the endpoint idempotents."""
        cls = self.k0()
        return project_class(self.source, self.target, cls) == cls

    def __repr__(self):
        return f"<Correspondence {self.source.name} -> {self.target.name}, {len(self.terms)} terms>"


def identity_correspondence(m: NCMotive, cap: int = DEFAULT_CAP) -> Correspondence:
    """The identity of the identity motive: class of the diagonal bimodule,
    represented by its minimal resolution."""
    if not m.is_identity():
        raise ValueError("identity correspondence is attached to identity motives")
    return Correspondence(m, m, [(1, diagonal_resolution(m.algebra, cap))], label="id")


def vertex_cut_idempotent(a: Algebra, vertices, cap: int = DEFAULT_CAP) -> Correspondence:
    """Idempotent correspondence class cutting out the summands at the given
    idempotent indices: the projective bimodule (+)_{v} (A e_v (x) e_v A).

    Requires no composable pair among the chosen indices (e_v A e_w = 0 for
    distinct chosen v, w), which makes the class idempotent."""
    vertices = sorted(set(vertices))
    n = len(a.idempotents)
    for v in vertices:
        for w in vertices:
            if v != w and a.peirce_dim(v, w):
                raise ValueError(
                    "vertex set admits a path between distinct members; class would not be idempotent"
                )
    e = hom_algebra(a, a)
    ident = NCMotive(a)
    copies = tuple(v * n + v for v in vertices)
    term = PerfectComplex(e, {0: copies}, {}, check=False)
    return Correspondence(ident, ident, [(1, term)], label=f"cut{vertices}")


def complement_idempotent(e: Correspondence) -> Correspondence:
    """1 - e for an idempotent endo-correspondence of an identity motive."""
    ident = identity_correspondence(e.source)
    return Correspondence(
        e.source,
        e.target,
        ident.terms + [(-c, t) for c, t in e.terms],
        label=f"1-({e.label})",
    )


def project_class(src: NCMotive, dst: NCMotive, cls, cap: int = DEFAULT_CAP):
    """The projector e o - o e' on classes over the Hom algebra."""
    a, b = src.algebra, dst.algebra
    left = compose_classes(
        src.idem_class(), cls, composition_table(a, a, b, cap)
    )
    return compose_classes(
        left, dst.idem_class(), composition_table(a, b, b, cap)
    )


# -- operations --------------------------------------------------------------------


def compose(y: Correspondence, x: Correspondence, cap: int = DEFAULT_CAP) -> Correspondence:
    """Composite y o x of x: L -> M and y: M -> N: termwise derived tensor
    over the middle algebra, resolved back to perfect complexes."""
    if x.target != y.source:
        raise ValueError("correspondence endpoints do not chain")
    a = x.source.algebra
    b = x.target.algebra
    c = y.target.algebra
    from .homalg import tensor_over

    terms = []
    for cx, xt in x.terms:
        for cy, yt in y.terms:
            w = tensor_over(xt, yt.to_complex(), a, b, c, check=False)
            terms.append((cx * cy, resolve_complex(w, cap)))
    return Correspondence(x.source, y.target, terms)


def dualize(x: Correspondence) -> Correspondence:
    """Termwise dual, with the endpoints swapped."""
    a = x.source.algebra
    b = x.target.algebra
    return Correspondence(
        x.target,
        x.source,
        [(c, dual_perfect(t, a, b)) for c, t in x.terms],
        label=f"D({x.label})" if x.label else "",
    )


def trace(z: Correspondence, cap: int = DEFAULT_CAP) -> Fraction:
    """Categorical trace of an endo-correspondence: the alternating sum of
    Hochschild dimensions of each term, combined by the coefficients."""
    if z.source != z.target:
        raise ValueError("trace requires an endo-correspondence")
    a = z.source.algebra
    from .hochschild import hochschild_euler

    total = Fraction(0)
    for c, t in z.terms:
        total += c * hochschild_euler(a, t.to_complex(), cap)
    return total


def chi_hom(x: Correspondence, y: Correspondence) -> Fraction:
    """Euler form on a Hom-set: bilinear extension of the Euler pairing of
    the underlying perfect bimodule complexes."""
    if x.source != y.source or x.target != y.target:
        raise ValueError("chi_hom requires parallel correspondences")
    total = Fraction(0)
    for cx, xt in x.terms:
        for cy, yt in y.terms:
            total += cx * cy * euler_pairing(xt, yt.to_complex())
    return total


def serre_correspondence(x: Correspondence, cap: int = DEFAULT_CAP) -> Correspondence:
    """Termwise Serre transform over the Hom algebra (same endpoints)."""
    return Correspondence(
        x.source, x.target, [(c, serre(t, cap)) for c, t in x.terms]
    )


def realize_class(cls, src: NCMotive, dst: NCMotive, cap: int = DEFAULT_CAP) -> Correspondence:
    """A correspondence representing a class vector: the combination of
    simple resolutions over the Hom algebra with the given coefficients."""
    e = hom_algebra(src.algebra, dst.algebra)
    res = simple_resolutions(e, cap)
    terms = [(c, res[i]) for i, c in enumerate(cls) if c]
    return Correspondence(src, dst, terms)


# -- Hom-space models ----------------------------------------------------------------


@dataclass
class HomSpaceModel:
    source: NCMotive
    target: NCMotive
    basis: list  # class vectors (rows of the canonical echelon basis)
    realized: list  # correspondences realizing the basis classes
    gram_chi: PairingMatrix
    gram_int: PairingMatrix

    @property
    def dim(self):
        return len(self.basis)


def build_hom_model(src: NCMotive, dst: NCMotive, cap: int = DEFAULT_CAP, with_int: bool = True) -> HomSpaceModel:
    """Model of Hom((A,e),(B,e')): basis of the image of the projector
    e o - o e' on classes, its Euler-form Gram matrix, and the intersection
    Gram matrix against the dualized basis."""
    e = hom_algebra(src.algebra, dst.algebra)
    n = len(e.idempotents)
    rb = RowBasis(n)
    for i in range(n):
        std = [0] * n
        std[i] = 1
        rb.add(project_class(src, dst, std, cap))
    basis = [r[:] for r in rb.rows]
    for v in basis:
        if project_class(src, dst, v, cap) != v:
            raise AssertionError("projector image is not projector-stable")
    realized = [realize_class(v, src, dst, cap) for v in basis]
    m = len(basis)
    gram_chi = Matrix(
        m, m, [[euler_pairing_classes(e, u, v) for v in basis] for u in basis]
    )
    if with_int:
        duals = [dualize(r) for r in realized]
        gram_int = Matrix(
            m,
            m,
            [[intersection_number(duals[i], realized[j], cap) for j in range(m)] for i in range(m)],
        )
    else:
        gram_int = Matrix.zeros(m, m)
    label = f"Hom({src.name}, {dst.name})"
    return HomSpaceModel(
        source=src,
        target=dst,
        basis=basis,
        realized=realized,
        gram_chi=PairingMatrix(gram_chi, basis=label),
        gram_int=PairingMatrix(gram_int, basis=label + " vs dualized basis"),
    )


def numerical_kernel(m: HomSpaceModel, reverse: HomSpaceModel | None = None, cap: int = DEFAULT_CAP):
    """Classes pairing to zero against the whole reversed Hom-space model,
    via the rectangular intersection matrix; coordinates over m.basis."""
    if reverse is None:
        reverse = build_hom_model(m.target, m.source, cap, with_int=False)
    if m.dim == 0:
        return [], reverse
    if reverse.dim == 0:
        return [list(v) for v in Matrix.identity(m.dim).data], reverse
    rect = Matrix(
        m.dim,
        reverse.dim,
        [
            [intersection_number(m.realized[i], reverse.realized[j], cap) for j in range(reverse.dim)]
            for i in range(m.dim)
        ],
    )
    return rect.left_kernel_basis(), reverse


# -- the full verdict ------------------------------------------------------------------


def verify_equivalence(m: HomSpaceModel, cap: int = DEFAULT_CAP, sample_pairs: int | None = None) -> dict:
    """Run every identity the construction promises on a Hom-space model and
    report the kernel-equality verdict.

    Checks (named by the identity they instantiate):
      serre-symmetry        chi(x, y) = chi(y, S(x)) on basis pairs
      trace-formula         chi(x, y) = trace(y o D(x)) on basis pairs
      commutative-square    chi(x, y) = <D(x) . y> on basis pairs
      kernel-left-right     left and right kernels of the Euler Gram agree
      gram-int-kernel       kernel of the intersection Gram = Euler kernel
      numerical-kernel      pairing-to-zero classes = Euler kernel
      idempotent-law        e o e = e for both endpoint motives
    Failures are recorded in the report, not raised."""
    checks = []
    n = m.dim
    pairs = [(i, j) for i in range(n) for j in range(n)]
    if sample_pairs is not None and len(pairs) > sample_pairs:
        step = max(1, len(pairs) // sample_pairs)
        pairs = pairs[::step][:sample_pairs]

    def record(name, identity, expected, actual):
        checks.append(
            {
                "name": name,
                "identity": identity,
                "expected": str(expected),
                "actual": str(actual),
                "pass": expected == actual,
            }
        )

    # idempotent law
    for motive, tag in ((m.source, "source"), (m.target, "target")):
        cls = motive.idem_class()
        tab = composition_table(motive.algebra, motive.algebra, motive.algebra, cap)
        record(
            f"idempotent-law-{tag}",
            "e o e = e on classes",
            list(cls),
            compose_classes(cls, cls, tab),
        )

    # pairwise identities
    serres = {}
    for i, j in pairs:
        x, y = m.realized[i], m.realized[j]
        lhs = chi_hom(x, y)
        if i not in serres:
            serres[i] = serre_correspondence(x, cap)
        record(
            f"serre-symmetry[{i},{j}]",
            "chi(x,y) = chi(y, S(x))",
            lhs,
            chi_hom(y, serres[i]),
        )
        record(
            f"trace-formula[{i},{j}]",
            "chi(x,y) = trace(y o D(x))",
            lhs,
            trace(compose(dualize(x), y, cap), cap),
        )
        record(
            f"commutative-square[{i},{j}]",
            "chi(x,y) = <D(x) . y>",
            lhs,
            m.gram_int.matrix.data[i][j],
        )

    # kernels
    kl = kernel_left(m.gram_chi)
    kr = kernel_right(m.gram_chi)
    span_l = RowBasis(n).extend(kl)
    span_r = RowBasis(n).extend(kr)
    record("kernel-left-right", "Ker_L(chi) = Ker_R(chi)", True, span_equal(span_l, span_r))

    ki = kernel_right(m.gram_int)
    span_i = RowBasis(n).extend(ki)
    record(
        "gram-int-kernel",
        "Ker(<D(-) . ->) = Ker(chi)",
        True,
        span_equal(span_r, span_i),
    )

    nk, reverse = numerical_kernel(m, cap=cap)
    span_n = RowBasis(n).extend(nk)
    record(
        "numerical-kernel",
        "numerically trivial classes = Ker(chi)",
        True,
        span_equal(span_n, span_r),
    )

    det = m.gram_chi.matrix.det() if n else 1
    unimodular = det in (1, -1)
    report = {
        "hom_space": m.gram_chi.basis,
        "dim": n,
        "gram_chi": [[str(x) for x in row] for row in m.gram_chi.matrix.data],
        "det_gram_chi": str(det),
        "unimodular": unimodular,
        "kernel_dim": len(kr),
        "kernel_basis": [[str(x) for x in v] for v in kr],
        "numerical_kernel_dim": len(nk),
        "kernel_statement": (
            "gram_chi is unimodular; both kernels are zero (non-vacuous check)"
            if unimodular
            else f"kernel dimension {len(kr)}"
        ),
        "checks": checks,
        "verdict": all(c["pass"] for c in checks),
    }
    return report


def ideal_stability_samples(
    m: HomSpaceModel,
    kernel_vectors,
    partners,
    cap: int = DEFAULT_CAP,
):
    """Compositions of kernel classes with arbitrary correspondences stay in
    the respective kernels (sampled ideal stability).

    partners: list of correspondences composable on the target side
    (w: target -> anything).  Returns a list of booleans, one per
    (kernel vector, partner) pair, each True when the composite's class is
    numerically trivial in its own Hom-space."""
    results = []
    for v in kernel_vectors:
        xv = realize_class(v, m.source, m.target, cap)
        for w in partners:
            comp = compose(w, xv, cap)
            model = build_hom_model(comp.source, comp.target, cap, with_int=False)
            nk, _ = numerical_kernel(model, cap=cap)
            span = RowBasis(model.dim).extend(nk)
            coords = _coords_in_basis(model.basis, comp.k0())
            if coords is None:
                results.append(False)
                continue
            results.append(span.contains(coords))
    return results


def _coords_in_basis(basis, cls):
    if not basis:
        return None if any(cls) else []
    rb = RowBasis(len(cls))
    rows = []
    for b in basis:
        rb.add(b)
    return rb.coords(cls)
