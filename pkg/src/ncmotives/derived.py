"""Euler form, Grothendieck classes, Serre transform, kernels, smoothness.

The Grothendieck group of the derived category of a supported algebra is
free on the simple classes; a complex lands in it through its alternating
idempotent-weighted dimension vector.  The Euler pairing of two perfect
complexes is the Euler characteristic of their Hom complex, an exact
integer.  The Serre transform is the derived Nakayama construction
- (x)_A D(A), made perfect again by resolve_complex; its defining duality
is verified by the test suite rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, scalar_algebra
from .complexes import Complex, PerfectComplex, as_complex
from .homalg import dual_perfect, tensor_over
from .linalg import Matrix
from .modules import diagonal_bimodule, dual_bimodule, simple_modules
from .resolutions import (
    DEFAULT_CAP,
    ResolutionCapExceeded,
    projective_resolution,
    resolve_complex,
)


@dataclass(frozen=True)
class K0Class:
    algebra: Algebra
    coords: tuple

    def __add__(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("classes over different algebras")
        return K0Class(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("classes over different algebras")
        return K0Class(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords))
        )


@dataclass
class PairingMatrix:
    matrix: Matrix
    basis: str

    @property
    def size(self):
        return self.matrix.rows


def k0_class(x) -> K0Class:
    """Class of a complex in the simple basis: alternating sums of the
    idempotent-weighted dimensions of its components."""
    c = as_complex(x)
    a = c.algebra
    n = len(a.idempotents)
    coords = [0] * n
    idem_idx = a.idempotent_basis_indices()
    for deg in c.degrees():
        comp = c.components.get(deg)
        if comp is None:
            continue
        s = -1 if deg % 2 else 1
        for i in range(n):
            t = comp.action[idem_idx[i]].trace()
            if not isinstance(t, int):
                raise ValueError("idempotent action has non-integral trace")
            coords[i] += s * t
    return K0Class(a, tuple(coords))


def euler_pairing(m: PerfectComplex, n) -> int:
    """chi(M, N): Euler characteristic of the Hom complex, computed as the
    alternating sum of the Hom-space dimensions (no elimination needed:
    Hom from e A is the idempotent image, whose dimension is a trace)."""
    nc = as_complex(n)
    a = m.algebra
    if nc.algebra is not a:
        raise ValueError("euler_pairing arguments live over different algebras")
    idem_idx = a.idempotent_basis_indices()
    total = 0
    for p in m.degrees():
        for i in m.copies_at(p):
            act = idem_idx[i]
            for q in nc.degrees():
                comp = nc.components.get(q)
                if comp is None:
                    continue
                t = comp.action[act].trace()
                if t:
                    total += ((-1) ** ((q - p) % 2)) * t
    if not isinstance(total, int):
        raise AssertionError("Euler pairing must be an integer")
    return total


def simple_resolutions(a: Algebra, cap: int = DEFAULT_CAP):
    """Cached minimal resolutions of the simple modules, in idempotent order."""
    key = ("simple_resolutions", cap)
    if key not in a._cache:
        a._cache[key] = [
            projective_resolution(s, cap)[0] for s in simple_modules(a)
        ]
    return a._cache[key]


def euler_matrix(a: Algebra, cap: int = DEFAULT_CAP) -> PairingMatrix:
    """Gram matrix of the Euler form on the simple basis; by bilinearity it
    determines the form on the whole rationalized Grothendieck group."""
    key = ("euler_matrix", cap)
    if key not in a._cache:
        res = simple_resolutions(a, cap)
        n = len(res)
        data = [[euler_pairing(res[i], res[j]) for j in range(n)] for i in range(n)]
        a._cache[key] = PairingMatrix(Matrix(n, n, data), basis="simple classes")
    return a._cache[key]


def euler_pairing_classes(a: Algebra, u, v):
    """chi extended bilinearly to rational coordinate vectors."""
    g = euler_matrix(a).matrix
    total = Fraction(0)
    for i, x in enumerate(u):
        if not x:
            continue
        row = g.data[i]
        for j, y in enumerate(v):
            if y:
                total += Fraction(x) * row[j] * Fraction(y)
    return total


def serre(m: PerfectComplex, cap: int = DEFAULT_CAP) -> PerfectComplex:
    """Serre transform: derived tensor with the dual bimodule D(A),
    resolved back to a perfect complex."""
    a = m.algebra
    q = scalar_algebra()
    t = tensor_over(m, as_complex(dual_bimodule(a)), q, a, a, check=False)
    return resolve_complex(t, cap)


def kernel_left(g: PairingMatrix):
    """Basis of {v : v^T G = 0}."""
    return g.matrix.left_kernel_basis()


def kernel_right(g: PairingMatrix):
    """Basis of {v : G v = 0}."""
    return g.matrix.kernel_basis()


def check_proper(a: Algebra) -> bool:
    """Total Hom cohomology is finite for every finite-dimensional algebra,
    so this is constant True on everything the package can construct; kept
    as an explicit interface."""
    return True


def diagonal_resolution(a: Algebra, cap: int = DEFAULT_CAP) -> PerfectComplex:
    """Minimal resolution of the diagonal bimodule over tensor(op(A), A).
    Raises ResolutionCapExceeded when no resolution is found within the cap."""
    key = ("diagonal_resolution", cap)
    if key not in a._cache:
        a._cache[key] = projective_resolution(diagonal_bimodule(a), cap)[0]
    return a._cache[key]


def check_smooth(a: Algebra, cap: int = DEFAULT_CAP):
    """(True, diagonal resolution) when the diagonal bimodule has a finite
    projective resolution within the cap, else (False, None)."""
    try:
        return True, diagonal_resolution(a, cap)
    except ResolutionCapExceeded:
        return False, None


def dual(x: PerfectComplex, left: Algebra, right: Algebra) -> PerfectComplex:
    """Dual of a perfect complex of (left,right)-bimodules, as a perfect
    complex of (right,left)-bimodules."""
    return dual_perfect(x, left, right)


def injective_dimension_vector(a: Algebra, i: int):
    """Dimension vector of the injective dual of the left projective A e_i
    (independent check target for the Serre transform on projectives)."""
    return [a.peirce_dim(j, i) for j in range(len(a.idempotents))]
