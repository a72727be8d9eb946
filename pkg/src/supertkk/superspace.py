"""Structure-constant representation of Z2-graded (optionally Z-graded)
algebras, with the generic identity checkers shared by the Jordan and Lie
layers.

Vectors are coordinate tuples in a fixed ordered basis; every basis coordinate
carries a parity (and optionally an integer degree), and structure constants
are required to be homogeneous with respect to both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from supertkk.exact import (Matrix, Q, Subspace, SpanSolver, ZERO, _row_primitive,
                            kernel_sparse, vec_is_zero)


@dataclass
class Witness:
    """First failing instance of an identity check."""
    indices: tuple
    message: str

    def __str__(self):
        return self.message


class SuperAlgebra:
    """A finite-dimensional algebra given by exact structure constants.

    table maps a basis pair (i, j) to the sparse coordinate dict of b_i * b_j.
    kind is "jordan", "lie" or "plain"; constructors verify the corresponding
    symmetry axioms unless explicitly told not to.
    """

    __slots__ = ("name", "parities", "zdegrees", "table", "kind", "metadata")

    def __init__(self, name, parities, table, zdegrees=None, kind="plain", metadata=None):
        self.name = name
        self.parities = tuple(int(p) % 2 for p in parities)
        self.zdegrees = tuple(int(z) for z in zdegrees) if zdegrees is not None else None
        self.table = table
        self.kind = kind
        self.metadata = dict(metadata or {})

    @property
    def dim(self) -> int:
        return len(self.parities)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def zdegree(self, i: int) -> int:
        return self.zdegrees[i] if self.zdegrees is not None else 0

    def basis_product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def basis_vector(self, i: int) -> tuple:
        return tuple(Q(1) if j == i else ZERO for j in range(self.dim))

    def product(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match algebra dimension")
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in self.basis_product(i, j).items():
                    out[k] += xi * yj * c
        return tuple(out)

    def left_mult_matrix(self, x: Sequence) -> Matrix:
        """Matrix of y -> x*y (the adjoint map for Lie kind)."""
        cols = [self.product(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols) if cols else Matrix([])

    def is_graded(self) -> bool:
        return self.zdegrees is not None

    def __repr__(self):
        return f"SuperAlgebra({self.name!r}, dim={self.dim}, kind={self.kind})"


def make_algebra(parities, products, zdegrees=None, *, name="", kind="plain",
                 metadata=None, check=True) -> SuperAlgebra:
    """Build a SuperAlgebra from (i, j, k, coeff) entries.

    Homogeneity of every entry is verified (a violation is an error, not a
    warning); duplicate (i, j, k) entries are rejected.  kind="jordan" also
    verifies supercommutativity, kind="lie" verifies super-anticommutativity
    and the super-Jacobi identity, unless check=False.
    """
    parities = tuple(int(p) % 2 for p in parities)
    n = len(parities)
    zdeg = tuple(int(z) for z in zdegrees) if zdegrees is not None else None
    table: dict = {}
    seen = set()
    for i, j, k, coeff in products:
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise ValueError(f"product entry ({i},{j},{k}) out of range for dim {n}")
        if (i, j, k) in seen:
            raise ValueError(f"duplicate structure constant for ({i},{j},{k})")
        seen.add((i, j, k))
        c = Q(coeff)
        if not c:
            continue
        if parities[k] != (parities[i] + parities[j]) % 2:
            raise ValueError(
                f"inhomogeneous product: e_{i}*e_{j} hits e_{k} of wrong parity")
        if zdeg is not None and zdeg[k] != zdeg[i] + zdeg[j]:
            raise ValueError(
                f"inhomogeneous product: e_{i}*e_{j} hits e_{k} of wrong degree")
        table.setdefault((i, j), {})[k] = c
    alg = SuperAlgebra(name, parities, table, zdeg, kind, metadata)
    if check and kind == "jordan":
        w = check_supercommutative(alg)
        if w is not None:
            raise ValueError(f"not supercommutative: {w}")
    if check and kind == "lie":
        w = check_superanticommutative(alg) or check_super_jacobi(alg)
        if w is not None:
            raise ValueError(f"not a Lie superalgebra: {w}")
    return alg


def _sign(e: int):
    return Q(-1) if e % 2 else Q(1)


def check_supercommutative(a: SuperAlgebra) -> Witness | None:
    """x*y = (-1)^{|x||y|} y*x on homogeneous basis pairs; None iff it holds."""
    for i in range(a.dim):
        for j in range(i + 1):
            s = _sign(a.parity(i) * a.parity(j))
            left = a.basis_product(i, j)
            right = a.basis_product(j, i)
            for k in set(left) | set(right):
                if left.get(k, ZERO) != s * right.get(k, ZERO):
                    return Witness((i, j), f"supercommutativity fails at pair ({i},{j})")
    return None


def check_superanticommutative(a: SuperAlgebra) -> Witness | None:
    """[x,y] = -(-1)^{|x||y|}[y,x] on homogeneous basis pairs."""
    for i in range(a.dim):
        for j in range(i + 1):
            s = -_sign(a.parity(i) * a.parity(j))
            left = a.basis_product(i, j)
            right = a.basis_product(j, i)
            for k in set(left) | set(right):
                if left.get(k, ZERO) != s * right.get(k, ZERO):
                    return Witness((i, j), f"super-anticommutativity fails at pair ({i},{j})")
    return None


def _bracket_with_dict(a: SuperAlgebra, i: int, w: dict) -> dict:
    out: dict = {}
    for m, c in w.items():
        for k, v in a.basis_product(i, m).items():
            out[k] = out.get(k, ZERO) + c * v
    return {k: v for k, v in out.items() if v}


def check_super_jacobi(a: SuperAlgebra) -> Witness | None:
    """Graded Jacobi identity on homogeneous basis triples.

    Requires super-anticommutativity (checked first); given it, the Jacobi
    expression is permutation-covariant up to a nonzero sign, so scanning
    unordered triples i <= j <= k is complete.
    """
    w = check_superanticommutative(a)
    if w is not None:
        return w
    p = a.parities
    for i in range(a.dim):
        for j in range(i, a.dim):
            for k in range(j, a.dim):
                acc: dict = {}
                for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                    s = _sign(p[x] * p[z])
                    inner = a.basis_product(y, z)
                    for m, c in _bracket_with_dict(a, x, inner).items():
                        acc[m] = acc.get(m, ZERO) + s * c
                if any(acc.values()):
                    return Witness((i, j, k),
                                   f"super-Jacobi fails at basis triple ({i},{j},{k})")
    return None


def graded_dims(a: SuperAlgebra) -> dict:
    """Map (zdegree, parity) -> dimension (zdegree 0 throughout if ungraded)."""
    out: dict = {}
    for i in range(a.dim):
        key = (a.zdegree(i), a.parity(i))
        out[key] = out.get(key, 0) + 1
    return out


def parity_dims(a: SuperAlgebra) -> tuple:
    even = sum(1 for p in a.parities if p == 0)
    return even, a.dim - even


def center(a: SuperAlgebra) -> Subspace:
    """{x : x*y = 0 for all y} as a subspace of the underlying space."""
    rows = []
    for i in range(a.dim):
        cells: dict = {}
        for j in range(a.dim):
            for k, c in a.basis_product(j, i).items():
                cells.setdefault(k, {})[j] = c
        rows.extend(cells.values())
    return Subspace(a.dim, kernel_sparse(rows, a.dim))


def derived(a: SuperAlgebra) -> Subspace:
    """Span of all products of basis elements."""
    vecs = []
    seen = set()  # the table repeats many proportional rows; dedupe first
    for entry in a.table.values():
        key = _row_primitive(entry)
        sig = tuple(sorted(key.items()))
        if not sig or sig in seen:
            continue
        seen.add(sig)
        v = [ZERO] * a.dim
        for k, c in entry.items():
            v[k] = c
        vecs.append(tuple(v))
    return Subspace(a.dim, vecs)


@dataclass
class GradedOperator:
    """Parity-homogeneous endomorphism of a SuperAlgebra's space."""
    matrix: Matrix
    parity: int | None
    zshift: int | None = None
    algebra: SuperAlgebra | None = field(default=None, repr=False, compare=False)

    def apply(self, v):
        return self.matrix.apply(v)

    def flatten(self):
        return self.matrix.flatten()


def operator_parity(a: SuperAlgebra, m: Matrix) -> int | None:
    """Parity of a matrix as a map of the graded space; None if mixed/zero-safe."""
    par = None
    for r in range(m.rows):
        for c in range(m.cols):
            if m[r, c]:
                this = (a.parity(r) + a.parity(c)) % 2
                if par is None:
                    par = this
                elif par != this:
                    return None
    return par if par is not None else 0


def supercommutator(A: GradedOperator, B: GradedOperator) -> GradedOperator:
    """[A,B] = AB - (-1)^{|A||B|} BA."""
    if A.parity is None or B.parity is None:
        raise ValueError("supercommutator needs homogeneous operators")
    s = _sign(A.parity * B.parity)
    m = A.matrix @ B.matrix - (B.matrix @ A.matrix).scale(s)
    zs = None
    if A.zshift is not None and B.zshift is not None:
        zs = A.zshift + B.zshift
    return GradedOperator(m, (A.parity + B.parity) % 2, zs, A.algebra)


def _graded_components(a: SuperAlgebra, vec) -> dict:
    comps: dict = {}
    for i, x in enumerate(vec):
        if x:
            key = (a.zdegree(i), a.parity(i))
            comps.setdefault(key, [ZERO] * a.dim)[i] = x
    return comps


def _split_graded_basis(a: SuperAlgebra, s: Subspace, what: str):
    """Homogeneous basis of a graded subspace, sorted by (degree, parity).

    Basis coordinates are homogeneous, so the canonical RREF basis of a graded
    subspace is automatically homogeneous; a mixed basis vector is proof the
    subspace is not graded.
    """
    if s.ambient != a.dim:
        raise ValueError(f"{what}: ambient {s.ambient} != algebra dim {a.dim}")
    out = []
    for v in s.basis:
        comps = _graded_components(a, v)
        if len(comps) > 1:
            raise ValueError(f"{what}: subspace is not graded (mixed basis vector)")
        (key,) = comps or {(0, 0): None}
        out.append((key, v))
    out.sort(key=lambda kv: kv[0])
    return out


def subalgebra(a: SuperAlgebra, s: Subspace, *, name=None) -> SuperAlgebra:
    """Restrict the product to a graded subspace closed under it."""
    graded = _split_graded_basis(a, s, "subalgebra")
    vectors = [v for _, v in graded]
    solver = SpanSolver(a.dim)
    for v in vectors:
        solver.add(v)
    products = []
    for m, vm in enumerate(vectors):
        for l, vl in enumerate(vectors):
            prod = a.product(vm, vl)
            coords = solver.express(prod)
            if coords is None:
                raise ValueError(
                    f"subalgebra: not closed, product of basis vectors ({m},{l}) leaves it")
            products.extend((m, l, k, c) for k, c in enumerate(coords) if c)
    parities = [a.parity(next(i for i, x in enumerate(v) if x)) if any(v) else 0
                for v in vectors]
    zdeg = None
    if a.zdegrees is not None:
        zdeg = [a.zdegree(next(i for i, x in enumerate(v) if x)) if any(v) else 0
                for v in vectors]
    return make_algebra(parities, products, zdeg,
                        name=name or f"{a.name}|sub", kind=a.kind,
                        metadata=a.metadata, check=False)


def quotient_algebra(a: SuperAlgebra, ideal: Subspace, *, name=None) -> SuperAlgebra:
    """Quotient by a graded two-sided ideal (verified, with witnesses)."""
    _split_graded_basis(a, ideal, "quotient")
    for i in range(a.dim):
        b = a.basis_vector(i)
        for v in ideal.basis:
            if not ideal.contains(a.product(b, v)):
                raise ValueError(f"quotient: not an ideal, e_{i}*v escapes (v in ideal)")
            if not ideal.contains(a.product(v, b)):
                raise ValueError(f"quotient: not an ideal, v*e_{i} escapes (v in ideal)")
    keep = [i for i in range(a.dim) if i not in set(ideal.pivots)]
    pos = {i: m for m, i in enumerate(keep)}
    products = []
    for m, i in enumerate(keep):
        for l, j in enumerate(keep):
            prod = ideal._reduce(a.product(a.basis_vector(i), a.basis_vector(j)))
            for k, c in enumerate(prod):
                if c:
                    assert k in pos, "reduction left a pivot coordinate"
                    products.append((m, l, pos[k], c))
    parities = [a.parity(i) for i in keep]
    zdeg = [a.zdegree(i) for i in keep] if a.zdegrees is not None else None
    return make_algebra(parities, products, zdeg,
                        name=name or f"{a.name}/ideal", kind=a.kind,
                        metadata=a.metadata, check=False)
