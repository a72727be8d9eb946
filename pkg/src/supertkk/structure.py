"""Structure algebras of a Jordan superalgebra and of its doubled superpair.

Computes Der, Inn, istr = {L} + Inn, str = {L} + Der, the D-operator span
istr~, the superpair spaces Inn(V,V) and Der(V,V), and the weak structure
algebra str_w cut out by the two U-operator identities.  Everything is an
exact kernel or span computation over the rationals; operator spaces are kept
as canonical subspaces of flattened matrices, split by parity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact import Matrix, Q, Subspace, kernel_sparse, solve
from .jordan import d_op, l_op, triple, u_op
from .superspace import GradedOperator, SuperAlgebra, Witness, supercommutator


@dataclass(frozen=True)
class OperatorSpace:
    """Parity-split subspace of End(V), or of End(V+) x End(V-) when paired.

    shape is (n,) for endomorphism spaces and (d_plus, d_minus) for paired
    ones; vectors are flattened matrices, with the minus block appended after
    the plus block in the paired case.
    """

    label: str
    even: Subspace
    odd: Subspace
    shape: tuple
    algebra: object = field(default=None, compare=False, repr=False)

    @property
    def paired(self) -> bool:
        return len(self.shape) == 2

    def dims(self) -> tuple:
        return self.even.dim, self.odd.dim

    @property
    def dim(self) -> int:
        return self.even.dim + self.odd.dim

    def part(self, parity: int) -> Subspace:
        return self.odd if parity % 2 else self.even

    def contains_flat(self, vec, parity: int) -> bool:
        return self.part(parity).contains(vec)

    def contains_space(self, other: "OperatorSpace") -> bool:
        return (self.even.contains_space(other.even)
                and self.odd.contains_space(other.odd))

    def sum(self, other: "OperatorSpace", label=None) -> "OperatorSpace":
        assert self.shape == other.shape, "operator spaces live on different spaces"
        return OperatorSpace(label or f"{self.label}+{other.label}",
                             self.even.sum(other.even), self.odd.sum(other.odd),
                             self.shape, self.algebra)

    def intersect(self, other: "OperatorSpace", label=None) -> "OperatorSpace":
        assert self.shape == other.shape, "operator spaces live on different spaces"
        return OperatorSpace(label or f"{self.label}&{other.label}",
                             self.even.intersect(other.even),
                             self.odd.intersect(other.odd),
                             self.shape, self.algebra)

    def operators(self):
        """Basis as GradedOperators (plain) or (plus, minus, parity) triples."""
        out = []
        for parity in (0, 1):
            for v in self.part(parity).basis:
                if self.paired:
                    dp, dm = self.shape
                    out.append((Matrix.unflatten(dp, dp, v[:dp * dp]),
                                Matrix.unflatten(dm, dm, v[dp * dp:]), parity))
                else:
                    n = self.shape[0]
                    out.append(GradedOperator(Matrix.unflatten(n, n, v), parity,
                                              algebra=self.algebra))
        return out


def _space(label, flats_by_parity, shape, algebra=None) -> OperatorSpace:
    amb = sum(d * d for d in shape)
    return OperatorSpace(label,
                         Subspace(amb, flats_by_parity.get(0, ())),
                         Subspace(amb, flats_by_parity.get(1, ())),
                         shape, algebra)


# ---------------------------------------------------------------------------
# plain operator spaces


@lru_cache(maxsize=None)
def l_space(V: SuperAlgebra) -> OperatorSpace:
    """Span of the left multiplications L_x."""
    flats: dict = {0: [], 1: []}
    for i in range(V.dim):
        flats[V.parity(i)].append(l_op(V, V.basis_vector(i)).matrix.flatten())
    return _space("{L}", flats, (V.dim,), V)


@lru_cache(maxsize=None)
def inn_algebra(V: SuperAlgebra) -> OperatorSpace:
    """Inner derivations: the span of the [L_x, L_y]."""
    flats: dict = {0: [], 1: []}
    mats = [l_op(V, V.basis_vector(i)) for i in range(V.dim)]
    for i in range(V.dim):
        for j in range(i, V.dim):
            br = supercommutator(mats[i], mats[j])
            flats[(V.parity(i) + V.parity(j)) % 2].append(br.matrix.flatten())
    return _space("Inn", flats, (V.dim,), V)


def derivation_kernel(a: SuperAlgebra, parity: int, zshift=None) -> Subspace:
    """Leibniz kernel: operators of given parity (and degree shift, if set).

    Supercommutativity (or anticommutativity) of the table makes the (j, i)
    Leibniz row a consequence of the (i, j) one, so unordered pairs suffice.
    """
    n = a.dim
    cols = [(r, c) for r in range(n) for c in range(n)
            if (a.parity(r) + a.parity(c)) % 2 == parity
            and (zshift is None or a.zdegree(r) - a.zdegree(c) == zshift)]
    pos = {rc: idx for idx, rc in enumerate(cols)}
    rows = []
    for i in range(n):
        for j in range(i, n):
            w = a.basis_product(i, j)
            sgn = Q(-1) if (parity * a.parity(i)) % 2 else Q(1)
            row_for: dict = {k: {} for k in range(n)}
            for c, wc in w.items():
                for k in range(n):
                    if (k, c) in pos:
                        row_for[k][pos[k, c]] = row_for[k].get(pos[k, c], Q(0)) + wc
            for r in range(n):
                if (r, i) in pos:
                    for k, c in a.basis_product(r, j).items():
                        row_for[k][pos[r, i]] = row_for[k].get(pos[r, i], Q(0)) - c
                if (r, j) in pos:
                    for k, c in a.basis_product(i, r).items():
                        row_for[k][pos[r, j]] = row_for[k].get(pos[r, j], Q(0)) - sgn * c
            rows.extend(v for v in row_for.values() if v)
    vecs = kernel_sparse(rows, len(cols))
    scattered = []
    for v in vecs:
        flat = [Q(0)] * (n * n)
        for idx, (r, c) in enumerate(cols):
            flat[r * n + c] = v[idx]
        scattered.append(tuple(flat))
    return Subspace(n * n, scattered)


@lru_cache(maxsize=None)
def der_algebra(V: SuperAlgebra) -> OperatorSpace:
    """All superderivations of the product."""
    return OperatorSpace("Der", derivation_kernel(V, 0), derivation_kernel(V, 1),
                         (V.dim,), V)


@lru_cache(maxsize=None)
def istr_algebra(V: SuperAlgebra) -> OperatorSpace:
    return l_space(V).sum(inn_algebra(V), label="istr")


@lru_cache(maxsize=None)
def str_algebra(V: SuperAlgebra) -> OperatorSpace:
    return l_space(V).sum(der_algebra(V), label="str")


@lru_cache(maxsize=None)
def istr_tilde(V: SuperAlgebra) -> OperatorSpace:
    """Span of the operators D_{x,y} = 2 L_{xy} + 2 [L_x, L_y]."""
    flats: dict = {0: [], 1: []}
    for i in range(V.dim):
        for j in range(V.dim):
            m = d_op(V, V.basis_vector(i), V.basis_vector(j)).matrix
            flats[(V.parity(i) + V.parity(j)) % 2].append(m.flatten())
    return _space("istr~", flats, (V.dim,), V)


# ---------------------------------------------------------------------------
# superpairs


@dataclass(frozen=True, eq=False)
class JordanPair:
    """Superpair (V+, V-) stored through its basis triple products.

    triples[sigma] maps (i, j, k) to the coordinates of {e_i, e_j, e_k}^sigma,
    where i, k index V^sigma and j indexes V^(-sigma); sigma is 0 for + and
    1 for -.
    """

    name: str
    parities: tuple  # (parities of V+, parities of V-)
    triples: tuple   # (dict for sigma=+, dict for sigma=-)

    def dim(self, sigma: int) -> int:
        return len(self.parities[sigma])

    def parity(self, sigma: int, i: int) -> int:
        return self.parities[sigma][i]

    def basis_triple(self, sigma: int, i: int, j: int, k: int) -> dict:
        return self.triples[sigma].get((i, j, k), {})

    def triple(self, sigma: int, x, y, z) -> tuple:
        out = [Q(0)] * self.dim(sigma)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, zk in enumerate(z):
                    if not zk:
                        continue
                    for l, c in self.basis_triple(sigma, i, j, k).items():
                        out[l] += xi * yj * zk * c
        return tuple(out)

    @property
    def shape(self) -> tuple:
        return (self.dim(0), self.dim(1))


def double(V: SuperAlgebra) -> JordanPair:
    """The doubled superpair (V, V) with both triples from the algebra triple."""
    table: dict = {}
    n = V.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                t = triple(V, V.basis_vector(i), V.basis_vector(j), V.basis_vector(k))
                if any(t):
                    table[i, j, k] = {l: c for l, c in enumerate(t) if c}
    parities = tuple(V.parities)
    return JordanPair(f"({V.name},{V.name})", (parities, parities), (table, table))


_DOUBLES: dict = {}


def _as_pair(v) -> JordanPair:
    if isinstance(v, JordanPair):
        return v
    key = id(v)
    if key not in _DOUBLES:
        _DOUBLES[key] = (v, double(v))
    return _DOUBLES[key][1]


def pair_d_ops(pair: JordanPair, sigma: int, i: int, j: int):
    """The derivation pair D_{e_i, e_j} for e_i in V^sigma, e_j in V^(-sigma).

    Returns (D acting on V^sigma, companion acting on V^(-sigma), parity);
    the companion is -(-1)^{|x||y|} {y, x, .}^(-sigma).
    """
    d_same = Matrix.from_entries(pair.dim(sigma), pair.dim(sigma), {
        (l, k): c
        for k in range(pair.dim(sigma))
        for l, c in pair.basis_triple(sigma, i, j, k).items()})
    other = 1 - sigma
    s = Q(-1) if (pair.parity(sigma, i) * pair.parity(other, j)) % 2 == 0 else Q(1)
    d_other = Matrix.from_entries(pair.dim(other), pair.dim(other), {
        (l, k): s * c
        for k in range(pair.dim(other))
        for l, c in pair.basis_triple(other, j, i, k).items()})
    parity = (pair.parity(sigma, i) + pair.parity(other, j)) % 2
    return d_same, d_other, parity


_PAIR_MEMO: dict = {}


def _pair_cached(tag, v, build):
    key = (tag, id(v))
    if key not in _PAIR_MEMO:
        _PAIR_MEMO[key] = (v, build())
    return _PAIR_MEMO[key][1]


def pair_inn(v) -> OperatorSpace:
    """Inner derivations of the pair: the span of the (D_{x,y}, companion).

    Accepts a Jordan superalgebra (meaning its doubled pair) or a JordanPair.
    """
    return _pair_cached("pair_inn", v, lambda: _pair_inn(_as_pair(v)))


def _pair_inn(pair: JordanPair) -> OperatorSpace:
    flats: dict = {0: [], 1: []}
    for i in range(pair.dim(0)):
        for j in range(pair.dim(1)):
            d_plus, d_minus, parity = pair_d_ops(pair, 0, i, j)
            flats[parity].append(d_plus.flatten() + d_minus.flatten())
    return _space("Inn(V,V)", flats, pair.shape)


def pair_derivation_kernel(pair: JordanPair, parity: int) -> Subspace:
    """Pairs (D+, D-) satisfying the derivation rule for both triples."""
    dims = (pair.dim(0), pair.dim(1))
    cols = []
    for s in (0, 1):
        cols.extend((s, r, c) for r in range(dims[s]) for c in range(dims[s])
                    if (pair.parity(s, r) + pair.parity(s, c)) % 2 == parity)
    pos = {src: idx for idx, src in enumerate(cols)}
    rows = []
    for sigma in (0, 1):
        other = 1 - sigma
        for i in range(dims[sigma]):
            pi = pair.parity(sigma, i)
            s_i = Q(-1) if (parity * pi) % 2 else Q(1)
            for j in range(dims[other]):
                pj = pair.parity(other, j)
                s_ij = Q(-1) if (parity * (pi + pj)) % 2 else Q(1)
                for k in range(dims[sigma]):
                    row_for: dict = {}

                    def add(l, col, val):
                        if col in pos:
                            cell = row_for.setdefault(l, {})
                            cell[pos[col]] = cell.get(pos[col], Q(0)) + val

                    for c, wc in pair.basis_triple(sigma, i, j, k).items():
                        for l in range(dims[sigma]):
                            add(l, (sigma, l, c), wc)
                    for r in range(dims[sigma]):
                        for l, c in pair.basis_triple(sigma, r, j, k).items():
                            add(l, (sigma, r, i), -c)
                        for l, c in pair.basis_triple(sigma, i, j, r).items():
                            add(l, (sigma, r, k), -s_ij * c)
                    for r in range(dims[other]):
                        for l, c in pair.basis_triple(sigma, i, r, k).items():
                            add(l, (other, r, j), -s_i * c)
                    rows.extend(v for v in row_for.values() if v)
    vecs = kernel_sparse(rows, len(cols))
    amb = dims[0] ** 2 + dims[1] ** 2
    scattered = []
    for v in vecs:
        flat = [Q(0)] * amb
        for idx, (s, r, c) in enumerate(cols):
            flat[(0 if s == 0 else dims[0] ** 2) + r * dims[s] + c] = v[idx]
        scattered.append(tuple(flat))
    return Subspace(amb, scattered)


def pair_der(v) -> OperatorSpace:
    """All superderivations of the pair (of the doubled pair for an algebra)."""
    return _pair_cached("pair_der", v, lambda: _pair_der(_as_pair(v)))


def _pair_der(pair: JordanPair) -> OperatorSpace:
    return _space("Der(V,V)", {
        0: pair_derivation_kernel(pair, 0).basis,
        1: pair_derivation_kernel(pair, 1).basis,
    }, pair.shape)


def check_pair_axioms(pair: JordanPair) -> Witness | None:
    """Outer symmetry and the 5-linear identity on all homogeneous basis tuples."""
    for sigma in (0, 1):
        other = 1 - sigma
        dp, dm = pair.dim(sigma), pair.dim(other)

        def combo(pos, a, b, vec):
            # triple with vec substituted at slot pos, the rest basis elements
            out: dict = {}
            for l, c in vec.items():
                args = ((l, a, b), (a, l, b), (a, b, l))[pos]
                for k, w in pair.basis_triple(sigma, *args).items():
                    out[k] = out.get(k, Q(0)) + c * w
            return out

        for i in range(dp):
            pi = pair.parity(sigma, i)
            for j in range(dm):
                pj = pair.parity(other, j)
                for k in range(dp):
                    lhs = pair.basis_triple(sigma, i, j, k)
                    pk = pair.parity(sigma, k)
                    s = Q(-1) if (pi * pj + pj * pk + pk * pi) % 2 else Q(1)
                    rhs = {l: s * c for l, c
                           in pair.basis_triple(sigma, k, j, i).items()}
                    if lhs != rhs:
                        return Witness((sigma, i, j, k),
                                       f"outer symmetry fails at {(sigma, i, j, k)}")
        for i in range(dp):
            for j in range(dm):
                sxy = pair.parity(sigma, i) + pair.parity(other, j)
                for u in range(dp):
                    for v in range(dm):
                        suv = pair.parity(sigma, u) + pair.parity(other, v)
                        sg = Q(-1) if (sxy * suv) % 2 else Q(1)
                        for w in range(dp):
                            # {x,y,{u,v,w}} - {{x,y,u},v,w}
                            #   = sg * (-{u,{v,x,y},w} + {u,v,{x,y,w}})
                            total: dict = {}
                            for vec, f in (
                                    (combo(2, i, j, pair.basis_triple(sigma, u, v, w)), Q(1)),
                                    (combo(0, v, w, pair.basis_triple(sigma, i, j, u)), Q(-1)),
                                    (combo(1, u, w, pair.basis_triple(other, v, i, j)), sg),
                                    (combo(2, u, v, pair.basis_triple(sigma, i, j, w)), -sg)):
                                for l, c in vec.items():
                                    total[l] = total.get(l, Q(0)) + f * c
                            if any(total.values()):
                                return Witness(
                                    (sigma, i, j, u, v, w),
                                    f"5-linear identity fails at {(sigma, i, j, u, v, w)}")
    return None


# ---------------------------------------------------------------------------
# the weak structure algebra


@lru_cache(maxsize=None)
def str_w(V: SuperAlgebra) -> OperatorSpace:
    """Pairs (X, Y) satisfying the two U-operator structure identities.

    Identity 1: U_{X(a),b} + (-1)^{|X||a|} U_{a,X(b)}
                  = X U_{a,b} + (-1)^{|Y|(|a|+|b|)} U_{a,b} Y,
    identity 2 is the same with X and Y exchanged.
    """
    n = V.dim
    U = [[u_op(V, V.basis_vector(i), V.basis_vector(j)).matrix
          for j in range(n)] for i in range(n)]
    parts = {}
    for parity in (0, 1):
        cols = []
        for s in (0, 1):  # 0 -> X entries, 1 -> Y entries
            cols.extend((s, r, c) for r in range(n) for c in range(n)
                        if (V.parity(r) + V.parity(c)) % 2 == parity)
        pos = {src: idx for idx, src in enumerate(cols)}
        rows = []
        for first in (0, 1):  # which of X, Y is differentiated in the identity
            second = 1 - first
            for i in range(n):
                for j in range(n):
                    s_i = Q(-1) if (parity * V.parity(i)) % 2 else Q(1)
                    s_ij = Q(-1) if (parity * (V.parity(i) + V.parity(j))) % 2 else Q(1)
                    uij = U[i][j]
                    for l in range(n):
                        for m in range(n):
                            row: dict = {}

                            def add(col, val):
                                if val and col in pos:
                                    row[pos[col]] = row.get(pos[col], Q(0)) + val

                            for r in range(n):
                                add((first, r, i), U[r][j][l, m])
                                add((first, r, j), s_i * U[i][r][l, m])
                            for c in range(n):
                                add((first, l, c), -uij[c, m])
                                add((second, c, m), -s_ij * uij[l, c])
                            if row:
                                rows.append(row)
        vecs = kernel_sparse(rows, len(cols))
        scattered = []
        for v in vecs:
            flat = [Q(0)] * (2 * n * n)
            for idx, (s, r, c) in enumerate(cols):
                flat[s * n * n + r * n + c] = v[idx]
            scattered.append(tuple(flat))
        parts[parity] = Subspace(2 * n * n, scattered)
    return OperatorSpace("str_w", parts[0], parts[1], (n, n), V)


# ---------------------------------------------------------------------------
# reporting


@dataclass(frozen=True)
class CheckResult:
    """One verification line.

    kind "check" is a mathematical invariant that must hold; kind "note"
    records a contingent observation (a hypothesis holding or failing, a sum
    being direct or not) and never counts against an exit code.
    """

    name: str
    passed: bool
    detail: str
    kind: str = "check"

    def __str__(self):
        if self.kind == "note":
            return f"{self.name}: note ({self.detail})"
        flag = "ok" if self.passed else "FAIL"
        return f"{self.name}: {flag} ({self.detail})"


def _format_element(v) -> str:
    terms = []
    for i, c in enumerate(v):
        if not c:
            continue
        coeff = "" if c == 1 else ("-" if c == -1 else f"{c} ")
        terms.append(f"{coeff}e_{i + 1}")
    return " + ".join(terms) if terms else "0"


def _l_witness(V: SuperAlgebra, flat_op):
    """Recover x with L_x proportional to the given flattened operator."""
    columns = [l_op(V, V.basis_vector(i)).matrix.flatten() for i in range(V.dim)]
    x = solve(Matrix.from_columns(columns), flat_op)
    assert x is not None, "operator claimed to be a left multiplication is not"
    lead = next((c for c in x if c), None)
    return tuple(c / lead for c in x) if lead else x


def structure_summary(V: SuperAlgebra) -> dict:
    """All structure spaces keyed by their conventional names."""
    return {
        "Der": der_algebra(V),
        "Inn": inn_algebra(V),
        "str": str_algebra(V),
        "istr": istr_algebra(V),
        "istr~": istr_tilde(V),
        "str_w": str_w(V),
        "pair_der": pair_der(V),
        "pair_inn": pair_inn(V),
    }


def inclusion_report(V: SuperAlgebra) -> list:
    """Inclusion and embedding facts relating the structure spaces."""
    if V.kind != "jordan":
        raise ValueError("inclusion_report expects a Jordan superalgebra")
    n = V.dim
    ls = l_space(V)
    inn = inn_algebra(V)
    der = der_algebra(V)
    istr = istr_algebra(V)
    strv = str_algebra(V)
    itld = istr_tilde(V)
    pinn = pair_inn(V)
    pder = pair_der(V)
    sw = str_w(V)
    results = []

    results.append(CheckResult(
        "inn_in_der", der.contains_space(inn),
        f"Inn dims {inn.dims()} inside Der dims {der.dims()}"))
    results.append(CheckResult(
        "istr_in_str", strv.contains_space(istr),
        f"istr dims {istr.dims()} inside str dims {strv.dims()}"))

    overlap = ls.intersect(der)
    if overlap.dim == 0:
        results.append(CheckResult(
            "chain_hypothesis", True, "no nonzero L_x is a derivation", "note"))
    else:
        parity = 0 if overlap.even.dim else 1
        w = overlap.part(parity).basis[0]
        x = _l_witness(V, w)
        where = "Inn(V)" if inn.contains_flat(w, parity) else "Der(V)"
        results.append(CheckResult(
            "chain_hypothesis", False,
            f"chain hypothesis fails: L_{{{_format_element(x)}}} in {where}", "note"))

    # the Kantor middle uses istr as a subspace; flag when {L} + Inn is not direct
    direct = ls.dim + inn.dim == istr.dim
    results.append(CheckResult(
        "istr_sum_direct", direct,
        f"dim {{L}} + dim Inn = {ls.dim + inn.dim} vs dim istr = {istr.dim}", "note"))

    ok = True
    for i in range(n):
        li = l_op(V, V.basis_vector(i)).matrix
        vec = li.flatten() + (-li).flatten()
        ok = ok and pder.contains_flat(vec, V.parity(i))
    results.append(CheckResult(
        "lx_minus_lx_in_pair_der", ok, "(L_x, -L_x) is a pair derivation"))

    ok = True
    for op in der.operators():
        vec = op.matrix.flatten() + op.matrix.flatten()
        ok = ok and pder.contains_flat(vec, op.parity)
    results.append(CheckResult(
        "diag_der_in_pair_der", ok, "(D, D) is a pair derivation"))

    ok = True
    for op in inn.operators():
        vec = op.matrix.flatten() + op.matrix.flatten()
        ok = ok and pinn.contains_flat(vec, op.parity)
    results.append(CheckResult(
        "diag_inn_in_pair_inn", ok, "([L_x,L_y], [L_x,L_y]) lies in Inn(V,V)"))

    # psi forgets the second component: Inn(V,V) -> istr~
    image: dict = {0: [], 1: []}
    pair = _as_pair(V)
    for i in range(n):
        for j in range(n):
            d_plus, _, parity = pair_d_ops(pair, 0, i, j)
            image[parity].append(d_plus.flatten())
    psi_img = _space("psi(Inn(V,V))", image, (n,), V)
    results.append(CheckResult(
        "psi_onto_istr_tilde",
        psi_img.even == itld.even and psi_img.odd == itld.odd,
        f"psi image dims {psi_img.dims()} vs istr~ dims {itld.dims()}"))
    results.append(CheckResult(
        "psi_injective", pinn.dim == itld.dim,
        f"Inn(V,V) dim {pinn.dim} vs istr~ dim {itld.dim}", "note"))

    ok = True
    for a_plus, a_minus, pa in pder.operators():
        for b_plus, b_minus, pb in pinn.operators():
            s = Q(-1) if (pa * pb) % 2 else Q(1)
            br_plus = a_plus @ b_plus - (b_plus @ a_plus).scale(s)
            br_minus = a_minus @ b_minus - (b_minus @ a_minus).scale(s)
            ok = ok and pinn.contains_flat(br_plus.flatten() + br_minus.flatten(),
                                           (pa + pb) % 2)
    results.append(CheckResult(
        "pair_inn_ideal", ok, "[Der(V,V), Inn(V,V)] lies in Inn(V,V)"))

    ok = True
    for x, y, parity in sw.operators():
        vec = x.flatten() + (-y).flatten()
        ok = ok and pder.contains_flat(vec, parity)
    results.append(CheckResult(
        "str_w_swap_in_pair_der", ok,
        "(X, Y) -> (X, -Y) carries str_w into Der(V,V)"))
    results.append(CheckResult(
        "str_w_matches_pair_der", sw.dims() == pder.dims(),
        f"str_w dims {sw.dims()} vs Der(V,V) dims {pder.dims()}"))

    return results
