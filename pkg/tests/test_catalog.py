"""Shipped catalogs: dimensions, identities, simplicity data, file format."""

import pytest
from hypothesis import given, settings, strategies as st

from supertkk.exact import Matrix, Q, SpanSolver
from supertkk.superspace import (
    center, check_super_jacobi, check_supercommutative, derived, parity_dims,
)
from supertkk.jordan import (
    check_commutator_identity, check_five_linear, check_jordan_identity,
    check_triple_symmetry,
)
from supertkk.catalog import (
    AlgebraSpec, algebra_to_spec, jordan_catalog, jordan_entries, lie_catalog,
    lie_entries, load, load_algebra, resolve, save, save_algebra, spec_to_algebra,
)

SETTINGS = dict(max_examples=25, deadline=None)


def test_jordan_entry_dimensions():
    dims = {name: a.dim for name, a in jordan_entries().items()}
    assert dims == {
        "j19": 3, "kacK": 3,
        "trunc_poly(4)": 3, "trunc_poly(5)": 4, "trunc_poly(6)": 5, "trunc_poly(7)": 6,
        "full_matrix(1,1)": 4, "full_matrix(1,2)": 9, "full_matrix(2,1)": 9,
        "form(1,2)": 4, "form(2,2)": 5, "form(3,0)": 4,
        "dt(2)": 4, "dt(1/2)": 4,
    }


def test_every_jordan_entry_passes_the_identity_suite():
    for name, V in jordan_entries().items():
        assert check_supercommutative(V) is None, name
        assert check_jordan_identity(V) is None, name
        assert check_commutator_identity(V) is None, name
        assert check_triple_symmetry(V) is None, name
        assert check_five_linear(V) is None, name


def test_every_lie_entry_satisfies_super_jacobi():
    for name, g in lie_entries().items():
        assert check_super_jacobi(g) is None, name


def test_matrix_family_dimension_formulas():
    assert lie_catalog("gl", 2, 2).dim == 16
    assert parity_dims(lie_catalog("gl", 2, 1)) == (5, 4)  # m^2+n^2 | 2mn
    assert lie_catalog("sl", 2, 2).dim == 15
    assert lie_catalog("pe", 2).dim == 8 and lie_catalog("pe", 3).dim == 18
    assert lie_catalog("spe", 3).dim == 17
    assert lie_catalog("q", 3).dim == 18
    assert lie_catalog("sq", 3).dim == 17
    assert lie_catalog("psq", 3).dim == 16
    assert lie_catalog("pq", 2).dim == 7


def test_exterior_family_dimension_formulas():
    assert lie_catalog("lambda", 4).dim == 16
    assert lie_catalog("w", 3).dim == 24  # n * 2^n
    for n in (4, 5, 6):
        assert lie_catalog("htilde", n).dim == 2 ** n - 1
        assert lie_catalog("h", n).dim == 2 ** n - 2
    assert lie_catalog("c_htilde", 4).dim == 16
    assert lie_catalog("c_htilde_lambda", 4).dim == 32


def test_simple_entries_have_zero_center_and_full_derived():
    for name, g in lie_entries().items():
        if g.metadata.get("simple") != "yes":
            continue
        assert center(g).dim == 0, f"{name} should have trivial center"
        assert derived(g).dim == g.dim, f"{name} should equal its derived algebra"


def test_h4_is_psl22_sized_and_w2_is_sl12_sized():
    assert lie_catalog("h", 4).dim == 14
    assert parity_dims(lie_catalog("w", 2)) == (4, 4)


def test_w2_structure_constants_match_operator_matrices():
    # independent route: realise each f d_i as a matrix acting on the
    # exterior algebra with basis 1, xi1, xi2, xi1 xi2 and compare brackets
    w2 = lie_catalog("w", 2)
    # w(2)'s own basis order: (mask, i) sorted by (popcount, mask, i)
    order = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)]
    mats = {fi: _w2_matrix(*fi) for fi in order}
    solver = SpanSolver(16)
    for fi in order:
        assert solver.add(mats[fi].flatten())
    for i, fi in enumerate(order):
        for j, gj in enumerate(order):
            a, b = mats[fi], mats[gj]
            sgn = Q(-1) if w2.parity(i) * w2.parity(j) % 2 else Q(1)
            br = a @ b - (b @ a).scale(sgn)
            coords = solver.express(br.flatten())
            assert coords is not None, (fi, gj)
            got = {k: c for k, c in enumerate(coords) if c}
            assert got == w2.basis_product(i, j), (fi, gj)


def _w2_matrix(mask, i):
    # action of xi^mask * d_i on monomial basis 1, xi1, xi2, xi1 xi2
    monos = [0, 1, 2, 3]
    cols = []
    for m in monos:
        img = {}
        if (m >> i) & 1:
            below = bin(m & ((1 << i) - 1)).count("1")
            sgn = -1 if below % 2 else 1
            rest = m ^ (1 << i)
            if rest & mask == 0:
                inv = sum(bin(mask >> (j + 1)).count("1")
                          for j in range(rest.bit_length()) if (rest >> j) & 1)
                img[mask | rest] = sgn * (-1 if inv % 2 else 1)
        cols.append(tuple(img.get(m2, 0) for m2 in monos))
    return Matrix.from_columns(cols)


def test_kac_k_odd_product_signs():
    V = jordan_catalog("kacK")
    assert V.basis_product(1, 2) == {0: Q(1)}   # xi1 xi2 = a
    assert V.basis_product(2, 1) == {0: Q(-1)}  # xi2 xi1 = -a


def test_external_definitions_are_flagged():
    for name in ("full_matrix(1,2)", "form(2,2)", "dt(2)"):
        assert jordan_entries()[name].metadata.get("external") == "yes", name
    assert "external" not in jordan_entries()["j19"].metadata


def test_resolve_accepts_colon_and_paren_syntax():
    assert resolve("trunc_poly:5") is resolve("trunc_poly(5)")
    assert resolve("dt:1/2").name == "dt(1/2)"
    assert resolve("psl:2,2") is lie_catalog("psl", 2)
    with pytest.raises(ValueError, match="known names"):
        resolve("nosuch")
    with pytest.raises(ValueError, match="parameter"):
        resolve("dt:1,2")
    with pytest.raises(ValueError, match="avoid 0 and -1"):
        resolve("dt:0")
    with pytest.raises(ValueError, match="must be in 3..8"):
        jordan_catalog("trunc_poly", 12)


def test_round_trip_every_jordan_entry():
    for name, V in jordan_entries().items():
        spec = algebra_to_spec(V)
        data = save(spec)
        assert load(data) == spec, name
        assert save(load(data)) == data, name  # byte-identical round trip
        W = spec_to_algebra(spec)
        assert W.table == V.table and W.parities == V.parities, name
        assert W.kind == "jordan"


def test_round_trip_keeps_exact_fractions():
    V = jordan_catalog("dt", Q(1, 3))
    data = save_algebra(V)
    assert b'"coeff": "1/3"' in data
    W = load_algebra(data)
    assert W.basis_product(2, 3) == {0: Q(1), 1: Q(1, 3)}


def test_round_trip_of_a_graded_lie_entry():
    g = lie_catalog("c_htilde", 4)
    W = load_algebra(save_algebra(g))
    assert W.zdegrees == g.zdegrees
    assert W.table == g.table
    assert check_super_jacobi(W) is None


def test_load_rejects_malformed_documents():
    data = save_algebra(jordan_catalog("j19"))
    with pytest.raises(ValueError, match=r"products\[0\].coeff.*1\.5"):
        load(data.replace(b'"coeff": "1"', b'"coeff": "1.5"', 1))
    with pytest.raises(ValueError, match="unsupported schema_version"):
        load(data.replace(b'"schema_version": 1', b'"schema_version": 3'))
    with pytest.raises(ValueError, match="unknown field"):
        load(data.replace(b'"name"', b'"nameX"', 1))
    with pytest.raises(ValueError, match="line"):
        load(b"{not json}")
    with pytest.raises(ValueError, match="duplicate"):
        doc = save_algebra(jordan_catalog("j19"))
        dup = doc.replace(b'{"i": 0, "j": 0, "k": 0, "coeff": "1"}',
                          b'{"i": 0, "j": 0, "k": 0, "coeff": "1"},\n'
                          b'{"i": 0, "j": 0, "k": 0, "coeff": "2"}', 1)
        load(dup)


def test_save_is_deterministic_across_processes_inputs():
    a = save_algebra(jordan_catalog("form", 2, 2))
    b = save_algebra(jordan_catalog("form", 2, 2))
    assert a == b


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
                          st.fractions(min_value=-5, max_value=5, max_denominator=7)),
                max_size=8))
@settings(**SETTINGS)
def test_round_trip_random_even_tables(entries):
    # all-even parities keep every table homogeneous; duplicates are dropped
    table = {}
    for i, j, k, c in entries:
        table[(i, j, k)] = Q(c)
    products = [(i, j, k, c) for (i, j, k), c in table.items() if c]
    from supertkk.superspace import make_algebra
    a = make_algebra([0, 0, 0], products, name="rand", kind="plain")
    spec = algebra_to_spec(a)
    assert load(save(spec)) == spec
    b = spec_to_algebra(spec)
    assert b.table == a.table
