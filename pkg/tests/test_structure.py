"""Structure algebras checked against hand-computed small cases."""

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from supertkk.catalog import jordan_catalog, lie_catalog
from supertkk.exact import Matrix, Q
from supertkk.jordan import d_op, l_op, triple
from supertkk.structure import (
    der_algebra,
    derivation_kernel,
    double,
    inclusion_report,
    inn_algebra,
    istr_algebra,
    istr_tilde,
    l_space,
    pair_d_ops,
    pair_der,
    pair_inn,
    str_algebra,
    str_w,
    structure_summary,
)
from supertkk.superspace import supercommutator

SETTINGS = dict(max_examples=40, deadline=None)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4).map(Q)


def diag(*entries):
    n = len(entries)
    return Matrix.from_entries(n, n, {(i, i): Q(e) for i, e in enumerate(entries)})


def test_j19_dims():
    V = jordan_catalog("j19")
    s = structure_summary(V)
    got = {k: sp.dims() for k, sp in s.items()}
    assert got == {
        "Der": (2, 0),
        "Inn": (1, 0),
        "str": (3, 0),
        "istr": (2, 0),
        "istr~": (2, 0),
        "str_w": (5, 0),
        "pair_der": (5, 0),
        "pair_inn": (3, 0),
    }


def test_j19_l_e2_is_inner():
    V = jordan_catalog("j19")
    l1 = l_op(V, V.basis_vector(0))
    l2 = l_op(V, V.basis_vector(1))
    # [L_{e1}, L_{e2}] = -1/2 L_{e2}, so L_{e2} = -2 [L_{e1}, L_{e2}] is inner
    br = supercommutator(l1, l2)
    assert br.matrix.scale(Q(-2)) == l2.matrix
    assert inn_algebra(V).contains_flat(l2.matrix.flatten(), 0)
    assert not inn_algebra(V).contains_flat(l1.matrix.flatten(), 0)


def test_j19_grading_derivation():
    # the weight derivation assigns weights 0, 1, 2 to e1, e2, e3
    V = jordan_catalog("j19")
    der = der_algebra(V)
    assert der.contains_flat(diag(0, 1, 2).flatten(), 0)
    assert not der.contains_flat(diag(0, 2, 1).flatten(), 0)
    assert der.dims() == (2, 0)


def test_j19_report():
    rep = {r.name: r for r in inclusion_report(jordan_catalog("j19"))}
    for r in rep.values():
        if r.kind == "check":
            assert r.passed, str(r)
    assert not rep["chain_hypothesis"].passed
    assert rep["chain_hypothesis"].detail == "chain hypothesis fails: L_{e_2} in Inn(V)"
    assert not rep["istr_sum_direct"].passed  # {L} meets Inn in L_{e2}
    assert not rep["psi_injective"].passed  # Inn(V,V) is 3-dim, istr~ only 2


def test_kacK_dims():
    V = jordan_catalog("kacK")
    s = structure_summary(V)
    assert s["istr"].dims() == (4, 4)
    assert s["str"].dims() == (4, 4)
    assert s["istr"].even == s["str"].even and s["istr"].odd == s["str"].odd
    assert s["pair_inn"].dims() == (4, 4)
    assert s["pair_der"].dims() == (5, 4)
    assert s["istr~"].dims() == (4, 4)


def test_kacK_pair_generator():
    # for x = xi1, y = xi2: D_{x,y} = diag(2,0,2) and the companion slot is
    # -(-1)^{|x||y|} D_{y,x} = +D_{xi2,xi1} = diag(-2,-2,0)
    V = jordan_catalog("kacK")
    assert d_op(V, V.basis_vector(1), V.basis_vector(2)).matrix == diag(2, 0, 2)
    assert d_op(V, V.basis_vector(2), V.basis_vector(1)).matrix == diag(-2, -2, 0)
    d_plus, d_minus, parity = pair_d_ops(double(V), 0, 1, 2)
    assert parity == 0
    assert d_plus == diag(2, 0, 2)
    assert d_minus == diag(-2, -2, 0)
    assert pair_inn(V).contains_flat(d_plus.flatten() + d_minus.flatten(), 0)
    assert istr_tilde(V).contains_flat(d_plus.flatten(), 0)


def test_trunc_poly_tower():
    for k in range(4, 8):
        V = jordan_catalog("trunc_poly", k)
        assert istr_algebra(V).dims() == (k - 2, 0), f"istr of k={k}"
        assert istr_tilde(V).dims() == (k - 3, 0), f"istr~ of k={k}"
        assert inn_algebra(V).dim == 0
        der = der_algebra(V)
        # L_{t^m} is a derivation exactly when 2m >= k, i.e. m >= k - 2 here
        top = l_op(V, V.basis_vector(k - 3)).matrix  # basis index m-1 holds t^m
        below = l_op(V, V.basis_vector(k - 4)).matrix
        assert der.contains_flat(top.flatten(), 0)
        assert not der.contains_flat(below.flatten(), 0)
        assert l_space(V).intersect(der).dim > 0


def test_trunc_poly_report_witness():
    rep = {r.name: r for r in inclusion_report(jordan_catalog("trunc_poly", 5))}
    assert rep["chain_hypothesis"].detail == "chain hypothesis fails: L_{e_3} in Der(V)"


def test_str_w_matches_pair_der():
    for source in ("j19", "kacK"):
        V = jordan_catalog(source)
        assert str_w(V).dims() == pair_der(V).dims(), source


def test_unital_str_w_is_str():
    for source in (("full_matrix", 1, 1), ("dt", 2), ("form", 1, 2)):
        V = jordan_catalog(*source)
        assert str_w(V).dims() == str_algebra(V).dims(), V.name


def test_reports_clean():
    for source in (("kacK",), ("full_matrix", 1, 1), ("dt", Q(1, 2)), ("form", 3, 0)):
        for r in inclusion_report(jordan_catalog(*source)):
            if r.kind == "check":
                assert r.passed, str(r)


def test_report_rejects_lie_input():
    with pytest.raises(ValueError):
        inclusion_report(lie_catalog("gl", 1, 1))


@given(x=st.tuples(*[rationals] * 3), y=st.tuples(*[rationals] * 3),
       z=st.tuples(*[rationals] * 3))
@settings(**SETTINGS)
def test_pair_triple_is_trilinear_extension(x, y, z):
    V = jordan_catalog("kacK")
    pair = double(V)
    assert pair.triple(0, x, y, z) == triple(V, x, y, z)
    assert pair.triple(1, x, y, z) == triple(V, x, y, z)


def test_derivation_kernel_graded_blocks():
    # for a graded algebra the degree-homogeneous pieces exhaust Der
    g = lie_catalog("lambda", 2)
    shifts = sorted({g.zdegree(r) - g.zdegree(c)
                     for r in range(g.dim) for c in range(g.dim)})
    for parity in (0, 1):
        full = derivation_kernel(g, parity)
        total = sum(derivation_kernel(g, parity, s).dim for s in shifts)
        assert total == full.dim, f"graded Der pieces must sum up (parity {parity})"


def test_operator_space_basis_roundtrip():
    V = jordan_catalog("kacK")
    sp = istr_algebra(V)
    for op in sp.operators():
        assert sp.contains_flat(op.matrix.flatten(), op.parity)
    paired = pair_der(V)
    for plus, minus, parity in paired.operators():
        assert paired.contains_flat(plus.flatten() + minus.flatten(), parity)


def test_operator_space_sum_and_intersect():
    V = jordan_catalog("j19")
    ls, inn = l_space(V), inn_algebra(V)
    assert ls.sum(inn).dims() == (2, 0)  # L_{e2} already lies in Inn
    meet = ls.intersect(inn)
    assert meet.dims() == (1, 0)
    assert meet.even.contains(l_op(V, V.basis_vector(1)).matrix.flatten())
