"""Structure-constant superalgebras: construction, identity checkers, quotients."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supertkk.exact import Q, span
from supertkk.superspace import (
    GradedOperator, center, check_super_jacobi, check_superanticommutative,
    check_supercommutative, derived, graded_dims, make_algebra, operator_parity,
    parity_dims, quotient_algebra, subalgebra, supercommutator,
)
from supertkk.catalog import jordan_catalog, lie_catalog

SETTINGS = dict(max_examples=40, deadline=None)

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6).map(Q)


def sl2():
    # [h,e]=2e, [h,f]=-2f, [e,f]=h on basis (e, h, f)
    products = [(1, 0, 0, 2), (0, 1, 0, -2), (1, 2, 2, -2), (2, 1, 2, 2),
                (0, 2, 1, 1), (2, 0, 1, -1)]
    return make_algebra([0, 0, 0], products, name="sl2", kind="lie")


def test_make_algebra_rejects_bad_entries():
    with pytest.raises(ValueError, match="out of range"):
        make_algebra([0, 0], [(0, 0, 2, 1)])
    with pytest.raises(ValueError, match="duplicate"):
        make_algebra([0, 0], [(0, 0, 1, 1), (0, 0, 1, 2)])
    # even*even landing on an odd basis vector is an error, not a warning
    with pytest.raises(ValueError, match="wrong parity"):
        make_algebra([0, 0, 1], [(0, 1, 2, 1)])
    with pytest.raises(ValueError, match="wrong degree"):
        make_algebra([0, 0, 0], [(0, 1, 2, 1)], zdegrees=[1, 1, 3])


def test_zero_coefficients_are_dropped_after_duplicate_check():
    a = make_algebra([0, 1], [(1, 1, 0, 0)])
    assert a.basis_product(1, 1) == {}
    with pytest.raises(ValueError, match="duplicate"):
        make_algebra([0, 1], [(1, 1, 0, 0), (1, 1, 0, 0)])


def test_supercommutative_witness():
    bad = make_algebra([0, 0], [(0, 1, 1, 1), (1, 0, 1, -1)])
    w = check_supercommutative(bad)
    assert w is not None and w.indices == (1, 0)
    assert check_supercommutative(jordan_catalog("kacK")) is None


def test_superanticommutative_witness():
    bad = make_algebra([0, 0], [(0, 1, 1, 1), (1, 0, 1, 1)])
    w = check_superanticommutative(bad)
    assert w is not None and w.indices == (1, 0)
    assert check_superanticommutative(sl2()) is None


def test_super_jacobi_on_sl2_and_a_broken_table():
    assert check_super_jacobi(sl2()) is None
    # replace [e,f] = h by [e,f] = e; the (e,h,f) triple then fails Jacobi
    products = [(1, 0, 0, 2), (0, 1, 0, -2), (1, 2, 2, -2), (2, 1, 2, 2),
                (0, 2, 0, 1), (2, 0, 0, -1)]
    broken = make_algebra([0, 0, 0], products, check=False)
    w = check_super_jacobi(broken)
    assert w is not None and len(w.indices) == 3


def test_product_is_bilinear_against_left_mult():
    a = jordan_catalog("kacK")
    x = (Q(2), Q(1, 2), Q(-1))
    y = (Q(0), Q(3), Q(1, 3))
    assert a.product(x, y) == a.left_mult_matrix(x).apply(y)


@given(st.lists(rationals, min_size=3, max_size=3),
       st.lists(rationals, min_size=3, max_size=3),
       rationals)
@settings(**SETTINGS)
def test_product_bilinearity_random(x, y, c):
    a = jordan_catalog("j19")
    cx = tuple(c * t for t in x)
    left = a.product(cx, tuple(y))
    right = tuple(c * t for t in a.product(tuple(x), tuple(y)))
    assert left == right, "product must be linear in the first slot"


def test_graded_dims_and_parity_dims():
    lam = lie_catalog("lambda", 2)
    # monomials 1, xi1, xi2, xi1 xi2 have Poisson degrees -2, -1, -1, 0
    assert graded_dims(lam) == {(-2, 0): 1, (-1, 1): 2, (0, 0): 1}
    assert parity_dims(lam) == (2, 2)
    assert parity_dims(lie_catalog("gl", 1, 1)) == (2, 2)


def test_center_of_gl_is_the_identity_matrix():
    gl = lie_catalog("gl", 1, 1)
    z = center(gl)
    assert z.dim == 1
    # basis order is E00, E01, E10, E11, so I2 has coordinates (1,0,0,1)
    assert z.contains((1, 0, 0, 1))


def test_center_of_simple_entries_is_zero():
    assert center(lie_catalog("psl", 2, 2)).dim == 0
    assert center(sl2()).dim == 0


def test_derived_of_sl2_is_everything():
    assert derived(sl2()).dim == 3
    # the one-dimensional abelian algebra has zero derived algebra
    assert derived(make_algebra([0], [])).dim == 0


def test_quotient_sl22_by_identity_is_psl22():
    psl = lie_catalog("psl", 2, 2)
    assert psl.dim == 14
    assert parity_dims(psl) == (6, 8)
    assert check_super_jacobi(psl) is None


def test_quotient_rejects_non_ideal():
    gl = lie_catalog("gl", 1, 1)
    bad = span([(0, 1, 0, 0)], ambient=4)  # E01 alone is not an ideal
    with pytest.raises(ValueError, match="not an ideal"):
        quotient_algebra(gl, bad)


def test_subalgebra_rejects_a_non_closed_span():
    a = sl2()
    with pytest.raises(ValueError, match="not closed"):
        subalgebra(a, span([(1, 0, 0), (0, 0, 1)], ambient=3))  # [e,f]=h escapes


def test_subalgebra_restricts_structure_constants():
    a = sl2()
    b = subalgebra(a, span([(0, 1, 0), (1, 0, 0)], ambient=3))  # borel of sl2
    assert b.dim == 2
    assert check_super_jacobi(b) is None
    assert derived(b).dim == 1


def test_operator_parity_and_supercommutator():
    a = jordan_catalog("kacK")
    le = a.left_mult_matrix((1, 0, 0))   # L_a, even
    lx = a.left_mult_matrix((0, 1, 0))   # L_xi1, odd
    assert operator_parity(a, le) == 0
    assert operator_parity(a, lx) == 1
    A = GradedOperator(lx, 1)
    B = GradedOperator(lx, 1)
    # odd-odd supercommutator is an anticommutator: [A,A] = 2 A^2
    assert supercommutator(A, B).matrix == (lx @ lx).scale(2)
    assert operator_parity(a, le @ lx) == 1


def test_graded_operator_zshift_tracking():
    from supertkk.exact import Matrix
    up = Matrix([[0, 1], [0, 0]])
    down = Matrix([[0, 0], [1, 0]])
    A = GradedOperator(up, 0, zshift=1)
    B = GradedOperator(down, 0, zshift=-1)
    assert supercommutator(A, B).zshift == 0


def test_mixed_basis_vector_proves_subspace_not_graded():
    a = jordan_catalog("kacK")  # parities (0,1,1)
    with pytest.raises(ValueError, match="not graded"):
        subalgebra(a, span([(1, 1, 0)], ambient=3))
