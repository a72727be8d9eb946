"""Exact linear algebra: kernels, solving, subspace lattice, canonical forms."""

import random

from hypothesis import given, settings, strategies as st

from supertkk.exact import (
    Q, Matrix, SpanSolver, Subspace, grassmann_ok, kernel, kernel_sparse,
    rref, solve, span,
)

SETTINGS = dict(max_examples=60, deadline=None)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12).map(Q)


def vecs(n):
    return st.lists(rationals, min_size=n, max_size=n).map(tuple)


def test_scalar_contract():
    assert Q(1, 2) + Q(1, 2) == Q(1)
    assert Q("3/4") * Q(4) == Q(3)
    assert Q("-2/6") == Q(-1, 3)
    assert str(Q(-4, 6)) == "-2/3"  # reduced, denominator positive
    assert str(Q(5)) == "5"


def test_kernel_identity_and_zero():
    assert kernel(Matrix.identity(2)).dim == 0
    full = kernel(Matrix.zero(3, 3))
    assert full.dim == 3 and full == Subspace.full(3)


def test_kernel_rank_one():
    # [[1,2],[2,4]] has kernel spanned by (2,-1); canonical form (1,-1/2)
    ker = kernel(Matrix([[1, 2], [2, 4]]))
    assert ker.dim == 1
    assert ker.basis == ((Q(1), Q(-1, 2)),)
    assert ker.contains((2, -1))


def test_solve_basic():
    assert solve(Matrix.identity(3), (1, 2, 3)) == (Q(1), Q(2), Q(3))
    x = solve(Matrix([[1, 1]]), (1,))
    assert x is not None and x[0] + x[1] == Q(1)
    assert solve(Matrix([[1], [2]]), (1, 1)) is None  # rank oracle: inconsistent


def test_span_examples():
    assert span([(1, 0), (1, 0)]).dim == 1
    x_axis = span([(1, 0)])
    y_axis = span([(0, 1)])
    assert x_axis.sum(y_axis).dim == 2
    a = span([(1, 1, 0), (0, 0, 1)])
    b = span([(1, 1, 1)])
    assert a.intersect(b) == b


def test_quotient_dim():
    a = span([(1, 0, 0), (0, 1, 0)])
    b = span([(1, 1, 0)])
    assert a.quotient_dim(b) == 1
    try:
        span([(0, 0, 1)]).quotient_dim(b)
    except ValueError:
        pass
    else:
        raise AssertionError("quotient_dim must reject non-contained subspace")


@given(st.lists(vecs(4), min_size=0, max_size=5), st.data())
@settings(**SETTINGS)
def test_echelon_canonicity(vectors, data):
    """Shuffling and rescaling a generating set gives the identical Subspace."""
    s1 = Subspace(4, vectors)
    shuffled = list(vectors)
    random.Random(data.draw(st.integers(0, 10 ** 6))).shuffle(shuffled)
    scales = [data.draw(st.sampled_from([1, 2, -1, Q(1, 3), Q(-5, 2)]))
              for _ in shuffled]
    s2 = Subspace(4, [tuple(c * x for x in v) for c, v in zip(scales, shuffled)])
    assert s1 == s2 and hash(s1) == hash(s2)


@given(st.lists(vecs(5), max_size=4), st.lists(vecs(5), max_size=4))
@settings(**SETTINGS)
def test_grassmann_identity(us, ws):
    assert grassmann_ok(Subspace(5, us), Subspace(5, ws))


@given(st.lists(vecs(3), min_size=3, max_size=3), vecs(3))
@settings(**SETTINGS)
def test_solve_verifies(rows, x):
    m = Matrix(rows)
    b = m.apply(x)
    got = solve(m, b)
    assert got is not None and m.apply(got) == b


@given(st.lists(vecs(4), min_size=1, max_size=6))
@settings(**SETTINGS)
def test_kernel_orthogonal_to_rows(rows):
    m = Matrix(rows)
    ker = kernel(m)
    assert ker.dim + rref(m)[0].rows == 4
    for v in ker.basis:
        assert all(not x for x in m.apply(v))


def test_subspace_contains_and_coordinates():
    s = span([(1, 0, 2), (0, 1, -1)])
    assert s.contains((2, 3, 1))
    coords = s.coordinates((2, 3, 1))
    assert coords == (Q(2), Q(3))
    assert not s.contains((0, 0, 1))
    assert s.coordinates((0, 0, 1)) is None


def test_span_solver_expresses_members():
    ss = SpanSolver(3)
    assert ss.add((1, 1, 0))
    assert ss.add((0, 1, 1))
    assert not ss.add((1, 2, 1))  # dependent
    combo = ss.express((2, 3, 1))
    assert combo is not None
    target = [Q(0)] * 3
    for c, gen in zip(combo, [(1, 1, 0), (0, 1, 1), (1, 2, 1)]):
        for i, g in enumerate(gen):
            target[i] += c * Q(g)
    assert tuple(target) == (Q(2), Q(3), Q(1))
    assert ss.express((1, 0, 1)) is None


def _random_sparse_system(rng, nrows, ncols, density=0.2):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                row[c] = Q(rng.randint(-9, 9), rng.randint(1, 4))
        rows.append(row)
    return rows


def test_modular_kernel_agrees_with_exact():
    """The certified modular path and plain exact elimination give the same
    canonical kernel basis on random sparse systems."""
    rng = random.Random(7)
    for trial in range(8):
        ncols = rng.randint(60, 120)
        rows = _random_sparse_system(rng, rng.randint(30, 90), ncols)
        fast = kernel_sparse(rows, ncols, modular=True)
        slow = kernel_sparse(rows, ncols, modular=False)
        assert fast == slow, f"trial {trial}: modular/exact kernel mismatch"


def test_modular_kernel_with_large_coefficients():
    # force entries past the single-prime reconstruction bound
    big = 10 ** 12
    rows = [{0: Q(1), 1: Q(big)}, {2: Q(1), 3: Q(1, big)}]
    ker = kernel_sparse(rows, 4, modular=True)
    assert ker == kernel_sparse(rows, 4, modular=False)
    assert len(ker) == 2
    for v in ker:
        assert v[0] + big * v[1] == 0 and v[2] + Q(1, big) * v[3] == 0


def test_matrix_flatten_roundtrip():
    m = Matrix([[1, 2, 3], [4, 5, 6]])
    assert Matrix.unflatten(2, 3, m.flatten()) == m


def test_matrix_algebra():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert (a @ b).data == Matrix([[2, 1], [4, 3]]).data
    assert (a - a).is_zero()
    assert (-a + a).is_zero()
    assert a.scale(Q(1, 2))[0, 1] == Q(1)
    assert a.transpose()[0, 1] == Q(3)
