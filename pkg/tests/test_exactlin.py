from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lieprod.exactlin import (
    Eliminator,
    Matrix,
    Subspace,
    format_rational,
    nullspace,
    parse_rational,
    reduce,
    span,
    subspace_relate,
)

F = Fraction

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.one_of(st.just(F(0)), rationals), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


def test_parse_and_format():
    assert parse_rational("-9/5") == F(-9, 5)
    assert parse_rational("6/4") == F(3, 2)
    assert parse_rational(7) == 7
    assert format_rational(F(-18, 10)) == "-9/5"
    assert format_rational(F(0)) == "0"
    for bad in ("1.5", 1.5, "1/0", "x", True, "3/-4"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_fraction_is_canonical():
    x = F(2, 6) + F(1, 6)
    assert (x.numerator, x.denominator) == (1, 2)
    assert F(0, 5) == F(0, 1) and F(0, 5).denominator == 1
    assert F(3, -6).denominator > 0


def test_reduce_examples():
    m, r = reduce(Matrix.identity(3))
    assert m == Matrix.identity(3) and r == 3
    m, r = reduce(Matrix.zeros(2, 4))
    assert m.is_zero() and r == 0
    m, r = reduce(Matrix.from_dense([[2, 4], [1, 2]]))
    assert m.to_dense() == [[1, 2], [0, 0]] and r == 1


def test_nullspace_examples():
    assert nullspace(Matrix.identity(3)).dim == 0
    assert nullspace(Matrix.zeros(2, 3)) == Subspace.full(3)
    ns = nullspace(Matrix.from_dense([[1, 1, 0]]))
    assert ns.dim == 2
    assert ns.contains({0: 1, 1: -1})
    assert ns.contains({2: 1})


def test_relate_examples():
    a = Subspace.spanned_by(3, [[1, 2, 0], [0, 1, 1]])
    rel = subspace_relate(a, a)
    assert rel.sum == a and rel.intersection == a
    assert rel.a_contains_b and rel.b_contains_a

    x = Subspace.spanned_by(2, [[1, 0]])
    y = Subspace.spanned_by(2, [[0, 1]])
    rel = subspace_relate(x, y)
    assert rel.sum == Subspace.full(2) and rel.intersection.is_zero()

    a = Subspace.spanned_by(3, [[1, 1, 0]])
    b = Subspace.spanned_by(3, [[1, 1, 0], [0, 0, 1]])
    rel = subspace_relate(a, b)
    assert not rel.a_contains_b and rel.b_contains_a


def test_subspace_rref_shape():
    s = Subspace.spanned_by(4, [[0, 2, 4, 6], [1, 1, 1, 1], [1, 3, 5, 7]])
    assert s.dim == 2
    piv = s.pivots
    assert list(piv) == sorted(piv)
    for row, p in zip(s.basis, piv):
        assert row[p] == 1
        assert min(row) == p
        for other in s.basis:
            if other is not row:
                assert p not in other


def test_last_pivot_kernel_is_canonical():
    rows = [{0: 1, 1: 1, 3: 2}, {1: 1, 2: -1}]
    k = Eliminator(4, "last").add_all(rows).kernel()
    assert k == span(4, k.basis)
    for v in k.basis:
        for r in rows:
            assert sum(c * v.get(i, 0) for i, c in r.items()) == 0


@given(matrices())
def test_rank_nullity(data):
    m = Matrix.from_dense(data)
    _, r = reduce(m)
    assert r + nullspace(m).dim == m.shape[1]


@given(matrices())
def test_reduce_idempotent(data):
    m = Matrix.from_dense(data)
    once, r = reduce(m)
    twice, r2 = reduce(once)
    assert once == twice and r == r2


@given(matrices())
def test_nullspace_vectors_are_killed(data):
    m = Matrix.from_dense(data)
    for v in nullspace(m).basis:
        assert m.apply(v) == {}


@given(matrices(max_rows=4, max_cols=4), st.lists(rationals, min_size=4, max_size=4))
def test_span_is_canonical(data, coeffs):
    n = len(data[0])
    a = Subspace.spanned_by(n, data)
    # add a redundant combination and reverse the order
    extra = [sum(c * row[j] for c, row in zip(coeffs, data)) for j in range(n)]
    b = Subspace.spanned_by(n, list(reversed(data)) + [extra])
    assert a == b
    assert a.basis == b.basis


@settings(max_examples=50)
@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
def test_intersection_and_sum_dims(da, db):
    n = min(len(da[0]), len(db[0]))
    a = Subspace.spanned_by(n, [r[:n] for r in da])
    b = Subspace.spanned_by(n, [r[:n] for r in db])
    rel = subspace_relate(a, b)
    assert rel.sum.dim + rel.intersection.dim == a.dim + b.dim
    assert rel.intersection <= a and rel.intersection <= b
    assert rel.a_contains_b == (b <= a)


def _dense(r, c):
    return st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)


@given(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.tuples(_dense(s[0], s[1]), _dense(s[1], s[2]))))
def test_matmul_matches_dense(pair):
    da, db = pair
    a, b = Matrix.from_dense(da), Matrix.from_dense(db)
    dense = [[sum(a[i, k] * b[k, j] for k in range(a.shape[1])) for j in range(b.shape[1])]
             for i in range(a.shape[0])]
    assert (a @ b).to_dense() == dense
    assert (a @ b).transpose() == b.transpose() @ a.transpose()


def test_random_nullspace_check():
    import random

    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 7)
        m = Matrix.from_dense([[F(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.6 else 0
                                for _ in range(c)] for _ in range(r)])
        ns = nullspace(m)
        assert all(not m.apply(v) for v in ns.basis)
        assert reduce(m)[1] + ns.dim == c


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_agrees_with_sympy(data):
    sympy = pytest.importorskip("sympy")
    ours, r = reduce(Matrix.from_dense(data))
    theirs, pivots = sympy.Matrix(data).rref()
    assert r == len(pivots)
    assert [[F(int(x.p), int(x.q)) for x in theirs.row(i)] for i in range(theirs.rows)] == ours.to_dense()
