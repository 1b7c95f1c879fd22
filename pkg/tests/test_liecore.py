from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lieprod import catalog
from lieprod.exactlin import Subspace, span
from lieprod.liecore import (
    LieAlgebra,
    NotNilpotentError,
    adapted_basis,
    bracket,
    change_basis,
    invariants,
    is_adapted,
    lower_central_series,
    transporter,
    validate,
)
from lieprod.testing import random_nilpotent

F = Fraction


def unit(n, *idx):
    v = [F(0)] * n
    for i in idx:
        v[i - 1] = F(1)
    return v


def test_table_shape_errors():
    with pytest.raises(ValueError):
        LieAlgebra(3, {(2, 2): {1: 1}})
    with pytest.raises(ValueError):
        LieAlgebra(3, {(2, 1): {3: 1}})
    with pytest.raises(IndexError):
        LieAlgebra(3, {(1, 4): {3: 1}})


def test_validate_examples():
    assert validate(catalog.abelian(5)) == []
    assert validate(catalog.dixmier_lister_8()) == []
    assert validate(catalog.luks_16()) == []


def test_flipped_dl_constant_fails_jacobi():
    dl = catalog.dixmier_lister_8()
    table = dict(dl.brackets)
    table[(3, 5)] = {7: 1}
    bad = validate(LieAlgebra(8, table))
    # [X2,[X3,X1]] + [X3,[X1,X2]] = X7 + X7; (1,3,5) and (3,4,5) only see central terms
    assert [v.triple for v in bad] == [(1, 2, 3)]
    assert bad[0].value in ({7: 2}, {7: -2})


def test_luks_constant_is_invisible_to_jacobi():
    # [X3,X4] lands in the center and nothing brackets into X3 or X4
    lk = catalog.luks_16()
    assert lk.brackets[(3, 4)] == {13: -1, 15: F(-9, 5)}
    for c in (F(9, 5), F(0), F(7, 3)):
        table = dict(lk.brackets)
        table[(3, 4)] = {13: -1, 15: c}
        assert validate(LieAlgebra(16, table)) == []


def test_bracket_examples():
    dl = catalog.dixmier_lister_8()
    assert bracket(dl, unit(8, 1), unit(8, 2)) == unit(8, 5)
    v = [F(1, 2), 3, 0, -1, 0, 2, 0, 0]
    assert bracket(dl, v, v) == [0] * 8
    lk = catalog.luks_16()
    expected = [F(0)] * 16
    expected[12], expected[14] = F(-1), F(-9, 5)
    assert bracket(lk, unit(16, 3), unit(16, 4)) == expected
    assert bracket(lk, unit(16, 4), unit(16, 3)) == [-x for x in expected]


def test_heisenberg_invariants():
    inv = invariants(catalog.heisenberg_3())
    assert inv.center == Subspace.spanned_by(3, [unit(3, 3)])
    assert inv.series_dims == [3, 1, 0]
    assert inv.nilindex == 2
    assert inv.generator_indices == [1, 2]
    assert inv.transporter == Subspace.full(3)


def test_dixmier_lister_invariants():
    inv = invariants(catalog.dixmier_lister_8())
    assert inv.center == Subspace.spanned_by(8, [unit(8, 7), unit(8, 8)])
    assert inv.series_dims == [8, 4, 2, 0]
    assert inv.nilindex == 3
    assert inv.generator_indices == [1, 2, 3, 4]
    assert inv.transporter == Subspace.spanned_by(8, [unit(8, i) for i in (5, 6, 7, 8)])
    assert inv.transporter == inv.derived


def test_luks_invariants():
    inv = invariants(catalog.luks_16())
    assert inv.center == Subspace.spanned_by(16, [unit(16, i) for i in range(9, 17)])
    assert inv.series_dims == [16, 10, 2, 0]
    assert inv.generator_indices == [1, 2, 3, 4, 5, 6]
    assert inv.transporter.contains({4: 1})
    assert not inv.derived.contains({4: 1})


def test_non_nilpotent_rejected():
    # sl2: [e,f] = h, [h,e] = 2e, [h,f] = -2f with basis (e, f, h)
    sl2 = LieAlgebra(3, {(1, 2): {3: 1}, (1, 3): {1: -2}, (2, 3): {2: 2}})
    assert validate(sl2) == []
    with pytest.raises(NotNilpotentError):
        lower_central_series(sl2)
    with pytest.raises(NotNilpotentError):
        invariants(sl2)


def _algebras():
    yield catalog.heisenberg_3()
    yield catalog.dixmier_lister_8()
    yield catalog.luks_16()
    yield catalog.filiform(6)
    for seed in range(15):
        yield random_nilpotent(seed)


@pytest.mark.parametrize("g", list(_algebras()), ids=lambda g: f"dim{g.dim}")
def test_invariant_properties(g):
    inv = invariants(g)
    dims = inv.series_dims
    assert all(a > b for a, b in zip(dims, dims[1:])) and dims[-1] == 0
    # last nonzero term of the series is central
    assert inv.center.contains_subspace(inv.lower_central[-2])
    assert inv.transporter.contains_subspace(inv.center)
    assert len(inv.generator_indices) == g.dim - inv.derived.dim >= 2
    # generators and the derived algebra together span g
    gens = [{i - 1: 1} for i in inv.generator_indices]
    assert (span(g.dim, gens) + inv.derived) == Subspace.full(g.dim)
    # iterated brackets of generators rebuild C^1
    level = gens
    reached = []
    for _ in range(inv.nilindex):
        level = [g.bracket_sparse(x, y) for x in gens for y in level]
        level = [v for v in level if v]
        reached += level
    assert span(g.dim, reached) == inv.derived


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_algebras_are_valid_nilpotent(seed):
    g = random_nilpotent(seed)
    assert validate(g) == []
    inv = invariants(g)
    z = inv.center
    for v in z.basis:
        for i in range(g.dim):
            assert not g.bracket_sparse(v, {i: 1})
    for v in transporter(g).basis:
        for i in range(g.dim):
            assert z.contains(g.bracket_sparse(v, {i: 1}))


def test_adapted_basis_change():
    # X3 = [X1,X2] + X4 style basis: generators X1, X2, X4 but C^1 spanned by X3 + X4
    g = LieAlgebra(4, {(1, 2): {3: 1, 4: 1}})
    inv = invariants(g)
    assert not is_adapted(g, inv)
    h, basis = adapted_basis(g, inv)
    assert basis is not None
    assert validate(h) == []
    assert is_adapted(h)
    assert invariants(h).series_dims == inv.series_dims
    dl = catalog.dixmier_lister_8()
    assert adapted_basis(dl) == (dl, None)


def test_change_basis_identity_and_scaling():
    dl = catalog.dixmier_lister_8()
    assert change_basis(dl, [{i: 1} for i in range(8)]) == dl
    doubled = change_basis(catalog.heisenberg_3(), [{0: 2}, {1: 1}, {2: 2}])
    assert doubled.brackets == {(1, 2): {3: 1}}
