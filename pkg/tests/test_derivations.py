from fractions import Fraction

import pytest

from lieprod import catalog
from lieprod.derivations import (
    cnla_check,
    commutator,
    derivation_lcs,
    derivation_space,
    is_derivation,
    nilpotency_exponent,
    orbit_sequence,
    preserves,
)
from lieprod.exactlin import Matrix
from lieprod.liecore import LieAlgebra, NotNilpotentError, invariants
from lieprod.testing import random_nilpotent

F = Fraction


def dense_der_dim(g):
    """Brute-force dim Der(g): all n^2 unknowns, every Leibniz equation, sympy rank."""
    sympy = pytest.importorskip("sympy")
    n = g.dim
    d = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"d_{i}_{j}"))
    c = [[[g.bracket_basis(i, j).get(k, 0) for k in range(n)] for j in range(n)] for i in range(n)]

    def br(u, v):
        return [sum(u[i] * v[j] * c[i][j][k] for i in range(n) for j in range(n) if c[i][j][k])
                for k in range(n)]

    eqs = []
    e = [[1 if a == b else 0 for a in range(n)] for b in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = d * sympy.Matrix(br(e[i], e[j]))
            rhs = sympy.Matrix(br(list(d[:, i]), e[j])) + sympy.Matrix(br(e[i], list(d[:, j])))
            eqs += list(lhs - rhs)
    syms = list(d)
    a, _ = sympy.linear_eq_to_matrix([x for x in eqs if x != 0] or [sympy.Integer(0)], syms)
    return n * n - a.rank()


SMALL = [catalog.heisenberg_3(), catalog.filiform(4), catalog.filiform(5), catalog.dixmier_lister_8()]
SMALL += [random_nilpotent(s) for s in (1, 2, 4, 7)]


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"dim{g.dim}")
def test_dimension_matches_dense_solve(g):
    assert derivation_space(g).dim == dense_der_dim(g)


def test_examples():
    assert derivation_space(catalog.abelian(3)).dim == 9
    assert derivation_space(catalog.heisenberg_3()).dim == 6
    dl = catalog.dixmier_lister_8()
    der = derivation_space(dl)
    derived = invariants(dl).derived
    for d in der.basis:
        assert all(derived.contains(col) for col in d.columns())


@pytest.mark.parametrize("g", SMALL + [catalog.luks_16()], ids=lambda g: f"dim{g.dim}")
def test_basis_properties(g):
    der = derivation_space(g)
    inv = invariants(g)
    for d in der.basis:
        assert is_derivation(g, d)
        assert preserves(d, inv.center)
        assert preserves(d, inv.derived)
    # closed under commutator
    for a in der.basis[:8]:
        for b in der.basis[:8]:
            assert der.contains(commutator(a, b))


def test_non_derivation_detected():
    h3 = catalog.heisenberg_3()
    d = Matrix.from_dense([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert not is_derivation(h3, d)
    assert not derivation_space(h3).contains(d)
    scaling = Matrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert is_derivation(h3, scaling)


def test_heisenberg_not_cnla():
    rep = cnla_check(catalog.heisenberg_3())
    assert not rep.is_cnla
    assert rep.orbit_length is None
    assert rep.orbit_dims[-1] > 0
    # the scaling derivation is never nilpotent
    assert nilpotency_exponent(Matrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 2]]), cap=10) is None


def test_dixmier_lister_cnla():
    rep = cnla_check(catalog.dixmier_lister_8())
    assert rep.is_cnla
    assert rep.der_dim == 12
    assert rep.orbit_dims == [4, 2, 0]
    assert rep.der_lcs_dims == [12, 2, 0]
    assert rep.orbit_length == 3
    assert rep.max_derivation_nilpotency_exponent <= rep.orbit_length


def test_luks_cnla():
    rep = cnla_check(catalog.luks_16())
    assert rep.is_cnla
    assert rep.der_dim == 69
    assert rep.der_lcs_dims[-1] == 0


def test_orbit_sequence_is_decreasing():
    for g in (catalog.dixmier_lister_8(), catalog.luks_16(), catalog.filiform(6)):
        terms, _ = orbit_sequence(derivation_space(g))
        for a, b in zip(terms, terms[1:]):
            assert b <= a


@pytest.mark.parametrize("g", SMALL[1:], ids=lambda g: f"dim{g.dim}")
def test_routes_agree(g):
    der = derivation_space(g)
    _, reached_a = orbit_sequence(der)
    dims, reached_b = derivation_lcs(der)
    assert reached_a == reached_b
    assert cnla_check(g, der).is_cnla == reached_a


def test_rejects_abelian_and_non_nilpotent():
    with pytest.raises(ValueError):
        cnla_check(catalog.abelian(4))
    sl2 = LieAlgebra(3, {(1, 2): {3: 1}, (1, 3): {1: -2}, (2, 3): {2: 2}})
    with pytest.raises(NotNilpotentError):
        cnla_check(sl2)


def test_nilpotency_exponent():
    shift = Matrix.from_dense([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert nilpotency_exponent(shift) == 3
    assert nilpotency_exponent(Matrix.zeros(3, 3)) == 1
    assert nilpotency_exponent(shift, cap=2) is None


def test_combination_round_trip():
    der = derivation_space(catalog.dixmier_lister_8())
    coeffs = [F(k, 3) for k in range(der.dim)]
    d = der.combination(coeffs)
    assert is_derivation(catalog.dixmier_lister_8(), d)
    assert der.contains(d)
