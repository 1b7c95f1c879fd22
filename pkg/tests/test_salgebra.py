from dataclasses import replace
from fractions import Fraction

import pytest

from lieprod import catalog
from lieprod.derivations import derivation_space
from lieprod.genprod import product_by_generators
from lieprod.liecore import invariants
from lieprod.salgebra import (
    DecompositionError,
    ProductContext,
    GeneratorWitness,
    factor_algebra,
    prop3_check,
    prop4_generator_check,
    recheck_witness,
    relations_check,
    s_algebra_certificate,
)

F = Fraction


@pytest.fixture(scope="module")
def dldl():
    p, dec = product_by_generators(catalog.dixmier_lister_8(), catalog.dixmier_lister_8())
    return p, dec, derivation_space(p)


@pytest.fixture(scope="module")
def hh():
    p, dec = product_by_generators(catalog.heisenberg_3(), catalog.heisenberg_3())
    return p, dec, derivation_space(p)


def test_dixmier_lister_certificate():
    cert = s_algebra_certificate(catalog.dixmier_lister_8())
    assert cert.certified and cert.route == "transporter_in_derived"
    assert cert.transporter_in_derived and cert.transporter_witnesses == []


def test_luks_certificate():
    lk = catalog.luks_16()
    cert = s_algebra_certificate(lk)
    assert cert.route == "prop4" and cert.certified
    assert not cert.transporter_in_derived
    assert 5 in cert.transporter_witnesses
    assert sorted(cert.per_generator) == [1, 2, 3, 4, 5, 6]
    assert cert.prop4_complete
    w1 = cert.per_generator[1]
    assert (w1.condition, w1.partner, w1.y, w1.y_prime, w1.a) == (2, 6, 3, 4, -1)
    for x, w in cert.per_generator.items():
        assert recheck_witness(lk, x, w)
    # the alternative witness X4 for X5: [X4, X5] = 2 X16 lies in C^2
    assert recheck_witness(lk, 5, GeneratorWitness(1, 4, 2))
    assert prop4_generator_check(lk, 5) == cert.per_generator[5]


def test_bad_witnesses_rejected():
    lk = catalog.luks_16()
    # [X1, X2] = X7 is not in C^2
    assert not recheck_witness(lk, 1, GeneratorWitness(1, 2, 2))
    assert not recheck_witness(lk, 1, GeneratorWitness(2, 6, None, 3, 4, F(1)))
    assert not recheck_witness(lk, 1, GeneratorWitness(None))


def test_heisenberg_is_unknown():
    cert = s_algebra_certificate(catalog.heisenberg_3())
    assert cert.verdict == "unknown" and cert.route == "none"
    assert not cert.certified


def test_filiform_certificate_is_reported():
    l4 = catalog.filiform(4)
    cert = s_algebra_certificate(l4)
    inv = invariants(l4)
    assert cert.transporter_in_derived == inv.derived.contains_subspace(inv.transporter)
    assert set(cert.per_generator) == set(inv.generator_indices)
    assert cert.to_json()["verdict"] in ("certified", "unknown")


def test_abelian_rejected():
    with pytest.raises(ValueError):
        s_algebra_certificate(catalog.abelian(3))


def test_factor_algebra_round_trip(dldl):
    p, dec, _ = dldl
    assert factor_algebra(p, dec, 1) == catalog.dixmier_lister_8()
    assert factor_algebra(p, dec, 2) == catalog.dixmier_lister_8()


def test_prop3_dixmier_lister(dldl):
    p, dec, der = dldl
    rep = prop3_check(p, dec, der)
    assert rep.passed and rep.failures() == []
    assert len({k for k, _, _ in rep.results}) == der.dim


def test_prop3_heisenberg(hh):
    p, dec, der = hh
    assert prop3_check(p, dec, der).passed


def test_corrupted_decomposition(hh):
    p, dec, _ = hh
    swapped = replace(dec, g2_range=dec.g3_range, g3_range=dec.g2_range)
    with pytest.raises(DecompositionError):
        prop3_check(p, swapped)
    wrong_gens = replace(dec, g1_generators=(1, 3))
    with pytest.raises(DecompositionError):
        ProductContext(p, wrong_gens)


def test_relations_dixmier_lister(dldl):
    p, dec, der = dldl
    cert = s_algebra_certificate(catalog.dixmier_lister_8())
    rep = relations_check(p, dec, (cert, cert), der)
    assert rep.passed
    assert not rep.guard_triggered
    assert rep.power_bound_exponent == 3 + 2 * 3 + 2
    assert rep.observations["every D maps p into C1 p"]
    assert rep.observations["D33 = 0 for every D"]
    labels = {label for label, _, _ in rep.results}
    assert "zero" in labels and "random[0]" in labels


def test_relations_refuse_uncertified(hh):
    p, dec, der = hh
    cert = s_algebra_certificate(catalog.heisenberg_3())
    with pytest.raises(ValueError):
        relations_check(p, dec, (cert, cert), der)


def test_s_property_on_dixmier_lister_product(dldl):
    # D21(g1) in C^1 g2 and D12(g2) in C^1 g1 for every derivation
    p, dec, der = dldl
    ctx = ProductContext(p, dec)
    for d in der.basis:
        b = ctx.split(d)
        assert all(ctx.C1[2].contains(b[(2, 1)].apply(v)) for v in ctx.full[1].basis)
        assert all(ctx.C1[1].contains(b[(1, 2)].apply(v)) for v in ctx.full[2].basis)


def test_s_property_fails_on_heisenberg_product(hh):
    # h3 carries no certificate, and indeed some derivation of h3 x h3 moves g1 outside C^1 g2
    p, dec, der = hh
    ctx = ProductContext(p, dec)
    bad = [d for d in der.basis
           if not all(ctx.C1[2].contains(ctx.split(d)[(2, 1)].apply(v)) for v in ctx.full[1].basis)]
    assert bad
