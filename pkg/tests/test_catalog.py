import json

import pytest

from lieprod import catalog
from lieprod.genprod import product_by_generators
from lieprod.liecore import invariants, validate


def test_get_fixed_entries():
    e = catalog.get("dixmier_lister_8")
    assert e.algebra.dim == 8 and validate(e.algebra) == []
    e = catalog.get("luks_16")
    assert e.algebra.dim == 16 and validate(e.algebra) == []
    assert catalog.get("heisenberg_3").algebra.dim == 3


@pytest.mark.parametrize("name", ["abelian_n(4)", "abelian_4"])
def test_get_abelian(name):
    g = catalog.get(name).algebra
    assert g.dim == 4 and g.brackets == {}


def test_get_filiform():
    g = catalog.get("filiform_L(5)").algebra
    assert g == catalog.get("filiform_5").algebra == catalog.filiform(5)
    assert g.brackets == {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}}


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog.get("nope")


@pytest.mark.parametrize("name", ["dixmier_lister_8", "luks_16", "heisenberg_3"])
def test_frozen_summaries(name):
    e = catalog.get(name)
    inv = invariants(e.algebra)
    exp = e.expected
    assert inv.series_dims == exp["series_dims"]
    assert inv.center.dim == exp["center_dim"]
    assert inv.nilindex == exp["nilindex"]
    assert inv.generator_indices == exp["generators"]
    assert inv.transporter.dim == exp["transporter_dim"]


def test_every_entry_has_two_generators():
    for name in ("dixmier_lister_8", "luks_16", "heisenberg_3", "filiform_7"):
        g = catalog.get(name).algebra
        assert g.dim - invariants(g).derived.dim >= 2


def test_save_load_round_trip(tmp_path):
    lk = catalog.luks_16()
    path = tmp_path / "luks.json"
    catalog.save(lk, path)
    assert '"-9/5"' in path.read_text()
    assert catalog.load(path) == lk
    assert catalog.resolve(str(path)) == lk


def test_saved_files_are_canonical(tmp_path):
    # a shuffled file loads to the same algebra and re-saves identically
    data = catalog.to_json(catalog.dixmier_lister_8())
    data["brackets"].reverse()
    src = tmp_path / "shuffled.json"
    src.write_text(json.dumps(data))
    out = tmp_path / "out.json"
    catalog.save(catalog.load(src), out)
    assert out.read_text() == catalog.dumps(catalog.to_json(catalog.dixmier_lister_8()))


def test_empty_brackets_is_abelian():
    g = catalog.from_json({"dim": 5, "brackets": []})
    assert g.dim == 5 and g.is_abelian()


@pytest.mark.parametrize(
    "record, fragment",
    [
        ({"i": 2, "j": 2, "v": {"1": "1"}}, "diagonal"),
        ({"i": 3, "j": 1, "v": {"2": "1"}}, "i < j"),
        ({"i": 1, "j": 9, "v": {"2": "1"}}, "out of range"),
        ({"i": 1, "j": 2, "v": {"7": "1"}}, "target index 7"),
        ({"i": 1, "j": 2, "v": {"3": 0.5}}, "rational string"),
        ({"i": 1, "j": 2, "v": {"3": "1/0"}}, "zero denominator"),
        ({"i": 1, "j": 2, "w": {}}, "unknown fields"),
    ],
)
def test_malformed_records(record, fragment):
    with pytest.raises(catalog.FormatError) as err:
        catalog.from_json({"dim": 3, "brackets": [{"i": 1, "j": 3, "v": {}}, record]})
    assert fragment in str(err.value)
    assert "brackets[1]" in str(err.value)


def test_malformed_top_level(tmp_path):
    with pytest.raises(catalog.FormatError):
        catalog.from_json([])
    with pytest.raises(catalog.FormatError):
        catalog.from_json({"dim": -1})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(catalog.FormatError) as err:
        catalog.load(bad)
    assert "bad.json" in str(err.value)


def test_exported_data_matches_catalog():
    for name in ("dixmier_lister_8", "luks_16", "heisenberg_3"):
        path = catalog.DATA_DIR / f"{name}.json"
        assert catalog.load(path) == catalog.get(name).algebra


def test_product_file_round_trip(tmp_path):
    p, dec = product_by_generators(catalog.heisenberg_3(), catalog.dixmier_lister_8())
    path = tmp_path / "prod.json"
    catalog.save_product(p, dec, path)
    q, dec2 = catalog.load_product(path)
    assert q == p and dec2 == dec
    plain = tmp_path / "plain.json"
    catalog.save(p, plain)
    with pytest.raises(catalog.FormatError):
        catalog.load_product(plain)
