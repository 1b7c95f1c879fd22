"""
Built-in algebras and the JSON structure-constant format.

File format::

    {"dim": 8, "labels": ["X1", ...], "brackets": [{"i": 1, "j": 2, "v": {"5": "1"}}, ...]}

Coefficients are rational strings ("-9/5"). Pairs must satisfy i < j.
Product files add a "decomposition" block (see genprod.ProductDecomposition).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactlin import format_rational, parse_rational
from .liecore import LieAlgebra

__all__ = [
    "CatalogEntry",
    "FormatError",
    "get",
    "names",
    "to_json",
    "from_json",
    "load",
    "save",
    "dumps",
    "dixmier_lister_8",
    "luks_16",
    "heisenberg_3",
    "abelian",
    "filiform",
    "DATA_DIR",
]

DATA_DIR = Path(__file__).parent / "data"


class FormatError(ValueError):
    """Malformed structure-constant file or record."""


def _law(dim, pairs, name_labels=None) -> LieAlgebra:
    brackets: dict = {}
    for i, j, vec in pairs:
        if i > j:
            i, j = j, i
            vec = {k: -c for k, c in vec.items()}
        brackets[(i, j)] = vec
    return LieAlgebra(dim, brackets, name_labels)


def dixmier_lister_8() -> LieAlgebra:
    return _law(8, [
        (1, 2, {5: 1}), (1, 3, {6: 1}), (1, 4, {7: 1}), (1, 5, {8: -1}),
        (2, 3, {8: 1}), (2, 4, {6: 1}), (2, 6, {7: -1}),
        (3, 4, {5: -1}), (3, 5, {7: -1}), (4, 6, {8: -1}),
    ])


def luks_16() -> LieAlgebra:
    pairs = [(1, i, {5 + i: 1}) for i in (2, 3, 4, 5)]
    pairs += [(1, 6, {13: 1})]
    pairs += [(1, i, {8 + i: 1}) for i in (7, 8)]
    pairs += [(2, i, {i + 8: 1}) for i in (3, 4, 6)]
    pairs += [(2, 5, {15: 1}), (2, 7, {16: -1})]
    pairs += [
        (3, 4, {13: -1, 15: Fraction(-9, 5)}),
        (3, 5, {14: -1}),
        (3, 6, {16: -1}),
        (4, 5, {16: 2}),
    ]
    return _law(16, pairs)


def heisenberg_3() -> LieAlgebra:
    return _law(3, [(1, 2, {3: 1})])


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError(f"abelian algebra needs n >= 1, got {n}")
    return LieAlgebra(n)


def filiform(n: int) -> LieAlgebra:
    """Model filiform L_n: [X1, Xi] = X(i+1) for 2 <= i <= n-1."""
    if n < 3:
        raise ValueError(f"filiform L(n) needs n >= 3, got {n}")
    return _law(n, [(1, i, {i + 1: 1}) for i in range(2, n)])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    provenance: str
    expected: dict = field(default_factory=dict)  # frozen invariant summary


# Generated once with `python -m lieprod info <name> --format json` and frozen.
_EXPECTED = {
    "dixmier_lister_8": {"series_dims": [8, 4, 2, 0], "center_dim": 2, "nilindex": 3,
                         "generators": [1, 2, 3, 4], "transporter_dim": 4},
    "luks_16": {"series_dims": [16, 10, 2, 0], "center_dim": 8, "nilindex": 3,
                "generators": [1, 2, 3, 4, 5, 6], "transporter_dim": 13},
    "heisenberg_3": {"series_dims": [3, 1, 0], "center_dim": 1, "nilindex": 2,
                     "generators": [1, 2], "transporter_dim": 3},
}

_FIXED = {
    "dixmier_lister_8": (dixmier_lister_8, "Dixmier and Lister (1957), 8-dimensional CNLA"),
    "luks_16": (luks_16, "Luks (1976), 16-dimensional CNLA"),
    "heisenberg_3": (heisenberg_3, "Heisenberg algebra h3"),
}

_PARAM = re.compile(r"^(abelian|filiform)(?:_n|_L)?(?:\((\d+)\)|_(\d+))$")


def names() -> list[str]:
    return sorted(_FIXED) + ["abelian_n(n)", "filiform_L(n)"]


def get(name: str) -> CatalogEntry:
    """Look up a catalog algebra.

    Parametrised families accept ``abelian_n(4)``, ``abelian_4``,
    ``filiform_L(5)`` or ``filiform_5``.
    """
    if name in _FIXED:
        fn, prov = _FIXED[name]
        return CatalogEntry(name, fn(), prov, dict(_EXPECTED.get(name, {})))
    m = _PARAM.match(name)
    if not m:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(names())}")
    family, n = m.group(1), int(m.group(2) or m.group(3))
    if family == "abelian":
        return CatalogEntry(f"abelian_n({n})", abelian(n), f"abelian algebra of dimension {n}")
    return CatalogEntry(f"filiform_L({n})", filiform(n), f"model filiform algebra L_{n}")


# -- serialization --------------------------------------------------------

_ALGEBRA_KEYS = {"dim", "labels", "brackets"}


def to_json(g: LieAlgebra) -> dict:
    out = {"dim": g.dim}
    if g.labels != tuple(f"X{i}" for i in range(1, g.dim + 1)):
        out["labels"] = list(g.labels)
    out["brackets"] = [
        {"i": i, "j": j, "v": {str(k): format_rational(c) for k, c in sorted(vec.items())}}
        for (i, j), vec in sorted(g.brackets.items())
    ]
    return out


def from_json(data, allow: set | frozenset = frozenset()) -> LieAlgebra:
    """Parse the structure-constant format; ``allow`` lists extra top-level keys."""
    if not isinstance(data, dict):
        raise FormatError("top-level value must be an object")
    unknown = set(data) - _ALGEBRA_KEYS - set(allow)
    if unknown:
        raise FormatError(f"unknown fields: {sorted(unknown)}")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FormatError(f"'dim' must be a non-negative integer, got {dim!r}")
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
            raise FormatError(f"'labels' must be a list of {dim} strings")
    records = data.get("brackets", [])
    if not isinstance(records, list):
        raise FormatError("'brackets' must be a list")
    brackets: dict = {}
    for n, rec in enumerate(records):
        where = f"brackets[{n}]"
        if not isinstance(rec, dict):
            raise FormatError(f"{where}: record must be an object")
        extra = set(rec) - {"i", "j", "v"}
        if extra:
            raise FormatError(f"{where}: unknown fields {sorted(extra)}")
        i, j = rec.get("i"), rec.get("j")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise FormatError(f"{where}: 'i' and 'j' must be integers")
        if i == j:
            raise FormatError(f"{where}: diagonal bracket ({i},{j}) is zero by antisymmetry")
        if i > j:
            raise FormatError(f"{where}: pair ({i},{j}) must have i < j")
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise FormatError(f"{where}: pair ({i},{j}) out of range for dim {dim}")
        if (i, j) in brackets:
            raise FormatError(f"{where}: duplicate pair ({i},{j})")
        vec = rec.get("v", {})
        if not isinstance(vec, dict):
            raise FormatError(f"{where}: 'v' must be an object")
        out = {}
        for key, val in vec.items():
            try:
                k = int(key)
            except ValueError:
                raise FormatError(f"{where}: target index {key!r} is not an integer") from None
            if not 1 <= k <= dim:
                raise FormatError(f"{where}: target index {k} out of range for dim {dim}")
            if not isinstance(val, (str, int)) or isinstance(val, bool):
                raise FormatError(f"{where}: coefficient {val!r} must be a rational string")
            try:
                out[k] = parse_rational(val)
            except ValueError as exc:
                raise FormatError(f"{where}: {exc}") from None
        brackets[(i, j)] = out
    return LieAlgebra(dim, brackets, labels)


def dumps(data: dict) -> str:
    return json.dumps(data, indent=1) + "\n"


def save(g: LieAlgebra, path) -> None:
    Path(path).write_text(dumps(to_json(g)))


def load(path) -> LieAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    try:
        return from_json(data)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def resolve(source: str) -> LieAlgebra:
    """Catalog name or path to a structure-constant file."""
    p = Path(source)
    if p.suffix == ".json" or p.exists():
        return load(p)
    return get(source).algebra


def export_data(directory=DATA_DIR) -> list[Path]:
    """Write the fixed catalog entries as JSON files."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in sorted(_FIXED):
        path = directory / f"{name}.json"
        save(get(name).algebra, path)
        out.append(path)
    return out


# -- product files ----------------------------------------------------------


def product_to_json(p: LieAlgebra, dec) -> dict:
    out = to_json(p)
    out["decomposition"] = dec.to_json()
    return out


def save_product(p: LieAlgebra, dec, path) -> None:
    Path(path).write_text(dumps(product_to_json(p, dec)))


def load_product(path):
    """(algebra, ProductDecomposition) from a product file."""
    from .genprod import ProductDecomposition

    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    try:
        g = from_json(data, allow={"decomposition"})
        if "decomposition" not in data:
            raise FormatError("missing 'decomposition' block")
        dec = ProductDecomposition.from_json(data["decomposition"])
    except (FormatError, ValueError, TypeError) as exc:
        raise FormatError(f"{path}: {exc}") from None
    return g, dec
