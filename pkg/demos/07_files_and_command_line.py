"""Structure-constant files and the command-line front end.

The same steps from a shell:

    python -m lieprod product dixmier_lister_8 dixmier_lister_8 --out dd.json
    python -m lieprod relations dd.json
    python -m lieprod verify-paper
"""

import json
import tempfile
from pathlib import Path

from lieprod import catalog
from lieprod.cli import run

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "luks.json"
    catalog.save(catalog.luks_16(), path)
    rec = next(r for r in json.loads(path.read_text())["brackets"] if (r["i"], r["j"]) == (3, 4))
    print("[X3,X4] on disk:", rec["v"])
    assert catalog.load(path) == catalog.luks_16()

    out = Path(tmp) / "dd.json"
    run(["product", "dixmier_lister_8", "dixmier_lister_8", "--out", str(out)])
    print("prop3 exit status:", run(["prop3", str(out)]))
    print("epsilon:")
    run(["epsilon", "dixmier_lister_8", "--eps", "1/10", "--mode", "center", "--format", "json"])
