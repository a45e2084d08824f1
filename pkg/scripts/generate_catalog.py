"""Regenerate src/artifact/catalog.json from the catalog builders."""

from pathlib import Path

from artifact.catalog import write_catalog_json

if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "artifact" / "catalog.json"
    write_catalog_json(str(out))
    print(out)
