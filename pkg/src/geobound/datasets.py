"""Loading of the bundled outer-normal datasets and scenario files."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import DataError
from .qspace import FamilyCheck, QuadraticForm, QuadraticSpace, as_vector

_DATA = "geobound.data"


def _dir(kind: str):
    return resources.files(_DATA).joinpath(kind)


def dataset_names() -> list[str]:
    return sorted(p.name[:-5] for p in _dir("datasets").iterdir() if p.name.endswith(".json"))


def scenario_names() -> list[str]:
    return sorted(p.name[:-5] for p in _dir("scenarios").iterdir() if p.name.endswith(".json"))


def _read(kind: str, name: str) -> dict:
    path = _dir(kind).joinpath(f"{name}.json")
    if not path.is_file():
        known = dataset_names() if kind == "datasets" else scenario_names()
        raise DataError(f"unknown {kind[:-1]} {name!r}; known: {', '.join(known)}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DataError(f"{kind[:-1]} {name!r} is not valid JSON: {exc}") from exc


def space_from_json(data: dict) -> QuadraticSpace:
    try:
        form = QuadraticForm(as_vector(data["form"]), data.get("ring", "Z"))
        labels = data["labels"]
        normals = data["normals"]
    except (KeyError, TypeError) as exc:
        raise DataError(f"dataset is missing field {exc}") from exc
    if len(labels) != len(normals):
        raise DataError(f"{len(labels)} labels for {len(normals)} normals")
    families = [
        FamilyCheck(f["first"], f["last"], f["generated"], f.get("pattern", ""))
        for f in data.get("families", [])
    ]
    roots = {int(k): as_vector(v) for k, v in zip(labels, normals)}
    return QuadraticSpace(form, roots, data.get("name", ""), families)


def load_dataset(name: str | Path) -> QuadraticSpace:
    """Load a bundled dataset by name, or any dataset file by path."""
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        try:
            return space_from_json(json.loads(p.read_text()))
        except json.JSONDecodeError as exc:
            raise DataError(f"{p} is not valid JSON: {exc}") from exc
    return space_from_json(_read("datasets", str(name)))


def declared_facets(name: str) -> int:
    """Facet count implied by the dataset's labels and family ranges."""
    data = _read("datasets", name)
    top = max(data["labels"])
    for f in data.get("families", []):
        top = max(top, f["last"])
    return top


def load_scenario(name: str | Path) -> dict:
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        try:
            return json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise DataError(f"{p} is not valid JSON: {exc}") from exc
    return _read("scenarios", str(name))
