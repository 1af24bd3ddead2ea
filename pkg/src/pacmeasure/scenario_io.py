"""Scenario files (JSON, ``format-version: "1"``).

A scenario file::

    {
      "format-version": "1",
      "kind": "scenario",
      "name": "squares",
      "group": {"cyclic": 2},
      "g0": [[1, 0]],
      "complement": [],
      "targets": [{"name": "trivial", "generators": []},
                  {"name": "full", "generators": [[1, 0]]}],
      "metadata": "..."
    }

``complement`` may be ``null`` (non-split). A tower file has ``kind: "tower"``,
``upper`` and ``lower`` scenario bodies and ``restriction``: the images (as
permutations of the lower group) of the upper group's generators, in the order
the upper group descriptor produces them.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .exceptions import ScenarioFormatError
from .groups import Epimorphism
from .measure import CoverScenario, TowerScenario, validate_scenario

FORMAT_VERSION = "1"


def _canonical_body(raw: dict) -> dict:
    try:
        body = {
            "group": raw["group"],
            "g0": [list(map(int, p)) for p in raw["g0"]],
            "complement": None if raw.get("complement") is None else [list(map(int, p)) for p in raw["complement"]],
            "targets": [
                {"name": str(t["name"]), "generators": [list(map(int, p)) for p in t["generators"]]}
                for t in raw["targets"]
            ],
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioFormatError(f"malformed scenario body: {exc!r}") from exc
    if "name" in raw:
        body["name"] = str(raw["name"])
    return body


def canonicalize(raw: dict) -> dict:
    """Normalise a parsed JSON document; unknown versions or kinds are rejected."""
    if not isinstance(raw, dict):
        raise ScenarioFormatError("scenario document must be a JSON object")
    version = raw.get("format-version")
    if version != FORMAT_VERSION:
        raise ScenarioFormatError(f"unsupported format-version {version!r} (expected {FORMAT_VERSION!r})")
    kind = raw.get("kind", "scenario")
    doc = {"format-version": FORMAT_VERSION, "kind": kind, "name": str(raw.get("name", kind)), "metadata": str(raw.get("metadata", ""))}
    if kind == "scenario":
        body = _canonical_body(raw)
        body.pop("name", None)
        doc.update(body)
    elif kind == "tower":
        try:
            doc["upper"] = _canonical_body(raw["upper"])
            doc["lower"] = _canonical_body(raw["lower"])
            doc["restriction"] = [list(map(int, p)) for p in raw["restriction"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioFormatError(f"malformed tower document: {exc!r}") from exc
    else:
        raise ScenarioFormatError(f"unknown document kind {kind!r}")
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(doc: dict) -> str:
    return "sha256:" + hashlib.sha256(dumps(canonicalize(doc)).encode("utf-8")).hexdigest()


@dataclass
class Loaded:
    """A validated document: its canonical JSON form and the scenario or tower it describes."""

    document: dict
    value: CoverScenario | TowerScenario

    @property
    def kind(self) -> str:
        return self.document["kind"]

    @property
    def digest(self) -> str:
        return digest(self.document)


def build(doc: dict) -> Loaded:
    doc = canonicalize(doc)
    if doc["kind"] == "scenario":
        return Loaded(doc, validate_scenario(doc, name=doc["name"]))
    upper = validate_scenario(doc["upper"], name=doc["upper"].get("name", doc["name"] + "/upper"))
    lower = validate_scenario(doc["lower"], name=doc["lower"].get("name", doc["name"] + "/lower"))
    restriction = Epimorphism.from_generator_images(upper.G, lower.G, [tuple(p) for p in doc["restriction"]])
    return Loaded(doc, TowerScenario(upper, lower, restriction, name=doc["name"]))


def loads(text: str) -> Loaded:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"not valid JSON: {exc}") from exc
    return build(raw)


def load(path) -> Loaded:
    return loads(Path(path).read_text(encoding="utf-8"))


def serialize(loaded: Loaded) -> str:
    return dumps(loaded.document)
