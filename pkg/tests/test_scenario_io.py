import json

import pytest

from pacmeasure import catalog
from pacmeasure.exceptions import ScenarioFormatError
from pacmeasure.measure import CoverScenario, TowerScenario
from pacmeasure.scenario_io import digest, dumps, load, loads, serialize


@pytest.mark.parametrize("name", catalog.ids())
def test_round_trip(name, tmp_path):
    loaded = catalog.load(name)
    path = tmp_path / f"{name}.json"
    path.write_text(serialize(loaded))
    again = load(path)
    assert again.document == loaded.document
    assert again.digest == loaded.digest
    assert isinstance(again.value, TowerScenario if loaded.kind == "tower" else CoverScenario)


def test_digest_ignores_key_order():
    doc = catalog.document("squares")
    shuffled = dict(reversed(list(doc.items())))
    assert digest(doc) == digest(shuffled)
    assert digest(doc).startswith("sha256:")


def test_format_errors():
    with pytest.raises(ScenarioFormatError):
        loads("{not json")
    doc = catalog.document("squares")
    doc["format-version"] = "2"
    with pytest.raises(ScenarioFormatError):
        loads(json.dumps(doc))
    doc = catalog.document("squares")
    del doc["targets"]
    with pytest.raises(ScenarioFormatError):
        loads(json.dumps(doc))


def test_dumps_is_stable():
    doc = catalog.document("fifth-root")
    assert dumps(doc) == dumps(json.loads(dumps(doc)))
    assert dumps(doc).endswith("\n")
