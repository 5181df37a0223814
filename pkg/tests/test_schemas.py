"""Every shipped data file conforms to its published schema."""

import pytest
from jsonschema import Draft202012Validator

from anosurf.classifier import classify
from anosurf.slopes import parse_slope
from conftest import load_data_json, load_schema

FAMILIES = [f"Q{i}" for i in range(1, 12)]


def validator_for(name: str) -> Draft202012Validator:
    schema = load_schema(name)
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def test_spine_document():
    validator_for("spine.schema.json").validate(load_data_json("spine.json"))


def test_qcomplex_document():
    validator_for("qcomplexes.schema.json").validate(
        load_data_json("qcomplexes.json"))


@pytest.mark.parametrize("family", FAMILIES)
def test_track_documents(family):
    validator_for("track.schema.json").validate(
        load_data_json(f"tracks/{family}.json"))


def test_entry_documents():
    validator = validator_for("entry.schema.json")
    manifest = load_data_json("catalog/manifest.json")
    assert manifest["entry_files"]
    for relpath in manifest["entry_files"]:
        validator.validate(load_data_json(relpath))


def test_manifest_document():
    validator_for("manifest.schema.json").validate(
        load_data_json("catalog/manifest.json"))


def test_emitted_traces(catalog):
    validator = validator_for("trace.schema.json")
    result = classify(parse_slope("5/2"), catalog)
    assert result.traces
    for trace in result.traces:
        validator.validate(trace.to_json())
