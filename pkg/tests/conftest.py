import json
import pathlib

import pytest

from anosurf import _resources
from anosurf.catalog import load_catalog
from anosurf.spine import load_spine

DATA_DIR = pathlib.Path(_resources.resolve("spine.json")).parent
SCHEMA_DIR = pathlib.Path(__file__).resolve().parent.parent / "docs" / "schemas"


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def spine():
    return load_spine()


def load_data_json(relpath: str) -> dict:
    return _resources.load_json(relpath)


def load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / name).read_text(encoding="utf-8"))
