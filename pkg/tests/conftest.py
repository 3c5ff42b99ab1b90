import json
from pathlib import Path

import pytest

from solsift import load_ast

REPO = Path(__file__).resolve().parent.parent
CORPUS = REPO / "corpus"


def fixture_path(name: str) -> Path:
    return CORPUS / f"{name}.ast.json"


def golden_path(name: str) -> Path:
    return CORPUS / f"{name}.sol"


def load_fixture(name: str):
    path = fixture_path(name)
    return load_ast(path.read_text(encoding="utf-8"), origin=str(path))


def fixture_names():
    return sorted(p.name[: -len(".ast.json")] for p in CORPUS.glob("*.ast.json"))


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def token_unit():
    return load_fixture("aztra_token")


@pytest.fixture
def uint2str_unit():
    return load_fixture("item_uint2str")


@pytest.fixture
def loops_unit():
    return load_fixture("loops_gallery")


@pytest.fixture
def guard_unit():
    return load_fixture("guard_rails")


def fixture_json(name: str) -> dict:
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))
