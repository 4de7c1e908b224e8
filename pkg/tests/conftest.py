from pathlib import Path

import pytest

from framerole import load_toy_lexicon
from framerole.lexicon import FRAME_NS, VNDATA
from framerole.ntriples import Iri

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def vn(local):
    return Iri(VNDATA + local)


def frame(name):
    return Iri(FRAME_NS + name)


@pytest.fixture(scope="session")
def toy():
    return load_toy_lexicon()


@pytest.fixture
def fixtures():
    return FIXTURES
