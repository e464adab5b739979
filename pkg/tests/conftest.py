import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpora import d1_document, fixture_corpus  # noqa: E402

from spanaug.corpus import Corpus  # noqa: E402
from spanaug.lexicon import builtin_lexicon  # noqa: E402


@pytest.fixture
def d1():
    return d1_document()


@pytest.fixture
def d1_corpus():
    return Corpus((d1_document(),))


@pytest.fixture(scope="session")
def lexicon():
    return builtin_lexicon()


@pytest.fixture(scope="session")
def corpus20():
    return fixture_corpus(20)
