import pytest

from garble.assistant import Assistant, ConfusionMatrix, default_config
from garble.inventory import default_inventory
from garble.lexicon import default_lexicon
from garble.mangle import default_onset_inventory


@pytest.fixture(scope="session")
def inventory():
    return default_inventory()


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def onsets():
    return default_onset_inventory()


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def confusion(inventory, cfg):
    return ConfusionMatrix(inventory, cfg)


@pytest.fixture(scope="session")
def assistant():
    return Assistant()
