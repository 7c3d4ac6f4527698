import pytest
from hypothesis import HealthCheck, settings

import torslat
from torslat import verify as verify_mod

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

_CATS = {}
_LATS = {}


def _catalog(name):
    if name not in _CATS:
        _CATS[name] = torslat.build_catalog(verify_mod.load_corpus_algebra(name))
    return _CATS[name]


def _lattice(name, side="tors"):
    key = (name, side)
    if key not in _LATS:
        _LATS[key] = torslat.build_lattice(_catalog(name), side=side)
    return _LATS[key]


@pytest.fixture(scope="session")
def cat_of():
    return _catalog


@pytest.fixture(scope="session")
def lat_of():
    return _lattice


@pytest.fixture(scope="session")
def a2cat():
    return _catalog("a2")


@pytest.fixture(scope="session")
def a2lat():
    return _lattice("a2")


def names_to_mask(cat, *names):
    index = {n: i for i, n in enumerate(cat.names)}
    return frozenset(index[n] for n in names)
