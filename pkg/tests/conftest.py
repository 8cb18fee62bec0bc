import functools

import pytest

import sympla.catalog as catalog_mod


@functools.lru_cache(maxsize=None)
def _cached(name: str, frozen_params: tuple):
    return catalog_mod.build(name, **dict(frozen_params))


def build(name: str, **params):
    try:
        return _cached(name, tuple(sorted(params.items())))
    except TypeError:
        return catalog_mod.build(name, **params)


@pytest.fixture(scope="session")
def cat():
    return build
