import pytest

from mfckit import bundled_names, deligne_product, load_bundled

_cache = {}


def get_category(name):
    """Session-wide cache: full load-time validation runs once per category.

    Names ending in "_doubled" give the Deligne product with the reverse.
    """
    if name not in _cache:
        if name.endswith("_doubled"):
            _cache[name] = deligne_product(get_category(name[:-8]), rev=True)
        else:
            _cache[name] = load_bundled(name)
    return _cache[name]


@pytest.fixture(scope="session")
def cat():
    return get_category


@pytest.fixture(scope="session")
def all_bundled():
    return [get_category(n) for n in bundled_names()]
