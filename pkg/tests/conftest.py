import json
import os

import pytest

# Every fast-path predicate verdict on a small finite module is re-derived by
# the brute-force oracle during unit tests.  The acceptance suite switches this
# off so its runtime limits measure the production path.
os.environ.setdefault("LOCPRIME_CROSS_CHECK", "1")

from locprime.ring import make_context  # noqa: E402


@pytest.fixture
def Z():
    return make_context("int")


@pytest.fixture
def Z6():
    return make_context("int", None, 6)


@pytest.fixture
def F2x():
    return make_context("poly", 2)


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write
