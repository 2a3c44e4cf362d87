from __future__ import annotations

import pytest

from stimresp import lgs_fixed, lgs_original, lgs_requirements


@pytest.fixture(scope="session")
def fixed_model():
    return lgs_fixed()


@pytest.fixture(scope="session")
def original_model():
    return lgs_original()


@pytest.fixture(scope="session")
def lgs_reqs():
    return lgs_requirements()
