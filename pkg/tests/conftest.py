import pytest

from hydrocyl.params import PlantParameters


@pytest.fixture
def p():
    return PlantParameters()
