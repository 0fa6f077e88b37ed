import pytest

from lckcalc.models import hopf_surface, kodaira_surface, torus4


@pytest.fixture(scope="session")
def torus_model():
    return torus4()


@pytest.fixture(scope="session")
def hopf_model():
    return hopf_surface()


@pytest.fixture(scope="session")
def kodaira_model():
    return kodaira_surface()


@pytest.fixture(scope="session")
def catalog_models(torus_model, hopf_model, kodaira_model):
    return [torus_model, hopf_model, kodaira_model]
