import pytest

from skycover import ChannelParams, CoverageParams, default_scene, spawn_vehicles


@pytest.fixture(scope="session")
def scene():
    return default_scene()


@pytest.fixture
def channel():
    return ChannelParams()


@pytest.fixture
def coverage_params():
    return CoverageParams()


@pytest.fixture(scope="session")
def small_vehicles(scene):
    return spawn_vehicles(scene, 8, 1000)
