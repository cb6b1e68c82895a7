import os

import pytest

from geodesic_kernel.geometry import Polygon, load_polygon, random_simple_polygon, validate_polygon

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 随机多边形的大规模扫描")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture
def square() -> Polygon:
    return load_polygon(fixture_path("square.json"))


@pytest.fixture
def rectangle() -> Polygon:
    return load_polygon(fixture_path("rectangle.json"))


@pytest.fixture
def l_shape() -> Polygon:
    return load_polygon(fixture_path("L.json"))


@pytest.fixture
def triangle() -> Polygon:
    return load_polygon(fixture_path("triangle.json"))


@pytest.fixture
def hexagon() -> Polygon:
    return load_polygon(fixture_path("hexagon.json"))


@pytest.fixture
def comb() -> Polygon:
    """三个齿的梳子形，有多个反射顶点"""
    return validate_polygon([
        (0, 0), (5, 0), (5, 3), (4, 3), (4, 1), (3, 1), (3, 3),
        (2, 3), (2, 1), (1, 1), (1, 3), (0, 3),
    ])


@pytest.fixture(params=[(10, 1), (14, 2), (18, 3)], ids=lambda p: f"n{p[0]}s{p[1]}")
def random_polygon(request) -> Polygon:
    n, seed = request.param
    return random_simple_polygon(n, seed)

