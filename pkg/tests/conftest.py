"""Shared fixtures; the large lattices are expensive enough to build once."""

import pytest

from dcmap import dpii_solve, extract_radii, generate, generate_naive, xy_from_radii


@pytest.fixture(scope="session")
def zc15_small():
    return generate("zc", 1.5, 20)


@pytest.fixture(scope="session")
def zc05_60():
    return generate("zc", 0.5, 60)


@pytest.fixture(scope="session")
def zc15_60():
    return generate("zc", 1.5, 60)


@pytest.fixture(scope="session")
def zc125_60():
    return generate("zc", 1.25, 60)


@pytest.fixture(scope="session")
def zc175_60():
    return generate("zc", 1.75, 60)


@pytest.fixture(scope="session")
def zc05_203():
    return generate("zc", 0.5, 203)


@pytest.fixture(scope="session")
def zc125_203():
    return generate("zc", 1.25, 203)


@pytest.fixture(scope="session")
def zc15_203():
    return generate("zc", 1.5, 203)


@pytest.fixture(scope="session")
def zc175_203():
    return generate("zc", 1.75, 203)


@pytest.fixture(scope="session")
def z2_42():
    return generate("z2", None, 42)


@pytest.fixture(scope="session")
def z2_102():
    return generate("z2", None, 102)


@pytest.fixture(scope="session")
def log_42():
    return generate("log", None, 42)


@pytest.fixture(scope="session")
def naive15_12():
    return generate_naive(1.5, 12)


@pytest.fixture(scope="session")
def field15_203(zc15_203):
    return extract_radii(zc15_203)


@pytest.fixture(scope="session")
def field05_203(zc05_203):
    return extract_radii(zc05_203)


@pytest.fixture(scope="session")
def xy15_203(field15_203):
    return xy_from_radii(field15_203)


@pytest.fixture(scope="session")
def field15_60(zc15_60):
    return extract_radii(zc15_60)


@pytest.fixture(scope="session")
def field05_60(zc05_60):
    return extract_radii(zc05_60)


@pytest.fixture(scope="session")
def sol15():
    return dpii_solve(1.5, 230)


@pytest.fixture(scope="session")
def sol05():
    return dpii_solve(0.5, 230)
