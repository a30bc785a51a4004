import pytest

from geoshift import build_geodesic_automaton, parse_group_file


@pytest.fixture(scope="session")
def f2():
    return parse_group_file("groups/f2.grp")


@pytest.fixture(scope="session")
def f2_aut(f2):
    return build_geodesic_automaton(f2, n_check=10)


@pytest.fixture(scope="session")
def f2_star_ab(f2):
    return f2.resolve("Sstar_ab")


@pytest.fixture(scope="session")
def f2_star_a2(f2):
    return f2.resolve("Sstar_a2")


@pytest.fixture(scope="session")
def psl2z():
    return parse_group_file("groups/psl2z.grp")


@pytest.fixture(scope="session")
def psl_aut(psl2z):
    return build_geodesic_automaton(psl2z, n_check=10)


@pytest.fixture(scope="session")
def s3():
    return parse_group_file("groups/s3.grp")
