import pytest

from girthlab.checks import bs12, dihedral_hnn, free_proper_hnn, sl2z_amalgam, z2_hnn
from girthlab.corpus import load_entry
from girthlab.oracles import DihedralGroup, FreeAbelianGroup, FreeGroup


@pytest.fixture
def F2():
    return FreeGroup(2)


@pytest.fixture
def Z2():
    return FreeAbelianGroup(2)


@pytest.fixture
def Dinf():
    return DihedralGroup()


@pytest.fixture
def S3():
    return load_entry("S3").group()


@pytest.fixture
def V4():
    return load_entry("V4").group()


@pytest.fixture
def proper_hnn():
    return free_proper_hnn()


@pytest.fixture
def bs():
    return bs12()


@pytest.fixture
def dhnn():
    return dihedral_hnn()


@pytest.fixture
def zhnn():
    return z2_hnn()


@pytest.fixture
def sl2z():
    return sl2z_amalgam()


# acceptance criteria report: test_acceptance appends (number, passed, detail)
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
