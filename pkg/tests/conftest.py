import pathlib

import pytest

import typirank
from typirank.parse import parse_kb

KBDIR = pathlib.Path(typirank.__file__).parent / "kbs"


def load(name):
    return parse_kb((KBDIR / name).read_text())


@pytest.fixture(scope="session")
def kbdir():
    return KBDIR


@pytest.fixture(scope="session")
def worker_kb():
    return load("worker.kb")


@pytest.fixture(scope="session")
def worker_tbox():
    return load("worker_tbox.kb")


@pytest.fixture(scope="session")
def penguin_kb():
    return load("penguin.kb")


@pytest.fixture(scope="session")
def oldeagle_kb():
    return load("oldeagle.kb")


@pytest.fixture(scope="session")
def petfish_kb():
    return load("petfish.kb")


@pytest.fixture(scope="session")
def student_kb():
    return load("student.kb")
