import pytest

from icarus.matrix import Category, Cell, Matrix
from icarus.workspace import Workspace


def make_matrix(sizes, letters="ABCDEFGHIJKLMNOPQRSTUVWXYZ"):
    """Synthetic matrix with generated labels, for small-space tests."""
    cats = []
    for pos, size in enumerate(sizes):
        letter = letters[pos]
        cells = tuple(
            Cell(category=letter, index=i, label=f"{letter}{i} label")
            for i in range(1, size + 1)
        )
        cats.append(Category(letter=letter, name=f"Category {letter}", cells=cells))
    return Matrix(cats, source="synthetic")


@pytest.fixture(scope="session")
def default_ws(tmp_path_factory):
    return Workspace(sessions_dir=tmp_path_factory.mktemp("sessions"))


@pytest.fixture(scope="session")
def matrix(default_ws):
    return default_ws.matrix


@pytest.fixture(scope="session")
def space(default_ws):
    return default_ws.default_space


@pytest.fixture(scope="session")
def default_rules(default_ws):
    return default_ws.default_rules


@pytest.fixture(scope="session")
def corpus(default_ws):
    return default_ws.corpus


@pytest.fixture(scope="session")
def battery(default_ws):
    return default_ws.battery


@pytest.fixture()
def tmp_ws(tmp_path):
    return Workspace(sessions_dir=tmp_path / "sessions")


@pytest.fixture()
def client(tmp_ws):
    from fastapi.testclient import TestClient

    from icarus.api import create_app

    return TestClient(create_app(tmp_ws))
