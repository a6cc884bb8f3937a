from pathlib import Path

import pytest

from algebra.weil import WeilAlgebra, build
from utils import FileManager

ALGEBRAS_DIR = Path(__file__).resolve().parent.parent / "data" / "algebras"


def algebra_path(name: str) -> Path:
    return ALGEBRAS_DIR / f"{name}.weil"


def load_algebra(name: str) -> WeilAlgebra:
    return build(FileManager().read_algebra_spec(algebra_path(name)))


@pytest.fixture(scope="session")
def example1() -> WeilAlgebra:
    return load_algebra("example1")


@pytest.fixture(scope="session")
def example2() -> WeilAlgebra:
    return load_algebra("example2")


@pytest.fixture(scope="session")
def counterexample() -> WeilAlgebra:
    return load_algebra("counterexample")


@pytest.fixture(scope="session")
def nondwindlable() -> WeilAlgebra:
    return load_algebra("nondwindlable")


@pytest.fixture(scope="session")
def nontrivial_d33() -> WeilAlgebra:
    return load_algebra("nontrivial_d33")
