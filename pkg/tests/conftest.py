import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from compactvqe import load_fcidump, to_spin_orbitals

FIXTURE_DIR = Path(__file__).parent.parent / "fixtures"


def fixture_path(name):
    return FIXTURE_DIR / f"{name}.fcidump"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def fixture_metadata():
    meta = {}
    for meta_file in FIXTURE_DIR.glob("*_fixtures.json"):
        for rec in json.loads(meta_file.read_text()):
            meta[rec["label"]] = rec
    return meta


def _system(name):
    return to_spin_orbitals(load_fcidump(fixture_path(name)))


@pytest.fixture(scope="session")
def h2():
    return _system("h2_0.735")


@pytest.fixture(scope="session")
def lih():
    return _system("lih_1.600")


@pytest.fixture(scope="session")
def lih_stretched():
    return _system("lih_4.000")


@pytest.fixture(scope="session")
def bh():
    return _system("bh_2.000")


@pytest.fixture(scope="session")
def h2o():
    return _system("h2o_1.00re")


@pytest.fixture(scope="session")
def h2o_stretched():
    return _system("h2o_2.40re")
