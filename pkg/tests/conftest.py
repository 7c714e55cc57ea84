from pathlib import Path
import numpy as np
import pytest
from app.core.core_config import settings
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.trotter.trotter_machine_service import load_machine

PROJECT_ROOT = Path(__file__).parent.parent
SAMPLE_MACHINE = PROJECT_ROOT / "resource" / "machine" / "sample_machine.json"


@pytest.fixture(autouse=True)
def _no_run_log(monkeypatch):
    # 測試不寫運行日誌
    monkeypatch.setattr(settings, "ENABLE_LOG", False)


@pytest.fixture
def plaquette() -> Lattice:
    return Lattice(2, 2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def sample_machine():
    return load_machine(SAMPLE_MACHINE)


def pauli_matrix(word: str) -> np.ndarray:
    """稠密參考：字母 0 為 site 0，放在 kron 鏈最右端"""
    single = {
        "I": np.eye(2, dtype=np.complex128),
        "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    }
    matrix = np.ones((1, 1), dtype=np.complex128)
    for letter in reversed(word):
        matrix = np.kron(matrix, single[letter])
    return matrix


@pytest.fixture
def pauli_dense():
    return pauli_matrix
