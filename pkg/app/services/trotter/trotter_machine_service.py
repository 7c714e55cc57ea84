"""
NMR machine description and its free-evolution Hamiltonian

    H_NMR = Σ_i (ω_i / 2) σz_i + Σ_{i<j} (π J_ij / 2) σz_i σz_j

ω in rad/s, J_ij in Hz, durations in s. Sites are 0-based internally and 1-based in
names such as "J13" and in pulse text.
"""
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, Mapping, Sequence, Tuple
import json
import logging
import numpy as np
from pydantic import ValidationError as PydanticValidationError
from app.schemas.run_request import MachineRequestModel
from app.services.pauli.pauli_string_service import PauliString
from app.services.pauli.pauli_operator_service import OperatorSum
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import MachineError

logger = logging.getLogger(__name__)

MACHINE_SITES = 4


def coupling_name(a: int, b: int) -> str:
    low, high = sorted((a, b))
    return f"J{low + 1}{high + 1}"


def parse_coupling_name(name: str) -> Tuple[int, int]:
    """'J13' / '13' -> (0, 2)"""
    digits = name[1:] if name.upper().startswith("J") else name
    digits = digits.lstrip("_")
    if len(digits) != 2 or not digits.isdigit():
        raise MachineError(ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55, f"bad coupling name {name!r}")
    a, b = int(digits[0]) - 1, int(digits[1]) - 1
    if a == b:
        raise MachineError(ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55, f"{name}: couplings have a zero diagonal", coupling=name)
    return tuple(sorted((a, b)))


# ==================== Types ====================

@dataclass(frozen=True)
class NmrMachine:
    omegas: Tuple[float, ...]
    couplings: Mapping[Tuple[int, int], float] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        omegas = tuple(float(w) for w in self.omegas)
        if len(omegas) != MACHINE_SITES:
            raise MachineError(
                ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55,
                f"{len(omegas)} chemical shifts, expected {MACHINE_SITES}"
            )
        couplings: Dict[Tuple[int, int], float] = {}
        for (a, b), value in dict(self.couplings).items():
            if a == b or not (0 <= a < MACHINE_SITES and 0 <= b < MACHINE_SITES):
                raise MachineError(
                    ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55,
                    f"invalid coupling pair ({a + 1}, {b + 1})"
                )
            key = (min(a, b), max(a, b))
            if key in couplings and couplings[key] != float(value):
                raise MachineError(
                    ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55,
                    f"{coupling_name(*key)} given twice with different values",
                    coupling=coupling_name(*key)
                )
            couplings[key] = float(value)
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "couplings", {k: couplings.get(k, 0.0) for k in combinations(range(MACHINE_SITES), 2)})

    @classmethod
    def from_named(cls, omegas: Sequence[float], couplings: Mapping[str, float], name: str = "") -> "NmrMachine":
        return cls(tuple(omegas), {parse_coupling_name(k): v for k, v in couplings.items()}, name)

    @property
    def n_sites(self) -> int:
        return MACHINE_SITES

    def coupling(self, a: int, b: int) -> float:
        if a == b:
            return 0.0
        return self.couplings[(min(a, b), max(a, b))]

    def named_couplings(self) -> Dict[str, float]:
        return {coupling_name(a, b): value for (a, b), value in self.couplings.items()}

    def require_couplings(self, pairs: Iterable[Tuple[int, int]]) -> None:
        """作為除數的耦合必須非零"""
        for a, b in pairs:
            if self.coupling(a, b) == 0.0:
                name = coupling_name(a, b)
                raise MachineError(
                    ServerErrorCode.MACHINE_COUPLING_ZERO_55,
                    f"{name} is zero but is used as a divisor",
                    coupling=name
                )

    def hamiltonian(self) -> OperatorSum:
        terms = [
            (omega / 2.0, PauliString.from_sites(MACHINE_SITES, {site: "Z"}))
            for site, omega in enumerate(self.omegas)
        ]
        terms += [
            (np.pi * value / 2.0, PauliString.from_sites(MACHINE_SITES, {a: "Z", b: "Z"}))
            for (a, b), value in self.couplings.items()
        ]
        return OperatorSum(MACHINE_SITES, tuple(terms))

    def diagonal_energies(self) -> np.ndarray:
        """H_NMR 對角，直接給出每個計算基矢的能量"""
        indices = np.arange(1 << MACHINE_SITES)
        spins = [1.0 - 2.0 * ((indices >> site) & 1) for site in range(MACHINE_SITES)]
        energies = np.zeros(indices.shape[0])
        for site, omega in enumerate(self.omegas):
            energies += omega / 2.0 * spins[site]
        for (a, b), value in self.couplings.items():
            energies += np.pi * value / 2.0 * spins[a] * spins[b]
        return energies


def random_machine(rng: np.random.Generator, name: str = "") -> NmrMachine:
    """ω_i ∈ ±[2π·100, 2π·1000] rad/s，J_ij 取 Hz 量級的非零值"""
    magnitudes = rng.uniform(2.0 * np.pi * 100.0, 2.0 * np.pi * 1000.0, size=MACHINE_SITES)
    signs = rng.choice([-1.0, 1.0], size=MACHINE_SITES)
    couplings = {}
    for pair in combinations(range(MACHINE_SITES), 2):
        couplings[pair] = float(rng.choice([-1.0, 1.0]) * rng.uniform(5.0, 120.0))
    return NmrMachine(tuple(magnitudes * signs), couplings, name)


# ==================== File ====================

def load_machine(path: Path) -> NmrMachine:
    """JSON：{"name": ..., "omegas": [4 個 rad/s], "couplings": {"J12": Hz, ...}}"""
    try:
        with open(path, "r", encoding="utf-8") as file:
            request_model = MachineRequestModel.model_validate(json.load(file))
    except (OSError, json.JSONDecodeError, PydanticValidationError) as e:
        raise MachineError(ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55, f"{path}: {e}")
    machine = NmrMachine.from_named(request_model.omegas, request_model.couplings, request_model.name or Path(path).stem)
    logger.info(f"loaded machine {machine.name!r} from {path}")
    return machine


def machine_to_dict(m: NmrMachine) -> Dict[str, object]:
    return {"name": m.name, "omegas": list(m.omegas), "couplings": m.named_couplings()}
