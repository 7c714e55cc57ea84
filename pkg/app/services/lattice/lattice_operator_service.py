from dataclasses import dataclass
from enum import Enum
from typing import List, Optional
import logging
from app.core.core_config import settings
from app.services.lattice.lattice_geometry_service import Lattice, LoopPath, SiteParity
from app.services.pauli.pauli_string_service import PauliString, StateVector, expectation
from app.services.pauli.pauli_operator_service import OperatorSum
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError

logger = logging.getLogger(__name__)

# Wilson loop 字母：奇格點 x，偶格點 y
_LOOP_LETTER = {SiteParity.ODD: "X", SiteParity.EVEN: "Y"}


class TopologicalOrder(str, Enum):
    Z2A = "Z2A"  # J > 0，基態全部 F = +1
    Z2B = "Z2B"  # J < 0，基態全部 F = -1

    @property
    def defect_sign(self) -> float:
        return -1.0 if self is TopologicalOrder.Z2A else 1.0


class ExcitationLabel(str, Enum):
    NONE = "none"
    E = "e"
    M = "m"


@dataclass(frozen=True)
class PlaquetteRecord:
    base: int
    x: int
    y: int
    F_value: float
    label: ExcitationLabel


# ==================== Operators ====================

def plaquette_operator(l: Lattice, base: int) -> PauliString:
    """F_i = X(i) Y(i+ex) X(i+ex+ey) Y(i+ey)"""
    a, b, c, d = l.plaquette_sites(base)
    return PauliString.from_sites(l.n_sites, {a: "X", b: "Y", c: "X", d: "Y"})


def wen_term(l: Lattice, J: float) -> OperatorSum:
    """-J * sum_i F_i（重複的串合併）"""
    terms = [(-J, plaquette_operator(l, base)) for base in l.sites()]
    return OperatorSum(l.n_sites, tuple(terms)).simplify()


def field_term(l: Lattice, g: float) -> OperatorSum:
    terms = [(-g, PauliString.from_sites(l.n_sites, {site: "X"})) for site in l.sites()]
    return OperatorSum(l.n_sites, tuple(terms)).simplify()


def build_hamiltonian(l: Lattice, J: float, g: float) -> OperatorSum:
    return (wen_term(l, J) + field_term(l, g)).simplify()


def wilson_loop(l: Lattice, c: LoopPath) -> PauliString:
    """
    沿閉合路徑取乘積，字母只由格點奇偶決定（與方向無關）

    plaquette_loop(base) 在奇格點 base 上給出 F_base；偶格點 base 上 X 與 Y 互換。
    """
    l.validate_loop(c)
    product = PauliString.identity(l.n_sites)
    for site in c.sites:
        letter = _LOOP_LETTER[l.parity_of(site)]
        product = product * PauliString.from_sites(l.n_sites, {site: letter})
    return product


# ==================== Excitations ====================

def classify_excitations(
    l: Lattice,
    v: StateVector,
    order: TopologicalOrder,
    tol: Optional[float] = None
) -> List[PlaquetteRecord]:
    if v.n_sites != l.n_sites:
        raise DimensionError(
            ServerErrorCode.DIMENSION_MISMATCH_52,
            f"state has {v.n_sites} sites, lattice {l.shape} has {l.n_sites}"
        )
    band = settings.DEFECT_TOL if tol is None else tol
    records: List[PlaquetteRecord] = []
    for base in l.sites():
        value = expectation(plaquette_operator(l, base), v)
        label = ExcitationLabel.NONE
        if abs(value - order.defect_sign) < band:
            # 偶子格上的缺陷是 m 粒子，奇子格上的是 e 粒子
            label = ExcitationLabel.M if l.parity_of(base) is SiteParity.EVEN else ExcitationLabel.E
        x, y = l.coords(base)
        records.append(PlaquetteRecord(base, x, y, value, label))

    defects = sum(1 for r in records if r.label is not ExcitationLabel.NONE)
    logger.debug(f"{l.shape} {order.value}: {defects} defects")
    return records
