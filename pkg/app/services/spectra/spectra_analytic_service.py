from dataclasses import dataclass
from typing import Tuple
import logging
import numpy as np
from app.services.pauli.pauli_string_service import StateVector
from app.services.pauli.pauli_operator_service import x_basis_rotation
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DomainError

logger = logging.getLogger(__name__)

# σx 基下的基矢索引（site 1 為最低位）：|0101>x 翻轉 2、4 號格點，|1010>x 翻轉 1、3 號格點
_X_0000 = 0b0000
_X_0101 = 0b1010
_X_1010 = 0b0101
_X_1111 = 0b1111


@dataclass(frozen=True)
class AnalyticAmplitudes:
    J: float
    g: float
    alpha1: float
    alpha2: float
    alpha3: float

    @property
    def norm_A(self) -> float:
        return self.alpha1 ** 2 + self.alpha2 ** 2 + self.alpha3 ** 2

    @property
    def normalized(self) -> Tuple[float, float, float]:
        root = np.sqrt(self.norm_A)
        return self.alpha1 / root, self.alpha2 / root, self.alpha3 / root

    @property
    def energy(self) -> float:
        return -4.0 * float(np.hypot(self.g, self.J))


def analytic_amplitudes_2x2(J: float, g: float) -> AnalyticAmplitudes:
    if g <= 0.0:
        raise DomainError(
            ServerErrorCode.DEGENERATE_GROUND_MANIFOLD_53,
            f"g={g}: the 2x2 ground state is only unique for g > 0"
        )
    root = float(np.hypot(g, J))
    alpha1 = J ** 2 + 2.0 * g ** 2 + 2.0 * g * root
    alpha2 = np.sqrt(2.0) * J * (g + root)
    alpha3 = J ** 2
    return AnalyticAmplitudes(J, g, float(alpha1), float(alpha2), float(alpha3))


def analytic_ground_2x2(J: float, g: float) -> Tuple[float, StateVector]:
    """(α1|0000>x - α2(|0101>x + |1010>x)/√2 + α3|1111>x)/√A，旋回計算基"""
    amplitudes = analytic_amplitudes_2x2(J, g)
    x_amplitudes = np.zeros(16, dtype=np.complex128)
    x_amplitudes[_X_0000] = amplitudes.alpha1
    x_amplitudes[_X_0101] = -amplitudes.alpha2 / np.sqrt(2.0)
    x_amplitudes[_X_1010] = -amplitudes.alpha2 / np.sqrt(2.0)
    x_amplitudes[_X_1111] = amplitudes.alpha3
    x_state = StateVector(4, x_amplitudes).normalized()
    return amplitudes.energy, x_basis_rotation(x_state)

