"""
Symmetric Trotter step for the 2x2 transverse Wen-plaquette Hamiltonian

    e^{-iHτ} ≈ e^{-iH_x τ/2} e^{-iH4 τ} e^{-iH_x τ/2},   H4 = -2J(X1Y2X3Y4 + Y1X2Y3X4)

The four-body factor is exact: the two plaquette strings commute, and each is a
ZZZZ evolution conjugated by π/2 rotations,

    Ȳ1X̄2Ȳ3X̄4 · e^{-iθ ZZZZ} · Y1X2Y3X4 = e^{-iθ X1Y2X3Y4}

so e^{+i2Jτ XYXY} needs θ = -2Jτ, i.e. the ZZZZ block evaluated at -J.
"""
from functools import lru_cache
from typing import Optional, Tuple
import logging
import numpy as np
from scipy import linalg
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.lattice.lattice_operator_service import build_hamiltonian
from app.services.pauli.pauli_operator_service import materialize
from app.services.trotter.trotter_sequence_service import (
    IdealUnitary,
    Instruction,
    PulseSequence,
    Rotation,
    sequence_unitary,
)
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)

PLAQUETTE_SITES = 4
ALL_SITES = (0, 1, 2, 3)
HALF_PI = np.pi / 2.0

# (奇格點 1、3 的軸, 偶格點 2、4 的軸)：Y1X2Y3X4 把 ZZZZ 轉成 XYXY，X1Y2X3Y4 轉成 YXYX
CONJUGATION_XYXY = ("y", "x")
CONJUGATION_YXYX = ("x", "y")


def require_plaquette_lattice(l: Optional[Lattice]) -> None:
    if l is not None and (l.Lx, l.Ly) != (2, 2):
        raise ValidationError(
            ServerErrorCode.STEPPER_REQUIRES_2X2_LATTICE_50,
            f"trotter stepper requires a 2x2 lattice, got {l.shape}"
        )


def _check_tau(tau: float) -> None:
    if tau < 0.0:
        raise ValidationError(ServerErrorCode.DURATION_NEGATIVE_55, f"tau={tau}")


def four_body_unitary(J: float, tau: float) -> np.ndarray:
    """e^{-i 2J τ Z1Z2Z3Z4}，對角"""
    indices = np.arange(1 << PLAQUETTE_SITES)
    parity = np.array([1.0 - 2.0 * (bin(i).count("1") % 2) for i in indices])
    return np.diag(np.exp(-1j * 2.0 * J * tau * parity))


def conjugation(axes: Tuple[str, str], inverse: bool = False) -> Tuple[Rotation, Rotation]:
    """π/2 旋轉：奇格點 (0, 2) 繞 axes[0]，偶格點 (1, 3) 繞 axes[1]；inverse 取反軸"""
    odd_axis, even_axis = axes
    if inverse:
        odd_axis, even_axis = "-" + odd_axis, "-" + even_axis
    return Rotation((0, 2), odd_axis, HALF_PI), Rotation((1, 3), even_axis, HALF_PI)


def field_half_step(g: float, tau: float) -> Rotation:
    """e^{-iH_x τ/2} = ∏ exp(+i gτ σx / 2)，即繞 x 轉 θ0 = -gτ"""
    return Rotation(ALL_SITES, "x", -g * tau)


def wrap_conjugated(axes: Tuple[str, str], block: Tuple[Instruction, ...]) -> Tuple[Instruction, ...]:
    return conjugation(axes) + tuple(block) + conjugation(axes, inverse=True)


# ==================== Gate form ====================

def trotter_step(J: float, g: float, tau: float, l: Optional[Lattice] = None) -> PulseSequence:
    require_plaquette_lattice(l)
    _check_tau(tau)
    block = IdealUnitary(f"ZZZZ(J={-J!r},tau={tau!r})", four_body_unitary(-J, tau))
    instructions = (
        (field_half_step(g, tau),)
        + wrap_conjugated(CONJUGATION_YXYX, (block,))
        + wrap_conjugated(CONJUGATION_XYXY, (block,))
        + (field_half_step(g, tau),)
    )
    return PulseSequence(PLAQUETTE_SITES, instructions)


def trotter_unitary(J: float, g: float, tau: float, slices: int = 1) -> np.ndarray:
    """k 個 τ/k 的對稱 Trotter 步"""
    if slices < 1:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, f"slices={slices}")
    step = sequence_unitary(trotter_step(J, g, tau / slices))
    return np.linalg.matrix_power(step, slices)


@lru_cache(maxsize=1)
def _plaquette_lattice() -> Lattice:
    return Lattice(2, 2)


def exact_step_unitary(J: float, g: float, tau: float) -> np.ndarray:
    h = materialize(build_hamiltonian(_plaquette_lattice(), J, g))
    return linalg.expm(-1j * tau * h)
