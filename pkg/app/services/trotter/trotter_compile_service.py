"""
Machine-form compilation of the four-body evolution e^{-i2Jτ Z1Z2Z3Z4}.

refocused (default):
    C = C12·C34, C12 = X1(π/2)·e^{-iπ/4 Z1Z2}·Y1(π/2), so that C·Z1Z3·C† = Z1Z2Z3Z4 and
    e^{-iθ Z1Z2Z3Z4} = C·e^{-iθ Z1Z3}·C† with θ = 2Jτ.
    Each ZZ evolution e^{-iφ ZaZb} is a free evolution under H_NMR of total length
    2|φ|/(π|J_ab|) split into four equal segments. π_x pulses between segments give
    every spin a Walsh sign pattern: a gets (+,-,+,-), b the same times sgn(φ J_ab),
    the two spectators (+,+,-,-) and (+,-,-,+). Only the ZaZb coupling survives the
    average, and all patterns start and end at +.

literal:
    the published instruction list with delays τ1 = 1/4J34, τ2 = 1/4J12,
    τ3 = 2Jτ/πJ13 and closing phases θ1 = -ω1/J34, θ2 = -4ω2Jτ/πJ13,
    θ3 = ω4/J12 + 4ω4Jτ/πJ13. Kept as transcribed; its distance is reported.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple
import logging
import numpy as np
from app.core.core_config import settings
from app.services.trotter.trotter_machine_service import NmrMachine, coupling_name
from app.services.trotter.trotter_sequence_service import (
    FreeEvolution,
    Instruction,
    PulseSequence,
    Rotation,
    ZPhase,
    sequence_unitary,
    verify_equivalence,
)
from app.services.trotter.trotter_step_service import (
    CONJUGATION_XYXY,
    CONJUGATION_YXYX,
    PLAQUETTE_SITES,
    field_half_step,
    four_body_unitary,
    trotter_unitary,
    wrap_conjugated,
)
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError, VerificationError

logger = logging.getLogger(__name__)

HALF_PI = np.pi / 2.0

# Walsh 符號模式（四段）
_PATTERN_A = (1, -1, 1, -1)
_PATTERN_C = (1, 1, -1, -1)
_PATTERN_D = (1, -1, -1, 1)


class FourBodyVariant(str, Enum):
    REFOCUSED = "refocused"
    LITERAL = "literal"


@dataclass(frozen=True)
class VerificationReport:
    label: str
    variant: str
    distance: float
    threshold: float
    passed: bool
    instructions: int = 0
    free_time: float = 0.0
    note: str = ""


# ==================== Refocused ====================

def zz_evolution(a: int, b: int, phi: float, m: NmrMachine) -> Tuple[Instruction, ...]:
    """e^{-iφ Za Zb}，用 H_NMR 自由演化加 π_x 重聚焦"""
    m.require_couplings([(a, b)])
    if phi == 0.0:
        return ()
    coupling = m.coupling(a, b)
    segment = abs(phi) / (2.0 * np.pi * abs(coupling))
    partner_sign = 1 if phi * coupling > 0.0 else -1
    spectators = [s for s in range(PLAQUETTE_SITES) if s not in (a, b)]

    patterns = {
        a: _PATTERN_A,
        b: tuple(partner_sign * s for s in _PATTERN_A),
        spectators[0]: _PATTERN_C,
        spectators[1]: _PATTERN_D,
    }

    instructions: List[Instruction] = []
    current = {site: 1 for site in patterns}
    for index in range(len(_PATTERN_A) + 1):
        # 段前翻轉到目標符號；最後一段之後全部翻回 +
        target = {site: (pattern[index] if index < len(_PATTERN_A) else 1) for site, pattern in patterns.items()}
        flips = tuple(site for site in sorted(patterns) if target[site] != current[site])
        if flips:
            instructions.append(Rotation(flips, "x", np.pi))
        current = target
        if index < len(_PATTERN_A):
            instructions.append(FreeEvolution(segment))
    return tuple(instructions)


def _refocused_four_body(J: float, tau: float, m: NmrMachine) -> PulseSequence:
    m.require_couplings([(0, 1), (2, 3), (0, 2)])
    theta = 2.0 * J * tau
    # C† = C34† C12†：按時間先 X(-π/2)，再 e^{+iπ/4 ZZ}，再 Y(-π/2)
    opening = (
        (Rotation((0, 2), "x", -HALF_PI),)
        + zz_evolution(0, 1, -np.pi / 4.0, m)
        + zz_evolution(2, 3, -np.pi / 4.0, m)
        + (Rotation((0, 2), "y", -HALF_PI),)
    )
    core = zz_evolution(0, 2, theta, m)
    closing = (
        (Rotation((0, 2), "y", HALF_PI),)
        + zz_evolution(0, 1, np.pi / 4.0, m)
        + zz_evolution(2, 3, np.pi / 4.0, m)
        + (Rotation((0, 2), "x", HALF_PI),)
    )
    return PulseSequence(PLAQUETTE_SITES, opening + core + closing)


# ==================== Literal ====================

def literal_parameters(J: float, tau: float, m: NmrMachine) -> dict:
    m.require_couplings([(2, 3), (0, 1), (0, 2)])
    J12, J13, J34 = m.coupling(0, 1), m.coupling(0, 2), m.coupling(2, 3)
    w1, w2, w4 = m.omegas[0], m.omegas[1], m.omegas[3]
    return {
        "tau1": 1.0 / (4.0 * J34),
        "tau2": 1.0 / (4.0 * J12),
        "tau3": 2.0 * J * tau / (np.pi * J13),
        "theta1": -w1 / J34,
        "theta2": -4.0 * w2 * J * tau / (np.pi * J13),
        "theta3": w4 / J12 + 4.0 * w4 * J * tau / (np.pi * J13),
    }


def _literal_four_body(J: float, tau: float, m: NmrMachine) -> PulseSequence:
    p = literal_parameters(J, tau, m)
    free1, free2, free3 = FreeEvolution(p["tau1"]), FreeEvolution(p["tau2"]), FreeEvolution(p["tau3"])
    instructions = (
        Rotation((2,), "y", HALF_PI),
        free1, Rotation((2, 3), "x", np.pi), free1,
        Rotation((1,), "y", np.pi),
        Rotation((2,), "x", HALF_PI),
        Rotation((0,), "-y", HALF_PI),
        free2, Rotation((0, 1), "y", np.pi), free2,
        Rotation((0,), "x", HALF_PI),
        free3, Rotation((0, 2), "x", np.pi), free3,
        Rotation((0,), "x", HALF_PI),
        free2, Rotation((0, 1), "y", np.pi), free2,
        Rotation((2,), "-x", HALF_PI),
        Rotation((0,), "-y", HALF_PI),
        free1, Rotation((2, 3), "y", np.pi), free1,
        Rotation((2,), "y", HALF_PI),
        ZPhase(0, p["theta1"]),
        ZPhase(1, p["theta2"]),
        ZPhase(3, p["theta3"]),
    )
    return PulseSequence(PLAQUETTE_SITES, instructions)


# ==================== Entry points ====================

def compile_four_body(
    J: float,
    tau: float,
    m: NmrMachine,
    variant: FourBodyVariant = FourBodyVariant.REFOCUSED
) -> PulseSequence:
    if tau < 0.0:
        raise ValidationError(ServerErrorCode.DURATION_NEGATIVE_55, f"tau={tau}")
    if FourBodyVariant(variant) is FourBodyVariant.LITERAL:
        return _literal_four_body(J, tau, m)
    return _refocused_four_body(J, tau, m)


def compile_trotter_step(
    J: float,
    g: float,
    tau: float,
    m: NmrMachine,
    variant: FourBodyVariant = FourBodyVariant.REFOCUSED
) -> PulseSequence:
    """θ0 x 轉動 + 兩個共軛的四體塊（J -> -J）+ θ0 x 轉動"""
    block = compile_four_body(-J, tau, m, variant).instructions
    instructions = (
        (field_half_step(g, tau),)
        + wrap_conjugated(CONJUGATION_YXYX, block)
        + wrap_conjugated(CONJUGATION_XYXY, block)
        + (field_half_step(g, tau),)
    )
    return PulseSequence(PLAQUETTE_SITES, instructions)


# ==================== Verification ====================

def _report(
    label: str,
    variant: FourBodyVariant,
    build: Callable[[], PulseSequence],
    m: NmrMachine,
    target: np.ndarray,
    threshold: Optional[float]
) -> VerificationReport:
    limit = settings.VERIFY_TOL if threshold is None else threshold
    try:
        s = build()
    except ValidationError as e:
        # 原樣轉錄的序列在某些機器上會給出負的延遲
        if variant is not FourBodyVariant.LITERAL:
            raise
        logger.warning(f"{label} [{variant.value}] cannot be built: {e}")
        return VerificationReport(label, variant.value, float("inf"), limit, False, note=str(e))

    distance, _ = verify_equivalence(sequence_unitary(s, m), target)
    passed = distance <= limit
    log = logger.info if passed or variant is FourBodyVariant.LITERAL else logger.error
    log(f"{label} [{variant.value}]: distance {distance:.3e} (threshold {limit:.1e})")
    return VerificationReport(label, variant.value, distance, limit, passed, len(s), s.free_time)


def verify_four_body(
    J: float,
    tau: float,
    m: NmrMachine,
    variant: FourBodyVariant = FourBodyVariant.REFOCUSED,
    threshold: Optional[float] = None
) -> VerificationReport:
    variant = FourBodyVariant(variant)
    return _report(
        "four_body", variant,
        lambda: compile_four_body(J, tau, m, variant),
        m, four_body_unitary(J, tau), threshold
    )


def verify_trotter_step(
    J: float,
    g: float,
    tau: float,
    m: NmrMachine,
    variant: FourBodyVariant = FourBodyVariant.REFOCUSED,
    threshold: Optional[float] = None
) -> VerificationReport:
    variant = FourBodyVariant(variant)
    return _report(
        "trotter_step", variant,
        lambda: compile_trotter_step(J, g, tau, m, variant),
        m, trotter_unitary(J, g, tau), threshold
    )


def require_passed(report: VerificationReport) -> None:
    if not report.passed:
        raise VerificationError(
            ServerErrorCode.PULSE_VERIFICATION_FAILED_55,
            report.distance,
            report.threshold,
            f"{report.label} [{report.variant}]"
        )


def missing_divisors(m: NmrMachine) -> List[str]:
    return [coupling_name(a, b) for a, b in ((0, 1), (2, 3), (0, 2)) if m.coupling(a, b) == 0.0]
