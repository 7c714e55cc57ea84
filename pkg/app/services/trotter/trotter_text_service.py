"""
Line-oriented pulse program text

    # n_sites 4
    # omega_1 628.3185307179587
    # J_12 69.0
    ROT 1,3 x 1.5707963267948966
    FREE 0.0036231884057971015
    ZPHASE 1 -12.3

Sites are 1-based, floats are written with repr so parse -> emit is bit-exact.
IdealUnitary instructions are emitted as `IDEAL label` and rejected by the parser.
"""
from itertools import combinations
from typing import Dict, List, Optional, Tuple
import logging
from app.services.trotter.trotter_machine_service import MACHINE_SITES, NmrMachine
from app.services.trotter.trotter_sequence_service import (
    FreeEvolution,
    IdealUnitary,
    Instruction,
    PulseSequence,
    Rotation,
    ZPhase,
)
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)


def _invalid(line_no: int, line: str, reason: str) -> ValidationError:
    return ValidationError(ServerErrorCode.PULSE_TEXT_INVALID_55, f"line {line_no}: {reason}: {line!r}")


# ==================== Emit ====================

def _instruction_line(instruction: Instruction) -> str:
    if isinstance(instruction, Rotation):
        sites = ",".join(str(s + 1) for s in instruction.sites)
        return f"ROT {sites} {instruction.axis} {instruction.angle!r}"
    if isinstance(instruction, FreeEvolution):
        return f"FREE {instruction.duration!r}"
    if isinstance(instruction, ZPhase):
        return f"ZPHASE {instruction.site + 1} {instruction.angle!r}"
    return f"IDEAL {instruction.label}"


def emit_pulse_text(s: PulseSequence, m: Optional[NmrMachine] = None) -> str:
    lines = [f"# n_sites {s.n_sites}"]
    if m is not None:
        lines += [f"# omega_{i + 1} {omega!r}" for i, omega in enumerate(m.omegas)]
        lines += [f"# J_{a + 1}{b + 1} {m.coupling(a, b)!r}" for a, b in combinations(range(m.n_sites), 2)]
    lines += [_instruction_line(instruction) for instruction in s.instructions]
    return "\n".join(lines) + "\n"


# ==================== Parse ====================

def _parse_float(token: str, line_no: int, line: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise _invalid(line_no, line, f"{token!r} is not a number")


def _parse_site(token: str, line_no: int, line: str) -> int:
    if not token.isdigit() or int(token) < 1:
        raise _invalid(line_no, line, f"{token!r} is not a 1-based site")
    return int(token) - 1


def _parse_instruction(tokens: List[str], line_no: int, line: str) -> Instruction:
    opcode = tokens[0]
    if opcode == "ROT" and len(tokens) == 4:
        sites = tuple(_parse_site(t, line_no, line) for t in tokens[1].split(","))
        return Rotation(sites, tokens[2], _parse_float(tokens[3], line_no, line))
    if opcode == "FREE" and len(tokens) == 2:
        return FreeEvolution(_parse_float(tokens[1], line_no, line))
    if opcode == "ZPHASE" and len(tokens) == 3:
        return ZPhase(_parse_site(tokens[1], line_no, line), _parse_float(tokens[2], line_no, line))
    if opcode == "IDEAL":
        raise _invalid(line_no, line, "ideal unitaries are not machine instructions")
    raise _invalid(line_no, line, "unknown instruction")


def parse_pulse_text(text: str) -> Tuple[PulseSequence, Optional[NmrMachine]]:
    header: Dict[str, str] = {}
    instructions: List[Instruction] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) != 2:
                raise _invalid(line_no, raw, "header lines are '# key value'")
            header[parts[0]] = parts[1]
            continue
        instructions.append(_parse_instruction(line.split(), line_no, raw))

    if "n_sites" not in header or not header["n_sites"].isdigit():
        raise ValidationError(ServerErrorCode.PULSE_TEXT_INVALID_55, "missing '# n_sites' header")
    n_sites = int(header["n_sites"])

    machine: Optional[NmrMachine] = None
    omega_keys = [f"omega_{i + 1}" for i in range(MACHINE_SITES)]
    if any(key.startswith("omega_") or key.startswith("J_") for key in header):
        if not all(key in header for key in omega_keys):
            raise ValidationError(ServerErrorCode.PULSE_TEXT_INVALID_55, "incomplete machine header")
        omegas = [_parse_float(header[key], 0, key) for key in omega_keys]
        couplings = {
            key[2:]: _parse_float(value, 0, key)
            for key, value in header.items() if key.startswith("J_")
        }
        machine = NmrMachine.from_named(omegas, couplings)

    logger.debug(f"parsed {len(instructions)} instructions on {n_sites} sites")
    return PulseSequence(n_sites, tuple(instructions)), machine
