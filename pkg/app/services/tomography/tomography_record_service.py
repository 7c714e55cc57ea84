"""
Synthetic Pauli-basis measurement records

    entry(P) = Tr(ρ P) + ε_P,   ε_P ~ N(0, σ²), identity exempt

Record text:

    # n_sites 4
    # sigma 0.05
    # seed 7
    IIII 1.0
    IIIX 0.0123
    ...
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional
import logging
import numpy as np
from app.services.pauli.pauli_string_service import PauliString
from app.services.pauli.pauli_operator_service import check_dense_limit
from app.services.observables.observables_density_service import StateOrDensity, pauli_expectation
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)

PAULI_ALPHABET = "IXYZ"
# 噪聲截斷在 ±5σ
NOISE_CLIP = 5.0
_RANGE_SLACK = 1e-12


def pauli_words(n_sites: int) -> List[str]:
    """4^n 個字，字母 0 對應 site 0，按 IXYZ 字典序"""
    return ["".join(letters) for letters in product(PAULI_ALPHABET, repeat=n_sites)]


def identity_word(n_sites: int) -> str:
    return "I" * n_sites


@dataclass(frozen=True)
class MeasurementRecord:
    n_sites: int
    entries: Dict[str, float] = field(repr=False)
    noise_sigma: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        for word in self.entries:
            if len(word) != self.n_sites or any(c not in PAULI_ALPHABET for c in word):
                raise ValidationError(ServerErrorCode.RECORD_TEXT_INVALID_57, f"bad word {word!r} for {self.n_sites} sites")
        identity = identity_word(self.n_sites)
        if identity in self.entries and self.entries[identity] != 1.0:
            raise ValidationError(ServerErrorCode.RECORD_TEXT_INVALID_57, f"identity entry is {self.entries[identity]}, expected 1")
        bound = 1.0 + NOISE_CLIP * self.noise_sigma + _RANGE_SLACK
        for word, value in self.entries.items():
            if not abs(value) <= bound:
                raise ValidationError(
                    ServerErrorCode.MEASUREMENT_VALUE_OUT_OF_RANGE_57,
                    f"{word} = {value!r} outside [-{bound:.6g}, {bound:.6g}] for sigma={self.noise_sigma}"
                )

    def missing_words(self) -> List[str]:
        return [word for word in pauli_words(self.n_sites) if word not in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def synth_measure(rho: StateOrDensity, sigma: float, seed: Optional[int] = None) -> MeasurementRecord:
    if sigma < 0.0:
        raise ValidationError(ServerErrorCode.NOISE_SIGMA_NEGATIVE_57, f"sigma={sigma}")
    check_dense_limit(rho.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_56)

    words = pauli_words(rho.n_sites)
    rng = np.random.default_rng(seed)
    # 每個字都抽一次噪聲（恆等字丟棄），不同 sigma 共用同一組隨機數
    noise = np.clip(rng.standard_normal(len(words)), -NOISE_CLIP, NOISE_CLIP)
    identity = identity_word(rho.n_sites)

    entries: Dict[str, float] = {}
    for word, epsilon in zip(words, noise):
        if word == identity:
            entries[word] = 1.0
            continue
        entries[word] = pauli_expectation(rho, PauliString.from_label(word)) + sigma * float(epsilon)
    logger.debug(f"synthesized {len(entries)} entries (sigma={sigma}, seed={seed})")
    return MeasurementRecord(rho.n_sites, entries, float(sigma), seed)


# ==================== Text ====================

def emit_record_text(rec: MeasurementRecord) -> str:
    lines = [f"# n_sites {rec.n_sites}", f"# sigma {rec.noise_sigma!r}"]
    if rec.seed is not None:
        lines.append(f"# seed {rec.seed}")
    ordered = [w for w in pauli_words(rec.n_sites) if w in rec.entries]
    lines += [f"{word} {rec.entries[word]!r}" for word in ordered]
    return "\n".join(lines) + "\n"


def parse_record_text(text: str) -> MeasurementRecord:
    header: Dict[str, str] = {}
    entries: Dict[str, float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.lstrip("#").split()
        if len(parts) != 2:
            raise ValidationError(ServerErrorCode.RECORD_TEXT_INVALID_57, f"line {line_no}: {raw!r}")
        key, value = parts
        if line.startswith("#"):
            header[key] = value
            continue
        if key in entries:
            raise ValidationError(ServerErrorCode.RECORD_TEXT_INVALID_57, f"line {line_no}: {key} given twice")
        try:
            entries[key] = float(value)
        except ValueError:
            raise ValidationError(ServerErrorCode.RECORD_TEXT_INVALID_57, f"line {line_no}: {value!r} is not a number")

    try:
        n_sites = int(header["n_sites"])
        sigma = float(header.get("sigma", "0.0"))
        seed = int(header["seed"]) if "seed" in header else None
    except (KeyError, ValueError) as e:
        raise ValidationError(ServerErrorCode.RECORD_TEXT_INVALID_57, f"bad header: {e}")
    return MeasurementRecord(n_sites, entries, sigma, seed)
