"""
Pauli strings over n sites, stored as (x_mask, z_mask) bit masks plus the exponent
of i (mod 4):

    P = i^phase_exp * sigma(x_0, z_0) (x) ... (x) sigma(x_{n-1}, z_{n-1})

with sigma(0,0)=I, sigma(1,0)=X, sigma(1,1)=Y, sigma(0,1)=Z. Site 0 is the least
significant bit of a basis-state index.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple
import logging
import numpy as np
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError, ValidationError

logger = logging.getLogger(__name__)

# i^k, k = 0..3
PHASES: Tuple[complex, ...] = (1 + 0j, 1j, -1 + 0j, -1j)
LETTERS: Dict[Tuple[int, int], str] = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
LETTER_BITS: Dict[str, Tuple[int, int]] = {v: k for k, v in LETTERS.items()}
_PHASE_PREFIX: Dict[str, int] = {"": 0, "+": 0, "-": 2, "i": 1, "+i": 1, "-i": 3}


def _popcount(value: int) -> int:
    return bin(value).count("1")


def _bit_parity(indices: np.ndarray, mask: int) -> np.ndarray:
    """(-1)^popcount(index & mask) 的奇偶位，逐位異或"""
    parity = np.zeros(indices.shape, dtype=np.int64)
    site = 0
    while mask >> site:
        if (mask >> site) & 1:
            parity ^= (indices >> site) & 1
        site += 1
    return parity


# ==================== Types ====================

@dataclass(frozen=True)
class PauliString:
    n_sites: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_sites <= 0:
            raise ValidationError(ServerErrorCode.PAULI_LABEL_INVALID_51, "n_sites must be positive")
        limit = 1 << self.n_sites
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValidationError(ServerErrorCode.PAULI_LABEL_INVALID_51, "mask exceeds n_sites")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n_sites: int) -> "PauliString":
        return cls(n_sites)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """'XYXY', '-XYXY', '+iZI' ... 第一個字母對應 site 0"""
        text = label.strip()
        prefix_end = 0
        while prefix_end < len(text) and text[prefix_end] in "+-i":
            prefix_end += 1
        prefix, word = text[:prefix_end], text[prefix_end:]
        if prefix not in _PHASE_PREFIX or not word or any(c not in LETTER_BITS for c in word):
            raise ValidationError(ServerErrorCode.PAULI_LABEL_INVALID_51, f"bad label {label!r}")
        x_mask = z_mask = 0
        for site, letter in enumerate(word):
            x_bit, z_bit = LETTER_BITS[letter]
            x_mask |= x_bit << site
            z_mask |= z_bit << site
        return cls(len(word), x_mask, z_mask, _PHASE_PREFIX[prefix])

    @classmethod
    def from_sites(cls, n_sites: int, letters: Dict[int, str], phase_exp: int = 0) -> "PauliString":
        x_mask = z_mask = 0
        for site, letter in letters.items():
            if not 0 <= site < n_sites:
                raise ValidationError(ServerErrorCode.PAULI_LABEL_INVALID_51, f"site {site} out of range")
            if letter not in LETTER_BITS:
                raise ValidationError(ServerErrorCode.PAULI_LABEL_INVALID_51, f"bad letter {letter!r}")
            x_bit, z_bit = LETTER_BITS[letter]
            x_mask |= x_bit << site
            z_mask |= z_bit << site
        return cls(n_sites, x_mask, z_mask, phase_exp)

    @property
    def phase(self) -> complex:
        return PHASES[self.phase_exp]

    @property
    def word(self) -> str:
        return "".join(self.letter(site) for site in range(self.n_sites))

    @property
    def label(self) -> str:
        prefix = {0: "", 1: "+i", 2: "-", 3: "-i"}[self.phase_exp]
        return prefix + self.word

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    @property
    def y_count(self) -> int:
        return _popcount(self.x_mask & self.z_mask)

    def letter(self, site: int) -> str:
        return LETTERS[((self.x_mask >> site) & 1, (self.z_mask >> site) & 1)]

    def letters(self) -> Tuple[str, ...]:
        return tuple(self.letter(site) for site in range(self.n_sites))

    def support(self) -> Tuple[int, ...]:
        mask = self.x_mask | self.z_mask
        return tuple(site for site in range(self.n_sites) if (mask >> site) & 1)

    def with_phase(self, phase_exp: int) -> "PauliString":
        return PauliString(self.n_sites, self.x_mask, self.z_mask, phase_exp)

    def unsigned(self) -> "PauliString":
        return self.with_phase(0)

    def multiply(self, other: "PauliString") -> "PauliString":
        """精確乘積 self * other，相位在 {±1, ±i} 中追蹤"""
        _check_sites(self.n_sites, other.n_sites, ServerErrorCode.DIMENSION_MISMATCH_51)
        x_mask = self.x_mask ^ other.x_mask
        z_mask = self.z_mask ^ other.z_mask
        phase_exp = (
            self.phase_exp + other.phase_exp
            + self.y_count + other.y_count
            + 2 * _popcount(self.z_mask & other.x_mask)
            - _popcount(x_mask & z_mask)
        )
        return PauliString(self.n_sites, x_mask, z_mask, phase_exp)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return self.multiply(other)

    def commutes_with(self, other: "PauliString") -> bool:
        _check_sites(self.n_sites, other.n_sites, ServerErrorCode.DIMENSION_MISMATCH_51)
        overlap = _popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)
        return overlap % 2 == 0

    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class StateVector:
    n_sites: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.n_sites <= 0 or data.shape[0] != 1 << self.n_sites:
            raise DimensionError(
                ServerErrorCode.DIMENSION_MISMATCH_51,
                f"{data.shape[0]} amplitudes for {self.n_sites} sites"
            )
        data.flags.writeable = False
        object.__setattr__(self, "amplitudes", data)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex], normalize: bool = False) -> "StateVector":
        data = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n_sites = int(round(np.log2(data.shape[0]))) if data.shape[0] > 0 else 0
        state = cls(n_sites, data)
        return state.normalized() if normalize else state

    @classmethod
    def basis(cls, n_sites: int, index: int) -> "StateVector":
        data = np.zeros(1 << n_sites, dtype=np.complex128)
        data[index] = 1.0
        return cls(n_sites, data)

    @classmethod
    def random(cls, n_sites: int, rng: np.random.Generator) -> "StateVector":
        dim = 1 << n_sites
        data = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return cls(n_sites, data).normalized()

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        norm = self.norm()
        if norm == 0.0:
            raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_51, "cannot normalize the zero vector")
        return StateVector(self.n_sites, self.amplitudes / norm)

    def overlap(self, other: "StateVector") -> complex:
        """<self|other>"""
        _check_sites(self.n_sites, other.n_sites, ServerErrorCode.DIMENSION_MISMATCH_51)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def _check_sites(n_left: int, n_right: int, code: int, what: str = "sites") -> None:
    if n_left != n_right:
        raise DimensionError(code, f"{n_left} vs {n_right} {what}")


# ==================== Apply ====================

def string_action(p: PauliString) -> Tuple[np.ndarray, np.ndarray]:
    """P|b> = coeff[b] |b ^ x_mask>；返回 (目標索引, 係數)"""
    indices = np.arange(1 << p.n_sites, dtype=np.int64)
    signs = 1 - 2 * _bit_parity(indices, p.z_mask)
    coefficient = PHASES[(p.phase_exp + p.y_count) % 4] * signs
    return indices ^ p.x_mask, coefficient


def apply_string(p: PauliString, v: StateVector) -> StateVector:
    _check_sites(p.n_sites, v.n_sites, ServerErrorCode.DIMENSION_MISMATCH_51)
    targets, coefficient = string_action(p)
    out = np.empty_like(v.amplitudes)
    out[targets] = coefficient * v.amplitudes
    return StateVector(v.n_sites, out)


def apply_string_array(p: Optional[PauliString], amplitudes: np.ndarray, action: Optional[Tuple[np.ndarray, np.ndarray]] = None) -> np.ndarray:
    """不做封裝的矩陣無關作用，供 Lanczos / 求和熱路徑使用"""
    targets, coefficient = action if action is not None else string_action(p)
    out = np.empty_like(amplitudes, dtype=np.complex128)
    out[targets] = coefficient * amplitudes
    return out


# ==================== Expectation ====================

def expectation_value(p: PauliString, v: StateVector) -> complex:
    """<v|P|v>，複數值（虛部僅作診斷）"""
    return complex(np.vdot(v.amplitudes, apply_string(p, v).amplitudes))


def expectation(p: PauliString, v: StateVector) -> float:
    value = expectation_value(p, v)
    if p.is_hermitian() and abs(value.imag) > 1e-10:
        logger.debug(f"expectation of {p.label} has imaginary part {value.imag:.3e}")
    return value.real
