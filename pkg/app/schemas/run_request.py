from typing import Dict, List, Literal, Optional
from pydantic import BaseModel, field_validator, model_validator


class RunRequestModel(BaseModel):
    out: Optional[str] = None
    workers: Optional[int] = None

    @field_validator('workers')
    @classmethod
    def check_workers(cls, v):
        if v is not None and v < 1:
            raise ValueError("workers must be >= 1")
        return v


class LatticeRequestModel(RunRequestModel):
    Lx: int = 2
    Ly: int = 2


class ScanRequestModel(LatticeRequestModel):
    g_list: List[float] = [1.0, 5.0, 20.0]
    j_min: float = -20.0
    j_max: float = 20.0
    j_points: int = 81

    @field_validator('j_points')
    @classmethod
    def check_points(cls, v):
        if v < 2:
            raise ValueError("j_points must be >= 2")
        return v

    @field_validator('g_list', mode='before')
    @classmethod
    def single_g_to_list(cls, v):
        if isinstance(v, (int, float)):
            return [v]
        return v


class SweepRequestModel(LatticeRequestModel):
    g: float = 1.0
    j_start: float = -20.0
    j_end: float = 20.0
    T: float = 6.5684
    M: int = 31
    stepper: Literal["exact", "trotter"] = "exact"
    slices: int = 1
    # r(J) = gap^p / coupling 的 p
    gap_power: float = 1.0
    # 固定 M 下逐座標調整 J_m
    optimize: bool = True
    # M 掃描模式，僅 JSON 配置
    m_scan: Optional[List[int]] = None

    @field_validator('slices')
    @classmethod
    def check_slices(cls, v):
        if v < 1:
            raise ValueError("slices must be >= 1")
        return v

    @field_validator('gap_power')
    @classmethod
    def check_gap_power(cls, v):
        if v <= 0:
            raise ValueError("gap_power must be > 0")
        return v


class CorrelateRequestModel(LatticeRequestModel):
    Ly: int = 6
    g: float = 1.0
    basis: Literal["x", "y", "z"] = "x"
    # J/g
    ratios: List[float] = [0.0, 0.2, 0.5, 1.0, 2.0, 5.0, 100.0]


class CompileRequestModel(RunRequestModel):
    J: float = 1.0
    g: float = 1.0
    tau: float = 0.05
    machine: Optional[str] = None
    variant: Literal["refocused", "literal"] = "refocused"
    threshold: Optional[float] = None


class TomoRequestModel(RunRequestModel):
    J: float = 20.0
    g: float = 1.0
    sigma: float = 0.05
    seed: int = 0
    n_seeds: int = 1
    # 贗純態混合權重，1.0 為純態
    pps_epsilon: float = 1.0

    @field_validator('n_seeds')
    @classmethod
    def check_seeds(cls, v):
        if v < 1:
            raise ValueError("n_seeds must be >= 1")
        return v


class MachineRequestModel(BaseModel):
    name: str = ""
    omegas: List[float]
    couplings: Dict[str, float]

    @model_validator(mode='after')
    def check_sites(self):
        if len(self.omegas) != 4:
            raise ValueError(f"expected 4 chemical shifts, got {len(self.omegas)}")
        return self
