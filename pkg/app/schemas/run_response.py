from typing import Dict, List, Optional
from pydantic import BaseModel


class ScanCurveModel(BaseModel):
    g: float
    points: int
    max_wilson_error: float
    max_P_error: float
    # |<W>| < 0.9 的 J 區間寬度
    transition_width: float


class ScanSummaryModel(BaseModel):
    lattice: str
    curves: List[ScanCurveModel]
    files: List[str]


class MScanPointModel(BaseModel):
    M: int
    min_fidelity: float


class SweepSummaryModel(BaseModel):
    lattice: str
    g: float
    T: float
    M: int
    stepper: str
    slices: int
    gap_power: float
    optimized: bool
    adiabaticity_c: float
    min_fidelity: float
    final_fidelity: float
    wilson_deviation: float
    P_deviation: float
    m_scan: Optional[List[MScanPointModel]] = None
    files: List[str]


class CorrelationRowModel(BaseModel):
    ratio: float
    J: float
    method: str
    max_offsite_raw: float
    max_offsite_connected: float


class CorrelateSummaryModel(BaseModel):
    lattice: str
    g: float
    basis: str
    rows: List[CorrelationRowModel]
    files: List[str]


class VerificationReportModel(BaseModel):
    label: str
    variant: str
    distance: float
    threshold: float
    passed: bool
    instructions: int
    free_time: float
    note: str = ""


class CompileSummaryModel(BaseModel):
    machine: str
    J: float
    g: float
    tau: float
    variant: str
    passed: bool
    reports: List[VerificationReportModel]
    files: List[str]


class StatisticModel(BaseModel):
    mean: float
    std: float


class TomoSummaryModel(BaseModel):
    J: float
    g: float
    sigma: float
    seeds: List[int]
    pps_epsilon: float
    fidelity: StatisticModel
    wilson: StatisticModel
    P: StatisticModel
    concurrences: Dict[str, StatisticModel]
    wilson_deviation: float
    files: List[str]
