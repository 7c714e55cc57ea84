from app.schemas.run_request import (
    ScanRequestModel,
    SweepRequestModel,
    CorrelateRequestModel,
    CompileRequestModel,
    TomoRequestModel,
    MachineRequestModel,
)
from app.schemas.run_response import (
    ScanSummaryModel,
    SweepSummaryModel,
    CorrelateSummaryModel,
    CompileSummaryModel,
    VerificationReportModel,
    TomoSummaryModel,
)
