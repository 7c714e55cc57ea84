from typing import Optional, Tuple
import logging
from app.core.core_config import settings
from app.services.pauli.pauli_string_service import StateVector
from app.services.pauli.pauli_operator_service import OperatorSum
from app.services.spectra.spectra_dense_service import dense_spectrum
from app.services.spectra.spectra_lanczos_service import lanczos_ground

logger = logging.getLogger(__name__)


def ground_state(h: OperatorSum, start: Optional[StateVector] = None) -> Tuple[float, StateVector]:
    """小系統走稠密對角化，大系統走 Lanczos（start 作為初始向量）"""
    if h.n_sites <= settings.CORRELATION_DENSE_SITES:
        result = dense_spectrum(h)
        if len(result.ground_group) > 1:
            logger.warning(f"ground level is {len(result.ground_group)}-fold degenerate; returning the first vector")
        return result.ground_energy, result.state(0)
    result = lanczos_ground(h, 1, start=start)
    return result.ground_energy, result.state(0)
