"""
wen-plaquette-sim 錯誤碼和錯誤消息定義

此文件由 script/generate_error_map.py 自動生成
如需修改錯誤碼或消息，請編輯 resource/feature_code_map.json 後運行生成腳本

生成命令:
    python3 script/generate_error_map.py
"""

ERROR_CODE_TO_MESSAGE = {
    500: "Internal error",
    501: "Simulation run failed",
    502: "Request parameters invalid",
    503: "Config file invalid",
    504: "Output write failed",
    505: "Stepper requires 2x2 lattice",
    510: "Internal error",
    511: "Dimension mismatch",
    512: "Dense limit exceeded",
    513: "Pauli label invalid",
    520: "Internal error",
    521: "Site index invalid",
    522: "Loop path invalid",
    523: "Dimension mismatch",
    524: "Lattice shape invalid",
    530: "Internal error",
    531: "Lanczos not converged",
    532: "Degenerate ground manifold",
    533: "Dense limit exceeded",
    534: "Eigen count invalid",
    540: "Internal error",
    541: "Transverse field must be positive",
    542: "Duration must be positive",
    543: "Sweep endpoints equal",
    544: "Step count too small",
    545: "Dimension mismatch",
    546: "Dense limit exceeded",
    547: "State not normalized",
    548: "Gap power must be positive",
    550: "Internal error",
    551: "Machine coupling zero",
    552: "Machine description invalid",
    553: "Pulse verification failed",
    554: "Matrix not unitary",
    555: "Pulse text invalid",
    556: "Duration negative",
    557: "Dense limit exceeded",
    558: "Dimension mismatch",
    560: "Internal error",
    561: "Dimension mismatch",
    562: "Site set invalid",
    563: "Zero purity state",
    564: "Two site state required",
    565: "Dense limit exceeded",
    566: "Mixing weight out of range",
    567: "Density matrix not hermitian",
    568: "Density matrix trace not one",
    569: "Density matrix not positive",
    570: "Internal error",
    571: "Measurement record incomplete",
    572: "Record text invalid",
    573: "Noise sigma negative",
    574: "Measurement value out of range",
}


ERROR_NAME_TO_CODE = {
    "INTERNAL_ERROR_50": 500,
    "SIMULATION_RUN_FAILED_50": 501,
    "REQUEST_PARAMETERS_INVALID_50": 502,
    "CONFIG_FILE_INVALID_50": 503,
    "OUTPUT_WRITE_FAILED_50": 504,
    "STEPPER_REQUIRES_2X2_LATTICE_50": 505,
    "INTERNAL_ERROR_51": 510,
    "DIMENSION_MISMATCH_51": 511,
    "DENSE_LIMIT_EXCEEDED_51": 512,
    "PAULI_LABEL_INVALID_51": 513,
    "INTERNAL_ERROR_52": 520,
    "SITE_INDEX_INVALID_52": 521,
    "LOOP_PATH_INVALID_52": 522,
    "DIMENSION_MISMATCH_52": 523,
    "LATTICE_SHAPE_INVALID_52": 524,
    "INTERNAL_ERROR_53": 530,
    "LANCZOS_NOT_CONVERGED_53": 531,
    "DEGENERATE_GROUND_MANIFOLD_53": 532,
    "DENSE_LIMIT_EXCEEDED_53": 533,
    "EIGEN_COUNT_INVALID_53": 534,
    "INTERNAL_ERROR_54": 540,
    "TRANSVERSE_FIELD_MUST_BE_POSITIVE_54": 541,
    "DURATION_MUST_BE_POSITIVE_54": 542,
    "SWEEP_ENDPOINTS_EQUAL_54": 543,
    "STEP_COUNT_TOO_SMALL_54": 544,
    "DIMENSION_MISMATCH_54": 545,
    "DENSE_LIMIT_EXCEEDED_54": 546,
    "STATE_NOT_NORMALIZED_54": 547,
    "GAP_POWER_MUST_BE_POSITIVE_54": 548,
    "INTERNAL_ERROR_55": 550,
    "MACHINE_COUPLING_ZERO_55": 551,
    "MACHINE_DESCRIPTION_INVALID_55": 552,
    "PULSE_VERIFICATION_FAILED_55": 553,
    "MATRIX_NOT_UNITARY_55": 554,
    "PULSE_TEXT_INVALID_55": 555,
    "DURATION_NEGATIVE_55": 556,
    "DENSE_LIMIT_EXCEEDED_55": 557,
    "DIMENSION_MISMATCH_55": 558,
    "INTERNAL_ERROR_56": 560,
    "DIMENSION_MISMATCH_56": 561,
    "SITE_SET_INVALID_56": 562,
    "ZERO_PURITY_STATE_56": 563,
    "TWO_SITE_STATE_REQUIRED_56": 564,
    "DENSE_LIMIT_EXCEEDED_56": 565,
    "MIXING_WEIGHT_OUT_OF_RANGE_56": 566,
    "DENSITY_MATRIX_NOT_HERMITIAN_56": 567,
    "DENSITY_MATRIX_TRACE_NOT_ONE_56": 568,
    "DENSITY_MATRIX_NOT_POSITIVE_56": 569,
    "INTERNAL_ERROR_57": 570,
    "MEASUREMENT_RECORD_INCOMPLETE_57": 571,
    "RECORD_TEXT_INVALID_57": 572,
    "NOISE_SIGMA_NEGATIVE_57": 573,
    "MEASUREMENT_VALUE_OUT_OF_RANGE_57": 574,
}


class _ServerErrorCode:
    def __getattr__(self, name: str) -> int:
        if name in ERROR_NAME_TO_CODE:
            return ERROR_NAME_TO_CODE[name]
        raise AttributeError(f"{self.__class__.__name__} has no attribute '{name}'")


class _ServerErrorMessage:
    def __getattr__(self, name: str) -> str:
        if name in ERROR_NAME_TO_CODE:
            return ERROR_CODE_TO_MESSAGE[ERROR_NAME_TO_CODE[name]]
        raise AttributeError(f"{self.__class__.__name__} has no attribute '{name}'")


ServerErrorCode = _ServerErrorCode()
ServerErrorMessage = _ServerErrorMessage()


def get_error_code_from_message(message: str):
    for code, msg in ERROR_CODE_TO_MESSAGE.items():
        if msg == message:
            return code
    return None
