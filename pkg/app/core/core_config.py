from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """應用配置類"""

    # 運行環境
    APP_ENV: str = "dev"
    APP_NAME: str = "wen_plaquette_sim"
    APP_VERSION: str = "1.0.0"

    # 日誌開關
    ENABLE_LOG: bool = True
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "log"  # 相對於項目根目錄

    # 輸出目錄（命令行 --out 可覆寫）
    OUTPUT_DIR: str = "output"

    # 稠密矩陣上限：12 個格點 = 4096 維
    DENSE_LIMIT: int = 12

    # 簡並判定：DEG_TOL_REL * max(1, |E_min|)
    DEG_TOL_REL: float = 1e-6

    # Lanczos
    LANCZOS_SEED: int = 20150415
    LANCZOS_MAX_ITER: int = 600
    LANCZOS_TOL: float = 1e-9

    # 激發判定帶寬
    DEFECT_TOL: float = 0.1

    # 絕熱 schedule
    COUPLING_FLOOR: float = 1e-12
    SCHEDULE_GRID_POINTS: int = 2001
    # r(J) = gap^p / coupling 的 p
    SCHEDULE_GAP_POWER: float = 1.0

    # 掃描最佳化（逐座標 pattern search）
    SWEEP_OPTIMIZE_STEP: float = 0.5
    SWEEP_OPTIMIZE_MIN_STEP: float = 1e-3
    SWEEP_OPTIMIZE_TOL: float = 1e-12
    SWEEP_OPTIMIZE_MAX_EVALUATIONS: int = 20000

    # 脈衝等價校驗
    VERIFY_TOL: float = 1e-8
    VERIFY_TOL_SCALING: float = 1e-5
    UNITARY_TOL: float = 1e-9

    # 近簡並基態選擇（g 以 |J| 為單位）
    CONTINUATION_G: float = 1e-3
    CONTINUATION_RATIO: float = 0.1
    CORRELATION_DENSE_SITES: int = 8

    # CSV 輸出格式
    CSV_SIGNIFICANT_DIGITS: int = 12
    CSV_SCHEMA_VERSION: int = 1

    # 並行 worker 數，1 表示在當前進程內執行
    WORKERS: int = 1

    def deg_tol(self, e_min: float) -> float:
        return self.DEG_TOL_REL * max(1.0, abs(e_min))

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )


# 全局配置實例
settings = Settings()
