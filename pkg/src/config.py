"""Configuration management"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

_INVALID: list[str] = []


def _env_int(name: str, default: int) -> int:
    """Read an integer variable, remembering unparsable values for validate()"""
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        _INVALID.append(f"{name} must be an integer, got {raw!r}")
        return default


class Config:
    """Simulation, search and audit limits"""

    # Period detection / simulation budgets
    MAX_ROUNDS: int = _env_int("CHIPFIRE_MAX_ROUNDS", 1_000_000)
    TRAJECTORY_CAP: int = _env_int("CHIPFIRE_TRAJECTORY_CAP", 1_000_000)

    # Exhaustive enumeration limits
    ORIENTATION_EDGE_LIMIT: int = _env_int("CHIPFIRE_ORIENTATION_EDGE_LIMIT", 24)
    SEARCH_BUDGET: int = _env_int("CHIPFIRE_SEARCH_BUDGET", 2_000_000)

    # Audits
    AUDIT_SEED: int = _env_int("CHIPFIRE_AUDIT_SEED", 0)
    AUDIT_JOBS: int = _env_int("CHIPFIRE_AUDIT_JOBS", 1)

    # Logging
    LOG_LEVEL: str = os.getenv("CHIPFIRE_LOG_LEVEL", "WARNING").upper()

    # Paths
    BASE_DIR: Path = Path(__file__).parent.parent
    DATA_DIR: Path = BASE_DIR / "data"
    REPORTS_DIR: Path = Path(os.getenv("CHIPFIRE_REPORTS_DIR", "") or DATA_DIR / "reports")

    @classmethod
    def validate(cls) -> list[str]:
        """Validate configuration"""
        errors = list(_INVALID)
        for name in ("MAX_ROUNDS", "TRAJECTORY_CAP", "ORIENTATION_EDGE_LIMIT", "SEARCH_BUDGET", "AUDIT_JOBS"):
            if getattr(cls, name) < 1:
                errors.append(f"CHIPFIRE_{name} must be positive")
        if cls.LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"CHIPFIRE_LOG_LEVEL is not a logging level: {cls.LOG_LEVEL}")
        return errors


config = Config()
