"""Runtime configuration"""
import os
from dotenv import load_dotenv
from typing import Optional

load_dotenv()


def _flag(name: str, default: str = "0") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


# Paths
DATA_OUTPUT_DIR: str = os.getenv("DATA_OUTPUT_DIR", "data/output")

# Logging
LOG_FILE: str = os.getenv("LOG_FILE", os.path.join(DATA_OUTPUT_DIR, "run_history.json"))
LOG_OPERATIONS: bool = _flag("LOG_OPERATIONS")

# Checks
# Full validate() and map consistency after every propagated operation (slow)
DEBUG_CHECKS: bool = _flag("DEBUG_CHECKS")

# Pipelines
DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "0"))
# Envelope samples per facet grow with area / eps**2 between these bounds
ENVELOPE_SAMPLES_PER_FACET: int = int(os.getenv("ENVELOPE_SAMPLES_PER_FACET", "6"))
ENVELOPE_MAX_SAMPLES_PER_FACET: int = int(os.getenv("ENVELOPE_MAX_SAMPLES_PER_FACET", "2000"))
PERIODIC_TOLERANCE: float = float(os.getenv("PERIODIC_TOLERANCE", "1e-9"))
SMOOTHING_WEIGHT: float = float(os.getenv("SMOOTHING_WEIGHT", "0.5"))
ARCHIVE_EXTENSION: str = os.getenv("ARCHIVE_EXTENSION", ".mmsh")
STATS_FILE: Optional[str] = os.getenv("STATS_FILE", None)
