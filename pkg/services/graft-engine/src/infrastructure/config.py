# graft-engine/src/infrastructure/config.py
import os
from pathlib import Path

from dotenv import load_dotenv

# Base directory of the graft-engine service
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Values from a local .env file never override the real environment
load_dotenv(BASE_DIR / ".env", override=False)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


# --- Logging ---
LOG_LEVEL = os.getenv("GRAFTS_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = os.getenv("GRAFTS_LOG_FORMAT", "console").lower()

# --- Verification runner ---
WORKERS = _int_env("GRAFTS_WORKERS", 1)
METRICS_FILE = os.getenv("GRAFTS_METRICS_FILE") or None

# --- Per-check caps (checks above a cap report "skipped") ---
PATH_VERTEX_CAP = _int_env("GRAFTS_PATH_VERTEX_CAP", 10)
NEGATIVE_SET_VERTEX_CAP = _int_env("GRAFTS_NEGATIVE_SET_VERTEX_CAP", 12)
BRUTEFORCE_EDGE_CAP = _int_env("GRAFTS_BRUTEFORCE_EDGE_CAP", 20)
MAX_MOUNT_SIZE = _int_env("GRAFTS_MAX_MOUNT_SIZE", 3)
ENUMERATE_VERTEX_CAP = _int_env("GRAFTS_ENUMERATE_VERTEX_CAP", 7)

# --- Solver cache ---
NU_CACHE_SIZE = _int_env("GRAFTS_NU_CACHE_SIZE", 200000)
