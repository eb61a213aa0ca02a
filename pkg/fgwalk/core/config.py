# fgwalk/core/config.py
import logging
import os
import sys

from dotenv import load_dotenv

# FGW_* overrides from a .env file must be in place before the constants below are read
load_dotenv()

# Version information
VERSION = "1.0.0"
OUTPUT_SCHEMA_VERSION = "1.0"


# --- ANSI colors for stderr logs ---
class TUIColors:
    RESET = "\033[0m"
    DIM = "\033[2m"
    BOLD = "\033[1m"
    BLUE = "\033[94m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"

    # log level colors
    DEBUG = CYAN
    INFO = GREEN
    WARNING = YELLOW
    ERROR = RED
    CRITICAL = BOLD + RED
    LOGGER_NAME = BLUE


class ColorfulFormatter(logging.Formatter):
    """Formatter adding ANSI colors to console log records."""

    LEVEL_COLORS = {
        logging.DEBUG: TUIColors.DEBUG,
        logging.INFO: TUIColors.INFO,
        logging.WARNING: TUIColors.WARNING,
        logging.ERROR: TUIColors.ERROR,
        logging.CRITICAL: TUIColors.CRITICAL,
    }

    def format(self, record):
        color = self.LEVEL_COLORS.get(record.levelno, TUIColors.RESET)
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = f"{color}{record.levelname:<8}{TUIColors.RESET}"
        record.name = f"{TUIColors.LOGGER_NAME}{record.name}{TUIColors.RESET}"
        return super().format(record)


def _env_flag(name: str, default: str = "false") -> bool:
    return os.environ.get(name, default).lower() in ("1", "true", "yes")


# --- Logging Configuration ---
LOG_FILE_NAME: str = os.environ.get("FGW_LOG_FILE", "fgwalk.log")
LOG_LEVEL: int = getattr(
    logging, os.environ.get("FGW_LOG_LEVEL", "WARNING").upper(), logging.WARNING
)
LOG_FORMAT_FILE: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FORMAT_CONSOLE: str = (
    "%(asctime)s - %(name)s - %(levelname)s - "
    f"{TUIColors.DIM}%(message)s{TUIColors.RESET}"
)

# stdout carries result payloads, so console logs always go to stderr
CONSOLE_LOGGING_ENABLED = _env_flag("FGW_DEBUG")


def setup_logging():
    """Configures the package logger."""
    package_logger = logging.getLogger("fgwalk")
    package_logger.setLevel(logging.DEBUG if CONSOLE_LOGGING_ENABLED else LOG_LEVEL)
    package_logger.propagate = False

    for handler in package_logger.handlers[:]:
        package_logger.removeHandler(handler)

    # File handler only in debug mode
    if CONSOLE_LOGGING_ENABLED:
        file_handler = logging.FileHandler(LOG_FILE_NAME, mode="a", encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT_FILE))
        package_logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    if CONSOLE_LOGGING_ENABLED and sys.stderr.isatty():
        console_handler.setFormatter(
            ColorfulFormatter(LOG_FORMAT_CONSOLE, datefmt="%H:%M:%S")
        )
    else:
        console_handler.setFormatter(logging.Formatter(LOG_FORMAT_FILE))
    package_logger.addHandler(console_handler)


def enable_console_logging():
    """Switch to debug logging at runtime (used by the --debug flag)."""
    global CONSOLE_LOGGING_ENABLED
    CONSOLE_LOGGING_ENABLED = True
    setup_logging()


# Initialize logging when this module is imported
setup_logging()
logger = logging.getLogger("fgwalk")

# --- Numerical tolerances ---
# Base spectral tolerance; Spectrum.tol scales it by ||A||_inf * n.
BASE_TOL: float = float(os.environ.get("FGW_TOL", "1e-10"))
IDENTITY_RTOL: float = float(os.environ.get("FGW_IDENTITY_RTOL", "1e-9"))
FD_RTOL: float = float(os.environ.get("FGW_FD_RTOL", "1e-6"))
POWER_ITER_MAX: int = int(os.environ.get("FGW_POWER_ITER_MAX", "100000"))
POWER_ITER_RTOL: float = float(os.environ.get("FGW_POWER_ITER_RTOL", "1e-14"))
NEWTON_TOL: float = float(os.environ.get("FGW_NEWTON_TOL", "1e-12"))

# --- Exact-computation guards ---
BRUTE_FORCE_LIMIT: int = int(os.environ.get("FGW_BRUTE_FORCE_LIMIT", str(10**7)))
LAURENT_TERM_LIMIT: int = int(os.environ.get("FGW_LAURENT_TERM_LIMIT", "2000000"))
FACTOR_LIMIT: int = int(os.environ.get("FGW_FACTOR_LIMIT", str(10**6)))
