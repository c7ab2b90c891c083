"""Configuration management for ontoforge."""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from src import __version__

# Load environment variables from .env file
load_dotenv()


def _flag(name: str, default: str = "") -> bool:
    return os.environ.get(name, default).lower() in ("1", "true", "yes")


class Config:
    """Centralized configuration for the application."""

    # Live source fetching
    FETCH_TIMEOUT = float(os.environ.get("ONTOFORGE_TIMEOUT_SECS", "30"))
    FETCH_WORKERS = max(1, int(os.environ.get("ONTOFORGE_FETCH_WORKERS", "4")))
    USER_AGENT = os.environ.get("ONTOFORGE_USER_AGENT", f"ontoforge/{__version__}")

    # Minted identifiers: <base-prefix><ID_PREFIX><zero-padded id>
    ID_PREFIX = os.environ.get("ONTOFORGE_ID_PREFIX", "MDO_")
    ID_WIDTH = int(os.environ.get("ONTOFORGE_ID_WIDTH", "7"))

    # Logging
    DEBUG = _flag("ONTOFORGE_DEBUG")
    _log_file = os.environ.get("ONTOFORGE_LOG_FILE", "")
    LOG_FILE: Optional[Path] = Path(_log_file) if _log_file else None

    # Well-known vocabulary stems
    OWL = "http://www.w3.org/2002/07/owl#"
    RDFS = "http://www.w3.org/2000/01/rdf-schema#"
    XSD = "http://www.w3.org/2001/XMLSchema#"


# Export commonly used config values at module level for convenience
FETCH_TIMEOUT = Config.FETCH_TIMEOUT
FETCH_WORKERS = Config.FETCH_WORKERS
ID_PREFIX = Config.ID_PREFIX
ID_WIDTH = Config.ID_WIDTH
DEBUG = Config.DEBUG
