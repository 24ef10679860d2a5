"""Script entry point for the ``rts`` command-line toolkit."""
from __future__ import annotations

import sys
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent
# the library lives under src/ next to the cli package
sys.path.insert(0, str(BASE_DIR / "src"))

from src.cli.app import main  # noqa: E402

if __name__ == "__main__":  # pragma: no cover - CLI entry point
    sys.exit(main())
