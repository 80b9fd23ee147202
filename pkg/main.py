#!/usr/bin/env python3
"""
sharpfront - Main Entry Point

Numerical laboratory for the sharp extinction/propagation threshold of
T_t = T_xx + f(T) started from indicator data.

Usage:
    python main.py simulate -c run.yaml     # Evolve indicator data
    python main.py threshold -c run.yaml    # Bisect for the critical half-width
    python main.py bump / front / lemma22   # Stationary bump, front, comparison checks
    python main.py sweep -c run.yaml -j 4   # Parameter sweep
    python main.py check                    # Invariant suite
"""

import sys
import logging
from pathlib import Path
from typing import List, Optional


def command_line_settings(argv: List[str]):
    """Settings named by ``-c/--config`` and ``--set`` in argv, or the defaults.

    A file that fails to load falls back to the defaults here; the command
    itself then reports the error with its exit code.
    """
    from src.config import Config, config
    from src.errors import SharpFrontError

    config_file: Optional[str] = None
    overrides = []
    for index, arg in enumerate(argv):
        following = argv[index + 1] if index + 1 < len(argv) else None
        if arg in ("-c", "--config") and following is not None:
            config_file = following
        elif arg.startswith("--config="):
            config_file = arg.partition("=")[2]
        elif arg == "--set" and following is not None and following.startswith("logging."):
            overrides.append(following)
    if config_file is None and not overrides:
        return config
    try:
        return Config(config_file, overrides)
    except SharpFrontError:
        return config


def setup_logging(argv: Optional[List[str]] = None):
    """Configure logging for the application."""
    config = command_line_settings(sys.argv[1:] if argv is None else argv)

    log_level = getattr(logging, str(config.get("logging.level", "INFO")).upper(), logging.INFO)
    log_format = config.get(
        "logging.format",
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    log_file = Path(config.get("logging.file", "logs/sharpfront.log"))

    # Create logs directory if it doesn't exist
    log_file.parent.mkdir(parents=True, exist_ok=True)

    logging.basicConfig(
        level=log_level,
        format=log_format,
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(sys.stderr) if config.debug else logging.NullHandler()
        ]
    )


def main():
    """Main entry point."""
    try:
        setup_logging()

        from src.cli.interface import app
        app()

    except KeyboardInterrupt:
        print("\n👋 Interrupted")
        sys.exit(130)
    except ImportError as e:
        print(f"❌ Import error: {e}")
        print("💡 Try: pip install -r requirements.txt")
        sys.exit(1)
    except Exception as e:
        logging.getLogger(__name__).exception("unexpected error")
        print(f"❌ Unexpected error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
