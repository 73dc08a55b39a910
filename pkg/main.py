"""
Main entry point for the flowkit toolchain.

Usage:
    python main.py validate corpus/callcenter.fm
    python main.py sim corpus/book.fm --scenario corpus/scenarios/book/default.json
"""

import logging
import sys
from pathlib import Path

# Add the toolchain to the Python path
framework_path = Path(__file__).parent
sys.path.insert(0, str(framework_path))


def main() -> int:
    """
    Configure logging from the environment and run the command line.

    Log output goes to stderr.
    """
    from core.config import get_config
    from core.constants import EXIT_USAGE
    from core.exceptions import ConfigurationError
    from cli.commands import run_cli

    try:
        config = get_config()
        config.validate()
    except ConfigurationError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=config.logging_level, format="%(levelname)s: %(message)s", stream=sys.stderr)
    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
