"""
Command-line interface and the bundled model corpus.
"""

from .corpus import CorpusEntry, corpus, find_entry
from .commands import cli, run_cli

__all__ = ["CorpusEntry", "corpus", "find_entry", "cli", "run_cli"]
