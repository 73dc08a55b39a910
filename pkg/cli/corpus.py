"""
The bundled model corpus.

Each entry is a ``.fm`` file under the corpus directory with its scenarios
in ``scenarios/<stem>/`` and its expected outputs in ``golden/``.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

from core.config import get_config
from core.constants import MODEL_EXTENSION, SCENARIO_EXTENSION
from utils.file_handler import FileHandler

logger = logging.getLogger(__name__)

# (entry name, file stem, description) in listing order
ENTRIES = (
    ("book-flow", "book", "A book moves from shelf to librarian to borrower"),
    ("speaker-listener", "speaker", "Concepts trigger words; words trigger understanding"),
    ("job-offer-events", "joboffer", "Four events composing a job-offer process"),
    ("phosphorus-cycle", "phosphorus", "Phosphorus cycling through rocks, water, ocean and sediments"),
    ("call-center", "callcenter", "Hiring a call-center employee from selection to interview"),
)


@dataclass(frozen=True)
class CorpusEntry:
    """One bundled model with its scenarios and golden outputs."""

    name: str
    stem: str
    description: str
    root: Path

    @property
    def model_path(self) -> Path:
        return self.root / f"{self.stem}{MODEL_EXTENSION}"

    @property
    def model_bytes(self) -> bytes:
        return FileHandler().read_bytes(self.model_path)

    @property
    def scenarios(self) -> Dict[str, Path]:
        """Scenario files by name, sorted."""
        directory = self.root / "scenarios" / self.stem
        if not directory.is_dir():
            return {}
        return {path.stem: path for path in sorted(directory.glob(f"*{SCENARIO_EXTENSION}"))}

    @property
    def golden_diagnostics(self) -> Path:
        return self.root / "golden" / f"{self.stem}.diagnostics.json"

    @property
    def golden_dir(self) -> Path:
        return self.root / "golden" / self.stem

    def golden_trace(self, scenario: str) -> Path:
        return self.golden_dir / f"{scenario}.trace.jsonl"

    def golden_events(self, scenario: str) -> Path:
        return self.golden_dir / f"{scenario}.events.json"


def corpus(root: Optional[Path] = None) -> List[CorpusEntry]:
    """
    List the bundled corpus.

    Args:
        root: Corpus directory; defaults to the configured one

    Returns:
        List[CorpusEntry]: The five bundled entries in listing order
    """
    directory = Path(root or get_config().corpus_dir)
    return [CorpusEntry(name, stem, description, directory) for name, stem, description in ENTRIES]


def find_entry(key: str, root: Optional[Path] = None) -> Optional[CorpusEntry]:
    """Look up an entry by name or file stem."""
    for entry in corpus(root):
        if key in (entry.name, entry.stem):
            return entry
    logger.debug(f"No corpus entry named '{key}'")
    return None
