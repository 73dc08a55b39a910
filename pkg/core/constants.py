"""
Shared constants for the flowkit toolchain.

Diagnostic code tables, file format conventions and diagram styling live
here so that the parser, validator, renderer and CLI agree on them.
"""

# File format constants
MODEL_EXTENSION = ".fm"
SCENARIO_EXTENSION = ".json"
TRACE_EXTENSION = ".jsonl"

# Canonical text layout
INDENT = "  "
ENCODING = "utf-8"

# Identifiers: a letter, then letters/digits/underscore, hyphens only between word characters
IDENTIFIER_PATTERN = r"[A-Za-z][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*"

# Words the DSL reserves; they cannot name spheres, machines or things
RESERVED_WORDS = frozenset(
    {
        "thing", "sphere", "machine", "of", "stages", "flow", "trigger",
        "junction", "when", "and", "or", "not", "tick", "int",
    }
)

# Reserved guard symbol for the simulation clock
CLOCK_SYMBOL = "tick"

# Simulation defaults
DEFAULT_MAX_TICKS = 1000
FIRST_TOKEN_ID = 1

# Trace JSON Lines field order (byte-deterministic output)
TRACE_FIELDS = ("seq", "tick", "machine", "stage", "token", "action", "arc", "cause")
JSON_SEPARATORS = (",", ":")

# CLI exit codes
EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


class ParseCodes:
    """Stable codes for DSL parse diagnostics."""

    LEXICAL = "FM-P001"
    SYNTAX = "FM-P002"
    UNRESOLVED = "FM-P003"
    ILLEGAL_ARC = "FM-P004"
    DUPLICATE = "FM-P005"
    ILLEGAL_MACHINE = "FM-P006"


class RuleCodes:
    """Stable codes for whole-model validation diagnostics."""

    DUPLICATE_STAGE = "FM-E001"
    ILLEGAL_FLOW_PAIR = "FM-E002"
    MACHINE_SUBSPHERE = "FM-E003"
    DANGLING_ENDPOINT = "FM-E004"
    RECEIVE_CONFLICT = "FM-E005"
    SPHERE_CYCLE = "FM-E006"
    TRIGGER_TARGET = "FM-E007"
    JUNCTION_ARITY = "FM-E008"
    GUARD_ATTRIBUTE = "FM-E009"
    KIND_MISMATCH = "FM-E010"
    INERT_STAGE = "FM-W001"
    UNREAD_STORAGE = "FM-W002"


class DotStyle:
    """Graphviz attribute strings used by the renderer."""

    GRAPH_NAME = "flowkit"
    FONT = "Helvetica"
    STAGE_SHAPE = "box"
    STORAGE_SHAPE = "cylinder"
    JUNCTION_ATTRS = 'shape=rect, style=filled, fillcolor=black, label="", height=0.06, width=1.2, fixedsize=true'
    FLOW_EDGE = "solid"
    TRIGGER_EDGE = "dashed"
    OCCUPIED_PERIPHERIES = 2
    SPHERE_STYLE = "rounded"
    MACHINE_STYLE = "solid"


class Severity:
    """Diagnostic severities; errors sort before warnings."""

    ERROR = "error"
    WARNING = "warning"

    RANK = {ERROR: 0, WARNING: 1}
