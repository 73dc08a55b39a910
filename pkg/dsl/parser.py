"""
Parser for .fm model sources.

Parsing runs in two steps: lark turns the text into declaration records
carrying source positions, then a binder feeds the records to a
ModelBuilder and converts every rejection into a positioned diagnostic.
No model is returned when any error was found.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from lark import Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError

from core.constants import ENCODING, ParseCodes
from core.exceptions import ModelConstructionError, ValidationError
from dsl.diagnostics import ParseDiagnostic, SourceSpan, code_for_fault, error, span_at
from dsl.grammar import get_parser
from model.builder import ModelBuilder
from model.elements import Attribute, JunctionRef, Model
from model.guards import And, AttributeEquals, ClockBefore, Guard, Not, Or

logger = logging.getLogger(__name__)

DEFAULT_SOURCE_NAME = "<input>"


@dataclass
class ParseResult:
    """Outcome of parse(): a model, or the diagnostics explaining why there is none."""

    model: Optional[Model]
    diagnostics: List[ParseDiagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.model is not None

    @property
    def errors(self) -> List[ParseDiagnostic]:
        return [diag for diag in self.diagnostics if diag.is_error]


# Declaration records


@dataclass
class _Decl:
    line: int
    column: int


@dataclass
class _ThingDecl(_Decl):
    name: str
    attributes: Tuple[Attribute, ...]


@dataclass
class _MachineDecl(_Decl):
    name: str
    kind: str
    stages: Tuple[str, ...]


@dataclass
class _SphereDecl(_Decl):
    name: str
    items: Tuple[Union["_SphereDecl", _MachineDecl], ...]


@dataclass
class _FlowDecl(_Decl):
    source: str
    target: str


@dataclass
class _TriggerDecl(_Decl):
    source: str
    target: Union[str, JunctionRef]
    guard: Optional[Guard]


@dataclass
class _JunctionDecl(_Decl):
    name: str
    target: str


def _value(token: Token) -> Union[str, int]:
    return int(token) if token.type == "INT" else str(token)


class _DeclTransformer(Transformer):
    """Turns the lark tree into declaration records and guard trees."""

    def start(self, items):
        return list(items)

    def guard_only(self, items):
        return items[0]

    @v_args(meta=True)
    def thing_decl(self, meta, items):
        name, *attributes = items
        return _ThingDecl(meta.line, meta.column, str(name), tuple(attributes))

    def attr_decl(self, items):
        name, symbols = str(items[0]), items[1]
        if len(items) > 2:
            return Attribute(name, symbols, items[2])
        return Attribute(name, symbols, symbols[0] if symbols else 0)

    def enum_domain(self, items):
        return tuple(str(item) for item in items)

    def int_domain(self, items):
        return None

    def value(self, items):
        return _value(items[0])

    @v_args(meta=True)
    def sphere_decl(self, meta, items):
        name, *children = items
        return _SphereDecl(meta.line, meta.column, str(name), tuple(children))

    @v_args(meta=True)
    def machine_decl(self, meta, items):
        name, kind, *rest = items
        stages = rest[0] if rest else ()
        return _MachineDecl(meta.line, meta.column, str(name), str(kind), stages)

    def stage_list(self, items):
        return tuple(str(item) for item in items)

    def path(self, items):
        return ".".join(str(item) for item in items)

    @v_args(meta=True)
    def flow_decl(self, meta, items):
        return _FlowDecl(meta.line, meta.column, items[0], items[1])

    @v_args(meta=True)
    def trigger_decl(self, meta, items):
        guard = items[2] if len(items) > 2 else None
        return _TriggerDecl(meta.line, meta.column, items[0], items[1], guard)

    def junction_target(self, items):
        return JunctionRef(str(items[0]))

    @v_args(meta=True)
    def junction_decl(self, meta, items):
        return _JunctionDecl(meta.line, meta.column, str(items[0]), items[1])

    # Guards

    def any_of(self, items):
        return Or(tuple(items))

    def all_of(self, items):
        return And(tuple(items))

    def negation(self, items):
        return Not(items[0])

    def equals(self, items):
        return AttributeEquals(str(items[0]), items[1])

    def clock_before(self, items):
        return ClockBefore(str(items[0]))


class _Binder:
    """Applies declaration records to a builder, collecting diagnostics."""

    def __init__(self, source_name: str, text: str):
        self.source_name = source_name
        self.lines = text.split("\n")
        self.builder = ModelBuilder()
        self.diagnostics: List[ParseDiagnostic] = []

    def _span(self, decl: _Decl) -> SourceSpan:
        line_text = self.lines[decl.line - 1] if decl.line <= len(self.lines) else ""
        length = len(line_text[decl.column - 1:].rstrip())
        return SourceSpan(self.source_name, decl.line, decl.column, max(length, 1))

    def _apply(self, decl: _Decl, action, *args) -> bool:
        try:
            action(*args)
            return True
        except ModelConstructionError as e:
            self.diagnostics.append(error(code_for_fault(e.fault), e.message, self._span(decl)))
            return False

    def _bind_structure(self, decl, parent: Tuple[str, ...]) -> None:
        if isinstance(decl, _MachineDecl):
            self._apply(decl, self.builder.add_machine, parent, decl.name, decl.kind, decl.stages)
            return
        path = parent + (decl.name,)
        if self._apply(decl, self.builder.add_sphere, path):
            for item in decl.items:
                self._bind_structure(item, path)

    def bind(self, decls: Sequence[_Decl]) -> Model:
        # Source order: every name must be declared before it is referenced
        for decl in decls:
            if isinstance(decl, _ThingDecl):
                self._apply(decl, self.builder.add_thing, decl.name, decl.attributes)
            elif isinstance(decl, (_SphereDecl, _MachineDecl)):
                self._bind_structure(decl, ())
            elif isinstance(decl, _JunctionDecl):
                self._apply(decl, self.builder.add_junction, decl.name, decl.target)
            elif isinstance(decl, _FlowDecl):
                self._apply(decl, self.builder.add_flow_arc, decl.source, decl.target)
            elif isinstance(decl, _TriggerDecl):
                self._apply(decl, self.builder.add_trigger_arc, decl.source, decl.target, decl.guard)
        return self.builder.build()


def _decode(source: Union[str, bytes], source_name: str) -> Tuple[Optional[str], List[ParseDiagnostic]]:
    if isinstance(source, str):
        return source.replace("\r\n", "\n"), []
    try:
        return source.decode(ENCODING).replace("\r\n", "\n"), []
    except UnicodeDecodeError as e:
        prefix = source[: e.start].decode(ENCODING, errors="replace")
        line = prefix.count("\n") + 1
        column = len(prefix) - (prefix.rfind("\n") + 1) + 1
        return None, [error(ParseCodes.LEXICAL, "invalid UTF-8 byte sequence", SourceSpan(source_name, line, column))]


# Terminals that may open a declaration or close a sphere body
_ITEM_BOUNDARIES = frozenset({"THING", "SPHERE", "MACHINE", "FLOW", "TRIGGER", "JUNCTION", "RBRACE", "$END"})


def _previous_code_end(lines: List[str], line: int) -> Optional[Tuple[int, int]]:
    """Line and column of the last non-comment character before ``line``."""
    for number in range(line - 1, 0, -1):
        code = lines[number - 1].split("#", 1)[0].rstrip()
        if code:
            return number, len(code)
    return None


def _token_span(exc: UnexpectedToken, text: str, source_name: str) -> SourceSpan:
    token = exc.token
    lines = text.split("\n")
    starts_line = not lines[token.line - 1][: token.column - 1].strip()
    # Mid-declaration, a token opening a new line means something is missing before it
    if starts_line and not (set(exc.expected) & _ITEM_BOUNDARIES):
        previous = _previous_code_end(lines, token.line)
        if previous is not None:
            return span_at(source_name, text, *previous)
    return span_at(source_name, text, token.line, token.column, len(token))


def _syntax_diagnostic(exc: UnexpectedInput, text: str, source_name: str) -> ParseDiagnostic:
    if isinstance(exc, UnexpectedCharacters):
        char = text[exc.pos_in_stream] if 0 <= exc.pos_in_stream < len(text) else ""
        return error(
            ParseCodes.LEXICAL,
            f"unexpected character {char!r}",
            span_at(source_name, text, exc.line, exc.column),
        )

    if isinstance(exc, UnexpectedToken) and exc.token.type != "$END":
        token = exc.token
        expected = ", ".join(sorted(exc.expected)[:6])
        return error(
            ParseCodes.SYNTAX,
            f"unexpected '{token}'; expected {expected}",
            _token_span(exc, text, source_name),
        )

    return error(ParseCodes.SYNTAX, "unexpected end of input", span_at(source_name, text, None, None))


def parse(source: Union[str, bytes], source_name: str = DEFAULT_SOURCE_NAME) -> ParseResult:
    """
    Parse .fm source text into a Model.

    Args:
        source: Model text, or raw bytes that must be valid UTF-8
        source_name: File name reported in diagnostic spans

    Returns:
        ParseResult: The model with no diagnostics, or None with at least one error
    """
    text, diagnostics = _decode(source, source_name)
    if text is None:
        return ParseResult(None, diagnostics)

    try:
        tree = get_parser().parse(text, start="start")
        decls = _DeclTransformer().transform(tree)
    except UnexpectedInput as e:
        return ParseResult(None, [_syntax_diagnostic(e, text, source_name)])
    except (VisitError, RecursionError) as e:
        logger.debug(f"Could not transform {source_name}: {e}")
        return ParseResult(None, [error(ParseCodes.SYNTAX, "malformed declaration", span_at(source_name, text, 1, 1))])

    binder = _Binder(source_name, text)
    model = binder.bind(decls)
    if binder.diagnostics:
        diagnostics = sorted(binder.diagnostics, key=lambda d: (d.span.line, d.span.column, d.code))
        logger.info(f"Parsed {source_name} with {len(diagnostics)} errors")
        return ParseResult(None, diagnostics)

    logger.info(f"Parsed {source_name}: {len(model.machines)} machines, {len(model.arcs)} arcs")
    return ParseResult(model)


def parse_guard(text: str) -> Guard:
    """
    Parse a standalone guard expression such as ``response = accept and tick <= deadline``.

    Raises:
        ValidationError: If the text is not a guard
    """
    try:
        tree = get_parser().parse(text, start="guard_only")
        return _DeclTransformer().transform(tree)
    except (UnexpectedInput, VisitError, RecursionError) as e:
        raise ValidationError(f"Invalid guard expression: {text!r}", field="guard", value=text) from e
