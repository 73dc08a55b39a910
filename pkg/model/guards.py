"""
Guard expressions for trigger arcs and accept policies.

A guard is a small boolean expression tree over attribute comparisons
(``response = accept``) and clock comparisons (``tick <= deadline``).
"""

from dataclasses import dataclass
from typing import Iterator, Mapping, Tuple, Union

from core.constants import CLOCK_SYMBOL
from core.exceptions import GuardEvaluationError

Value = Union[str, int]


@dataclass(frozen=True)
class AttributeEquals:
    """``attribute = value``"""

    attribute: str
    value: Value


@dataclass(frozen=True)
class ClockBefore:
    """``tick <= deadline``: true while the current tick has not passed the named deadline."""

    deadline: str


@dataclass(frozen=True)
class And:
    operands: Tuple["Guard", ...]


@dataclass(frozen=True)
class Or:
    operands: Tuple["Guard", ...]


@dataclass(frozen=True)
class Not:
    operand: "Guard"


Guard = Union[AttributeEquals, ClockBefore, And, Or, Not]


def walk(guard: Guard) -> Iterator[Guard]:
    """Yield every node of a guard tree, depth first."""
    yield guard
    if isinstance(guard, (And, Or)):
        for operand in guard.operands:
            yield from walk(operand)
    elif isinstance(guard, Not):
        yield from walk(guard.operand)


def referenced_attributes(guard: Guard) -> Tuple[AttributeEquals, ...]:
    """Attribute comparisons in a guard, in reading order."""
    return tuple(node for node in walk(guard) if isinstance(node, AttributeEquals))


def referenced_deadlines(guard: Guard) -> Tuple[str, ...]:
    """Deadline names used by clock comparisons, in reading order."""
    return tuple(node.deadline for node in walk(guard) if isinstance(node, ClockBefore))


def eval_guard(
    guard: Guard,
    attributes: Mapping[str, Value],
    bindings: Mapping[str, Value],
    tick: int,
    deadlines: Mapping[str, int],
) -> bool:
    """
    Evaluate a guard.

    Attribute names resolve against the token's attributes first and the
    scenario bindings second. Clock comparisons compare ``tick`` with the
    named deadline.

    Args:
        guard: Expression to evaluate
        attributes: Attributes of the token the guard is evaluated for
        bindings: Scenario-level external choices
        tick: Current simulation tick
        deadlines: Scenario deadlines by name

    Returns:
        bool: Result of the expression

    Raises:
        GuardEvaluationError: If a name cannot be resolved
    """
    if isinstance(guard, AttributeEquals):
        if guard.attribute in attributes:
            actual = attributes[guard.attribute]
        elif guard.attribute in bindings:
            actual = bindings[guard.attribute]
        else:
            raise GuardEvaluationError(
                f"Attribute '{guard.attribute}' has no value", name=guard.attribute
            )
        return actual == guard.value

    if isinstance(guard, ClockBefore):
        if guard.deadline not in deadlines:
            raise GuardEvaluationError(
                f"Deadline '{guard.deadline}' is not defined", name=guard.deadline
            )
        return tick <= deadlines[guard.deadline]

    if isinstance(guard, And):
        return all(eval_guard(op, attributes, bindings, tick, deadlines) for op in guard.operands)

    if isinstance(guard, Or):
        return any(eval_guard(op, attributes, bindings, tick, deadlines) for op in guard.operands)

    if isinstance(guard, Not):
        return not eval_guard(guard.operand, attributes, bindings, tick, deadlines)

    raise TypeError(f"Not a guard expression: {guard!r}")


def format_guard(guard: Guard) -> str:
    """
    Render a guard in canonical DSL syntax.

    Parentheses appear only where precedence (not > and > or) requires
    them, so formatting then parsing returns an equal tree.
    """
    if isinstance(guard, AttributeEquals):
        return f"{guard.attribute} = {guard.value}"

    if isinstance(guard, ClockBefore):
        return f"{CLOCK_SYMBOL} <= {guard.deadline}"

    if isinstance(guard, And):
        return " and ".join(
            f"({format_guard(op)})" if isinstance(op, (And, Or)) else format_guard(op)
            for op in guard.operands
        )

    if isinstance(guard, Or):
        return " or ".join(
            f"({format_guard(op)})" if isinstance(op, Or) else format_guard(op)
            for op in guard.operands
        )

    if isinstance(guard, Not):
        inner = format_guard(guard.operand)
        if isinstance(guard.operand, (And, Or)):
            inner = f"({inner})"
        return f"not {inner}"

    raise TypeError(f"Not a guard expression: {guard!r}")
