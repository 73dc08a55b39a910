"""
Lark grammar for .fm model sources.
"""

from functools import lru_cache

from lark import Lark

from core.constants import IDENTIFIER_PATTERN

GRAMMAR = r"""
start: _decl*
guard_only: guard

_decl: thing_decl
     | sphere_decl
     | machine_decl
     | flow_decl
     | trigger_decl
     | junction_decl

thing_decl: "thing" NAME ("{" attr_decl* "}")?
attr_decl: NAME ":" domain ("=" value)?
domain: "{" NAME ("," NAME)* "}"   -> enum_domain
      | "int"                      -> int_domain

sphere_decl: "sphere" NAME "{" _sphere_item* "}"
_sphere_item: sphere_decl | machine_decl

machine_decl: "machine" NAME "of" NAME "{" "stages" "{" stage_list? "}" "}"
stage_list: NAME ("," NAME)*

flow_decl: "flow" path "->" path
trigger_decl: "trigger" path "=>" trigger_target ("when" guard)?
?trigger_target: path
               | "junction" NAME   -> junction_target
junction_decl: "junction" NAME "=>" path

path: NAME ("." NAME)+

?guard: or_guard
?or_guard: and_guard
         | and_guard ("or" and_guard)+   -> any_of
?and_guard: not_guard
          | not_guard ("and" not_guard)+ -> all_of
?not_guard: "not" not_guard              -> negation
          | atom
?atom: NAME "=" value                    -> equals
     | "tick" "<=" NAME                  -> clock_before
     | "(" guard ")"

value: NAME | INT

NAME: /%(identifier)s/
INT: /-?[0-9]+/
COMMENT: /#[^\n]*/
WS: /[ \t\r\n]+/

%%ignore WS
%%ignore COMMENT
"""


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    """Build the shared LALR parser once per process."""
    source = GRAMMAR.replace("%(identifier)s", IDENTIFIER_PATTERN).replace("%%", "%")
    return Lark(
        source,
        start=["start", "guard_only"],
        parser="lalr",
        propagate_positions=True,
        maybe_placeholders=False,
    )
