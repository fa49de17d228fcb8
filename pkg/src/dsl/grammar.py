"""
Lark grammars for diagram (.archd) and architecture (.archa) files
"""

from functools import lru_cache

from lark import Lark

_COMMON = r"""
IDENT: /[A-Za-z_][A-Za-z0-9_]*(#[0-9]+)?/
INT: /[0-9]+/
_SEMI: ";"
// a '#' directly followed by a digit belongs to a canonical id like T#1
COMMENT: /#(?![0-9])[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

DIAGRAM_GRAMMAR = r"""
start: "diagram" IDENT "{" typedecl+ motif+ "}"

typedecl: "type" IDENT "(" IDENT ("," IDENT)* ")" card _SEMI?

card: INT                     -> card_exact
    | "[" INT "," INT "]"     -> card_range

motif: "motif" "{" portlist? "}" _SEMI?
portlist: portspec ("," portspec)*
portspec: IDENT "." IDENT ":" ivl ":" ivl

ivl: INT                      -> ivl_exact
   | KIND "[" INT "," INT "]" -> ivl_range

KIND: "sc" | "mc"
""" + _COMMON

ARCHITECTURE_GRAMMAR = r"""
start: "architecture" IDENT "of" IDENT "{" comp+ conn* "}"

comp: "component" IDENT ("," IDENT)* ":" IDENT _SEMI?
conn: "connector" pref ("," pref)* _SEMI?
pref: IDENT "." IDENT
""" + _COMMON


@lru_cache(maxsize=None)
def diagram_parser() -> Lark:
    return Lark(DIAGRAM_GRAMMAR, parser="lalr", propagate_positions=True)


@lru_cache(maxsize=None)
def architecture_parser() -> Lark:
    return Lark(ARCHITECTURE_GRAMMAR, parser="lalr", propagate_positions=True)
