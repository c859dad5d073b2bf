"""The ``.ord`` text format and DOT export.

Grammar, one directive per line (UTF-8)::

    # comment
    kind poset            optional, one of raw | preorder | poset
    elements a b c        repeatable
    pair a b              a & b; both must already be declared
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .poset import Poset
from .relation import RelationStructure, is_token

KINDS = ("raw", "preorder", "poset")

_WORD = re.compile(r"\S+")


class UndeclaredElementError(ParseError):
    kind = "undeclared-element"


@dataclass
class RelationFile:
    path: str | None
    structure: RelationStructure
    kind: str | None = None  # declared hint, None when absent
    kind_line: int | None = None
    warnings: list[str] = field(default_factory=list)


def parse_text(text: str, path: str | None = None) -> RelationFile:
    """Parse ``.ord`` source.

    >>> parse_text("elements a b\\npair a b\\n").structure.sorted_pairs()
    [('a', 'b')]
    """
    elements: dict[str, None] = {}
    pairs: dict[tuple[str, str], int] = {}
    warnings: list[str] = []
    kind = None
    kind_line = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        words = []
        for m in _WORD.finditer(line):
            if m.group().startswith("#"):
                break
            words.append((m.group(), m.start() + 1))
        if not words:
            continue
        (head, col), args = words[0], words[1:]
        if head == "elements":
            if not args:
                raise ParseError("'elements' needs at least one name", lineno, col + len(head), path)
            for name, c in args:
                if not is_token(name):
                    raise ParseError(f"invalid element name {name!r}", lineno, c, path)
                if name in elements:
                    warnings.append(f"line {lineno}: element {name} declared again")
                elements[name] = None
        elif head == "pair":
            if len(args) != 2:
                where = args[2][1] if len(args) > 2 else col + len(head)
                raise ParseError("'pair' takes exactly two names", lineno, where, path)
            for name, c in args:
                if not is_token(name):
                    raise ParseError(f"invalid element name {name!r}", lineno, c, path)
                if name not in elements:
                    raise UndeclaredElementError(f"undeclared element {name!r}", lineno, c, path)
            key = (args[0][0], args[1][0])
            if key in pairs:
                warnings.append(f"line {lineno}: duplicate pair {key[0]} {key[1]} (first on line {pairs[key]})")
            else:
                pairs[key] = lineno
        elif head == "kind":
            if len(args) != 1 or args[0][0] not in KINDS:
                where = args[0][1] if args else col + len(head)
                raise ParseError(f"'kind' takes one of {', '.join(KINDS)}", lineno, where, path)
            if kind is not None:
                raise ParseError("'kind' given twice", lineno, col, path)
            kind, kind_line = args[0][0], lineno
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col, path)
    return RelationFile(path, RelationStructure(elements, pairs), kind, kind_line, warnings)


def parse(path: str | Path) -> RelationFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc.reason}", 1, 1, str(path)) from None
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", 0, 0, str(path)) from None
    return parse_text(text, str(path))


def render(s: RelationStructure, kind: str | None = None) -> str:
    """Inverse of ``parse_text`` for structures whose names are tokens."""
    lines = []
    if kind is not None:
        lines.append(f"kind {kind}")
    if len(s):
        lines.append("elements " + " ".join(s.elements))
    lines.extend(f"pair {a} {b}" for a, b in s.sorted_pairs())
    return "\n".join(lines) + "\n"


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: Poset, graph_name: str = "order") -> str:
    """Covering pairs only, drawn bottom to top.

    >>> print(export_dot(Poset.chain("ab")), end="")
    digraph "order" {
      rankdir=BT;
      "a";
      "b";
      "a" -> "b";
    }
    """
    out = [f"digraph {_quote(graph_name)} {{", "  rankdir=BT;"]
    out.extend(f"  {_quote(x)};" for x in p.elements)
    out.extend(f"  {_quote(a)} -> {_quote(b)};" for a, b in p.covers())
    out.append("}")
    return "\n".join(out) + "\n"
