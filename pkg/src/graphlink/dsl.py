"""Line-oriented text format for splice diagrams, and JSON output.

One declaration per line, ``#`` starts a comment::

    vertex <id>
    edge <id> <v> <w> <weight_at_v> <weight_at_w>
    arrow <id> <v> <weight> [m=<int>]
    stub <id> <v> <weight>

Identifiers are any run of characters other than whitespace, ``#`` and ``=``.
Vertices may be declared anywhere in the file.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .diagram import Arrow, Edge, SpliceDiagram, Stub, validate
from .errors import ParseError

_TOKEN = re.compile(r"\S+")
_IDENT = re.compile(r"[^\s#=]+")
_INT = re.compile(r"[+-]?\d+")

_ARITY = {"vertex": 1, "edge": 5, "arrow": 3, "stub": 3}


@dataclass(frozen=True)
class DiagramDocument:
    diagram: SpliceDiagram
    positions: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def default_multiplicities(self) -> dict[str, int]:
        return self.diagram.multiplicities

    def to_dict(self) -> dict:
        return diagram_dict(self.diagram)


def _tokens(line: str) -> list[tuple[str, int]]:
    line = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _ident(tok: str, col: int, lineno: int) -> str:
    if not _IDENT.fullmatch(tok):
        raise ParseError(f"bad identifier {tok!r}", lineno, col)
    return tok


def _int(tok: str, col: int, lineno: int) -> int:
    if not _INT.fullmatch(tok):
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col)
    return int(tok)


def parse(text: str) -> DiagramDocument:
    """Parse DSL text into a validated document."""
    decls = []
    vertices: set[str] = set()
    positions: dict[str, tuple[int, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        (keyword, kcol), args = toks[0], toks[1:]
        if keyword not in _ARITY:
            raise ParseError(f"unknown declaration {keyword!r}", lineno, kcol)
        arity = _ARITY[keyword]
        extra = []
        if keyword == "arrow" and len(args) == arity + 1:
            extra = [args.pop()]
        if len(args) != arity:
            col = args[arity][1] if len(args) > arity else kcol
            raise ParseError(f"{keyword!r} takes {arity} arguments, got {len(args)}", lineno, col)
        ident = _ident(*args[0], lineno)
        if ident in positions:
            first = positions[ident][0]
            raise ParseError(f"duplicate id {ident!r} (first declared on line {first})",
                             lineno, args[0][1])
        positions[ident] = (lineno, args[0][1])
        if keyword == "vertex":
            vertices.add(ident)
        decls.append((keyword, lineno, args, extra))

    def vertex_ref(tok, col, lineno):
        name = _ident(tok, col, lineno)
        if name not in vertices:
            raise ParseError(f"undeclared vertex {name!r}", lineno, col)
        return name

    vs, edges, arrows, stubs = [], [], [], []
    for keyword, lineno, args, extra in decls:
        ident = args[0][0]
        if keyword == "vertex":
            vs.append(ident)
        elif keyword == "edge":
            v = vertex_ref(*args[1], lineno)
            w = vertex_ref(*args[2], lineno)
            edges.append(Edge(ident, (v, w), (_int(*args[3], lineno), _int(*args[4], lineno))))
        elif keyword == "arrow":
            v = vertex_ref(*args[1], lineno)
            m = 0
            if extra:
                tok, col = extra[0]
                if not tok.startswith("m="):
                    raise ParseError(f"expected m=<int>, got {tok!r}", lineno, col)
                m = _int(tok[2:], col + 2, lineno)
            arrows.append(Arrow(ident, v, _int(*args[2], lineno), m))
        else:
            v = vertex_ref(*args[1], lineno)
            stubs.append(Stub(ident, v, _int(*args[2], lineno)))

    diagram = SpliceDiagram(tuple(vs), tuple(edges), tuple(arrows), tuple(stubs))
    violations = validate(diagram)
    if violations:
        first = min(violations, key=lambda x: positions.get(x.element, (0, 0)))
        line, col = positions.get(first.element, (1, 1))
        raise ParseError(str(first), line, col)
    return DiagramDocument(diagram, positions)


def render(diagram: SpliceDiagram | DiagramDocument) -> str:
    """Canonical DSL text: vertices, edges, arrows, stubs, each sorted by id."""
    if isinstance(diagram, DiagramDocument):
        diagram = diagram.diagram
    lines = [f"vertex {v}" for v in diagram.vertices]
    lines += [f"edge {e.id} {e.ends[0]} {e.ends[1]} {e.weights[0]} {e.weights[1]}"
              for e in diagram.edges]
    lines += [f"arrow {a.id} {a.base} {a.weight} m={a.multiplicity}" for a in diagram.arrows]
    lines += [f"stub {s.id} {s.base} {s.weight}" for s in diagram.stubs]
    return "".join(line + "\n" for line in lines)


def diagram_dict(diagram: SpliceDiagram) -> dict:
    return {
        "vertices": list(diagram.vertices),
        "edges": [{"id": e.id, "ends": list(e.ends), "weights": list(e.weights)}
                  for e in diagram.edges],
        "arrows": [{"id": a.id, "base": a.base, "weight": a.weight,
                    "multiplicity": a.multiplicity} for a in diagram.arrows],
        "stubs": [{"id": s.id, "base": s.base, "weight": s.weight} for s in diagram.stubs],
    }


def _plain(obj: Any) -> Any:
    if isinstance(obj, SpliceDiagram):
        return diagram_dict(obj)
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    return obj


def to_json(obj: Any) -> str:
    """Deterministic compact JSON (sorted keys) for any result object."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
