"""Splice diagram data model.

A splice diagram is a forest of internal vertices joined by internal edges.
Every incidence at a vertex carries a nonzero integer weight.  Leaves come in
two flavours: arrows (link components, carrying a multiplicity) and stubs
(exceptional fibres, no multiplicity).  Leaves carry no weight at their free
end.

Diagrams are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from .errors import DifferentComponents, SelfPathOnLeaf, UnknownElement

VERTEX, EDGE, ARROW, STUB = "vertex", "edge", "arrow", "stub"


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    weights: tuple[int, int]

    def __post_init__(self):
        ends, weights = tuple(self.ends), tuple(self.weights)
        if ends[1] < ends[0]:
            ends, weights = ends[::-1], weights[::-1]
        object.__setattr__(self, "ends", ends)
        object.__setattr__(self, "weights", weights)

    def weight_at(self, v: str) -> int:
        if v == self.ends[0]:
            return self.weights[0]
        if v == self.ends[1]:
            return self.weights[1]
        raise UnknownElement(f"vertex {v!r} is not an end of edge {self.id!r}")

    def other(self, v: str) -> str:
        if v == self.ends[0]:
            return self.ends[1]
        if v == self.ends[1]:
            return self.ends[0]
        raise UnknownElement(f"vertex {v!r} is not an end of edge {self.id!r}")


@dataclass(frozen=True)
class Arrow:
    id: str
    base: str
    weight: int
    multiplicity: int = 0


@dataclass(frozen=True)
class Stub:
    id: str
    base: str
    weight: int


class Incidence(NamedTuple):
    """One item seen from a vertex: its kind, id, weight at the vertex, far vertex."""

    kind: str
    id: str
    weight: int
    far: str | None = None


class Violation(NamedTuple):
    element: str
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} [{self.element}]: {self.message}"


class Component(NamedTuple):
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    arrows: tuple[str, ...]
    stubs: tuple[str, ...]


@dataclass(frozen=True)
class SpliceDiagram:
    vertices: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    arrows: tuple[Arrow, ...] = ()
    stubs: tuple[Stub, ...] = ()

    def __post_init__(self):
        # Sorted but not deduplicated: validate() must still see duplicates.
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows, key=lambda a: a.id)))
        object.__setattr__(self, "stubs", tuple(sorted(self.stubs, key=lambda s: s.id)))

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _kinds(self) -> dict[str, str]:
        kinds = {v: VERTEX for v in self.vertices}
        kinds.update((e.id, EDGE) for e in self.edges)
        kinds.update((a.id, ARROW) for a in self.arrows)
        kinds.update((s.id, STUB) for s in self.stubs)
        return kinds

    @cached_property
    def _items(self) -> dict[str, Edge | Arrow | Stub]:
        items: dict[str, Edge | Arrow | Stub] = {}
        for group in (self.edges, self.arrows, self.stubs):
            items.update((x.id, x) for x in group)
        return items

    @cached_property
    def _incidences(self) -> dict[str, tuple[Incidence, ...]]:
        inc: dict[str, list[Incidence]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for end in e.ends:
                if end in inc:
                    inc[end].append(Incidence(EDGE, e.id, e.weight_at(end), e.other(end)))
        for a in self.arrows:
            if a.base in inc:
                inc[a.base].append(Incidence(ARROW, a.id, a.weight))
        for s in self.stubs:
            if s.base in inc:
                inc[s.base].append(Incidence(STUB, s.id, s.weight))
        return {v: tuple(items) for v, items in inc.items()}

    def kind(self, ident: str) -> str:
        try:
            return self._kinds[ident]
        except KeyError:
            raise UnknownElement(f"no element with id {ident!r}") from None

    def __contains__(self, ident: str) -> bool:
        return ident in self._kinds

    def ids(self) -> set[str]:
        return set(self._kinds)

    def edge(self, ident: str) -> Edge:
        if self._kinds.get(ident) != EDGE:
            raise UnknownElement(f"no internal edge with id {ident!r}")
        return self._items[ident]

    def arrow(self, ident: str) -> Arrow:
        if self._kinds.get(ident) != ARROW:
            raise UnknownElement(f"no arrow with id {ident!r}")
        return self._items[ident]

    def stub(self, ident: str) -> Stub:
        if self._kinds.get(ident) != STUB:
            raise UnknownElement(f"no stub with id {ident!r}")
        return self._items[ident]

    def incidences(self, v: str) -> tuple[Incidence, ...]:
        if self._kinds.get(v) != VERTEX:
            raise UnknownElement(f"no vertex with id {v!r}")
        return self._incidences[v]

    def base(self, ident: str) -> str:
        """Vertex an endpoint hangs on (a vertex is its own base)."""
        kind = self.kind(ident)
        if kind == VERTEX:
            return ident
        if kind == EDGE:
            raise UnknownElement(f"edge {ident!r} is not a path endpoint")
        return self._items[ident].base

    def neighbours(self, v: str) -> list[tuple[str, str]]:
        """(edge id, far vertex) pairs at ``v``."""
        return [(i.id, i.far) for i in self.incidences(v) if i.kind == EDGE]

    @property
    def multiplicities(self) -> dict[str, int]:
        return {a.id: a.multiplicity for a in self.arrows}

    def arrow_ids(self) -> list[str]:
        return [a.id for a in self.arrows]

    # -- construction helpers ---------------------------------------------

    def with_multiplicities(self, values: Mapping[str, int]) -> SpliceDiagram:
        """Copy with some arrow multiplicities overridden."""
        for key in values:
            if self._kinds.get(key) != ARROW:
                raise UnknownElement(f"multiplicity given for {key!r}, which is not an arrow")
        arrows = tuple(
            replace(a, multiplicity=int(values[a.id])) if a.id in values else a
            for a in self.arrows
        )
        return replace(self, arrows=arrows)

    def restrict(self, vertices: Iterable[str]) -> SpliceDiagram:
        """Full subdiagram on a vertex set (edges leaving the set are dropped)."""
        keep = set(vertices)
        return SpliceDiagram(
            vertices=tuple(v for v in self.vertices if v in keep),
            edges=tuple(e for e in self.edges if e.ends[0] in keep and e.ends[1] in keep),
            arrows=tuple(a for a in self.arrows if a.base in keep),
            stubs=tuple(s for s in self.stubs if s.base in keep),
        )

    def extended(self, *, vertices=(), edges=(), arrows=(), stubs=()) -> SpliceDiagram:
        return SpliceDiagram(
            vertices=self.vertices + tuple(vertices),
            edges=self.edges + tuple(edges),
            arrows=self.arrows + tuple(arrows),
            stubs=self.stubs + tuple(stubs),
        )

    def without(self, ids: Iterable[str]) -> SpliceDiagram:
        """Drop the given edges, arrows and stubs (vertices are kept)."""
        drop = set(ids)
        return SpliceDiagram(
            vertices=self.vertices,
            edges=tuple(e for e in self.edges if e.id not in drop),
            arrows=tuple(a for a in self.arrows if a.id not in drop),
            stubs=tuple(s for s in self.stubs if s.id not in drop),
        )

    def fresh_id(self, stem: str) -> str:
        ident = stem
        while ident in self._kinds:
            ident += "'"
        return ident


def disjoint_union(d1: SpliceDiagram, d2: SpliceDiagram) -> SpliceDiagram:
    return d1.extended(vertices=d2.vertices, edges=d2.edges, arrows=d2.arrows, stubs=d2.stubs)


def validate(diagram: SpliceDiagram, strict: bool = False) -> list[Violation]:
    """Return the list of broken invariants; empty means the diagram is valid.

    ``strict`` additionally asks for pairwise coprime weights at every vertex,
    which any diagram of a link in a homology sphere satisfies.
    """
    out: list[Violation] = []
    seen: set[str] = set()
    all_ids = (
        list(diagram.vertices)
        + [e.id for e in diagram.edges]
        + [a.id for a in diagram.arrows]
        + [s.id for s in diagram.stubs]
    )
    for ident in all_ids:
        if ident in seen:
            out.append(Violation(ident, "duplicate-id", f"identifier {ident!r} is used more than once"))
        seen.add(ident)

    vertices = set(diagram.vertices)
    for e in diagram.edges:
        for end in e.ends:
            if end not in vertices:
                out.append(Violation(e.id, "unknown-vertex", f"edge end {end!r} is not a vertex"))
        if e.ends[0] == e.ends[1]:
            out.append(Violation(e.id, "loop", f"edge joins {e.ends[0]!r} to itself"))
        for end, w in zip(e.ends, e.weights):
            if w == 0:
                out.append(Violation(e.id, "zero-weight", f"weight at {end!r} is 0"))
    for leaf in (*diagram.arrows, *diagram.stubs):
        if leaf.base not in vertices:
            out.append(Violation(leaf.id, "unknown-vertex", f"base {leaf.base!r} is not a vertex"))
        if leaf.weight == 0:
            out.append(Violation(leaf.id, "zero-weight", "weight is 0"))

    # union-find for the forest condition
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in diagram.edges:
        a, b = e.ends
        if a not in vertices or b not in vertices or a == b:
            continue
        ra, rb = find(a), find(b)
        if ra == rb:
            out.append(Violation(e.id, "cycle", f"edge closes a cycle through {a!r} and {b!r}"))
        else:
            parent[ra] = rb

    if strict:
        for v in diagram.vertices:
            for x, y in combinations(diagram.incidences(v), 2):
                if gcd(x.weight, y.weight) != 1:
                    out.append(Violation(
                        v, "not-coprime",
                        f"weights {x.weight} ({x.id}) and {y.weight} ({y.id}) share a factor",
                    ))
    return out


def components(diagram: SpliceDiagram) -> list[Component]:
    """Connected components, ordered by their smallest vertex id."""
    seen: set[str] = set()
    out = []
    for start in diagram.vertices:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        verts, edges, arrows, stubs = [], set(), [], []
        while queue:
            v = queue.popleft()
            verts.append(v)
            for inc in diagram.incidences(v):
                if inc.kind == EDGE:
                    edges.add(inc.id)
                    if inc.far not in seen:
                        seen.add(inc.far)
                        queue.append(inc.far)
                elif inc.kind == ARROW:
                    arrows.append(inc.id)
                else:
                    stubs.append(inc.id)
        out.append(Component(tuple(sorted(verts)), tuple(sorted(edges)),
                             tuple(sorted(arrows)), tuple(sorted(stubs))))
    return out


def side_of(diagram: SpliceDiagram, v: str, cut_edge: str | None = None) -> set[str]:
    """Vertices reachable from ``v``, optionally without crossing ``cut_edge``."""
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for eid, far in diagram.neighbours(x):
            if eid != cut_edge and far not in seen:
                seen.add(far)
                queue.append(far)
    return seen


def _vertex_path(diagram: SpliceDiagram, src: str, dst: str) -> list[tuple[str, str]] | None:
    """[(edge into x, x), ...] from src to dst, or None when disconnected."""
    prev: dict[str, tuple[str, str] | None] = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for eid, far in diagram.neighbours(x):
            if far not in prev:
                prev[far] = (eid, x)
                queue.append(far)
    if dst not in prev:
        return None
    steps = []
    x = dst
    while prev[x] is not None:
        eid, back = prev[x]
        steps.append((eid, x))
        x = back
    return steps[::-1]


def geodesic(diagram: SpliceDiagram, a: str, b: str) -> tuple[str, ...]:
    """The unique tree path from ``a`` to ``b``, endpoints included.

    Endpoints are vertices, arrows or stubs.  The result alternates vertices
    with the items joining them, e.g. ``(arrow, v1, edge, v2, arrow')``.
    """
    ka, kb = diagram.kind(a), diagram.kind(b)
    if a == b:
        if ka == VERTEX:
            return (a,)
        raise SelfPathOnLeaf(f"no geodesic from leaf {a!r} to itself")
    va, vb = diagram.base(a), diagram.base(b)
    steps = _vertex_path(diagram, va, vb)
    if steps is None:
        raise DifferentComponents(f"{a!r} and {b!r} lie in different components")
    path: list[str] = []
    if ka != VERTEX:
        path.append(a)
    path.append(va)
    for eid, x in steps:
        path.extend((eid, x))
    if kb != VERTEX:
        path.append(b)
    return tuple(path)
