"""Diagram calculus: linking numbers, splice/split, reduction, normalization.

The compatibility conditions across a splice edge are enforced, never
repaired: an arrow replacing one side of an edge must carry the
linking-weighted sum of the multiplicities found on the other side.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from math import prod

from .diagram import (
    ARROW, EDGE, STUB, VERTEX, Arrow, Edge, SpliceDiagram, Stub,
    components, disjoint_union, geodesic, side_of,
)
from .errors import (
    DifferentComponents, DuplicateIdentifier, IncompatibleMultiplicities,
    MoveCheckFailed, NotAnInternalEdge, SelfLinkingOfArrow,
)


def linking(diagram: SpliceDiagram, a: str, b: str) -> int:
    """Linking number of two vertices or arrows.

    Product of the weights of every item adjacent to, but not on, the geodesic
    from ``a`` to ``b``.  Zero across components.
    """
    if a == b and diagram.kind(a) != VERTEX:
        raise SelfLinkingOfArrow(f"self-linking of leaf {a!r} is undefined")
    try:
        path = geodesic(diagram, a, b)
    except DifferentComponents:
        return 0
    on_path = set(path)
    return prod(
        inc.weight
        for x in path if diagram.kind(x) == VERTEX
        for inc in diagram.incidences(x) if inc.id not in on_path
    )


def linking_matrix(diagram: SpliceDiagram) -> dict[tuple[str, str], int]:
    """Pairwise linking numbers of distinct arrows."""
    ids = diagram.arrow_ids()
    return {(x, y): linking(diagram, x, y) for x, y in combinations(ids, 2)}


def fiber_multiplicity(diagram: SpliceDiagram, v: str) -> int:
    """Linking of the generic fibre at ``v`` with the multilink."""
    diagram.incidences(v)  # unknown vertices raise here
    return sum(a.multiplicity * linking(diagram, v, a.id) for a in diagram.arrows if a.multiplicity)


def is_fibered(diagram: SpliceDiagram) -> bool:
    if not diagram.arrows or len(components(diagram)) != 1:
        return False
    return all(fiber_multiplicity(diagram, v) != 0 for v in diagram.vertices)


# -- splice and split -------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    """Two pieces of a cut edge.

    ``piece_a`` holds the edge's first end plus every other component of the
    input; ``piece_b`` the tree hanging off the second end.
    """

    piece_a: SpliceDiagram
    arrow_a: str
    piece_b: SpliceDiagram
    arrow_b: str
    edge: str

    @property
    def induced_multiplicities(self) -> tuple[int, int]:
        return (self.piece_a.arrow(self.arrow_a).multiplicity,
                self.piece_b.arrow(self.arrow_b).multiplicity)

    def to_dict(self) -> dict:
        from .dsl import diagram_dict
        return {
            "edge": self.edge,
            "piece_a": diagram_dict(self.piece_a),
            "arrow_a": self.arrow_a,
            "piece_b": diagram_dict(self.piece_b),
            "arrow_b": self.arrow_b,
            "induced_multiplicities": list(self.induced_multiplicities),
        }


def _cut(diagram: SpliceDiagram, edge_id: str, at: str, multiplicity: int = 0,
         arrow_id: str | None = None) -> tuple[SpliceDiagram, str]:
    """The piece on ``at``'s side of the edge, with an arrow replacing the edge."""
    e = diagram.edge(edge_id)
    piece = diagram.restrict(side_of(diagram, at, edge_id))
    new_id = arrow_id or diagram.fresh_id(f"{edge_id}@{at}")
    return piece.extended(arrows=[Arrow(new_id, at, e.weight_at(at), multiplicity)]), new_id


def induced_form(diagram: SpliceDiagram, edge_id: str, at: str) -> dict[str, int]:
    """Coefficients (per arrow) of the multiplicity induced at ``at`` by cutting an edge.

    The sum runs over arrows on the far side, each weighted by its linking
    number with the arrow that replaces the edge there.
    """
    e = diagram.edge(edge_id)
    far = e.other(at)
    piece, new_id = _cut(diagram, edge_id, far)
    return {a.id: linking(piece, new_id, a.id) for a in piece.arrows if a.id != new_id}


def induced_multiplicity(diagram: SpliceDiagram, edge_id: str, at: str) -> int:
    m = diagram.multiplicities
    return sum(c * m[a] for a, c in induced_form(diagram, edge_id, at).items())


def split(diagram: SpliceDiagram, edge_id: str) -> SplitResult:
    """Cut an internal edge, capping both sides with arrows carrying the induced multiplicities."""
    if edge_id not in diagram or diagram.kind(edge_id) != EDGE:
        raise NotAnInternalEdge(f"{edge_id!r} is not an internal edge")
    e = diagram.edge(edge_id)
    v, w = e.ends
    m_v = induced_multiplicity(diagram, edge_id, v)
    m_w = induced_multiplicity(diagram, edge_id, w)
    side_w = side_of(diagram, w, edge_id)
    rest = diagram.restrict(set(diagram.vertices) - side_w)
    piece_b, arrow_b = _cut(diagram, edge_id, w, m_w)
    arrow_a = diagram.fresh_id(f"{edge_id}@{v}")
    piece_a = rest.extended(arrows=[Arrow(arrow_a, v, e.weight_at(v), m_v)])
    return SplitResult(piece_a, arrow_a, piece_b, arrow_b, edge_id)


def splice_equations(d1: SpliceDiagram, arrow1: str, d2: SpliceDiagram, arrow2: str):
    """Both compatibility equations as (label, lhs, rhs) triples."""
    a1, a2 = d1.arrow(arrow1), d2.arrow(arrow2)
    rhs1 = sum(x.multiplicity * linking(d2, arrow2, x.id) for x in d2.arrows if x.id != arrow2)
    rhs2 = sum(x.multiplicity * linking(d1, arrow1, x.id) for x in d1.arrows if x.id != arrow1)
    return [(f"m({arrow1})", a1.multiplicity, rhs1), (f"m({arrow2})", a2.multiplicity, rhs2)]


def splice(d1: SpliceDiagram, arrow1: str, d2: SpliceDiagram, arrow2: str,
           edge_id: str | None = None) -> SpliceDiagram:
    """Join two diagrams along a pair of arrows, which become one internal edge."""
    clash = d1.ids() & d2.ids()
    if clash:
        raise DuplicateIdentifier(f"identifiers shared by both diagrams: {sorted(clash)}")
    a1, a2 = d1.arrow(arrow1), d2.arrow(arrow2)
    bad = [eq for eq in splice_equations(d1, arrow1, d2, arrow2) if eq[1] != eq[2]]
    if bad:
        raise IncompatibleMultiplicities(bad)
    joined = disjoint_union(d1, d2).without([arrow1, arrow2])
    if edge_id is None:
        edge_id = joined.fresh_id(f"{arrow1}-{arrow2}")
    elif edge_id in joined:
        raise DuplicateIdentifier(f"edge id {edge_id!r} already in use")
    return joined.extended(edges=[Edge(edge_id, (a1.base, a2.base), (a1.weight, a2.weight))])


def star_element(diagram: SpliceDiagram, v: str) -> SpliceDiagram:
    """The Seifert splice element at ``v``: its star with every edge cut."""
    arrows, stubs = [], []
    for inc in diagram.incidences(v):
        if inc.kind == ARROW:
            arrows.append(diagram.arrow(inc.id))
        elif inc.kind == STUB:
            stubs.append(diagram.stub(inc.id))
        else:
            m = induced_multiplicity(diagram, inc.id, v)
            arrows.append(Arrow(diagram.fresh_id(f"{inc.id}@{v}"), v, inc.weight, m))
    return SpliceDiagram(vertices=(v,), arrows=tuple(arrows), stubs=tuple(stubs))


# -- reduction --------------------------------------------------------------


def _unit(w: int) -> bool:
    return w in (1, -1)


def reduction_moves(diagram: SpliceDiagram) -> list[tuple[str, str]]:
    """Applicable moves as (kind, vertex), in vertex id order.

    R1: a vertex whose only incidence is an internal edge with weight +-1 there.
    R2: a vertex with exactly two incidences, at least one an internal edge,
        whose near weights are +-1 with product +1.
    R3 (listed after the vertex moves, as (kind, edge)): an edge whose weight
        at each end equals the product of the other weights at the far end.
        Its determinant vanishes, the Seifert fibrations of both ends agree
        on the splice torus, and the two vertices merge into one.
    """
    moves = []
    for v in diagram.vertices:
        inc = diagram.incidences(v)
        if len(inc) == 1 and inc[0].kind == EDGE and _unit(inc[0].weight):
            moves.append(("R1", v))
        elif (len(inc) == 2 and any(i.kind == EDGE for i in inc)
              and all(_unit(i.weight) for i in inc) and inc[0].weight * inc[1].weight == 1):
            moves.append(("R2", v))
    for e in diagram.edges:
        x, y = e.ends
        px, py = e.weights
        rest_x = prod(i.weight for i in diagram.incidences(x) if i.id != e.id)
        rest_y = prod(i.weight for i in diagram.incidences(y) if i.id != e.id)
        if px == rest_y and py == rest_x:
            moves.append(("R3", e.id))
    return moves


def _stub_unless_unit(diagram: SpliceDiagram, ident: str, base: str, weight: int) -> list[Stub]:
    # a weight-1 leaf contributes nothing to any linking product
    return [] if weight == 1 else [Stub(ident, base, weight)]


def _merge(diagram: SpliceDiagram, edge_id: str) -> SpliceDiagram:
    e = diagram.edge(edge_id)
    keep, gone = sorted(e.ends)
    moved = diagram.without([edge_id])
    edges = [Edge(x.id, tuple(keep if end == gone else end for end in x.ends), x.weights)
             for x in moved.edges]
    return SpliceDiagram(
        vertices=tuple(v for v in diagram.vertices if v != gone),
        edges=tuple(edges),
        arrows=tuple(replace(a, base=keep) if a.base == gone else a for a in moved.arrows),
        stubs=tuple(replace(s, base=keep) if s.base == gone else s for s in moved.stubs),
    )


def apply_move(diagram: SpliceDiagram, move: tuple[str, str]) -> SpliceDiagram:
    kind, u = move
    if kind == "R3":
        return _merge(diagram, u)
    inc = diagram.incidences(u)
    rest = diagram.without(i.id for i in inc).restrict(set(diagram.vertices) - {u})
    if kind == "R1":
        (e,) = inc
        x = e.far
        return rest.extended(stubs=_stub_unless_unit(rest, e.id, x, diagram.edge(e.id).weight_at(x)))
    if kind != "R2":
        raise ValueError(f"unknown move {kind!r}")
    edges = [i for i in inc if i.kind == EDGE]
    if len(edges) == 2:
        (e1, e2) = edges
        b1 = diagram.edge(e1.id).weight_at(e1.far)
        b2 = diagram.edge(e2.id).weight_at(e2.far)
        return rest.extended(edges=[Edge(min(e1.id, e2.id), (e1.far, e2.far), (b1, b2))])
    (e,) = edges
    (leaf,) = [i for i in inc if i.kind != EDGE]
    beta = diagram.edge(e.id).weight_at(e.far)
    if leaf.kind == ARROW:
        a = diagram.arrow(leaf.id)
        return rest.extended(arrows=[Arrow(a.id, e.far, beta, a.multiplicity)])
    return rest.extended(stubs=_stub_unless_unit(rest, leaf.id, e.far, beta))


def check_preserved(before: SpliceDiagram, after: SpliceDiagram, what: str) -> None:
    """Raise MoveCheckFailed unless linking data of surviving elements is unchanged."""
    for a in after.arrows:
        if a.id in before and before.arrow(a.id).multiplicity != a.multiplicity:
            raise MoveCheckFailed(f"{what}: multiplicity of {a.id!r} changed")
    kept = [a.id for a in after.arrows if a.id in before]
    for x, y in combinations(kept, 2):
        if linking(before, x, y) != linking(after, x, y):
            raise MoveCheckFailed(f"{what}: linking of {x!r}, {y!r} changed")
    for v in after.vertices:
        if fiber_multiplicity(before, v) != fiber_multiplicity(after, v):
            raise MoveCheckFailed(f"{what}: fibre multiplicity at {v!r} changed")


def reduce(diagram: SpliceDiagram) -> SpliceDiagram:
    """Apply reduction moves, first applicable one first, until none applies."""
    while True:
        moves = reduction_moves(diagram)
        if not moves:
            return diagram
        reduced = apply_move(diagram, moves[0])
        check_preserved(diagram, reduced, f"{moves[0][0]} at {moves[0][1]!r}")
        diagram = reduced


def is_minimal(diagram: SpliceDiagram) -> bool:
    return not reduction_moves(diagram)


# -- normalization ----------------------------------------------------------


def _prunable(diagram: SpliceDiagram, edge: Edge, v: str) -> bool:
    """Can the tree beyond ``edge`` (seen from ``v``) be discarded?

    It must carry only zero multiplicities, the multiplicity induced on its
    side must vanish, and unless it is arrow-free the near side must carry a
    nonzero multiplicity (with everything zero the arrow count matters).
    """
    w = edge.other(v)
    far = side_of(diagram, w, edge.id)
    near = side_of(diagram, v, edge.id)
    far_arrows = [a for a in diagram.arrows if a.base in far]
    if any(a.multiplicity for a in far_arrows):
        return False
    if induced_multiplicity(diagram, edge.id, w):
        return False
    if not far_arrows:
        return True
    return any(a.multiplicity for a in diagram.arrows if a.base in near)


def _prune(diagram: SpliceDiagram, edge: Edge, v: str) -> SpliceDiagram:
    far = side_of(diagram, edge.other(v), edge.id)
    rest = diagram.restrict(set(diagram.vertices) - far)
    return rest.extended(stubs=_stub_unless_unit(rest, edge.id, v, edge.weight_at(v)))


def normalize(diagram: SpliceDiagram) -> SpliceDiagram:
    """Discard zero-multiplicity pieces hanging off a splice with both induced multiplicities 0.

    The discarded tree is replaced by a stub carrying the cut edge's weight at
    the surviving vertex, so linking numbers of what remains are unchanged.
    Components without arrows are dropped as well.
    """
    while True:
        for edge in diagram.edges:
            v = next((v for v in edge.ends if _prunable(diagram, edge, v)), None)
            if v is not None:
                pruned = _prune(diagram, edge, v)
                check_preserved(diagram, pruned, f"pruning beyond {edge.id!r}")
                diagram = pruned
                break
        else:
            break
    keep = [v for comp in components(diagram) if comp.arrows for v in comp.vertices]
    return diagram.restrict(keep)


def minimize(diagram: SpliceDiagram) -> SpliceDiagram:
    """Alternate reduce and normalize until neither changes the diagram."""
    while True:
        nxt = normalize(reduce(diagram))
        if nxt == diagram:
            return diagram
        diagram = nxt
