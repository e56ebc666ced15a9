"""Novikov homology of graph multilinks from their splice diagrams.

Pipeline: reduce and normalize the diagram, classify every vertex by the
fibre multiplicity of its Seifert splice element, cut the edges joining
fibered to non-fibered vertices, erase the fibered pieces, and read the
module off the surviving subdiagram: a free part of rank n + c - r - k - 1
plus the cokernel of the k x k matrix P.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import prod

from .algebra import NovikovModule, cokernel
from .calculus import (
    fiber_multiplicity, induced_multiplicity, linking, minimize, star_element,
)
from .diagram import Arrow, SpliceDiagram, components
from .errors import (
    ClassificationMismatch, DivisibilityViolation, EmptyMultilink, NegativeFreeRank,
)


class VertexStatus(enum.Enum):
    FIBERED = "fibered"
    NON_FIBERED = "non-fibered"
    ZERO = "zero"


@dataclass(frozen=True)
class VertexInfo:
    status: VertexStatus
    fiber_multiplicity: int

    def to_dict(self) -> dict:
        return {"status": self.status.value, "fiber_multiplicity": self.fiber_multiplicity}


def classify_vertices(diagram: SpliceDiagram) -> dict[str, VertexInfo]:
    """Fibered / non-fibered / zero status of every vertex."""
    out = {}
    for v in diagram.vertices:
        ell = fiber_multiplicity(diagram, v)
        element = star_element(diagram, v)
        if all(a.multiplicity == 0 for a in element.arrows):
            # every multiplicity of the splice element vanishes
            assert ell == 0, (v, ell)
            status = VertexStatus.ZERO
        elif ell:
            status = VertexStatus.FIBERED
        else:
            status = VertexStatus.NON_FIBERED
        out[v] = VertexInfo(status, ell)
    return out


@dataclass(frozen=True)
class GammaPrime:
    """Non-fibered part of a diagram, with the counts entering the free rank."""

    diagram: SpliceDiagram
    status: dict[str, VertexStatus]
    c: int
    r: int
    n: int
    k: int
    alpha: dict[str, int]
    induced_arrows: tuple[str, ...] = ()

    @property
    def base_rank(self) -> int:
        return self.n + self.c - self.r - self.k - 1

    def to_dict(self) -> dict:
        from .dsl import diagram_dict
        return {
            "diagram": diagram_dict(self.diagram),
            "status": {v: s.value for v, s in sorted(self.status.items())},
            "counts": {"c": self.c, "r": self.r, "n": self.n, "k": self.k},
            "alpha": dict(sorted(self.alpha.items())),
            "induced_arrows": list(self.induced_arrows),
        }


def gamma_prime(diagram: SpliceDiagram,
                classification: dict[str, VertexInfo] | None = None) -> GammaPrime:
    """Cut fibered/non-fibered edges and keep the non-fibered pieces.

    Each cut edge leaves an arrow at its non-fibered end, carrying the edge
    weight there and the induced multiplicity.  The status of every surviving
    vertex is recomputed inside the subdiagram and must agree with the global
    one.
    """
    cls = classification if classification is not None else classify_vertices(diagram)
    fibered = {v for v, info in cls.items() if info.status is VertexStatus.FIBERED}
    new_arrows = []
    for e in diagram.edges:
        a, b = e.ends
        if (a in fibered) == (b in fibered):
            continue
        v = b if a in fibered else a
        new_arrows.append(Arrow(diagram.fresh_id(f"{e.id}@{v}"), v, e.weight_at(v),
                                induced_multiplicity(diagram, e.id, v)))
    sub = diagram.restrict(set(diagram.vertices) - fibered).extended(arrows=new_arrows)

    local = classify_vertices(sub)
    for v, info in local.items():
        if info != cls[v]:
            raise ClassificationMismatch(
                f"vertex {v!r} is {cls[v].status.value} (fibre multiplicity "
                f"{cls[v].fiber_multiplicity}) globally but {info.status.value} "
                f"({info.fiber_multiplicity}) inside the cut subdiagram"
            )
    alpha = {v: prod(a.weight for a in sub.arrows if a.base == v) for v in sub.vertices}
    return GammaPrime(
        diagram=sub,
        status={v: cls[v].status for v in sub.vertices},
        c=len(components(diagram)),
        r=len(components(sub)),
        n=len(sub.arrows),
        k=len(sub.vertices),
        alpha=alpha,
        induced_arrows=tuple(sorted(a.id for a in new_arrows)),
    )


@dataclass(frozen=True)
class PresentationData:
    vertex_order: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"vertex_order": list(self.vertex_order),
                "matrix": [list(row) for row in self.matrix]}


def presentation_matrix(gp: GammaPrime) -> PresentationData:
    """The k x k matrix with entries linking(v, w) / alpha(w) inside each component.

    Rows of zero vertices vanish, as do entries across components.
    """
    order = tuple(gp.diagram.vertices)
    comp_of = {v: i for i, comp in enumerate(components(gp.diagram)) for v in comp.vertices}
    rows = []
    for v in order:
        row = []
        for w in order:
            if comp_of[v] != comp_of[w] or gp.status[v] is VertexStatus.ZERO:
                row.append(0)
                continue
            ell = linking(gp.diagram, v, w)
            q, rem = divmod(ell, gp.alpha[w])
            if rem:
                raise DivisibilityViolation(
                    f"alpha({w})={gp.alpha[w]} does not divide linking({v},{w})={ell}")
            row.append(q)
        rows.append(tuple(row))
    return PresentationData(order, tuple(rows))


@dataclass(frozen=True)
class NovikovAnalysis:
    """Module plus every intermediate object of the computation."""

    module: NovikovModule
    outside_theorem: bool
    minimal: SpliceDiagram | None = None
    classification: dict[str, VertexInfo] = field(default_factory=dict)
    gamma_prime: GammaPrime | None = None
    presentation: PresentationData | None = None

    def to_dict(self) -> dict:
        from .dsl import diagram_dict
        out = {"module": self.module.to_dict(), "outside_theorem": self.outside_theorem}
        if self.minimal is not None:
            out["minimal"] = diagram_dict(self.minimal)
            out["classification"] = {v: i.to_dict() for v, i in sorted(self.classification.items())}
            out["gamma_prime"] = self.gamma_prime.to_dict()
            out["presentation"] = self.presentation.to_dict()
        return out


def analyze(diagram: SpliceDiagram) -> NovikovAnalysis:
    if not diagram.arrows:
        raise EmptyMultilink("the diagram has no arrows")
    if all(a.multiplicity == 0 for a in diagram.arrows):
        # the theorem assumes m != 0; the trivial covering gives one free summand per component
        return NovikovAnalysis(NovikovModule(len(diagram.arrows)), outside_theorem=True)
    minimal = minimize(diagram)
    cls = classify_vertices(minimal)
    gp = gamma_prime(minimal, cls)
    pres = presentation_matrix(gp)
    if gp.base_rank < 0:
        raise NegativeFreeRank(
            f"n + c - r - k - 1 = {gp.n} + {gp.c} - {gp.r} - {gp.k} - 1 = {gp.base_rank}")
    presented = cokernel(pres.matrix)
    module = NovikovModule(gp.base_rank + presented.free_rank, presented.torsion)
    return NovikovAnalysis(module, False, minimal, cls, gp, pres)


def novikov_homology(diagram: SpliceDiagram) -> NovikovModule:
    """Novikov homology of the multilink given by a diagram with multiplicities."""
    return analyze(diagram).module
