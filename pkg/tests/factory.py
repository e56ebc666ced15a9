"""Random and hand-built splice diagrams shared by the test modules."""

from __future__ import annotations

import random
from math import gcd

from graphlink.calculus import splice_equations
from graphlink.diagram import Arrow, Edge, SpliceDiagram, Stub, disjoint_union
from graphlink.dsl import parse


def star(stubs=(), arrows=(), mult=None, v="v", prefix=""):
    """One-vertex diagram; ``arrows`` are weights, ``mult`` their multiplicities."""
    mult = list(mult) if mult is not None else [0] * len(arrows)
    return SpliceDiagram(
        vertices=(v,),
        arrows=tuple(Arrow(f"{prefix}a{i + 1}", v, w, m) for i, (w, m) in enumerate(zip(arrows, mult))),
        stubs=tuple(Stub(f"{prefix}s{i + 1}", v, w) for i, w in enumerate(stubs)),
    )


TREFOIL = parse("vertex v\nstub s1 v 2\nstub s2 v 3\narrow a v 1 m=1").diagram


def coprime_weights(rng: random.Random, count: int, lo=1, hi=9, taken=()) -> list[int]:
    out = list(taken)
    fresh = []
    for _ in range(count):
        choices = [w for w in range(lo, hi + 1) if all(gcd(w, x) == 1 for x in out)]
        w = rng.choice(choices)
        out.append(w)
        fresh.append(w)
    return fresh


def random_star(rng: random.Random, leaves=(2, 7), arrows=(2, 5)):
    """Star with pairwise coprime weights in [1, 9]; returns (diagram, arrow weights, stub weights)."""
    total = rng.randint(*leaves)
    n = rng.randint(arrows[0], min(arrows[1], total))
    weights = coprime_weights(rng, total)
    d = star(stubs=weights[n:], arrows=weights[:n])
    return d, weights[:n], weights[n:]


def random_tree(rng: random.Random, k: int, arrows=(1, 5), prefix="", mrange=3) -> SpliceDiagram:
    """Random tree of k vertices; every vertex gets at least valence 3.

    Weights at each vertex are pairwise coprime in [1, 9]; multiplicities are
    uniform in [-mrange, mrange].
    """
    names = [f"{prefix}v{i}" for i in range(k)]
    links = [(rng.randrange(i), i) for i in range(1, k)]
    at = {v: [] for v in names}
    edges = []
    for j, (p, c) in enumerate(links):
        wp = coprime_weights(rng, 1, taken=at[names[p]])[0]
        at[names[p]].append(wp)
        wc = coprime_weights(rng, 1, taken=at[names[c]])[0]
        at[names[c]].append(wc)
        edges.append(Edge(f"{prefix}e{j}", (names[p], names[c]), (wp, wc)))
    n_arrows = rng.randint(*arrows)
    arrow_list, stubs = [], []
    bases = [rng.choice(names) for _ in range(n_arrows)]
    for i, v in enumerate(bases):
        w = coprime_weights(rng, 1, taken=at[v])[0]
        at[v].append(w)
        arrow_list.append(Arrow(f"{prefix}a{i}", v, w, rng.randint(-mrange, mrange)))
    for v in names:
        while len(at[v]) < 3:
            w = coprime_weights(rng, 1, lo=2, taken=at[v])[0]
            at[v].append(w)
            stubs.append(Stub(f"{prefix}s{len(stubs)}", v, w))
    return SpliceDiagram(tuple(names), tuple(edges), tuple(arrow_list), tuple(stubs))


def compatible_pair(rng: random.Random):
    """Two random trees with one marked arrow each, multiplicities satisfying the splice equations."""
    d1 = random_tree(rng, rng.randint(1, 3), arrows=(2, 4), prefix="p")
    d2 = random_tree(rng, rng.randint(1, 3), arrows=(2, 4), prefix="q")
    a1 = rng.choice(d1.arrow_ids())
    a2 = rng.choice(d2.arrow_ids())
    (_, _, need1), (_, _, need2) = splice_equations(d1, a1, d2, a2)
    d1 = d1.with_multiplicities({a1: need1})
    d2 = d2.with_multiplicities({a2: need2})
    return d1, a1, d2, a2


def two_stars(m=(1, -1, 1, -1)):
    left = star(stubs=(2, 3), arrows=(1, 1), mult=m[:2], v="v", prefix="l")
    right = star(stubs=(5, 7), arrows=(1, 1), mult=m[2:], v="w", prefix="r")
    return disjoint_union(left, right)


SPLICED = parse("""
vertex u
vertex v
edge e u v 5 1
stub s1 u 2
stub s2 u 3
arrow a u 1 m=1
stub t1 v 7
stub t2 v 3
arrow b1 v 1 m=-3
arrow b2 v 1 m=-3
""").diagram


THREE = parse("""
vertex u
vertex v
vertex w
edge e1 u v 5 2
edge e2 v w 3 7
stub s1 u 2
stub s2 u 3
arrow a u 1 m=1
arrow b v 1 m=0
stub t v 5
stub r1 w 2
stub r2 w 3
arrow c w 1 m=-1
""").diagram


# -- diagrams with removable vertices and zero pieces -----------------------


def subdivide(d: SpliceDiagram, edge_id: str, name: str) -> SpliceDiagram:
    """Insert a valence-2 vertex with unit weights in the middle of an edge."""
    e = d.edge(edge_id)
    (p, q), (wp, wq) = e.ends, e.weights
    halves = [Edge(f"{edge_id}.0", (p, name), (wp, 1)), Edge(f"{edge_id}.1", (name, q), (1, wq))]
    return d.without([edge_id]).extended(vertices=[name], edges=halves)


def sprout(d: SpliceDiagram, v: str, weight: int, name: str) -> SpliceDiagram:
    """Hang a bare leaf vertex off ``v``; reducing it leaves a stub of ``weight``."""
    return d.extended(vertices=[name], edges=[Edge(f"{name}.e", (v, name), (weight, 1))])


def graft_zero_piece(rng: random.Random, d: SpliceDiagram, v: str, name: str) -> SpliceDiagram:
    """Attach a Seifert piece carrying only zero multiplicities at ``v``.

    The multiplicities on the near side are redrawn from the kernel of the
    induced form, so the piece is invisible to the rest of the multilink.
    """
    from graphlink.algebra import integer_kernel_basis
    from graphlink.calculus import induced_form

    taken = [inc.weight for inc in d.incidences(v)]
    w = coprime_weights(rng, 1, lo=2, hi=31, taken=taken)[0]
    piece = star(stubs=(3, 5), arrows=(1,), v=name, prefix=f"{name}.")
    g = disjoint_union(d, piece).extended(edges=[Edge(f"{name}.e", (v, name), (w, 1))])
    arrows = d.arrow_ids()
    form = induced_form(g, f"{name}.e", name)
    basis = integer_kernel_basis([[form.get(a, 0) for a in arrows]], len(arrows))
    while True:
        coeffs = [rng.randint(-2, 2) for _ in basis]
        m = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(len(arrows))]
        if any(m):
            return g.with_multiplicities(dict(zip(arrows, m)))


def decorated(rng: random.Random, base: SpliceDiagram) -> SpliceDiagram:
    """``base`` with a removable leaf, a zero piece, and (if possible) a subdivided edge."""
    v = rng.choice(base.vertices)
    taken = [inc.weight for inc in base.incidences(v)]
    d = sprout(base, v, coprime_weights(rng, 1, lo=2, hi=31, taken=taken)[0], "leaf")
    d = graft_zero_piece(rng, d, rng.choice(base.vertices), "zp")
    if base.edges:
        d = subdivide(d, rng.choice(base.edges).id, "mid")
    return d


def sweep_fixtures(rng: random.Random, count: int = 8) -> list[tuple[str, SpliceDiagram]]:
    """Named diagrams with at most 3 vertices and 5 arrows."""
    out = [("trefoil", TREFOIL), ("spliced", SPLICED), ("three", THREE),
           ("two-stars", two_stars()),
           ("star22", star(stubs=(2, 3), arrows=(1, 1), mult=(1, -1)))]
    target = len(out) + count
    while len(out) < target:
        d = random_tree(rng, rng.randint(1, 3), arrows=(2, 5))
        out.append((f"random-{len(out)}", d))
    return out
