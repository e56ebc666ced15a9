"""Stratification of multiplicity space.

The Novikov module depends on the multiplicity vector only through which of
finitely many integer linear forms vanish at it.  This module lists those
forms, sweeps boxes of multiplicity vectors grouped by vanishing pattern, and
spot-checks constancy on each stratum by random sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .algebra import NovikovModule, integer_kernel_basis
from .calculus import induced_form, linking, reduce
from .diagram import EDGE, SpliceDiagram, components
from .errors import BudgetExceeded, SignatureCollision
from .novikov import novikov_homology

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[tuple[str, int], ...]
    origin: tuple[str, ...]  # ("fiber", v) | ("arrow", v, a) | ("induced", v, e)

    def evaluate(self, m) -> int:
        return sum(c * m[a] for a, c in self.coefficients)

    def vector(self, arrows: list[str]) -> list[int]:
        coeffs = dict(self.coefficients)
        return [coeffs.get(a, 0) for a in arrows]

    def to_dict(self) -> dict:
        return {"coefficients": dict(self.coefficients), "origin": list(self.origin)}

    def __str__(self) -> str:
        terms = " ".join(f"{c:+d}*{a}" for a, c in self.coefficients)
        return f"{terms} = 0   [{':'.join(self.origin)}]"


def _primitive(coeffs: dict[str, int]) -> tuple[tuple[str, int], ...] | None:
    items = sorted((a, c) for a, c in coeffs.items() if c)
    if not items:
        return None
    g = gcd(*(c for _, c in items))
    if items[0][1] < 0:
        g = -g
    return tuple((a, c // g) for a, c in items)


def hyperplane_forms(diagram: SpliceDiagram) -> list[LinearForm]:
    """Linear forms in the multiplicities whose vanishing pattern fixes the module.

    Per vertex: its fibre multiplicity, each arrow based there, and the
    multiplicity induced across each incident edge.  Forms are made primitive
    with positive leading coefficient; duplicates and identically zero forms
    are dropped.
    """
    arrows = diagram.arrow_ids()
    candidates = []
    for v in diagram.vertices:
        candidates.append((("fiber", v), {a: linking(diagram, v, a) for a in arrows}))
        for inc in diagram.incidences(v):
            if inc.kind == EDGE:
                candidates.append((("induced", v, inc.id), induced_form(diagram, inc.id, v)))
            elif inc.kind == "arrow":
                candidates.append((("arrow", v, inc.id), {inc.id: 1}))
    seen = set()
    out = []
    for origin, coeffs in candidates:
        key = _primitive(coeffs)
        if key is None or key in seen:
            continue
        seen.add(key)
        out.append(LinearForm(key, origin))
    return out


def signature_of(forms: list[LinearForm], m) -> frozenset[int]:
    """Indices of the forms vanishing at ``m``."""
    return frozenset(i for i, f in enumerate(forms) if f.evaluate(m) == 0)


@dataclass(frozen=True)
class Stratum:
    signature: tuple[int, ...]
    module: NovikovModule
    sample: tuple[int, ...]
    count: int
    verified: int

    def to_dict(self) -> dict:
        return {"signature": list(self.signature), "module": self.module.to_dict(),
                "sample": list(self.sample), "count": self.count, "verified": self.verified}


@dataclass(frozen=True)
class Census:
    arrows: tuple[str, ...]
    forms: tuple[LinearForm, ...]
    strata: tuple[Stratum, ...]
    zero_module: NovikovModule
    k: int
    c: int
    box_radius: int
    seed: int

    @property
    def modules(self) -> list[NovikovModule]:
        """Distinct modules over nonzero multiplicity vectors, in first-seen order."""
        out = []
        for s in self.strata:
            if s.module not in out:
                out.append(s.module)
        return out

    @property
    def distinct_modules(self) -> int:
        return len(self.modules)

    @property
    def bound(self) -> int:
        return 3 ** self.k - 2 * (self.k - self.c)

    @property
    def bound_satisfied(self) -> bool:
        return self.distinct_modules <= self.bound

    def to_dict(self) -> dict:
        return {
            "arrows": list(self.arrows),
            "forms": [f.to_dict() for f in self.forms],
            "strata": [s.to_dict() for s in self.strata],
            "zero": {"module": self.zero_module.to_dict(), "outside_theorem": True},
            "distinct_modules": self.distinct_modules,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
            "box_radius": self.box_radius,
            "seed": self.seed,
        }


def _box(n: int, radius: int) -> np.ndarray:
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _vanishing(points: np.ndarray, coef: list[list[int]]) -> np.ndarray:
    if not coef:
        return np.zeros((len(points), 0), dtype=bool)
    bound = max(abs(c) for row in coef for c in row) * int(np.abs(points).max(initial=0)) * len(coef[0])
    if bound < 2 ** 62:
        return points @ np.array(coef, dtype=np.int64).T == 0
    # fall back to exact Python ints
    return np.array([[sum(c * int(x) for c, x in zip(row, p)) == 0 for row in coef]
                     for p in points], dtype=bool)


def _module_at(diagram: SpliceDiagram, arrows, values) -> NovikovModule:
    return novikov_homology(diagram.with_multiplicities(dict(zip(arrows, map(int, values)))))


def sweep(diagram: SpliceDiagram, box_radius: int, *, budget: int = DEFAULT_BUDGET,
          checks_per_stratum: int = 16, seed: int = 0) -> Census:
    """Census of Novikov modules over every multiplicity vector in [-B, B]^n.

    Vectors are grouped by vanishing pattern.  On each stratum the module is
    computed at ``checks_per_stratum`` members (first, last, and random
    others) and must agree; a disagreement raises SignatureCollision.
    """
    if box_radius < 1:
        raise ValueError("box radius must be at least 1")
    minimal = reduce(diagram)
    arrows = minimal.arrow_ids()
    n = len(arrows)
    if n == 0:
        raise ValueError("the diagram has no arrows")
    total = (2 * box_radius + 1) ** n
    if total > budget:
        raise BudgetExceeded(f"{total} multiplicity vectors exceed the budget of {budget}")
    forms = hyperplane_forms(minimal)
    points = _box(n, box_radius)
    nonzero = points.any(axis=1)
    points = points[nonzero]
    zeros = _vanishing(points, [f.vector(arrows) for f in forms])
    patterns, inverse, counts = np.unique(zeros, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    starts = np.concatenate(([0], np.cumsum(counts)))

    rng = random.Random(seed)
    strata = []
    for s, pattern in enumerate(patterns):
        members = order[starts[s]:starts[s + 1]]
        picks = {0, len(members) - 1}
        extra = min(checks_per_stratum, len(members)) - len(picks)
        if extra > 0:
            picks.update(rng.sample(range(1, len(members) - 1), extra))
        first = points[members[0]]
        module = _module_at(minimal, arrows, first)
        for i in sorted(picks):
            other = points[members[i]]
            got = _module_at(minimal, arrows, other)
            if got != module:
                raise SignatureCollision(
                    f"vanishing pattern {np.flatnonzero(pattern).tolist()} gives {module} "
                    f"at {first.tolist()} but {got} at {other.tolist()}")
        strata.append(Stratum(tuple(np.flatnonzero(pattern).tolist()), module,
                              tuple(int(x) for x in first), int(counts[s]), len(picks)))
    strata.sort(key=lambda st: (len(st.signature), st.signature))
    return Census(
        arrows=tuple(arrows), forms=tuple(forms), strata=tuple(strata),
        zero_module=NovikovModule(n), k=len(minimal.vertices),
        c=len(components(minimal)), box_radius=box_radius, seed=seed,
    )


@dataclass(frozen=True)
class ConstancyReport:
    signature: tuple[int, ...]
    samples: tuple[tuple[int, ...], ...]
    modules: tuple[NovikovModule, ...]
    requested: int
    seed: int
    error: str | None = None

    @property
    def constant(self) -> bool:
        return len(set(self.modules)) <= 1

    @property
    def module(self) -> NovikovModule | None:
        return self.modules[0] if self.modules else None

    def to_dict(self) -> dict:
        return {
            "signature": list(self.signature),
            "module": self.module.to_dict() if self.module else None,
            "constant": self.constant,
            "samples": len(self.samples),
            "requested": self.requested,
            "seed": self.seed,
            "error": self.error,
        }


def stratum_constancy_check(diagram: SpliceDiagram, signature, samples: int = 100, *,
                            radius: int = 50, seed: int = 0,
                            max_tries: int | None = None) -> ConstancyReport:
    """Sample nonzero vectors in [-radius, radius]^n with exactly this vanishing pattern.

    Proposals are random integer combinations of a kernel basis of the
    vanishing forms, rejected unless they land in the box with the exact
    pattern.  Every accepted sample must give the same module.
    """
    minimal = reduce(diagram)
    arrows = minimal.arrow_ids()
    forms = hyperplane_forms(minimal)
    target = frozenset(signature)
    rng = random.Random(seed)
    basis = integer_kernel_basis([forms[i].vector(arrows) for i in sorted(target)], len(arrows))
    if max_tries is None:
        max_tries = 200 * samples
    found: list[tuple[int, ...]] = []
    error = None
    if not basis:
        error = "UnrealizableSignature"
    else:
        reach = max(max(abs(x) for x in b) for b in basis)
        span = max(1, radius // reach)
        tries = 0
        while len(found) < samples and tries < max_tries:
            tries += 1
            coeffs = [rng.randint(-span, span) for _ in basis]
            m = tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(len(arrows)))
            if not any(m) or max(abs(x) for x in m) > radius:
                continue
            if signature_of(forms, dict(zip(arrows, m))) != target:
                continue
            found.append(m)
        if not found:
            error = "UnrealizableSignature"
    modules = tuple(_module_at(minimal, arrows, m) for m in found)
    return ConstancyReport(tuple(sorted(target)), tuple(found), modules, samples, seed, error)
