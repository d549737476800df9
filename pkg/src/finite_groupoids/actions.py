"""Actions of a finite category or groupoid on a finite set through a moment map.

The acted set is E = range(m); ``phi[e]`` is a morphism of the acting
structure and ``theta[g][e]`` is g·e, or ``UNDEFINED``.  g·e is meant to be
defined exactly when Σ(g) = Σ(phi(e)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (UNDEFINED, FiniteGroupoid, base, require_groupoid,
                   validate_category)
from .reports import InvalidStructure, MalformedInput, ValidationReport


@dataclass(frozen=True)
class FiniteAction:
    gpd: FiniteGroupoid
    m: int
    phi: tuple[int, ...]
    theta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n, m = self.gpd.n, self.m
        if not isinstance(m, int) or m < 0:
            raise MalformedInput("m must be a nonnegative integer", field="m")
        phi = tuple(int(x) for x in self.phi)
        if len(phi) != m or any(not 0 <= x < max(n, 1) or n == 0 for x in phi):
            raise MalformedInput(f"phi must list {m} morphisms in range({n})", field="phi")
        theta = tuple(tuple(int(v) for v in row) for row in self.theta)
        if len(theta) != n or any(len(row) != m for row in theta):
            raise MalformedInput(f"theta must be {n}x{m}", field="theta")
        if any(not (v == UNDEFINED or 0 <= v < m) for row in theta for v in row):
            raise MalformedInput(f"theta entries must be -1 or in range({m})", field="theta")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "theta", theta)

    def moment(self, e: int) -> int:
        """φ_Σ(e) = Σ(φ(e)), the object over which e sits."""
        return self.gpd.sigma[self.phi[e]]

    def defined_pairs(self) -> list[tuple[int, int]]:
        return [(g, e) for g in range(self.gpd.n) for e in range(self.m)
                if self.theta[g][e] != UNDEFINED]


def validate_action(a: FiniteAction) -> ValidationReport:
    """Act1 definedness, Act2 unit law, Act3 moment compatibility,
    Act4 mixed associativity; every violation is listed."""
    cat = validate_category(a.gpd)
    if not cat.ok:
        raise InvalidStructure("acting structure is not a category: " + ", ".join(cat.axioms),
                               report=cat)
    g_, th = a.gpd, a.theta
    rep = ValidationReport("action")
    act1, act2, act3, act4 = [], [], [], []
    for e in range(a.m):
        me = a.moment(e)
        for g in range(g_.n):
            if (th[g][e] != UNDEFINED) != (g_.sigma[g] == me):
                act1.append((g, e))
        if th[me][e] != e:
            act2.append((e,))
    for g, e in a.defined_pairs():
        x = th[g][e]
        if a.moment(x) != g_.tau[g]:
            act3.append((g, e))
    for g, e in a.defined_pairs():
        x = th[g][e]
        for h in range(g_.n):
            hg = g_.mu[h][g]
            if hg == UNDEFINED or th[h][x] == UNDEFINED:
                continue
            if th[hg][e] != th[h][x]:
                act4.append((h, g, e))
    rep.add("Act1", "θ(g,e) defined iff Σg = Σφ(e)", act1)
    rep.add("Act2", "θ(Σφ(e), e) = e", act2)
    rep.add("Act3", "Σφ(θ(g,e)) = Tg", act3)
    rep.add("Act4", "θ(μ(h,g), e) = θ(h, θ(g,e))", act4)
    return rep


def require_action(a: FiniteAction) -> None:
    rep = validate_action(a)
    if not rep.ok:
        raise InvalidStructure("not an action: " + ", ".join(rep.axioms), report=rep)


def self_action(g: FiniteGroupoid) -> FiniteAction:
    """The structure acting on its own carrier by composition, moment T."""
    return FiniteAction(g, g.n, g.tau, g.mu)


def base_action(g: FiniteGroupoid) -> FiniteAction:
    """Action on the objects: the i-th base point is moved along g to T(g)."""
    pts = base(g)
    where = {x: i for i, x in enumerate(pts)}
    theta = [[where[g.tau[f]] if g.sigma[f] == x else UNDEFINED for x in pts]
             for f in range(g.n)]
    return FiniteAction(g, len(pts), tuple(pts), theta)


def trivial_action(g: FiniteGroupoid, point: int) -> FiniteAction:
    """One point sitting over the identity ``point``, fixed by everything that can act."""
    theta = [[0 if g.sigma[f] == g.sigma[point] else UNDEFINED] for f in range(g.n)]
    return FiniteAction(g, 1, (point,), theta)


def from_right_action(g: FiniteGroupoid, m: int, phi: Sequence[int],
                      theta_r: Sequence[Sequence[int]]) -> FiniteAction:
    """Turn a right action (``theta_r[e][g]`` = e·g, defined iff Tg = Tφ(e))
    into the left action g·e = e·Υ(g) with moment Υ∘φ."""
    require_groupoid(g)
    if len(theta_r) != m or any(len(row) != g.n for row in theta_r):
        raise MalformedInput(f"right action table must be {m}x{g.n}", field="theta")
    phi_l = tuple(g.upsilon[int(x)] for x in phi)
    theta = [[int(theta_r[e][g.upsilon[f]]) for e in range(m)] for f in range(g.n)]
    return FiniteAction(g, m, phi_l, theta)


def right_self_action(g: FiniteGroupoid) -> tuple[int, tuple[int, ...], list[list[int]]]:
    """(m, phi, theta_r) for the carrier acted on from the right by composition."""
    theta_r = [[g.mu[e][f] for f in range(g.n)] for e in range(g.n)]
    return g.n, g.sigma, theta_r


def action_groupoid(a: FiniteAction) -> FiniteGroupoid:
    """Groupoid of defined pairs (g, e), read as arrows e -> g·e, in lex order."""
    require_groupoid(a.gpd)
    require_action(a)
    g_ = a.gpd
    pairs = a.defined_pairs()
    index = {p: i for i, p in enumerate(pairs)}
    th = a.theta
    sigma, tau, ups = [], [], []
    for g, e in pairs:
        x = th[g][e]
        sigma.append(index[(a.moment(e), e)])
        tau.append(index[(a.moment(x), x)])
        ups.append(index[(g_.upsilon[g], x)])
    mu = []
    for h, e2 in pairs:
        row = []
        for g, e in pairs:
            row.append(index[(g_.mu[h][g], e)] if e2 == th[g][e] else UNDEFINED)
        mu.append(row)
    return FiniteGroupoid.build(sigma, tau, ups, mu)


def orbits(a: FiniteAction) -> list[list[int]]:
    """Orbits of E, each sorted, ordered by smallest element."""
    parent = list(range(a.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g, e in a.defined_pairs():
        r1, r2 = find(e), find(a.theta[g][e])
        if r1 != r2:
            parent[max(r1, r2)] = min(r1, r2)
    groups: dict[int, list[int]] = {}
    for e in range(a.m):
        groups.setdefault(find(e), []).append(e)
    return sorted(groups.values())
