"""Finite groupoids in the one-object presentation.

A structure lives on the carrier ``range(n)`` of morphisms.  ``sigma`` and
``tau`` send a morphism to the identity at its source and target, ``upsilon``
inverts, and ``mu[g][f]`` is the composite "g after f", or ``UNDEFINED``.
Objects are never stored: they are recovered as the fixed points of ``sigma``.

Pullbacks are the canonical subsets of cartesian products, so the composable
pairs are literally ``{(g, f) : sigma[g] == tau[f]}`` and associativity is
plain equality of composites.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .reports import InvalidStructure, MalformedInput, SoundnessError, ValidationReport

UNDEFINED = -1


def _as_tuple(name: str, values, n: int) -> tuple[int, ...]:
    try:
        out = tuple(int(v) for v in values)
    except (TypeError, ValueError):
        raise MalformedInput(f"{name} must be a list of integers", field=name) from None
    if len(out) != n:
        raise MalformedInput(f"{name} has length {len(out)}, expected {n}", field=name)
    for i, v in enumerate(out):
        if not 0 <= v < n:
            raise MalformedInput(f"{name}[{i}] = {v} is outside [0, {n})", field=name)
    return out


@dataclass(frozen=True)
class FiniteGroupoid:
    """Carrier ``range(n)`` with structure maps; ``upsilon=None`` means a bare category."""

    n: int
    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    upsilon: tuple[int, ...] | None
    mu: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
            raise MalformedInput(f"n must be a nonnegative integer, got {n!r}", field="n")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "sigma", _as_tuple("sigma", self.sigma, n))
        object.__setattr__(self, "tau", _as_tuple("tau", self.tau, n))
        if self.upsilon is not None:
            object.__setattr__(self, "upsilon", _as_tuple("upsilon", self.upsilon, n))
        try:
            rows = tuple(tuple(int(v) for v in row) for row in self.mu)
        except (TypeError, ValueError):
            raise MalformedInput("mu must be an n x n integer table", field="mu") from None
        if len(rows) != n or any(len(r) != n for r in rows):
            raise MalformedInput(f"mu must be {n} x {n}", field="mu")
        for g, row in enumerate(rows):
            for f, v in enumerate(row):
                if not UNDEFINED <= v < n:
                    raise MalformedInput(f"mu[{g}][{f}] = {v} is outside [-1, {n})", field="mu")
        object.__setattr__(self, "mu", rows)

    @classmethod
    def build(cls, sigma: Sequence[int], tau: Sequence[int], upsilon: Sequence[int] | None,
              mu) -> "FiniteGroupoid":
        return cls(len(sigma), tuple(sigma), tuple(tau),
                   None if upsilon is None else tuple(upsilon), tuple(map(tuple, mu)))

    # numpy views; the dataclass fields stay the source of truth
    @cached_property
    def S(self) -> np.ndarray:
        return np.array(self.sigma, dtype=np.int64)

    @cached_property
    def T(self) -> np.ndarray:
        return np.array(self.tau, dtype=np.int64)

    @cached_property
    def U(self) -> np.ndarray:
        if self.upsilon is None:
            raise InvalidStructure("structure has no inverse map")
        return np.array(self.upsilon, dtype=np.int64)

    @cached_property
    def M(self) -> np.ndarray:
        return np.array(self.mu, dtype=np.int64).reshape(self.n, self.n)

    @property
    def is_groupoid_data(self) -> bool:
        return self.upsilon is not None

    def composable(self, g: int, f: int) -> bool:
        return self.sigma[g] == self.tau[f]

    def composable_pairs(self) -> list[tuple[int, int]]:
        """The pullback G2, in row-major order."""
        by_target = self.by_target
        return [(g, f) for g in range(self.n) for f in by_target.get(self.sigma[g], ())]

    @cached_property
    def by_target(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for f, t in enumerate(self.tau):
            out.setdefault(t, []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def relabel(self, perm: Sequence[int]) -> "FiniteGroupoid":
        """Image of the structure under the carrier bijection ``x -> perm[x]``."""
        n = self.n
        inv = [0] * n
        for x, y in enumerate(perm):
            inv[y] = x

        def m(v):
            return v if v == UNDEFINED else perm[v]

        sigma = [perm[self.sigma[inv[y]]] for y in range(n)]
        tau = [perm[self.tau[inv[y]]] for y in range(n)]
        ups = None if self.upsilon is None else [perm[self.upsilon[inv[y]]] for y in range(n)]
        mu = [[m(self.mu[inv[a]][inv[b]]) for b in range(n)] for a in range(n)]
        return FiniteGroupoid.build(sigma, tau, ups, mu)

    def without_inverse(self) -> "FiniteGroupoid":
        return FiniteGroupoid(self.n, self.sigma, self.tau, None, self.mu)

    def encode(self) -> tuple[int, ...]:
        """Flat tuple (sigma, tau, upsilon, mu row-major) used for canonical forms."""
        ups = self.upsilon if self.upsilon is not None else ()
        return self.sigma + self.tau + ups + tuple(v for row in self.mu for v in row)


# -- validation -------------------------------------------------------------

def _where(mask: np.ndarray):
    return [tuple(int(i) for i in w) if len(w) > 1 else int(w[0])
            for w in zip(*np.nonzero(mask))]


def _check_category(g: FiniteGroupoid, report: ValidationReport) -> None:
    n = g.n
    if n == 0:
        return
    S, T, M = g.S, g.T, g.M
    idx = np.arange(n)
    report.add("A1", "TΣ=Σ", _where(T[S] != S))
    report.add("A2", "ΣT=T", _where(S[T] != T))
    defined = M != UNDEFINED
    comp = S[:, None] == T[None, :]
    report.add("A3", "μ(g,f) defined iff Σg=Tf", _where(defined != comp))
    safe = np.where(defined, M, 0)
    report.add("A4", "μ(f,Σf)=f", _where(M[idx, S] != idx))
    report.add("A5", "μ(Tf,f)=f", _where(M[T, idx] != idx))
    report.add("A6", "Σμ(g,f)=Σf", _where(defined & (S[safe] != S[None, :])))
    report.add("A7", "Tμ(g,f)=Tg", _where(defined & (T[safe] != T[:, None])))

    # composable triples (h, g, f): Σh=Tg and Σg=Tf
    G, F = np.nonzero(comp)
    gf = M[G, F]
    bad = []
    for h in range(n):
        sel = T[G] == S[h]
        if not sel.any():
            continue
        gs, fs, gfs = G[sel], F[sel], gf[sel]
        hg = M[h, gs]
        lhs = np.where(hg != UNDEFINED, M[np.maximum(hg, 0), fs], UNDEFINED)
        rhs = np.where(gfs != UNDEFINED, M[h, np.maximum(gfs, 0)], UNDEFINED)
        fail = (lhs != rhs) | (lhs == UNDEFINED)
        bad.extend((h, int(a), int(b)) for a, b in zip(gs[fail], fs[fail]))
    report.add("A8", "μ(μ(h,g),f)=μ(h,μ(g,f))", bad)

    primitive_ok = report.ok
    report.add("D1", "ΣΣ=Σ and TT=T",
               _where((S[S] != S) | (T[T] != T)), derived=primitive_ok)


def validate_category(g: FiniteGroupoid) -> ValidationReport:
    """Check the eight category axioms; the inverse map is ignored.

    Coequalizers always exist for finite sets, so the report records the
    base they produce under ``info["base"]`` instead of checking anything.
    """
    report = ValidationReport("category")
    _check_category(g, report)
    if report.ok:
        report.info["base"] = fixed_points(g)
        report.info["coequalizer"] = "exists (finite sets)"
    return report


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    report = ValidationReport("groupoid")
    if g.upsilon is None:
        raise MalformedInput("groupoid data needs an upsilon array", field="upsilon")
    _check_category(g, report)
    n = g.n
    if n:
        S, T, U, M = g.S, g.T, g.U, g.M
        idx = np.arange(n)
        g1 = []
        g1 += [("TΥ=Σ", x) for x in _where(T[U] != S)]
        g1 += [("ΥΣ=Σ", x) for x in _where(U[S] != S)]
        g1 += [("ΥΥ=id", x) for x in _where(U[U] != idx)]
        # one violation entry per failing equation keeps the law text exact
        for law in ("TΥ=Σ", "ΥΣ=Σ", "ΥΥ=id"):
            report.add("G1", law, [x for lw, x in g1 if lw == law])
        report.add("G2", "μ(g,Υg)=Tg", _where(M[idx, U] != T))
        report.add("G3", "μ(Υg,g)=Σg", _where(M[U, idx] != S))
        primitive_ok = report.ok
        report.add("D2", "ΣΥ=T", _where(S[U] != T), derived=primitive_ok)
    if report.ok:
        report.info["base"] = fixed_points(g)
        report.info["coequalizer"] = "exists (finite sets)"
    return report


def require_groupoid(g: FiniteGroupoid) -> None:
    report = validate_groupoid(g)
    if not report.ok:
        raise InvalidStructure(f"not a valid groupoid: {', '.join(report.axioms)}", report)


def require_category(g: FiniteGroupoid) -> None:
    report = validate_category(g)
    if not report.ok:
        raise InvalidStructure(f"not a valid category: {', '.join(report.axioms)}", report)


# -- base and classical form -------------------------------------------------

def fixed_points(g: FiniteGroupoid) -> list[int]:
    return [x for x in range(g.n) if g.sigma[x] == x]


def base(g: FiniteGroupoid) -> list[int]:
    """Sorted identities, i.e. the object of objects.

    The four descriptions (fixed points of Σ and of T, images of Σ and of T)
    must agree on any valid category; disagreement is a soundness bug.
    """
    if g.upsilon is None:
        require_category(g)
    else:
        require_groupoid(g)
    m = fixed_points(g)
    others = (sorted(x for x in range(g.n) if g.tau[x] == x),
              sorted(set(g.sigma)), sorted(set(g.tau)))
    if any(o != m for o in others):
        raise SoundnessError("fixed points and images of Σ, T disagree")
    return m


@dataclass(frozen=True)
class ClassicalPresentation:
    """Two-sorted form: base M (as carrier indices), source/target into M-indices."""

    base: tuple[int, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    identity_section: tuple[int, ...]
    inverse: tuple[int, ...]
    mu: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.source)


def to_classical(g: FiniteGroupoid) -> ClassicalPresentation:
    m = base(g)
    pos = {x: i for i, x in enumerate(m)}
    c = ClassicalPresentation(
        base=tuple(m),
        source=tuple(pos[s] for s in g.sigma),
        target=tuple(pos[t] for t in g.tau),
        identity_section=tuple(m),
        inverse=g.upsilon,
        mu=g.mu,
    )
    bad = classical_violations(c)
    if bad:
        raise SoundnessError(f"classical form of a valid groupoid fails items {bad}")
    return c


def classical_violations(c: ClassicalPresentation) -> list[str]:
    """Names of the failing items (i..v) plus well-formedness problems."""
    n, k = len(c.source), len(c.identity_section)
    if (len(c.target) != n or len(c.inverse) != n or len(c.mu) != n
            or any(len(r) != n for r in c.mu) or len(c.base) != k):
        return ["shape"]
    if (any(not 0 <= x < k for x in c.source + c.target)
            or any(not 0 <= x < n for x in c.identity_section + c.inverse)
            or any(not UNDEFINED <= v < n for r in c.mu for v in r)):
        return ["range"]
    src, tgt, eps, inv, mu = c.source, c.target, c.identity_section, c.inverse, c.mu
    bad = []
    if len(set(eps)) != k or tuple(eps) != tuple(c.base):
        bad.append("epsilon-injective")

    def comp(h, g):
        return src[h] == tgt[g]

    # composites must exist exactly on G2 for the items below to make sense
    if any((mu[h][g] != UNDEFINED) != comp(h, g) for h in range(n) for g in range(n)):
        bad.append("G2")
        return bad
    if any(src[mu[h][g]] != src[g] or tgt[mu[h][g]] != tgt[h]
           for h in range(n) for g in range(n) if comp(h, g)):
        bad.append("i")
    if any(mu[mu[h][g]][f] != mu[h][mu[g][f]]
           for h in range(n) for g in range(n) if comp(h, g)
           for f in range(n) if comp(g, f)):
        bad.append("ii")
    if any(src[eps[x]] != x or tgt[eps[x]] != x for x in range(k)):
        bad.append("iii")
        return bad
    if any(mu[g][eps[src[g]]] != g or mu[eps[tgt[g]]][g] != g for g in range(n)):
        bad.append("iv")
    if any(src[inv[g]] != tgt[g] or tgt[inv[g]] != src[g]
           or mu[inv[g]][g] != eps[src[g]] or mu[g][inv[g]] != eps[tgt[g]]
           for g in range(n)):
        bad.append("v")
    return bad


def from_classical(c: ClassicalPresentation) -> FiniteGroupoid:
    bad = classical_violations(c)
    if bad:
        raise InvalidStructure(f"classical presentation fails item(s) {', '.join(bad)}",
                               axiom=bad[0])
    eps = c.identity_section
    g = FiniteGroupoid.build([eps[s] for s in c.source], [eps[t] for t in c.target],
                             c.inverse, c.mu)
    report = validate_groupoid(g)
    if not report.ok:
        raise SoundnessError(f"from_classical produced an invalid groupoid: {report.axioms}")
    return g


# -- group objects and homomorphisms ----------------------------------------

def is_group_object(g: FiniteGroupoid) -> bool:
    """True iff Σ and T are one and the same constant map."""
    if g.n == 0:
        raise InvalidStructure("the empty groupoid has no unit element")
    require_groupoid(g)
    e = g.sigma[0]
    answer = all(s == e for s in g.sigma) and g.sigma == g.tau
    if answer != (len(fixed_points(g)) == 1):
        raise SoundnessError("constant-Σ test disagrees with base size")
    if answer:
        n, mu, ups = g.n, g.mu, g.upsilon
        total = all(v != UNDEFINED for row in mu for v in row)
        unit = all(mu[e][x] == x == mu[x][e] for x in range(n))
        inverse = all(mu[x][ups[x]] == e == mu[ups[x]][x] for x in range(n))
        assoc = all(mu[mu[a][b]][c] == mu[a][mu[b][c]]
                    for a in range(n) for b in range(n) for c in range(n))
        if not (total and unit and inverse and assoc):
            raise SoundnessError("group object fails the group axioms")
    return answer


@dataclass(frozen=True)
class GroupoidHom:
    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))


def check_hom(h: GroupoidHom) -> ValidationReport:
    """Check the Σ, T and μ squares, then the Υ square that they imply."""
    G, H, F = h.domain, h.codomain, h.map
    if len(F) != G.n:
        raise MalformedInput(f"map has length {len(F)}, domain carrier has {G.n}", field="map")
    if any(not 0 <= y < H.n for y in F):
        raise MalformedInput("map value outside codomain carrier", field="map")
    report = ValidationReport("homomorphism")
    report.add("H1", "FΣ=ΣF", [x for x in range(G.n) if F[G.sigma[x]] != H.sigma[F[x]]])
    report.add("H2", "FT=TF", [x for x in range(G.n) if F[G.tau[x]] != H.tau[F[x]]])
    pairs = G.composable_pairs()
    report.add("H0", "F×F maps G2 into H2",
               [(a, b) for a, b in pairs if not H.composable(F[a], F[b])],
               derived=report.ok)
    report.add("H3", "F(μ(g,f))=μ(F g,F f)",
               [(a, b) for a, b in pairs if F[G.mu[a][b]] != H.mu[F[a]][F[b]]])
    if G.upsilon is not None and H.upsilon is not None:
        primitive_ok = report.ok
        report.add("H4", "FΥ=ΥF",
                   [x for x in range(G.n) if F[G.upsilon[x]] != H.upsilon[F[x]]],
                   derived=primitive_ok)
    return report
