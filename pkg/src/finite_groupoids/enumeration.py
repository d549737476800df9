"""Exhaustive enumeration of finite groupoids, isomorphism search and
canonical forms.

The labeled search fixes the structure one map at a time, in the order that
prunes best: the pair (Σ, T), then Υ, then the composition table.  The μ
table is filled cell by cell; each cell only admits morphisms with the right
source and target that keep left and right translations injective, and every
associativity instance whose four entries are known is checked as soon as the
last of them is written.  Each finished table still goes through the full
validator.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .core import UNDEFINED, FiniteGroupoid, check_hom, GroupoidHom, validate_groupoid
from .reports import InvalidStructure, ResourceLimit

DEFAULT_LIMIT = 6
CANONICAL_LIMIT = 8


@dataclass
class IsoClassSummary:
    n: int
    count_labeled: int
    count_up_to_iso: int
    representatives: list[FiniteGroupoid]
    labeled: list[FiniteGroupoid] | None = None


# -- (Σ, T) and Υ candidates ----------------------------------------------------

def _source_target_pairs(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (Σ, T) with TΣ=Σ and ΣT=T.

    Those two equations force both maps to fix a common set M pointwise and to
    land in it, so it suffices to pick M and then a source and a target in M
    for every other morphism.
    """
    if n == 0:
        yield (), ()
        return
    for size in range(1, n + 1):
        for objs in itertools.combinations(range(n), size):
            rest = [x for x in range(n) if x not in objs]
            for src in itertools.product(objs, repeat=len(rest)):
                for tgt in itertools.product(objs, repeat=len(rest)):
                    sigma = list(range(n))
                    tau = list(range(n))
                    for x, s, t in zip(rest, src, tgt):
                        sigma[x] = s
                        tau[x] = t
                    yield tuple(sigma), tuple(tau)


def _homs(sigma, tau) -> dict[tuple[int, int], list[int]]:
    """hom[(x, y)] = morphisms from object x to object y, ascending."""
    out: dict[tuple[int, int], list[int]] = {}
    for g in range(len(sigma)):
        out.setdefault((sigma[g], tau[g]), []).append(g)
    return out


def _cardinalities_possible(sigma, tau) -> bool:
    """Hom-set sizes forced by invertibility.

    Υ pairs hom(x, y) with hom(y, x), and composing with any g in hom(x, y)
    is a bijection hom(z, x) -> hom(z, y); a pair failing either has no Υ/μ.
    """
    homs = _homs(sigma, tau)
    objs = sorted({s for s in sigma})

    def size(x, y):
        return len(homs.get((x, y), ()))

    for x in objs:
        for y in objs:
            if size(x, y) != size(y, x):
                return False
            if size(x, y):
                if any(size(z, x) != size(z, y) for z in objs):
                    return False
    return True


def _involutions(items: list[int]) -> Iterator[dict[int, int]]:
    if not items:
        yield {}
        return
    first, rest = items[0], items[1:]
    for sub in _involutions(rest):
        yield {first: first, **sub}
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for sub in _involutions(remaining):
            yield {first: partner, partner: first, **sub}


def _inverse_candidates(sigma, tau) -> Iterator[tuple[int, ...]]:
    """Υ fixing identities, with TΥ=Σ and ΥΥ=id."""
    homs = _homs(sigma, tau)
    parts: list[list[dict[int, int]]] = []
    for (x, y), gs in sorted(homs.items()):
        if x == y:
            parts.append(list(_involutions([g for g in gs if g != x])))
        elif x < y:
            back = homs[(y, x)]
            opts = []
            for perm in itertools.permutations(back):
                d = {}
                for a, b in zip(gs, perm):
                    d[a] = b
                    d[b] = a
                opts.append(d)
            parts.append(opts)
    n = len(sigma)
    for choice in itertools.product(*parts):
        ups = list(range(n))
        for d in choice:
            for a, b in d.items():
                ups[a] = b
        yield tuple(ups)


# -- composition search -----------------------------------------------------------

class _TableSearch:
    def __init__(self, sigma, tau, ups):
        self.n = n = len(sigma)
        self.sigma, self.tau, self.ups = sigma, tau, ups
        self.homs = _homs(sigma, tau)
        self.by_target: dict[int, list[int]] = {}
        self.by_source: dict[int, list[int]] = {}
        for g in range(n):
            self.by_target.setdefault(tau[g], []).append(g)
            self.by_source.setdefault(sigma[g], []).append(g)
        self.mu = [[UNDEFINED] * n for _ in range(n)]
        self.pre: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
        self.row_used = [set() for _ in range(n)]
        self.col_used = [set() for _ in range(n)]

    def _set(self, g, f, h) -> bool:
        cur = self.mu[g][f]
        if cur != UNDEFINED:
            return cur == h
        if h in self.row_used[g] or h in self.col_used[f]:
            return False
        self.mu[g][f] = h
        self.pre[h].append((g, f))
        self.row_used[g].add(h)
        self.col_used[f].add(h)
        return True

    def _unset(self, g, f):
        h = self.mu[g][f]
        self.mu[g][f] = UNDEFINED
        self.pre[h].pop()
        self.row_used[g].discard(h)
        self.col_used[f].discard(h)

    def _consistent(self, g, f, h) -> bool:
        mu, sigma, tau = self.mu, self.sigma, self.tau
        U = UNDEFINED
        # (g, f, z): μ(h, z) = μ(g, μ(f, z))
        for z in self.by_target.get(sigma[f], ()):
            a, b = mu[h][z], mu[f][z]
            if a != U and b != U:
                c = mu[g][b]
                if c != U and c != a:
                    return False
        # (x, g, f): μ(μ(x, g), f) = μ(x, h)
        for x in self.by_source.get(tau[g], ()):
            a = mu[x][g]
            if a != U:
                b, c = mu[a][f], mu[x][h]
                if b != U and c != U and b != c:
                    return False
        # μ(x, y) = g: μ(g, f) = μ(x, μ(y, f))
        for x, y in self.pre[g]:
            b = mu[y][f]
            if b != U:
                c = mu[x][b]
                if c != U and c != h:
                    return False
        # μ(y, z) = f: μ(g, f) = μ(μ(g, y), z)
        for y, z in self.pre[f]:
            a = mu[g][y]
            if a != U:
                c = mu[a][z]
                if c != U and c != h:
                    return False
        return True

    def run(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        n, sigma, tau, ups = self.n, self.sigma, self.tau, self.ups
        forced = []
        for g in range(n):
            forced += [(g, sigma[g], g), (tau[g], g, g), (g, ups[g], tau[g]), (ups[g], g, sigma[g])]
        for g, f, h in forced:
            if not self._set(g, f, h):
                return
        cells = [(g, f) for g in range(n) for f in self.by_target.get(sigma[g], ())
                 if self.mu[g][f] == UNDEFINED]
        yield from self._fill(cells, 0)

    def _fill(self, cells, i):
        if i == len(cells):
            yield tuple(tuple(r) for r in self.mu)
            return
        g, f = cells[i]
        for h in self.homs.get((self.sigma[f], self.tau[g]), ()):
            if h in self.row_used[g] or h in self.col_used[f]:
                continue
            if not self._consistent(g, f, h):
                continue
            self._set(g, f, h)
            yield from self._fill(cells, i + 1)
            self._unset(g, f)


def _groupoids_for_pair(pair) -> list[FiniteGroupoid]:
    sigma, tau = pair
    out = []
    if not _cardinalities_possible(sigma, tau):
        return out
    for ups in _inverse_candidates(sigma, tau):
        for mu in _TableSearch(sigma, tau, ups).run():
            g = FiniteGroupoid(len(sigma), sigma, tau, ups, mu)
            if validate_groupoid(g).ok:
                out.append(g)
    return out


def enumerate_labeled(n: int, limit: int = DEFAULT_LIMIT, jobs: int = 1) -> list[FiniteGroupoid]:
    """Every groupoid structure on range(n), in a schedule-independent order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise ResourceLimit(f"enumeration of n={n} exceeds the limit {limit}")
    pairs = list(_source_target_pairs(n))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_groupoids_for_pair, pairs, chunksize=64))
    else:
        chunks = [_groupoids_for_pair(p) for p in pairs]
    return [g for chunk in chunks for g in chunk]


# -- invariants, isomorphism, canonical forms -------------------------------------

def _element_colors(g: FiniteGroupoid) -> list[tuple]:
    """Per-morphism data preserved by every isomorphism."""
    n = g.n
    homs = _homs(g.sigma, g.tau)
    fiber = Counter(g.sigma)
    out = []
    for x in range(n):
        s, t = g.sigma[x], g.tau[x]
        order = 0
        if s == t:
            y, order = x, 1
            while y != s and order <= n:
                y = g.mu[x][y]
                order += 1
        out.append((s == x, s == t, g.upsilon[x] == x if g.upsilon else None,
                    len(homs[(s, t)]), fiber[s], order))
    return out


def invariants(g: FiniteGroupoid) -> tuple:
    """(n, base size, Σ-fiber multiset, μ-definedness degrees, element colors)."""
    base_size = sum(1 for x in range(g.n) if g.sigma[x] == x)
    fibers = tuple(sorted(Counter(g.sigma).values()))
    degrees = tuple(sorted((sum(v != UNDEFINED for v in g.mu[x]),
                            sum(g.mu[y][x] != UNDEFINED for y in range(g.n)))
                           for x in range(g.n)))
    return (g.n, base_size, fibers, degrees, tuple(sorted(_element_colors(g))))


def are_isomorphic(g1: FiniteGroupoid, g2: FiniteGroupoid) -> tuple[int, ...] | None:
    """A carrier bijection that is a homomorphism both ways, or None."""
    if invariants(g1) != invariants(g2):
        return None
    n = g1.n
    c1, c2 = _element_colors(g1), _element_colors(g2)
    # identities first so Σ/T images are pinned early
    order = sorted(range(n), key=lambda x: (not c1[x][0], c1[x], x))
    perm = [UNDEFINED] * n
    used = [False] * n

    def ok(x, y) -> bool:
        pairs = [(g1.sigma[x], g2.sigma[y]), (g1.tau[x], g2.tau[y])]
        if g1.upsilon is not None:
            pairs.append((g1.upsilon[x], g2.upsilon[y]))
        for a, b in pairs:
            if a == x:
                if b != y:
                    return False
            elif perm[a] != UNDEFINED and perm[a] != b:
                return False
        perm[x] = y
        try:
            for z in range(n):
                w = perm[z]
                if w == UNDEFINED:
                    continue
                for a, b, c, d in ((x, z, y, w), (z, x, w, y)):
                    u, v = g1.mu[a][b], g2.mu[c][d]
                    if (u == UNDEFINED) != (v == UNDEFINED):
                        return False
                    if u != UNDEFINED and perm[u] != UNDEFINED and perm[u] != v:
                        return False
                # images already fixed must pull back consistently
            for z in range(n):
                if perm[z] != UNDEFINED:
                    for a, b in ((g1.sigma[z], g2.sigma[perm[z]]), (g1.tau[z], g2.tau[perm[z]])):
                        if perm[a] != UNDEFINED and perm[a] != b:
                            return False
            return True
        finally:
            perm[x] = UNDEFINED

    def search(i) -> bool:
        if i == n:
            return True
        x = order[i]
        for y in range(n):
            if used[y] or c2[y] != c1[x]:
                continue
            if not ok(x, y):
                continue
            perm[x], used[y] = y, True
            if search(i + 1):
                return True
            perm[x], used[y] = UNDEFINED, False
        return False

    if not search(0):
        return None
    result = tuple(perm)
    if g1.relabel(result) != g2:
        raise AssertionError("isomorphism search returned a non-isomorphism")
    fwd = check_hom(GroupoidHom(g1, g2, result))
    inv = [0] * n
    for a, b in enumerate(result):
        inv[b] = a
    back = check_hom(GroupoidHom(g2, g1, tuple(inv)))
    if not (fwd.ok and back.ok):
        raise AssertionError("isomorphism fails the homomorphism squares")
    return result


def canonical_form(g: FiniteGroupoid, limit: int = CANONICAL_LIMIT) -> FiniteGroupoid:
    """Relabeling with the lexicographically least encoding over all permutations."""
    if g.n > limit:
        raise ResourceLimit(f"canonical form by brute force is limited to n <= {limit}")
    best = None
    for perm in itertools.permutations(range(g.n)):
        h = g.relabel(perm)
        if best is None or h.encode() < best.encode():
            best = h
    return best if best is not None else g


def dedupe(structures: list[FiniteGroupoid]) -> list[FiniteGroupoid]:
    """One canonical representative per isomorphism class, sorted by encoding."""
    buckets: dict[tuple, list[FiniteGroupoid]] = {}
    for g in structures:
        reps = buckets.setdefault(invariants(g), [])
        if not any(are_isomorphic(r, g) is not None for r in reps):
            reps.append(g)
    reps = [canonical_form(r) for rs in buckets.values() for r in rs]
    return sorted(reps, key=lambda r: r.encode())


def enumerate_groupoids(n: int, limit: int = DEFAULT_LIMIT, jobs: int = 1,
                        keep_labeled: bool = False) -> IsoClassSummary:
    labeled = enumerate_labeled(n, limit=limit, jobs=jobs)
    reps = dedupe(labeled)
    return IsoClassSummary(n, len(labeled), len(reps), reps, labeled if keep_labeled else None)


# -- connected components -----------------------------------------------------------

@dataclass
class Component:
    objects: list[int]          # base indices in the ambient groupoid
    morphisms: list[int]        # ambient carrier indices, ascending
    groupoid: FiniteGroupoid    # induced structure relabeled to 0..k-1
    vertex_group_order: int     # morphisms from objects[0] to itself


def connected_components(g: FiniteGroupoid) -> list[Component]:
    rep = {x: x for x in range(g.n) if g.sigma[x] == x}
    if len(rep) != sum(1 for x in range(g.n) if g.tau[x] == x) or any(
            g.sigma[x] not in rep or g.tau[x] not in rep for x in range(g.n)):
        raise InvalidStructure("structure maps do not land in the identities")

    def find(x):
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for m in range(g.n):
        a, b = find(g.sigma[m]), find(g.tau[m])
        if a != b:
            rep[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in sorted(rep):
        groups.setdefault(find(x), []).append(x)
    out = []
    for root in sorted(groups):
        objs = groups[root]
        objset = set(objs)
        ms = [m for m in range(g.n) if g.sigma[m] in objset]
        pos = {m: i for i, m in enumerate(ms)}

        def loc(v):
            return UNDEFINED if v == UNDEFINED else pos[v]

        sub = FiniteGroupoid.build(
            [pos[g.sigma[m]] for m in ms], [pos[g.tau[m]] for m in ms],
            None if g.upsilon is None else [pos[g.upsilon[m]] for m in ms],
            [[loc(g.mu[a][b]) for b in ms] for a in ms])
        x = objs[0]
        loops = sum(1 for m in ms if g.sigma[m] == x and g.tau[m] == x)
        out.append(Component(objs, ms, sub, loops))
    return out
