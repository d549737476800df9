"""Standard families of finite groupoids and a few group Cayley tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

from .core import UNDEFINED, FiniteGroupoid, require_groupoid
from .reports import InvalidStructure, MalformedInput, ResourceLimit

PARTIAL_BIJECTION_BUDGET = 2000


@dataclass(frozen=True)
class CayleyTable:
    k: int
    table: tuple[tuple[int, ...], ...]
    unit: int

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in r) for r in self.table))

    def violations(self) -> list[str]:
        k, t, e = self.k, self.table, self.unit
        if k < 1 or len(t) != k or any(len(r) != k for r in t):
            return ["shape"]
        if not 0 <= e < k or any(not 0 <= v < k for r in t for v in r):
            return ["closure"]
        bad = []
        if any(t[e][x] != x or t[x][e] != x for x in range(k)):
            bad.append("unit")
        if any(t[t[a][b]][c] != t[a][t[b][c]]
               for a in range(k) for b in range(k) for c in range(k)):
            bad.append("associativity")
        for x in range(k):
            left = [y for y in range(k) if t[y][x] == e]
            right = [y for y in range(k) if t[x][y] == e]
            if len(left) != 1 or left != right:
                bad.append("inverse")
                break
        return bad

    def inverse(self) -> list[int]:
        return [next(y for y in range(self.k) if self.table[x][y] == self.unit)
                for x in range(self.k)]


def cyclic_table(k: int) -> CayleyTable:
    return CayleyTable(k, tuple(tuple((a + b) % k for b in range(k)) for a in range(k)), 0)


def direct_product_table(t1: CayleyTable, t2: CayleyTable) -> CayleyTable:
    k2 = t2.k
    k = t1.k * k2
    table = tuple(
        tuple(t1.table[a // k2][b // k2] * k2 + t2.table[a % k2][b % k2] for b in range(k))
        for a in range(k))
    return CayleyTable(k, table, t1.unit * k2 + t2.unit)


def klein_table() -> CayleyTable:
    return direct_product_table(cyclic_table(2), cyclic_table(2))


def _permutation_group_table(elements: list[tuple[int, ...]]) -> CayleyTable:
    # (p*q)(x) = p(q(x))
    index = {p: i for i, p in enumerate(elements)}
    ident = tuple(range(len(elements[0])))
    table = tuple(tuple(index[tuple(p[x] for x in q)] for q in elements) for p in elements)
    return CayleyTable(len(elements), table, index[ident])


def symmetric_table(k: int) -> CayleyTable:
    return _permutation_group_table(sorted(itertools.permutations(range(k))))


def dihedral_table(k: int) -> CayleyTable:
    """Symmetries of a k-gon, order 2k (k >= 3)."""
    rots = [tuple((x + r) % k for x in range(k)) for r in range(k)]
    refl = [tuple((r - x) % k for x in range(k)) for r in range(k)]
    return _permutation_group_table(sorted(rots + refl))


def quaternion_table() -> CayleyTable:
    # elements ±1, ±i, ±j, ±k encoded as sign*4 + unit index
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

    def mul(a, b):
        sa, ua = divmod(a, 4)
        sb, ub = divmod(b, 4)
        s, u = units[(ua, ub)]
        sign = (sa + sb + (s < 0)) % 2
        return sign * 4 + u

    return CayleyTable(8, tuple(tuple(mul(a, b) for b in range(8)) for a in range(8)), 0)


def groups_up_to_order(k: int) -> dict[str, CayleyTable]:
    """One table per isomorphism type of group of order <= min(k, 8)."""
    out = {}
    for m in range(1, min(k, 8) + 1):
        out[f"Z{m}"] = cyclic_table(m)
    extra = [("Z2xZ2", 4, klein_table),
             ("S3", 6, lambda: symmetric_table(3)),
             ("Z2xZ4", 8, lambda: direct_product_table(cyclic_table(2), cyclic_table(4))),
             ("Z2xZ2xZ2", 8, lambda: direct_product_table(klein_table(), cyclic_table(2))),
             ("D4", 8, lambda: dihedral_table(4)),
             ("Q8", 8, quaternion_table)]
    for name, order, make in extra:
        if order <= k:
            out[name] = make()
    return out


# -- groupoid families --------------------------------------------------------

def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(0, (), (), (), ())


def group_groupoid(t: CayleyTable) -> FiniteGroupoid:
    bad = t.violations()
    if bad:
        raise InvalidStructure(f"not a group table: {', '.join(bad)}", axiom=bad[0])
    e = t.unit
    return FiniteGroupoid.build([e] * t.k, [e] * t.k, t.inverse(), t.table)


def trivial_group() -> FiniteGroupoid:
    return group_groupoid(cyclic_table(1))


def cyclic_groupoid(k: int) -> FiniteGroupoid:
    return group_groupoid(cyclic_table(k))


def pair_groupoid(k: int) -> FiniteGroupoid:
    """All pairs (a, b) over k objects; (a, b) runs from b to a, index a*k + b."""
    if k < 1:
        raise MalformedInput("pair groupoid needs k >= 1; use empty_groupoid() for k = 0",
                             field="k")
    n = k * k
    sigma = [(x % k) * k + x % k for x in range(n)]
    tau = [(x // k) * k + x // k for x in range(n)]
    ups = [(x % k) * k + x // k for x in range(n)]
    mu = [[(g // k) * k + f % k if g % k == f // k else UNDEFINED for f in range(n)]
          for g in range(n)]
    return FiniteGroupoid.build(sigma, tau, ups, mu)


def discrete_groupoid(k: int) -> FiniteGroupoid:
    """k objects, identities only."""
    return FiniteGroupoid.build(list(range(k)), list(range(k)), list(range(k)),
                                [[g if g == f else UNDEFINED for f in range(k)]
                                 for g in range(k)])


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    require_groupoid(g1)
    require_groupoid(g2)
    s = g1.n
    n = s + g2.n

    def shift(v):
        return v if v == UNDEFINED else v + s

    mu = [list(row) + [UNDEFINED] * g2.n for row in g1.mu]
    mu += [[UNDEFINED] * s + [shift(v) for v in row] for row in g2.mu]
    return FiniteGroupoid.build(list(g1.sigma) + [x + s for x in g2.sigma],
                                list(g1.tau) + [x + s for x in g2.tau],
                                list(g1.upsilon) + [x + s for x in g2.upsilon], mu)


def product_groupoid(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise structure on pairs, index x1*n2 + x2."""
    require_groupoid(g1)
    require_groupoid(g2)
    n2 = g2.n
    n = g1.n * n2

    def pr(x):
        return divmod(x, n2)

    sigma, tau, ups = [], [], []
    for x in range(n):
        a, b = pr(x)
        sigma.append(g1.sigma[a] * n2 + g2.sigma[b])
        tau.append(g1.tau[a] * n2 + g2.tau[b])
        ups.append(g1.upsilon[a] * n2 + g2.upsilon[b])
    mu = []
    for x in range(n):
        a, b = pr(x)
        row = []
        for y in range(n):
            c, d = pr(y)
            u, v = g1.mu[a][c], g2.mu[b][d]
            row.append(UNDEFINED if UNDEFINED in (u, v) else u * n2 + v)
        mu.append(row)
    return FiniteGroupoid.build(sigma, tau, ups, mu)


def partial_bijection_count(k: int) -> int:
    return sum(comb(k, j) ** 2 * factorial(j) for j in range(k + 1))


def partial_bijections(k: int) -> list[dict[int, int]]:
    """Domains in binary-counter order; within a domain, graphs in lex order."""
    out = []
    for mask in range(1 << k):
        dom = [x for x in range(k) if mask >> x & 1]
        for img in itertools.permutations(range(k), len(dom)):
            out.append(dict(zip(dom, img)))
    return out


def partial_bijection_groupoid(k: int, budget: int = PARTIAL_BIJECTION_BUDGET) -> FiniteGroupoid:
    """Bijections between subsets of range(k), composed where domains match images."""
    if k < 0:
        raise MalformedInput("k must be nonnegative", field="k")
    if partial_bijection_count(k) > budget:
        raise ResourceLimit(f"partial_bijection_groupoid({k}) has "
                            f"{partial_bijection_count(k)} morphisms, budget is {budget}")
    maps = partial_bijections(k)
    key = {tuple(sorted(f.items())): i for i, f in enumerate(maps)}

    def idx(f):
        return key[tuple(sorted(f.items()))]

    sigma = [idx({x: x for x in f}) for f in maps]
    tau = [idx({y: y for y in f.values()}) for f in maps]
    ups = [idx({y: x for x, y in f.items()}) for f in maps]
    mu = []
    for g in maps:
        row = []
        for f in maps:
            if set(g) == set(f.values()):
                row.append(idx({x: g[y] for x, y in f.items()}))
            else:
                row.append(UNDEFINED)
        mu.append(row)
    return FiniteGroupoid.build(sigma, tau, ups, mu)
