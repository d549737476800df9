"""Independent reference implementations used as test oracles.

Nothing here imports the package's checkers: each function is a direct,
slow transcription of the definitions in the classical two-sorted language
(objects, source, target, identities, composition, inverses).
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache

UNDEF = -1


def naive_is_category(n, sigma, tau, mu) -> bool:
    r = range(n)
    if any(not 0 <= sigma[x] < n or not 0 <= tau[x] < n for x in r):
        return False
    objects = {x for x in r if sigma[x] == x}
    # identities are exactly the fixed points of both maps
    if objects != {x for x in r if tau[x] == x}:
        return False
    if any(sigma[x] not in objects or tau[x] not in objects for x in r):
        return False
    for g in r:
        for f in r:
            v = mu[g][f]
            if (sigma[g] == tau[f]) != (v != UNDEF):
                return False
            if v != UNDEF and not (0 <= v < n and sigma[v] == sigma[f] and tau[v] == tau[g]):
                return False
    for f in r:
        if mu[f][sigma[f]] != f or mu[tau[f]][f] != f:
            return False
    for h in r:
        for g in r:
            if mu[h][g] == UNDEF:
                continue
            for f in r:
                if mu[g][f] == UNDEF:
                    continue
                if mu[mu[h][g]][f] != mu[h][mu[g][f]]:
                    return False
    return True


def naive_is_groupoid(n, sigma, tau, ups, mu) -> bool:
    if ups is None or any(not 0 <= ups[x] < n for x in range(n)):
        return False
    if not naive_is_category(n, sigma, tau, mu):
        return False
    for g in range(n):
        i = ups[g]
        if sigma[i] != tau[g] or tau[i] != sigma[g]:
            return False
        if mu[g][i] != tau[g] or mu[i][g] != sigma[g]:
            return False
    return True


def naive_valid(g) -> bool:
    return naive_is_groupoid(g.n, g.sigma, g.tau, g.upsilon, g.mu)


def naive_enumerate(n: int) -> list[tuple]:
    """Every labeled groupoid on range(n) by filtering all candidate tables.

    Unary data (Σ, T, Υ) is filtered by its own laws first, then every μ
    table with the forced definedness pattern is tried.
    """
    out = []
    r = range(n)
    for sigma in itertools.product(r, repeat=n):
        if any(sigma[sigma[x]] != sigma[x] for x in r):
            continue
        for tau in itertools.product(r, repeat=n):
            if any(tau[sigma[x]] != sigma[x] or sigma[tau[x]] != tau[x] for x in r):
                continue
            for ups in itertools.product(r, repeat=n):
                if any(tau[ups[x]] != sigma[x] or ups[sigma[x]] != sigma[x]
                       or ups[ups[x]] != x for x in r):
                    continue
                pairs = [(g, f) for g in r for f in r if sigma[g] == tau[f]]
                for values in itertools.product(r, repeat=len(pairs)):
                    mu = [[UNDEF] * n for _ in r]
                    for (g, f), v in zip(pairs, values):
                        mu[g][f] = v
                    if naive_is_groupoid(n, sigma, tau, ups, mu):
                        out.append((sigma, tau, ups, tuple(tuple(row) for row in mu)))
    return out


def naive_isomorphic(a, b) -> bool:
    """Brute force over all bijections of the carriers."""
    if a.n != b.n:
        return False
    n = a.n
    for p in itertools.permutations(range(n)):
        if all(p[a.sigma[x]] == b.sigma[p[x]] and p[a.tau[x]] == b.tau[p[x]]
               and p[a.upsilon[x]] == b.upsilon[p[x]] for x in range(n)):
            if all((a.mu[g][f] == UNDEF and b.mu[p[g]][p[f]] == UNDEF)
                   or (a.mu[g][f] != UNDEF and p[a.mu[g][f]] == b.mu[p[g]][p[f]])
                   for g in range(n) for f in range(n)):
                return True
    return False


def naive_classes(structures) -> int:
    reps = []
    for s in structures:
        if not any(naive_isomorphic(r, s) for r in reps):
            reps.append(s)
    return len(reps)


# numbers of groups of order 1..8 (classical table)
GROUPS_OF_ORDER = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Groupoids with n arrows up to iso, counted from structure theory.

    A connected groupoid with k objects and vertex group H has k²|H|
    arrows and is determined by (k, H); a groupoid is a multiset of
    connected ones.
    """
    kinds = Counter()
    for k in range(1, n + 1):
        for m in range(1, n // (k * k) + 1):
            if k * k * m <= n:
                kinds[k * k * m] += GROUPS_OF_ORDER[m]
    # multisets over the component types, weighted by arrow count
    ways = [1] + [0] * n
    for weight, count in sorted(kinds.items()):
        for _ in range(count):
            for total in range(weight, n + 1):
                ways[total] += ways[total - weight]
    return ways[n]


def group_action_violations(k, table, unit, m, act) -> list[str]:
    """Classical left-action axioms for ``act[g][e]`` of a group on range(m)."""
    bad = []
    if any(act[unit][e] != e for e in range(m)):
        bad.append("unit")
    if any(act[table[h][g]][e] != act[h][act[g][e]]
           for h in range(k) for g in range(k) for e in range(m)):
        bad.append("compatibility")
    if any(not 0 <= act[g][e] < m for g in range(k) for e in range(m)):
        bad.append("closure")
    return bad
