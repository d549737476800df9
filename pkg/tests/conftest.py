from __future__ import annotations

from functools import lru_cache

import pytest

from finite_groupoids.constructions import (cyclic_groupoid, discrete_groupoid, disjoint_union,
                                            group_groupoid, groups_up_to_order, pair_groupoid,
                                            partial_bijection_groupoid, product_groupoid,
                                            trivial_group)
from finite_groupoids.enumeration import enumerate_groupoids

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def enumerated(n: int):
    """Enumeration summary with labeled structures kept (cached per session)."""
    return enumerate_groupoids(n, keep_labeled=True)


def representatives(max_n: int, min_n: int = 0):
    return [g for n in range(min_n, max_n + 1) for g in enumerated(n).representatives]


def labeled(max_n: int, min_n: int = 0):
    return [g for n in range(min_n, max_n + 1) for g in enumerated(n).labeled]


@lru_cache(maxsize=None)
def constructor_fixtures() -> tuple:
    """(name, groupoid) for every constructor family at desk scale."""
    out = [(f"pair{k}", pair_groupoid(k)) for k in range(1, 5)]
    out += [(name, group_groupoid(t)) for name, t in groups_up_to_order(8).items()]
    out += [(f"pb{k}", partial_bijection_groupoid(k)) for k in range(4)]
    out += [("discrete3", discrete_groupoid(3)), ("trivial", trivial_group())]
    z2, z3, p2 = cyclic_groupoid(2), cyclic_groupoid(3), pair_groupoid(2)
    pb2 = partial_bijection_groupoid(2)
    out += [("Z2+pair2", disjoint_union(z2, p2)), ("pb2+Z3", disjoint_union(pb2, z3)),
            ("Z2+Z2", disjoint_union(z2, z2)), ("Z2xpair2", product_groupoid(z2, p2)),
            ("Z3xpair2", product_groupoid(z3, p2)), ("pair2xpb2", product_groupoid(p2, pb2)),
            ("(Z2+pair2)xZ2", product_groupoid(disjoint_union(z2, p2), z2))]
    return tuple(out)


@pytest.fixture(scope="session")
def fixtures():
    return constructor_fixtures()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
