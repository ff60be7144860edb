"""Shared fixtures and brute-force oracles.

The oracles are deliberately naive and share no code with the package, so
agreement between the two is evidence rather than tautology.
"""
from collections import deque
from itertools import product

import pytest

from oscomp import corpus


def bfs_members(gens, limit):
    """All values <= limit reachable from 0 by adding generators."""
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for g in gens:
            w = v + g
            if w <= limit and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def bfs_vectors(gens, box):
    """Affine members inside the box ``[0, box]^d``."""
    d = len(box)
    zero = (0,) * d
    seen = {zero}
    queue = deque([zero])
    while queue:
        v = queue.popleft()
        for g in gens:
            w = tuple(a + b for a, b in zip(v, g))
            if all(a <= b for a, b in zip(w, box)) and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def brute_frobenius(gens):
    """Largest non-member, scanning far enough that the answer is stable."""
    limit = (max(gens) + 1) ** 2 + 10
    members = bfs_members(gens, limit)
    gaps = [v for v in range(limit + 1) if v not in members]
    return max(gaps) if gaps else None


def brute_min_k(members_upto, x, y, k_max):
    """Smallest k with ky - (k+1)x a member, for numerical semigroups."""
    for k in range(1, k_max + 1):
        d = k * y - (k + 1) * x
        if d >= 0 and members_upto(d):
            return k
    return None


def brute_n_comparison_fails(gens, n, bound, k_max):
    """Any (x, y_0..y_n) with x <_s y_j and x <= sum y_j failing."""
    limit = (n + 2) * bound * (k_max + 2)
    members = bfs_members(gens, limit)
    elems = sorted(v for v in members if v <= bound)

    def sdom(x, y):
        return brute_min_k(lambda d: d in members, x, y, k_max) is not None

    for x in elems:
        doms = [y for y in elems if sdom(x, y)]
        for ys in product(doms, repeat=n + 1):
            if sum(ys) - x not in members:
                return x, ys
    return None


@pytest.fixture(scope="session")
def w1():
    return corpus.family_wn(1)


@pytest.fixture(scope="session")
def w2():
    return corpus.family_wn(2)


@pytest.fixture(scope="session")
def zplus():
    return corpus.z_plus()
