"""Shared oracles and generators for the test suite.

Everything here is deliberately independent of the library's own
algorithms: the clique oracle enumerates subsets, the binomial oracle
multiplies and divides, and family growth re-tests the raw conditions.
"""

from __future__ import annotations

import random

from modp_intersect import IntersectionSpec, SetFamily, enumerate_candidates


def oracle_binom(n: int, k: int) -> int:
    """C(n, k) by the plain product/divide loop."""
    if k < 0 or k > n:
        return 0
    value = 1
    for i in range(1, k + 1):
        value = value * (n - i + 1) // i
    return value


def oracle_max_clique(adjacency: list[int]) -> int:
    """Maximum clique by subset enumeration (only for tiny graphs)."""
    count = len(adjacency)
    assert count <= 20
    is_clique = bytearray(1 << count)
    is_clique[0] = 1
    best = 0
    for mask in range(1, 1 << count):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if is_clique[rest] and rest & adjacency[v] == rest:
            is_clique[mask] = 1
            size = mask.bit_count()
            if size > best:
                best = size
    return best


def compatibility_masks(n: int, spec: IntersectionSpec) -> list[int]:
    """Adjacency masks recomputed straight from the definition."""
    cands = enumerate_candidates(n, spec).candidates
    lset = set(spec.L)
    p = spec.p
    adjacency = [0] * len(cands)
    for i in range(len(cands)):
        for j in range(len(cands)):
            if i != j and (cands[i] & cands[j]).bit_count() % p in lset:
                adjacency[i] |= 1 << j
    return adjacency


def grow_random_family(n: int, spec: IntersectionSpec,
                       rng: random.Random) -> SetFamily:
    """Grow a valid family by shuffling candidates and re-testing conditions."""
    candidates = list(enumerate_candidates(n, spec).candidates)
    rng.shuffle(candidates)
    lset = set(spec.L)
    p = spec.p
    chosen: list[int] = []
    for cand in candidates:
        if all((cand & other).bit_count() % p in lset for other in chosen):
            chosen.append(cand)
    return SetFamily.from_masks(n, chosen)


def random_valid_spec(p: int, rng: random.Random,
                      k_size_max: int = 2, l_size_max: int = 3) -> IntersectionSpec:
    residues = list(range(p))
    while True:
        k_size = rng.randint(1, min(k_size_max, p - 1))
        K = sorted(rng.sample(residues, k_size))
        rest = [x for x in residues if x not in K]
        if not rest:
            continue
        l_size = rng.randint(1, min(l_size_max, len(rest)))
        L = sorted(rng.sample(rest, l_size))
        return IntersectionSpec.of(p, K, L)
