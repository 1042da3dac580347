"""Ground-truth extremal search: exact maximum families at desk scale.

Admissible sets become vertices of a compatibility graph; maximum valid
families are its maximum cliques.  The solver is a branch-and-bound
with greedy sequential coloring bounds over int bitsets, with every
tie broken by index so that witnesses and node counts are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from . import _cliquecore
from .bounds import BoundReport, IntersectionSpec, applicability
from .errors import TooLarge
from .families import SetFamily, elements_of

DEFAULT_NODE_BUDGET = 10**8

_MAX_GROUND_SET = 24
_MAX_VERTICES = 4096


@dataclass(frozen=True)
class CandidateCatalog:
    """Every subset of [n] with admissible size mod p, ordered by (size, lex)."""

    n: int
    spec: IntersectionSpec
    candidates: tuple[int, ...]


def enumerate_candidates(n: int, spec: IntersectionSpec) -> CandidateCatalog:
    if n > _MAX_GROUND_SET:
        raise TooLarge(f"candidate catalogs are limited to n <= {_MAX_GROUND_SET}")
    kset = set(spec.K)
    p = spec.p
    masks = []
    for size in range(n + 1):
        if size % p not in kset:
            continue
        for subset in combinations(range(1, n + 1), size):
            mask = 0
            for e in subset:
                mask |= 1 << (e - 1)
            masks.append(mask)
    return CandidateCatalog(n=n, spec=spec, candidates=tuple(masks))


@dataclass(frozen=True)
class CompatibilityGraph:
    """Adjacency over candidates: edge iff the intersection size mod p is in L."""

    catalog: CandidateCatalog
    adjacency: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)


def build_compatibility_graph(catalog: CandidateCatalog) -> CompatibilityGraph:
    lset = set(catalog.spec.L)
    p = catalog.spec.p
    cands = catalog.candidates
    count = len(cands)
    adjacency = [0] * count
    for i in range(count):
        ci = cands[i]
        row = adjacency[i]
        for j in range(i + 1, count):
            if (ci & cands[j]).bit_count() % p in lset:
                row |= 1 << j
                adjacency[j] |= 1 << i
        adjacency[i] = row
    return CompatibilityGraph(catalog=catalog, adjacency=tuple(adjacency))


@dataclass(frozen=True)
class SearchResult:
    optimum: int
    witness: SetFamily
    nodes_explored: int
    proved_optimal: bool
    budget_exhausted: bool


class _BudgetExceeded(Exception):
    pass


def _degeneracy_order(adjacency: Sequence[int]) -> list[int]:
    """Smallest-last removal order; ties go to the lowest index."""
    count = len(adjacency)
    degree = [a.bit_count() for a in adjacency]
    alive = (1 << count) - 1
    order = []
    for _ in range(count):
        best_v, best_d = -1, count + 1
        scan = alive
        while scan:
            low = scan & -scan
            v = low.bit_length() - 1
            if degree[v] < best_d:
                best_d, best_v = degree[v], v
            scan ^= low
        order.append(best_v)
        alive &= ~(1 << best_v)
        neighbors = adjacency[best_v] & alive
        while neighbors:
            low = neighbors & -neighbors
            degree[low.bit_length() - 1] -= 1
            neighbors ^= low
    return order


def _greedy_clique(adjacency: Sequence[int]) -> list[int]:
    chosen_mask = 0
    chosen = []
    for v in range(len(adjacency)):
        if chosen_mask & ~adjacency[v] == 0:
            chosen.append(v)
            chosen_mask |= 1 << v
    return chosen


class _CliqueSolver:
    """Branch and bound with greedy coloring bounds on int bitsets."""

    def __init__(self, adjacency: Sequence[int], budget: int):
        self.adj = list(adjacency)
        self.budget = budget
        self.nodes = 0
        seed = _greedy_clique(adjacency)
        self.best = len(seed)
        self.best_clique = seed
        self.stack: list[int] = []

    def run(self) -> bool:
        """Explore exhaustively; False when the node budget ran out."""
        count = len(self.adj)
        if count == 0:
            return True
        try:
            self._expand((1 << count) - 1)
        except _BudgetExceeded:
            return False
        return True

    def _expand(self, candidates: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        depth = len(self.stack)
        if depth + candidates.bit_count() <= self.best:
            return
        adj = self.adj
        # Greedy sequential coloring in index order, with the recoloring
        # repair: a vertex headed for a color past the pruning threshold
        # is swapped into a lower class when a single-conflict exchange
        # allows it.  Vertices come out sorted by color, so one prefix
        # test prunes a whole tail.
        threshold = self.best - depth
        classes: list[int] = []
        uncolored = candidates
        while uncolored:
            avail = uncolored
            members = 0
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail ^= low
                uncolored ^= low
                if len(classes) + 1 > threshold > 1 and self._recolor(
                        classes, v, threshold):
                    continue
                members |= low
                avail &= ~adj[v]
            if members:
                classes.append(members)
        order: list[int] = []
        bounds: list[int] = []
        for color, members in enumerate(classes, start=1):
            while members:
                low = members & -members
                order.append(low.bit_length() - 1)
                bounds.append(color)
                members ^= low
        remaining = candidates
        for idx in range(len(order) - 1, -1, -1):
            if depth + bounds[idx] <= self.best:
                return
            v = order[idx]
            narrowed = remaining & adj[v]
            self.stack.append(v)
            if narrowed:
                self._expand(narrowed)
            elif depth + 1 > self.best:
                self.best = depth + 1
                self.best_clique = list(self.stack)
            self.stack.pop()
            remaining &= ~(1 << v)

    def _recolor(self, classes: list[int], v: int, threshold: int) -> bool:
        """Move v into a class below the threshold via a single-conflict swap."""
        adj = self.adj
        neighbors = adj[v]
        limit = min(threshold - 1, len(classes))
        for c1 in range(limit):
            conflict = classes[c1] & neighbors
            if conflict == 0:
                classes[c1] |= 1 << v
                return True
            if conflict & (conflict - 1):
                continue  # more than one conflicting vertex
            w = conflict.bit_length() - 1
            for c2 in range(c1 + 1, limit):
                if classes[c2] & adj[w] == 0:
                    classes[c1] = (classes[c1] ^ conflict) | (1 << v)
                    classes[c2] |= conflict
                    return True
        return False


def max_family(n: int, spec: IntersectionSpec,
               node_budget: Optional[int] = None) -> SearchResult:
    """Exact maximum valid family, or the best found within the node budget."""
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    catalog = enumerate_candidates(n, spec)
    if len(catalog.candidates) > _MAX_VERTICES:
        raise TooLarge(
            f"{len(catalog.candidates)} candidates exceeds the "
            f"{_MAX_VERTICES}-vertex search limit"
        )
    if not catalog.candidates:
        return SearchResult(
            optimum=0,
            witness=SetFamily.from_masks(n, []),
            nodes_explored=0,
            proved_optimal=True,
            budget_exhausted=False,
        )
    graph = build_compatibility_graph(catalog)

    # Reindex hub-first (reverse degeneracy order): dense-core vertices
    # get colored first, which tightens the bounds early.
    order = _degeneracy_order(graph.adjacency)
    order.reverse()
    position = {old: new for new, old in enumerate(order)}
    reindexed = [0] * len(order)
    for old, new in position.items():
        row = graph.adjacency[old]
        acc = 0
        while row:
            low = row & -row
            acc |= 1 << position[low.bit_length() - 1]
            row ^= low
        reindexed[new] = acc

    if _cliquecore.HAVE_NUMBA:
        seed = _greedy_clique(reindexed)
        best, clique, nodes, exhausted = _cliquecore.solve_bitset(
            reindexed, budget, seed)
    else:  # pragma: no cover - exercised only without numba
        solver = _CliqueSolver(reindexed, budget)
        exhausted = not solver.run()
        best, clique, nodes = solver.best, solver.best_clique, solver.nodes
    clique_masks = [catalog.candidates[order[v]] for v in clique]
    witness = SetFamily.from_masks(n, clique_masks)
    return SearchResult(
        optimum=best,
        witness=witness,
        nodes_explored=nodes,
        proved_optimal=not exhausted,
        budget_exhausted=exhausted,
    )


def greedy_family(n: int, spec: IntersectionSpec,
                  rng: Optional[random.Random] = None) -> SetFamily:
    """Grow a valid family greedily, in catalog order or a seeded shuffle."""
    candidates = list(enumerate_candidates(n, spec).candidates)
    if rng is not None:
        rng.shuffle(candidates)
    lset = set(spec.L)
    p = spec.p
    chosen: list[int] = []
    for cand in candidates:
        if all((cand & other).bit_count() % p in lset for other in chosen):
            chosen.append(cand)
    return SetFamily.from_masks(n, chosen)


def spec_grid(p: int, k_size_max: int, l_size_max: int) -> list[IntersectionSpec]:
    """All disjoint (K, L) pairs over [0, p-1] within the size caps, in order."""
    residues = list(range(p))
    specs = []
    for k_size in range(1, k_size_max + 1):
        for K in combinations(residues, k_size):
            rest = [x for x in residues if x not in K]
            for l_size in range(1, l_size_max + 1):
                for L in combinations(rest, l_size):
                    specs.append(IntersectionSpec.of(p, K, L))
    return specs


@dataclass(frozen=True)
class SweepRow:
    n: int
    spec: IntersectionSpec
    result: SearchResult
    report: BoundReport
    violation: bool
    slack: Optional[int]


def sweep(n_values: Sequence[int], p_values: Sequence[int], k_size_max: int,
          l_size_max: int,
          node_budget: Optional[int] = None) -> list[SweepRow]:
    """Search every grid instance and compare the optimum with every bound.

    The violation flag is raised when the found optimum exceeds a bound
    whose hypothesis holds; that must never happen, so any raised flag
    fails the run downstream.
    """
    rows = []
    for p in p_values:
        for spec in spec_grid(p, k_size_max, l_size_max):
            for n in n_values:
                result = max_family(n, spec, node_budget)
                report = applicability(n, spec)
                applicable = report.applicable()
                violation = any(result.optimum > e.value for e in applicable)
                slack = (
                    min(e.value - result.optimum for e in applicable)
                    if applicable else None
                )
                rows.append(SweepRow(
                    n=n, spec=spec, result=result, report=report,
                    violation=violation, slack=slack,
                ))
    return rows


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    """Render the sweep table in the documented CSV layout."""
    import csv
    import io

    from .bounds import TheoremTag

    out = io.StringIO()
    writer = csv.writer(out)
    tags = [tag.value for tag in TheoremTag]
    writer.writerow(["n", "p", "K", "L", "optimum", "proved"] + tags + ["violation"])
    for row in rows:
        record = [
            row.n,
            row.spec.p,
            ",".join(map(str, row.spec.K)),
            ",".join(map(str, row.spec.L)),
            row.result.optimum,
            "yes" if row.result.proved_optimal else "no",
        ]
        for entry in row.report.entries:
            record.append(entry.value if entry.holds else "n/a")
        record.append("yes" if row.violation else "no")
        writer.writerow(record)
    return out.getvalue()


def witness_sets(result: SearchResult) -> tuple[tuple[int, ...], ...]:
    return tuple(elements_of(mask) for mask in result.witness.members)
