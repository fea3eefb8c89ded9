'''
Brute-force ground truth: enumerate single lattice paths and families of
vertex-disjoint paths. Deliberately naive; every generating function in the
package is cross-checked against it at small sizes.
'''
import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, List, Optional, Set, Tuple

from backend.src.api.models import RegionSpec
from backend.src.config import get_settings
from backend.src.errors import EnumerationCapError
from backend.src.services.exact import LaurentPoly, lp_add, lp_scale
from backend.src.services.paths import LatticePoint, PathSpec, step_label
from backend.src.services.qseries import weight_product

logger = logging.getLogger("qhex.oracle")

Vertex = Tuple[int, int]


@dataclass(frozen=True)
class Path:
    vertices: Tuple[Vertex, ...]

    def steps(self):
        return zip(self.vertices, self.vertices[1:])

    def labels(self) -> List[int]:
        # right steps only; down steps carry weight 1
        return [
            step_label(LatticePoint(*u))
            for u, v in self.steps()
            if v[0] == u[0] + 1
        ]

    def weight(self) -> LaurentPoly:
        return weight_product(self.labels())


@dataclass(frozen=True)
class PathFamily:
    paths: Tuple[Path, ...]

    def labels(self) -> List[int]:
        return [label for path in self.paths for label in path.labels()]

    def weight(self) -> LaurentPoly:
        return weight_product(self.labels())

    def vertices(self) -> Set[Vertex]:
        return {v for path in self.paths for v in path.vertices}

    def is_vertex_disjoint(self) -> bool:
        seen: Set[Vertex] = set()
        for path in self.paths:
            for v in path.vertices:
                if v in seen:
                    return False
                seen.add(v)
        return True


def _resolve_cap(cap: Optional[int]) -> int:
    return get_settings().enumeration_cap if cap is None else cap


def path_count(spec: PathSpec) -> int:
    if not spec.feasible():
        return 0
    return comb(spec.width + spec.depth, spec.width)


def _reaching(start: Vertex, end: Vertex, blocked: Set[Vertex]) -> Set[Vertex]:
    '''
    Vertices of the start/end box that still reach `end` by right/down
    steps without touching a blocked vertex.
    '''
    live: Set[Vertex] = set()
    # sweep columns right to left, rows bottom to top: both successors are settled first
    for x in range(end[0], start[0] - 1, -1):
        for y in range(end[1], start[1] + 1):
            v = (x, y)
            if v in blocked:
                continue
            if v == end or (x + 1, y) in live or (x, y - 1) in live:
                live.add(v)
    return live


def _walks(start: Vertex, end: Vertex, blocked: Set[Vertex], budget: List[int], cap: int) -> Iterator[Tuple[Vertex, ...]]:
    '''
    Depth-first right/down walks from start to end avoiding blocked vertices.
    Right steps are tried before down steps, so output order is deterministic.
    `budget` is a one-element visited-state counter shared across the search.
    Only vertices that can still reach `end` are entered, so every branch of
    the search ends in a walk.
    '''
    live = _reaching(start, end, blocked)
    if start not in live:
        return
    stack = [(start, (start,))]
    while stack:
        (x, y), trail = stack.pop()
        budget[0] += 1
        if budget[0] > cap:
            raise EnumerationCapError(
                f"enumeration visited more than {cap} states", visited=budget[0], cap=cap
            )
        if (x, y) == end:
            yield trail
            continue
        # dead ends were removed by _reaching, blocked vertices with them
        moves = [nxt for nxt in ((x + 1, y), (x, y - 1)) if nxt in live]
        # push in reverse so the right step is explored first
        for nxt in reversed(moves):
            stack.append((nxt, trail + (nxt,)))


def enumerate_single(spec: PathSpec, cap: Optional[int] = None) -> List[Tuple[Path, LaurentPoly]]:
    cap = _resolve_cap(cap)
    total = path_count(spec)
    if total > cap:
        raise EnumerationCapError(f"{total} paths exceed the cap {cap}", visited=total, cap=cap)
    if total == 0:
        return []
    start = (spec.start.a, spec.start.b)
    end = (spec.end.a, spec.end.b)
    # visited states <= paths * vertices per path
    budget = [0]
    paths = [Path(trail) for trail in _walks(start, end, set(), budget, cap * (spec.width + spec.depth + 1))]
    return [(path, path.weight()) for path in paths]


def iter_families(region: RegionSpec, cap: Optional[int] = None) -> Iterator[PathFamily]:
    '''
    All families of pairwise vertex-disjoint paths, path i from (2i-1, i-1)
    to (2m-1+k, a_i). Path i is chosen after paths 1..i-1 and avoids their
    vertices; families come out in lexicographic DFS order.
    '''
    cap = _resolve_cap(cap)
    m = region.m
    starts = [region.start(i) for i in range(1, m + 1)]
    ends = [region.end(j) for j in range(1, m + 1)]
    # every endpoint is reserved for its own path
    reserved = set(starts) | set(ends)
    budget = [0]

    def extend(i: int, chosen: Tuple[Path, ...], used: Set[Vertex]):
        if i == m:
            yield PathFamily(chosen)
            return
        # earlier paths and every other path's endpoints are off limits
        blocked = used | (reserved - {starts[i], ends[i]})
        for trail in _walks(starts[i], ends[i], blocked, budget, cap):
            taken = used | set(trail)
            # drop the prefix when a later path is already cut off from its end
            if any(starts[j] not in _reaching(starts[j], ends[j], taken | (reserved - {starts[j], ends[j]}))
                   for j in range(i + 1, m)):
                continue
            yield from extend(i + 1, chosen + (Path(trail),), taken)

    if any(ends[i][1] > starts[i][1] for i in range(m)):
        logger.debug(f"region {region.dents.values} has a path ending above its start")
        return
    yield from extend(0, (), set())
    logger.debug(f"enumeration of m={m} k={region.k} dents={region.dents.values} visited {budget[0]} states")


def family_gf(region: RegionSpec, cap: Optional[int] = None) -> LaurentPoly:
    '''
    Sum over all vertex-disjoint families of the product of path weights.
    Families are grouped by label multiset before any polynomial is expanded.
    '''
    tally: Counter = Counter()
    for family in iter_families(region, cap):
        tally[tuple(sorted(abs(l) for l in family.labels()))] += 1
    total = LaurentPoly.zero()
    for labels, count in sorted(tally.items()):
        total = lp_add(total, lp_scale(weight_product(labels), count))
    return total


def family_count(region: RegionSpec, cap: Optional[int] = None) -> int:
    return sum(1 for _ in iter_families(region, cap))


def admissible_regions(max_m: int, max_k: int, min_m: int = 1) -> Iterator[RegionSpec]:
    '''Every region in the dent window with min_m <= m <= max_m, k <= max_k.'''
    for m in range(min_m, max_m + 1):
        for k in range(max_k + 1):
            window = range(-(m + k - 1), m)
            for dents in combinations(window, m):
                yield RegionSpec.of(m, k, dents)
