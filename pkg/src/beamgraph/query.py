"""Distance, shortest-path, k-nearest and neighborhood queries over a map.

All queries are pure functions of an immutable :class:`KnowledgeMap`. Path
search returns every tied shortest path, not an arbitrary one: a beam that
splits evenly between two routes is a genuinely double answer and callers
get both. Ties are lengths within ``TIE_TOLERANCE`` of the best; results are
ordered lexicographically by node sequence so output is deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Any

from .core import Kind, ResourceId
from .errors import SameResource, UnknownResource
from .perspective import KnowledgeMap

TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Path:
    """A simple path over map edges; length is the sum of edge distances."""

    nodes: tuple[ResourceId, ...]
    length: float


@dataclass(frozen=True)
class PathAnswer:
    """All tied shortest paths between two resources.

    ``best_length`` is None and ``paths`` empty when the target is
    unreachable. Every listed path has length within ``TIE_TOLERANCE`` of
    ``best_length`` and the list is exhaustive over simple shortest paths.
    """

    source: ResourceId
    target: ResourceId
    best_length: float | None
    paths: tuple[Path, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "best_length": self.best_length,
            "paths": [list(p.nodes) for p in self.paths],
        }


def _require_registered(map: KnowledgeMap, rid: ResourceId) -> None:
    map.graph.resource(rid)


def _dijkstra(map: KnowledgeMap, source: ResourceId) -> dict[ResourceId, float]:
    """Best distances from source to every reachable map node."""
    adj = map.adjacency()
    dist: dict[ResourceId, float] = {source: 0.0}
    heap: list[tuple[float, ResourceId]] = [(0.0, source)]
    done: set[ResourceId] = set()
    while heap:
        d, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        for other, w in adj.get(node, ()):
            nd = d + w
            if nd < dist.get(other, math.inf):
                dist[other] = nd
                heapq.heappush(heap, (nd, other))
    return dist


def shortest_paths(map: KnowledgeMap, source: ResourceId, target: ResourceId) -> PathAnswer:
    """Every tied simple shortest path from source to target.

    Runs Dijkstra keeping a predecessor *set* per node (an edge is a
    predecessor when it lies on some path of best length, within the tie
    tolerance), then expands the predecessor relation into full paths.
    Edge distances are strictly positive, so expanded paths are simple.

    Raises:
        SameResource: source equals target.
        UnknownResource: either endpoint is not registered in the
            underlying graph.
    """
    if source == target:
        raise SameResource(source)
    _require_registered(map, source)
    _require_registered(map, target)

    dist = _dijkstra(map, source)
    if target not in dist:
        return PathAnswer(source=source, target=target, best_length=None, paths=())

    adj = map.adjacency()
    preds: dict[ResourceId, list[ResourceId]] = {}
    for node, d in dist.items():
        for other, w in adj.get(node, ()):
            if other in dist and abs(dist[other] + w - d) <= TIE_TOLERANCE:
                preds.setdefault(node, []).append(other)

    # Walk the predecessor relation backwards from the target. Positive
    # weights make revisits strictly longer, so cycles only matter when edge
    # weights approach the tie tolerance; the membership guard keeps the
    # expansion simple and terminating regardless.
    best = dist[target]
    results: list[tuple[ResourceId, ...]] = []

    def expand(node: ResourceId, suffix: tuple[ResourceId, ...]) -> None:
        if node == source:
            results.append((source, *suffix))
            return
        for p in preds.get(node, ()):
            if p not in suffix and p != node:
                expand(p, (node, *suffix))

    expand(target, ())

    paths = []
    for nodes in sorted(set(results)):
        length = _path_length(map, nodes)
        if abs(length - best) <= TIE_TOLERANCE:
            paths.append(Path(nodes=nodes, length=length))
    return PathAnswer(source=source, target=target, best_length=best, paths=tuple(paths))


def _path_length(map: KnowledgeMap, nodes: tuple[ResourceId, ...]) -> float:
    total = 0.0
    for a, b in zip(nodes, nodes[1:]):
        d = map.distance_of(a, b)
        assert d is not None
        total += d
    return total


def distance(map: KnowledgeMap, r1: ResourceId, r2: ResourceId) -> float:
    """Shortest-path distance; ``math.inf`` when unreachable. Symmetric."""
    if r1 == r2:
        raise SameResource(r1)
    _require_registered(map, r1)
    _require_registered(map, r2)
    return _dijkstra(map, r1).get(r2, math.inf)


def k_nearest(
    map: KnowledgeMap,
    origin: ResourceId,
    k: int,
    kind_filter: Kind | None = None,
) -> list[tuple[ResourceId, float]]:
    """The k reachable resources nearest to origin, ascending by distance.

    Ties break on resource id. The origin itself is never listed; fewer than
    k entries come back when fewer are reachable.
    """
    _require_registered(map, origin)
    if k < 1:
        raise ValueError("k must be >= 1")
    dist = _dijkstra(map, origin)
    hits: list[tuple[float, ResourceId]] = []
    for rid, d in dist.items():
        if rid == origin:
            continue
        if kind_filter is not None and map.graph.resource(rid).kind is not Kind(kind_filter):
            continue
        hits.append((d, rid))
    hits.sort()
    return [(rid, d) for d, rid in hits[:k]]


def neighborhood(map: KnowledgeMap, origin: ResourceId, radius: float) -> KnowledgeMap:
    """The induced sub-map on resources within ``radius`` of origin.

    The origin always belongs, even when isolated; edges survive when both
    endpoints are inside the ball.
    """
    _require_registered(map, origin)
    if radius < 0:
        raise ValueError("radius must be >= 0")
    dist = _dijkstra(map, origin)
    inside = {rid for rid, d in dist.items() if d <= radius}
    inside.add(origin)
    edges = {
        pair: strength
        for pair, strength in map.edges.items()
        if pair[0] in inside and pair[1] in inside
    }
    return KnowledgeMap(
        source_version=map.source_version,
        perspective=map.perspective,
        now=map.now,
        edges=edges,
        graph=map.graph,
        nodes=tuple(sorted(inside)),
    )
