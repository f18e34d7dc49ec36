"""Consumer-tuned interpretation of the shared trace.

A perspective is a rule set owned by whoever reads the graph, never by the
store: paradigm weights, per-agent trust, an optional recency half-life and
emitter exclusions. Evaluating every viewpoint of a beam under a perspective
and summing gives the beam's strength; the reciprocal of strength is the
distance used by all queries. Building a map is a pure function of
(graph snapshot, perspective, now), so tuning the rules re-interprets the
same trace without touching it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .core import (
    GraphLike,
    Paradigm,
    ResourceId,
    Timestamp,
    Viewpoint,
    ordered_pair,
)
from .errors import InvalidPerspective, MixedBeam, TimeTravel

NEUTRAL_PRESET = "neutral"


@dataclass(frozen=True)
class Perspective:
    """Rules for scoring viewpoints.

    Defaults are all-neutral: every paradigm weighs 1, every agent is trusted
    1, no decay, no exclusions, negative beam sums clamped to zero.
    """

    paradigm_weights: Mapping[Paradigm, float] = field(
        default_factory=lambda: {p: 1.0 for p in Paradigm}
    )
    trust_default: float = 1.0
    trust: Mapping[ResourceId, float] = field(default_factory=dict)
    half_life: float | None = None  # None means no decay
    exclude_emitters: frozenset[ResourceId] = frozenset()
    clamp_negative: bool = True

    def __post_init__(self) -> None:
        weights = {p: 1.0 for p in Paradigm}
        for key, value in dict(self.paradigm_weights).items():
            weights[Paradigm(key)] = float(value)
        object.__setattr__(self, "paradigm_weights", weights)
        object.__setattr__(self, "trust", dict(self.trust))
        object.__setattr__(self, "exclude_emitters", frozenset(self.exclude_emitters))
        for paradigm, weight in self.paradigm_weights.items():
            if weight < 0:
                raise InvalidPerspective(f"weight for {paradigm.value} is negative")
        if self.trust_default < 0:
            raise InvalidPerspective("default trust is negative")
        for agent, value in self.trust.items():
            if value < 0:
                raise InvalidPerspective(f"trust for {agent!r} is negative")
        if self.half_life is not None and not self.half_life > 0:
            raise InvalidPerspective("half_life must be positive or null")

    def trust_in(self, agent: ResourceId) -> float:
        return self.trust.get(agent, self.trust_default)

    def decay(self, age: Timestamp) -> float:
        if self.half_life is None:
            return 1.0
        return 2.0 ** (-age / self.half_life)

    # -- canonical JSON form ---------------------------------------------

    def to_json(self) -> dict[str, Any]:
        """The wire/CLI representation; see :func:`perspective_from_json`."""
        return {
            "paradigm_weights": {p.value: w for p, w in sorted(self.paradigm_weights.items(), key=lambda kv: kv[0].value)},
            "trust": {"default": self.trust_default, "per_agent": dict(sorted(self.trust.items()))},
            "half_life": self.half_life,
            "exclude_emitters": sorted(self.exclude_emitters),
            "clamp_negative": self.clamp_negative,
        }


def perspective_from_json(data: Any) -> Perspective:
    """Build a perspective from its JSON object form.

    Absent keys take defaults; the string preset ``"neutral"`` maps to the
    all-defaults perspective. Raises :class:`InvalidPerspective` on anything
    out of contract.
    """
    if isinstance(data, str):
        name = data.strip()
        if name == NEUTRAL_PRESET:
            return Perspective()
        try:
            data = json.loads(name)
        except json.JSONDecodeError:
            raise InvalidPerspective(f"unknown perspective preset {name!r}") from None
    if not isinstance(data, dict):
        raise InvalidPerspective("perspective must be a JSON object or preset name")
    unknown = set(data) - {"paradigm_weights", "trust", "half_life", "exclude_emitters", "clamp_negative"}
    if unknown:
        raise InvalidPerspective(f"unknown perspective keys: {sorted(unknown)}")
    try:
        weights = {Paradigm(k): float(v) for k, v in data.get("paradigm_weights", {}).items()}
    except (ValueError, TypeError, AttributeError):
        raise InvalidPerspective("bad paradigm_weights") from None
    trust_block = data.get("trust", {})
    if not isinstance(trust_block, dict):
        raise InvalidPerspective("trust must be an object")
    try:
        trust_default = float(trust_block.get("default", 1.0))
        per_agent = {str(k): float(v) for k, v in trust_block.get("per_agent", {}).items()}
    except (ValueError, TypeError, AttributeError):
        raise InvalidPerspective("bad trust table") from None
    half_life = data.get("half_life")
    if half_life is not None:
        try:
            half_life = float(half_life)
        except (ValueError, TypeError):
            raise InvalidPerspective("half_life must be a number or null") from None
    exclude = data.get("exclude_emitters", [])
    if not isinstance(exclude, (list, tuple, set, frozenset)):
        raise InvalidPerspective("exclude_emitters must be a list")
    clamp = data.get("clamp_negative", True)
    if not isinstance(clamp, bool):
        raise InvalidPerspective("clamp_negative must be a boolean")
    return Perspective(
        paradigm_weights=weights,
        trust_default=trust_default,
        trust=per_agent,
        half_life=half_life,
        exclude_emitters=frozenset(str(e) for e in exclude),
        clamp_negative=clamp,
    )


def evaluate_viewpoint(vp: Viewpoint, p: Perspective, now: Timestamp) -> float:
    """Score one viewpoint: polarity x paradigm weight x trust x decay.

    Excluded emitters score exactly 0. Raises :class:`TimeTravel` when asked
    to evaluate before the viewpoint existed.
    """
    if now < vp.at:
        raise TimeTravel(f"now={now} precedes viewpoint at={vp.at}")
    if vp.emitter in p.exclude_emitters:
        return 0.0
    return (
        vp.vtype.polarity.value
        * p.paradigm_weights[vp.vtype.paradigm]
        * p.trust_in(vp.emitter)
        * p.decay(now - vp.at)
    )


def beam_strength(beam: list[Viewpoint], p: Perspective, now: Timestamp) -> float:
    """Aggregate a beam into one proximity value.

    The sum of per-viewpoint evaluations, clamped at zero when the
    perspective says so. An empty beam has strength 0.
    """
    if beam:
        pairs = {vp.pair for vp in beam}
        if len(pairs) > 1:
            raise MixedBeam(f"beam mixes pairs {sorted(pairs)}")
    total = sum(evaluate_viewpoint(vp, p, now) for vp in beam)
    if p.clamp_negative:
        return max(0.0, total)
    return total


@dataclass(frozen=True)
class KnowledgeMap:
    """The weighted graph derived from one (graph snapshot, perspective, now).

    ``edges`` maps each ordered pair to its strength; an edge exists iff its
    strength is positive, and its distance is the reciprocal of strength.
    ``source_version`` makes stale maps detectable. ``nodes`` lists the
    resources the map spans: by default the endpoints of its edges, but a
    neighborhood sub-map may carry an explicit node set (its origin belongs
    even when isolated).
    """

    source_version: int
    perspective: Perspective
    now: Timestamp
    edges: dict[tuple[ResourceId, ResourceId], float]
    graph: GraphLike
    nodes: tuple[ResourceId, ...] = ()

    def __post_init__(self) -> None:
        if not self.nodes:
            seen = {rid for pair in self.edges for rid in pair}
            object.__setattr__(self, "nodes", tuple(sorted(seen)))

    def strength(self, r1: ResourceId, r2: ResourceId) -> float:
        return self.edges.get(ordered_pair(r1, r2), 0.0)

    def distance_of(self, r1: ResourceId, r2: ResourceId) -> float | None:
        """Direct edge distance, or None when no edge exists."""
        s = self.strength(r1, r2)
        return 1.0 / s if s > 0 else None

    def adjacency(self) -> dict[ResourceId, list[tuple[ResourceId, float]]]:
        """Neighbor lists with edge distances, deterministically ordered."""
        adj: dict[ResourceId, list[tuple[ResourceId, float]]] = {}
        for (a, b), strength in sorted(self.edges.items()):
            d = 1.0 / strength
            adj.setdefault(a, []).append((b, d))
            adj.setdefault(b, []).append((a, d))
        return adj


def build_map(graph: GraphLike, p: Perspective, now: Timestamp) -> KnowledgeMap:
    """Interpret a graph snapshot under a perspective.

    Every pair with at least one viewpoint gets its beam aggregated; pairs
    whose strength comes out positive become edges. Pure: identical inputs
    yield an identical map.
    """
    latest = max((vp.at for vp in graph.viewpoints), default=0)
    if now < latest:
        raise TimeTravel(f"now={now} precedes newest viewpoint at={latest}")
    edges: dict[tuple[ResourceId, ResourceId], float] = {}
    for pair, vps in sorted(graph.beams().items()):
        strength = beam_strength(vps, p, now)
        if strength > 0:
            edges[pair] = strength
    return KnowledgeMap(
        source_version=graph.version,
        perspective=p,
        now=now,
        edges=edges,
        graph=graph,
    )
