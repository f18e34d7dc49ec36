"""Multi-agent exploitation/feedback simulation with a synchronization metric.

Agents take turns browsing the shared graph (observation) and appending
feedback viewpoints according to their private affinities (action). Runs are
reproducible by contract: every random draw comes from a SplitMix64 stream
derived from ``(config seed, round, lane)``, so an identical config produces
an identical event log on any platform.

Generator contract (fixed; do not change without versioning configs):
SplitMix64 over 64-bit state, output ``mix64(state += 0x9E3779B97F4A7C15)``
where ``mix64`` is the standard avalanche (xor-shift 30 / mul
0xBF58476D1CE4E5B9, xor-shift 27 / mul 0x94D049BB133111EB, xor-shift 31).
Stream state for ``(seed, round, lane)`` is
``mix64(mix64(mix64(seed) + round) + lane)``; lane 0 orders the agents of
the round (Fisher-Yates), lane ``1 + i`` serves agent ``i`` (population
order) and is consumed in a fixed sequence: topic index, exclude-self
uniform, then the explorer's document pick. Floats are the top 53 bits of
one output over ``2**53``; ``below(n)`` is ``floor(float * n)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources as importlib_resources
from typing import Any, Iterable

from .core import (
    Agency,
    Kind,
    KnowledgeGraph,
    Paradigm,
    Polarity,
    ResourceId,
    Timestamp,
    ViewpointType,
)
from .errors import KindMismatch
from .perspective import Perspective, build_map
from .query import k_nearest, shortest_paths
from .session import FeedbackEvent, nearest_via, record_feedback

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Stream:
    """One SplitMix64 draw sequence."""

    def __init__(self, state: int):
        self._state = state & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix64(self._state)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, n: int) -> int:
        return min(n - 1, int(self.next_float() * n))


def stream_for(seed: int, round_index: int, lane: int) -> Stream:
    """The draw stream governed by (seed, round, lane); see module docstring."""
    return Stream(_mix64(_mix64(_mix64(seed) + round_index) + lane))


class Strategy(str, Enum):
    """How an agent picks its next document among unvisited candidates."""

    SHORTEST_PATH_FIRST = "shortest_path_first"
    EXPLORER = "explorer"


@dataclass(frozen=True)
class AgentProfile:
    """One agent's private system of values and browsing style."""

    agent: ResourceId
    affinity: dict[ResourceId, float] = field(default_factory=dict)
    strategy: Strategy = Strategy.SHORTEST_PATH_FIRST
    exclude_self_prob: float = 0.0

    def __post_init__(self) -> None:
        for doc, value in self.affinity.items():
            if not -1.0 <= value <= 1.0:
                raise ValueError(f"affinity for {doc!r} outside [-1, 1]")
        if not 0.0 <= self.exclude_self_prob <= 1.0:
            raise ValueError("exclude_self_prob outside [0, 1]")


@dataclass(frozen=True)
class SimulationConfig:
    """A fully deterministic run description.

    ``setup`` bootstraps the shared graph at tick 0 (resource registrations
    and initial viewpoints) so a config file is self-contained.
    """

    seed: int
    rounds: int
    population: tuple[AgentProfile, ...]
    topics: tuple[ResourceId, ...]
    like_threshold: float = 0.3
    setup: tuple[dict[str, Any], ...] = ()


def parse_config(data: Any) -> SimulationConfig:
    """Build a config from its JSON object form."""
    if not isinstance(data, dict):
        raise ValueError("simulation config must be a JSON object")
    population = tuple(
        AgentProfile(
            agent=prof["agent"],
            affinity={str(k): float(v) for k, v in prof.get("affinity", {}).items()},
            strategy=Strategy(prof.get("strategy", "shortest_path_first")),
            exclude_self_prob=float(prof.get("exclude_self_prob", 0.0)),
        )
        for prof in data.get("population", [])
    )
    return SimulationConfig(
        seed=int(data["seed"]),
        rounds=int(data["rounds"]),
        population=population,
        topics=tuple(data.get("topics", [])),
        like_threshold=float(data.get("like_threshold", 0.3)),
        setup=tuple(data.get("setup", [])),
    )


def load_builtin_config(name: str) -> SimulationConfig:
    """A bundled config: ``default`` or ``apple``."""
    path = importlib_resources.files("beamgraph.data").joinpath(f"{name}_sim.json")
    return parse_config(json.loads(path.read_text("utf-8")))


def apply_setup(graph: KnowledgeGraph, config: SimulationConfig) -> None:
    """Bootstrap the graph from the config's tick-0 setup entries."""
    for entry in config.setup:
        if entry.get("kind") == "viewpoint":
            graph.add_viewpoint(
                emitter=entry["emitter"],
                r2=entry["r2"],
                r3=entry["r3"],
                vtype=ViewpointType(Paradigm(entry["paradigm"]), Polarity(entry["polarity"])),
                at=0,
            )
        else:
            graph.add_resource(
                kind=Kind(entry["rkind"]),
                label=entry.get("label", entry["id"]),
                agency=Agency(entry["agency"]) if "agency" in entry else None,
                id=entry["id"],
                at=0,
            )


def _document_count(graph: KnowledgeGraph) -> int:
    return sum(1 for r in graph.resources.values() if r.kind is Kind.DOCUMENT)


def run_round(
    graph: KnowledgeGraph,
    config: SimulationConfig,
    round_index: int,
    visited: dict[ResourceId, set[ResourceId]],
) -> list[FeedbackEvent]:
    """Advance the loop by one tick; returns the feedback events applied.

    Agents act sequentially in a seeded-random order, each seeing the
    viewpoints appended by earlier agents of the same round. An agent draws
    a topic, ranks the topic's reachable documents, visits one unvisited
    candidate per its strategy, and emits feedback when its affinity clears
    the like threshold. ``visited`` carries the per-agent browsing memory
    across rounds and is updated in place.
    """
    for profile in config.population:
        if graph.resource(profile.agent).kind is not Kind.AGENT:
            raise KindMismatch(f"{profile.agent!r} is not an agent")
    for topic in config.topics:
        graph.resource(topic)

    order = list(range(len(config.population)))
    order_stream = stream_for(config.seed, round_index, 0)
    for i in range(len(order) - 1, 0, -1):
        j = order_stream.below(i + 1)
        order[i], order[j] = order[j], order[i]

    applied: list[FeedbackEvent] = []
    doc_total = _document_count(graph)
    for idx in order:
        profile = config.population[idx]
        draws = stream_for(config.seed, round_index, 1 + idx)
        topic = config.topics[draws.below(len(config.topics))]
        exclude_roll = draws.next_float()
        perspective = Perspective()
        if exclude_roll < profile.exclude_self_prob:
            perspective = Perspective(exclude_emitters=frozenset({profile.agent}))
        if doc_total == 0:
            continue
        kmap = build_map(graph, perspective, now=round_index)
        candidates = k_nearest(kmap, topic, k=doc_total, kind_filter=Kind.DOCUMENT)
        seen = visited.setdefault(profile.agent, set())
        unvisited = [rid for rid, _ in candidates if rid not in seen]
        if not unvisited:
            continue
        if profile.strategy is Strategy.EXPLORER:
            doc = unvisited[draws.below(len(unvisited))]
        else:
            doc = unvisited[0]
        seen.add(doc)
        affinity = profile.affinity.get(doc, 0.0)
        if affinity != 0.0 and abs(affinity) >= config.like_threshold:
            ev = FeedbackEvent(
                agent=profile.agent,
                document=doc,
                topic=topic,
                polarity=Polarity.POSITIVE if affinity > 0 else Polarity.NEGATIVE,
                at=round_index,
            )
            record_feedback(graph, ev)
            applied.append(ev)
    return applied


def top_document(graph: KnowledgeGraph, kmap, agent: ResourceId, topic: ResourceId) -> ResourceId | None:
    """The document an agent "gets" for a topic: the last document hop on
    the lexicographically first tied shortest path. None when the topic is
    unreachable or the best path carries no document."""
    answer = shortest_paths(kmap, agent, topic)
    if not answer.paths:
        return None
    vias = nearest_via([answer.paths[0].nodes], graph, Kind.DOCUMENT)
    return next(iter(vias)) if vias else None


def synchronization(
    graph: KnowledgeGraph,
    perspective: Perspective,
    topic: ResourceId,
    population: Iterable[ResourceId],
    now: Timestamp | None = None,
) -> float:
    """Fraction of agent pairs that agree on their top document for a topic.

    Unreachable counts as agreeing only with unreachable. A population of
    fewer than two agents is vacuously synchronized (1.0 by convention).
    """
    if graph.resource(topic).kind is not Kind.TOPIC:
        raise KindMismatch(f"{topic!r} is not a topic")
    agents = list(population)
    for agent in agents:
        graph.resource(agent)
    if len(agents) < 2:
        return 1.0
    if now is None:
        now = graph.latest_timestamp()
    kmap = build_map(graph, perspective, now=now)
    tops = {agent: top_document(graph, kmap, agent, topic) for agent in agents}
    agree = 0
    total = 0
    for i in range(len(agents)):
        for j in range(i + 1, len(agents)):
            total += 1
            if tops[agents[i]] == tops[agents[j]]:
                agree += 1
    return agree / total


@dataclass(frozen=True)
class RoundMetrics:
    round: int
    synchronization: float
    viewpoints_appended: int

    def to_json_line(self) -> str:
        body = {
            "round": self.round,
            "synchronization": self.synchronization,
            "viewpoints_appended": self.viewpoints_appended,
        }
        return json.dumps(body, separators=(",", ":"))


@dataclass
class SimulationResult:
    graph: KnowledgeGraph
    metrics: list[RoundMetrics]
    events: list[FeedbackEvent]


def simulate(config: SimulationConfig) -> SimulationResult:
    """Run a full simulation from the config's setup state.

    The per-round synchronization metric is computed under the neutral
    perspective and averaged over the config's topics.
    """
    graph = KnowledgeGraph()
    apply_setup(graph, config)
    for profile in config.population:
        if graph.resource(profile.agent).kind is not Kind.AGENT:
            raise KindMismatch(f"{profile.agent!r} is not an agent")
    for topic in config.topics:
        if graph.resource(topic).kind is not Kind.TOPIC:
            raise KindMismatch(f"{topic!r} is not a topic")

    visited: dict[ResourceId, set[ResourceId]] = {}
    metrics: list[RoundMetrics] = []
    all_events: list[FeedbackEvent] = []
    agents = [p.agent for p in config.population]
    neutral = Perspective()
    for round_index in range(1, config.rounds + 1):
        before = len(graph.viewpoints)
        events = run_round(graph, config, round_index, visited)
        appended = len(graph.viewpoints) - before
        if config.topics:
            sync = sum(
                synchronization(graph, neutral, t, agents, now=round_index) for t in config.topics
            ) / len(config.topics)
        else:
            sync = 1.0
        metrics.append(RoundMetrics(round=round_index, synchronization=sync, viewpoints_appended=appended))
        all_events.extend(events)
    return SimulationResult(graph=graph, metrics=metrics, events=all_events)
