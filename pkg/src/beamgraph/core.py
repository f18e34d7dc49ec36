"""Domain types and the in-memory, append-only knowledge graph store.

The store keeps two kinds of records: resources (agents, documents, topics)
and viewpoints (subjective, timestamped links between two resources, asserted
by an agent). Both are immutable once appended; disagreement is expressed by
appending a negative viewpoint, never by editing history. Every append bumps
the graph version by one, so ``version == len(resources) + len(viewpoints)``
at all times and any past state can be recovered as a snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import (
    AgencyMismatch,
    DuplicateId,
    NonAgentEmitter,
    SelfLoop,
    UnknownResource,
)

Timestamp = int
ResourceId = str
ViewpointId = str


class Kind(str, Enum):
    """What a knowledge resource is: an acting agent, a document, or a topic."""

    AGENT = "agent"
    DOCUMENT = "document"
    TOPIC = "topic"


class Agency(str, Enum):
    """Whether an agent is a person or an algorithm."""

    HUMAN = "human"
    ARTIFICIAL = "artificial"


class Paradigm(str, Enum):
    """The flavor of evidence a viewpoint carries."""

    LOGIC = "logic"
    MINE = "mine"
    FEEL = "feel"


class Polarity(int, Enum):
    """Agreement (+1) or disagreement (-1)."""

    POSITIVE = 1
    NEGATIVE = -1


@dataclass(frozen=True)
class ViewpointType:
    """Paradigm and polarity of a viewpoint; magnitude lives in perspectives."""

    paradigm: Paradigm
    polarity: Polarity


@dataclass(frozen=True)
class Resource:
    """A node of knowledge.

    ``agency`` is set exactly when ``kind`` is AGENT. ``seq`` is the graph
    version at which the resource was registered (its position in the event
    history).
    """

    id: ResourceId
    kind: Kind
    label: str
    created_at: Timestamp
    agency: Agency | None = None
    seq: int = 0


@dataclass(frozen=True)
class Viewpoint:
    """One subjective link: ``emitter`` believes at time ``at`` that the two
    resources of ``pair`` are related, with the flavor given by ``vtype``.

    ``pair`` is stored in ascending id order so logically equal viewpoints
    compare and serialize identically regardless of argument order.
    """

    id: ViewpointId
    emitter: ResourceId
    pair: tuple[ResourceId, ResourceId]
    vtype: ViewpointType
    at: Timestamp
    seq: int = 0


def ordered_pair(r1: ResourceId, r2: ResourceId) -> tuple[ResourceId, ResourceId]:
    """Normalize an unordered resource pair to ascending id order."""
    return (r1, r2) if r1 <= r2 else (r2, r1)


@dataclass(frozen=True)
class GraphSnapshot:
    """A consistent, immutable read view of a graph at one version.

    Appends to the live graph never mutate anything reachable from a snapshot:
    the snapshot holds its own tuples of records.
    """

    version: int
    resources: dict[ResourceId, Resource]
    viewpoints: tuple[Viewpoint, ...]

    def resource(self, rid: ResourceId) -> Resource:
        try:
            return self.resources[rid]
        except KeyError:
            raise UnknownResource(rid) from None

    def beam(self, r1: ResourceId, r2: ResourceId) -> list[Viewpoint]:
        return _beam(self, r1, r2)

    def beams(self) -> dict[tuple[ResourceId, ResourceId], list[Viewpoint]]:
        return _beams(self)

    def latest_timestamp(self) -> Timestamp:
        return _latest_timestamp(self)

    def events(self) -> Iterator["Resource | Viewpoint"]:
        merged: list[Resource | Viewpoint] = [*self.resources.values(), *self.viewpoints]
        merged.sort(key=lambda rec: rec.seq)
        return iter(merged)


class KnowledgeGraph:
    """Append-only store of resources and viewpoints (the shared trace).

    Single-writer by contract: all mutation goes through :meth:`add_resource`
    and :meth:`add_viewpoint`. Readers may take :meth:`snapshot` views at any
    version; appended data never invalidates them.
    """

    def __init__(self) -> None:
        self._resources: dict[ResourceId, Resource] = {}
        self._order: list[Resource] = []
        self._viewpoints: list[Viewpoint] = []
        self._beams: dict[tuple[ResourceId, ResourceId], list[Viewpoint]] = {}
        self.version = 0

    # -- reads ---------------------------------------------------------------

    @property
    def resources(self) -> dict[ResourceId, Resource]:
        return self._resources

    @property
    def viewpoints(self) -> list[Viewpoint]:
        return self._viewpoints

    def resource(self, rid: ResourceId) -> Resource:
        try:
            return self._resources[rid]
        except KeyError:
            raise UnknownResource(rid) from None

    def beam(self, r1: ResourceId, r2: ResourceId) -> list[Viewpoint]:
        """Every viewpoint whose pair equals ``{r1, r2}``, in append order."""
        return _beam(self, r1, r2)

    def beams(self) -> dict[tuple[ResourceId, ResourceId], list[Viewpoint]]:
        """All non-empty beams keyed by ordered pair. Values are copies."""
        return {pair: list(vps) for pair, vps in self._beams.items()}

    def latest_timestamp(self) -> Timestamp:
        """Largest timestamp appended so far (0 for an empty graph)."""
        return _latest_timestamp(self)

    def snapshot(self, version: int | None = None) -> GraphSnapshot:
        """Freeze the graph as of ``version`` (default: current version)."""
        if version is None or version >= self.version:
            return GraphSnapshot(
                version=self.version,
                resources=dict(self._resources),
                viewpoints=tuple(self._viewpoints),
            )
        resources = {r.id: r for r in self._order if r.seq <= version}
        viewpoints = tuple(v for v in self._viewpoints if v.seq <= version)
        return GraphSnapshot(version=version, resources=resources, viewpoints=viewpoints)

    def events(self) -> Iterator[Resource | Viewpoint]:
        """All appended records interleaved in seq order."""
        merged: list[Resource | Viewpoint] = [*self._order, *self._viewpoints]
        merged.sort(key=lambda rec: rec.seq)
        return iter(merged)

    # -- writes --------------------------------------------------------------

    def add_resource(
        self,
        kind: Kind,
        label: str,
        agency: Agency | None = None,
        id: ResourceId | None = None,
        at: Timestamp = 0,
    ) -> ResourceId:
        """Register a resource and return its id.

        The id may be supplied by the caller (scenarios need stable names);
        otherwise one is generated. Agency must be given exactly when the
        kind is AGENT.

        Raises:
            DuplicateId: the supplied id is already registered.
            AgencyMismatch: agency on a non-agent, or missing on an agent.
        """
        kind = Kind(kind)
        if kind is Kind.AGENT:
            if agency is None:
                raise AgencyMismatch(f"agent {id or label!r} requires an agency")
            agency = Agency(agency)
        elif agency is not None:
            raise AgencyMismatch(f"{kind.value} {id or label!r} cannot carry an agency")
        if id is None:
            id = self._generate_resource_id()
        else:
            if not id:
                raise ValueError("resource id must be non-empty")
            if id in self._resources:
                raise DuplicateId(id)
        self.version += 1
        resource = Resource(
            id=id, kind=kind, label=label, created_at=at, agency=agency, seq=self.version
        )
        self._resources[id] = resource
        self._order.append(resource)
        return id

    def add_viewpoint(
        self,
        emitter: ResourceId,
        r2: ResourceId,
        r3: ResourceId,
        vtype: ViewpointType,
        at: Timestamp,
        id: ViewpointId | None = None,
    ) -> ViewpointId:
        """Append one viewpoint and return its id.

        The pair is stored unordered: ``(e, x, y)`` and ``(e, y, x)`` produce
        beam-equivalent records. ``id`` is only supplied when replaying an
        event log; fresh appends generate ``v1``, ``v2``, ...

        Raises:
            UnknownResource: emitter or pair member not registered.
            SelfLoop: ``r2 == r3``.
            NonAgentEmitter: the emitter is a document or topic.
        """
        if r2 == r3:
            raise SelfLoop(r2)
        emitter_res = self.resource(emitter)
        if emitter_res.kind is not Kind.AGENT:
            raise NonAgentEmitter(emitter)
        self.resource(r2)
        self.resource(r3)
        if id is None:
            id = f"v{len(self._viewpoints) + 1}"
        self.version += 1
        vp = Viewpoint(
            id=id,
            emitter=emitter,
            pair=ordered_pair(r2, r3),
            vtype=vtype,
            at=at,
            seq=self.version,
        )
        self._viewpoints.append(vp)
        self._beams.setdefault(vp.pair, []).append(vp)
        return id

    def _generate_resource_id(self) -> ResourceId:
        n = len(self._resources) + 1
        while f"r{n}" in self._resources:
            n += 1
        return f"r{n}"


GraphLike = KnowledgeGraph | GraphSnapshot


def _beam(graph: GraphLike, r1: ResourceId, r2: ResourceId) -> list[Viewpoint]:
    if r1 == r2:
        raise SelfLoop(r1)
    graph.resource(r1)
    graph.resource(r2)
    pair = ordered_pair(r1, r2)
    if isinstance(graph, KnowledgeGraph):
        return list(graph._beams.get(pair, ()))
    return [vp for vp in graph.viewpoints if vp.pair == pair]


def _beams(graph: GraphLike) -> dict[tuple[ResourceId, ResourceId], list[Viewpoint]]:
    if isinstance(graph, KnowledgeGraph):
        return graph.beams()
    out: dict[tuple[ResourceId, ResourceId], list[Viewpoint]] = {}
    for vp in graph.viewpoints:
        out.setdefault(vp.pair, []).append(vp)
    return out


def _latest_timestamp(graph: GraphLike) -> Timestamp:
    latest = 0
    for res in graph.resources.values():
        latest = max(latest, res.created_at)
    for vp in graph.viewpoints:
        latest = max(latest, vp.at)
    return latest


def beam(graph: GraphLike, r1: ResourceId, r2: ResourceId) -> list[Viewpoint]:
    """Module-level alias of :meth:`KnowledgeGraph.beam`."""
    return _beam(graph, r1, r2)
