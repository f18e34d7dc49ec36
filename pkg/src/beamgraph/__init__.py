"""beamgraph: an event-sourced, subjective knowledge-graph engine.

Resources (agents, documents, topics) are interlinked by beams of
timestamped, signed viewpoints. The shared trace is append-only; meaning is
assigned at read time by each consumer's perspective (paradigm weights,
trust, recency decay, exclusions), which turns beams into proximities and
the graph into a queryable knowledge map.
"""

from .core import (
    Agency,
    GraphSnapshot,
    Kind,
    KnowledgeGraph,
    Paradigm,
    Polarity,
    Resource,
    ResourceId,
    Timestamp,
    Viewpoint,
    ViewpointId,
    ViewpointType,
    beam,
)
from .errors import (
    AgencyMismatch,
    BeamGraphError,
    CorruptLine,
    DuplicateId,
    InvalidPerspective,
    IoFailure,
    KindMismatch,
    MalformedScript,
    MixedBeam,
    NonAgentEmitter,
    SameResource,
    SelfLoop,
    SequenceGap,
    TimeTravel,
    UnknownResource,
)
from .eventlog import EventLog, EventRecord, iter_records, replay, write_graph
from .export import export_map, map_to_json_obj
from .perspective import (
    KnowledgeMap,
    Perspective,
    beam_strength,
    build_map,
    evaluate_viewpoint,
    perspective_from_json,
)
from .query import Path, PathAnswer, distance, k_nearest, neighborhood, shortest_paths
from .session import (
    FeedbackEvent,
    ScenarioReport,
    ScenarioScript,
    builtin_apple_script,
    parse_script,
    record_feedback,
    run_scenario,
)
from .simulator import (
    AgentProfile,
    SimulationConfig,
    SimulationResult,
    Strategy,
    load_builtin_config,
    parse_config,
    run_round,
    simulate,
    synchronization,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
