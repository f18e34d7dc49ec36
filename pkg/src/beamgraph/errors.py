"""Exception types raised across the beamgraph package."""

from __future__ import annotations


class BeamGraphError(Exception):
    """Base class for every domain error in this package."""


class DuplicateId(BeamGraphError):
    """A resource id is already registered in the graph."""


class AgencyMismatch(BeamGraphError):
    """Agency supplied for a non-agent, or missing for an agent."""


class UnknownResource(BeamGraphError):
    """A referenced resource id is not registered."""


class SelfLoop(BeamGraphError):
    """A viewpoint or beam lookup names the same resource twice."""


class NonAgentEmitter(BeamGraphError):
    """The emitter of a viewpoint is not an agent."""


class TimeTravel(BeamGraphError):
    """An evaluation time earlier than a viewpoint's timestamp."""


class MixedBeam(BeamGraphError):
    """Viewpoints passed as one beam do not share a single pair."""


class InvalidPerspective(BeamGraphError):
    """Perspective fields violate their invariants (negative weight, bad half-life, ...)."""


class SameResource(BeamGraphError):
    """A query names the same resource as both endpoints."""


class KindMismatch(BeamGraphError):
    """A feedback event references resources of the wrong kind."""


class MalformedScript(BeamGraphError):
    """A scenario script is structurally invalid or references undefined resources.

    Carries the offending step and action indices (1-based step, 0-based action).
    """

    def __init__(self, step: int, action: int, reason: str):
        super().__init__(f"step {step}, action {action}: {reason}")
        self.step = step
        self.action = action
        self.reason = reason


class SequenceGap(BeamGraphError):
    """An event record's seq is not exactly one past the previous seq."""


class CorruptLine(BeamGraphError):
    """An event-log line failed to parse; carries the 1-based line number."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class IoFailure(BeamGraphError):
    """Wraps an OS-level failure while reading or writing the event log."""
