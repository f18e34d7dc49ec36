"""Feedback capture and the executable co-learning scenario engine.

Feedback is the write half of the exploitation/feedback loop: an agent's
reaction to a document becomes one or two feeling viewpoints (agent-document,
plus document-topic when the reaction was about a topic). The scenario
engine replays a scripted sequence of steps — registrations, viewpoints,
feedback and query assertions — against a fresh graph and reports every
assertion outcome. The bundled apple script is the package's main regression
gate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from typing import Any

from .core import (
    Kind,
    KnowledgeGraph,
    Paradigm,
    Polarity,
    ResourceId,
    Timestamp,
    ViewpointId,
    ViewpointType,
)
from .errors import BeamGraphError, KindMismatch, MalformedScript
from .perspective import Perspective, build_map, perspective_from_json
from .query import TIE_TOLERANCE, distance, shortest_paths


@dataclass(frozen=True)
class FeedbackEvent:
    """An agent's reaction to a document, optionally about a topic."""

    agent: ResourceId
    document: ResourceId
    polarity: Polarity
    at: Timestamp
    topic: ResourceId | None = None


def record_feedback(graph: KnowledgeGraph, ev: FeedbackEvent) -> list[ViewpointId]:
    """Capture feedback as feeling viewpoints; returns the appended ids.

    Links the agent to the document, and reinforces document-topic when a
    topic is given — nothing more: the operation is exactly the one or two
    appends it documents.

    Raises:
        KindMismatch: agent/document/topic resources have the wrong kinds.
        UnknownResource: any referenced id is unregistered.
    """
    agent = graph.resource(ev.agent)
    if agent.kind is not Kind.AGENT:
        raise KindMismatch(f"{ev.agent!r} is not an agent")
    document = graph.resource(ev.document)
    if document.kind is not Kind.DOCUMENT:
        raise KindMismatch(f"{ev.document!r} is not a document")
    if ev.topic is not None:
        topic = graph.resource(ev.topic)
        if topic.kind is not Kind.TOPIC:
            raise KindMismatch(f"{ev.topic!r} is not a topic")
    vtype = ViewpointType(Paradigm.FEEL, ev.polarity)
    ids = [graph.add_viewpoint(ev.agent, ev.agent, ev.document, vtype, ev.at)]
    if ev.topic is not None:
        ids.append(graph.add_viewpoint(ev.agent, ev.document, ev.topic, vtype, ev.at))
    return ids


# -- scenario scripts ---------------------------------------------------------

ACTION_TYPES = ("resource", "viewpoint", "feedback", "assert_paths", "assert_nearest", "assert_equidistant")


@dataclass(frozen=True)
class ScenarioScript:
    """An ordered list of steps, each a list of action objects.

    Timestamps are implicit: every action in step ``i`` happens at tick
    ``i`` (1-based), and every assertion queries at ``now = i``.
    """

    steps: tuple[tuple[dict[str, Any], ...], ...]


def parse_script(data: Any) -> ScenarioScript:
    """Validate the ``{steps: [{actions: [...]}]}`` shell of a script."""
    if not isinstance(data, dict) or not isinstance(data.get("steps"), list):
        raise MalformedScript(0, 0, "script must be an object with a 'steps' list")
    steps = []
    for si, step in enumerate(data["steps"], start=1):
        if not isinstance(step, dict) or not isinstance(step.get("actions"), list):
            raise MalformedScript(si, 0, "step must be an object with an 'actions' list")
        actions = []
        for ai, action in enumerate(step["actions"]):
            if not isinstance(action, dict):
                raise MalformedScript(si, ai, "action must be an object")
            if action.get("type") not in ACTION_TYPES:
                raise MalformedScript(si, ai, f"unknown action type {action.get('type')!r}")
            actions.append(action)
        steps.append(tuple(actions))
    return ScenarioScript(steps=tuple(steps))


def builtin_apple_script() -> ScenarioScript:
    """The bundled five-step co-learning script."""
    text = importlib_resources.files("beamgraph.data").joinpath("apple_scenario.json").read_text("utf-8")
    return parse_script(json.loads(text))


@dataclass(frozen=True)
class AssertionResult:
    step: int
    action: int
    description: str
    passed: bool
    expected: str
    actual: str


@dataclass
class ScenarioReport:
    """Every assertion outcome of one scenario run."""

    results: list[AssertionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = []
        current_step = None
        for r in self.results:
            if r.step != current_step:
                lines.append(f"step {r.step}:")
                current_step = r.step
            mark = "ok" if r.passed else "FAIL"
            lines.append(f"  [{mark}] {r.description}: expected {r.expected}, got {r.actual}")
        good = sum(1 for r in self.results if r.passed)
        lines.append(f"{good}/{len(self.results)} assertions passed")
        return "\n".join(lines) + "\n"


def _fmt_length(value: float | None) -> str:
    if value is None or math.isinf(value):
        return "unreachable"
    return f"{value:.6f}"


def _fmt_paths(paths: list[list[str]]) -> str:
    if not paths:
        return "(none)"
    return " | ".join(",".join(p) for p in paths)


def _get(action: dict[str, Any], key: str, si: int, ai: int) -> Any:
    try:
        return action[key]
    except KeyError:
        raise MalformedScript(si, ai, f"{action['type']} action missing {key!r}") from None


def _action_perspective(action: dict[str, Any], si: int, ai: int) -> Perspective:
    spec = action.get("perspective", "neutral")
    try:
        return perspective_from_json(spec)
    except BeamGraphError as e:
        raise MalformedScript(si, ai, f"bad perspective: {e}") from None


def run_scenario(script: ScenarioScript, graph: KnowledgeGraph | None = None) -> ScenarioReport:
    """Execute a script against a fresh graph and report every assertion.

    Mutating actions run in order at the step's tick; assertions evaluate
    under their stated perspective (default neutral) at ``now = step``.
    Structural problems and references to undefined resources raise
    :class:`MalformedScript` with the offending step/action index; failed
    assertions do not raise, they land in the report. Pass an empty
    ``graph`` to keep the final state (e.g. for writing an event log).
    """
    if graph is None:
        graph = KnowledgeGraph()
    if graph.version != 0:
        raise ValueError("run_scenario requires a fresh graph")
    report = ScenarioReport()
    for si, actions in enumerate(script.steps, start=1):
        for ai, action in enumerate(actions):
            try:
                _run_action(graph, report, action, si, ai)
            except MalformedScript:
                raise
            except BeamGraphError as e:
                raise MalformedScript(si, ai, f"{type(e).__name__}: {e}") from e
    return report


def _run_action(
    graph: KnowledgeGraph,
    report: ScenarioReport,
    action: dict[str, Any],
    si: int,
    ai: int,
) -> None:
    atype = action["type"]
    if atype == "resource":
        rid = _get(action, "id", si, ai)
        kind = Kind(_get(action, "rkind", si, ai))
        agency = action.get("agency")
        graph.add_resource(
            kind=kind,
            label=action.get("label", rid),
            agency=agency,
            id=rid,
            at=si,
        )
    elif atype == "viewpoint":
        graph.add_viewpoint(
            emitter=_get(action, "emitter", si, ai),
            r2=_get(action, "r2", si, ai),
            r3=_get(action, "r3", si, ai),
            vtype=ViewpointType(
                Paradigm(_get(action, "paradigm", si, ai)),
                Polarity(_get(action, "polarity", si, ai)),
            ),
            at=si,
        )
    elif atype == "feedback":
        record_feedback(
            graph,
            FeedbackEvent(
                agent=_get(action, "agent", si, ai),
                document=_get(action, "document", si, ai),
                topic=action.get("topic"),
                polarity=Polarity(_get(action, "polarity", si, ai)),
                at=si,
            ),
        )
    elif atype == "assert_paths":
        source = _get(action, "source", si, ai)
        target = _get(action, "target", si, ai)
        kmap = build_map(graph, _action_perspective(action, si, ai), now=si)
        answer = shortest_paths(kmap, source, target)
        expect_length = action.get("expect_length")
        expect_paths = [list(p) for p in action.get("expect_paths", [])]
        actual_paths = [list(p.nodes) for p in answer.paths]
        if expect_length is None:
            passed = answer.best_length is None and not actual_paths and not expect_paths
        else:
            passed = (
                answer.best_length is not None
                and abs(answer.best_length - expect_length) <= TIE_TOLERANCE
                and actual_paths == expect_paths
            )
        expected = f"length={_fmt_length(expect_length)} paths={_fmt_paths(expect_paths)}"
        actual = f"length={_fmt_length(answer.best_length)} paths={_fmt_paths(actual_paths)}"
        report.results.append(
            AssertionResult(si, ai, f"paths {source}->{target}", passed, expected, actual)
        )
    elif atype == "assert_nearest":
        origin = _get(action, "origin", si, ai)
        target = _get(action, "target", si, ai)
        kind = Kind(_get(action, "kind", si, ai))
        expect = _get(action, "expect", si, ai)
        expect_length = _get(action, "expect_length", si, ai)
        kmap = build_map(graph, _action_perspective(action, si, ai), now=si)
        answer = shortest_paths(kmap, origin, target)
        vias = nearest_via(answer_paths=[p.nodes for p in answer.paths], graph=graph, kind=kind)
        passed = (
            answer.best_length is not None
            and abs(answer.best_length - expect_length) <= TIE_TOLERANCE
            and vias == {expect}
        )
        expected = f"{expect}@{_fmt_length(expect_length)}"
        if answer.best_length is None:
            actual = "unreachable"
        else:
            actual = f"{'|'.join(sorted(vias)) or '(none)'}@{_fmt_length(answer.best_length)}"
        report.results.append(
            AssertionResult(si, ai, f"nearest {kind.value} {origin}->{target}", passed, expected, actual)
        )
    elif atype == "assert_equidistant":
        origin = _get(action, "origin", si, ai)
        targets = _get(action, "targets", si, ai)
        if not isinstance(targets, list) or len(targets) < 2:
            raise MalformedScript(si, ai, "targets must list at least two resources")
        kmap = build_map(graph, _action_perspective(action, si, ai), now=si)
        dists = [distance(kmap, origin, t) for t in targets]
        finite = all(not math.isinf(d) for d in dists)
        passed = finite and max(dists) - min(dists) <= TIE_TOLERANCE
        actual = "equidistant" if passed else "distances=" + ",".join(_fmt_length(d) for d in dists)
        report.results.append(
            AssertionResult(si, ai, f"equidistant {origin}->{{{','.join(targets)}}}", passed, "equidistant", actual)
        )


def nearest_via(
    answer_paths: list[tuple[ResourceId, ...]],
    graph: KnowledgeGraph,
    kind: Kind,
) -> set[ResourceId]:
    """The kind-matching hop closest to the target on each best path.

    For "which document do I get when asking for the topic": the last
    document node of each tied path, collected as a set.
    """
    vias: set[ResourceId] = set()
    for nodes in answer_paths:
        for rid in reversed(nodes):
            if graph.resource(rid).kind is kind:
                vias.add(rid)
                break
    return vias
