"""Append-only event-log persistence and deterministic replay.

The log is JSON Lines: one object per line, UTF-8, ``\\n`` separators, with
a fixed key order (seq, kind, id, label, rkind, agency, emitter, r2, r3,
paradigm, polarity, at) so identical graphs serialize to identical bytes.
Each line parses in isolation, which keeps the format streaming- and
diff-friendly. Storage stays dumb on purpose: interpretation (weights,
trust, decay) never touches this layer.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Iterator, TextIO

from .core import (
    Agency,
    Kind,
    KnowledgeGraph,
    Paradigm,
    Polarity,
    Resource,
    Viewpoint,
    ViewpointType,
)
from .errors import CorruptLine, IoFailure, SequenceGap

_KEY_ORDER = ("seq", "kind", "id", "label", "rkind", "agency", "emitter", "r2", "r3", "paradigm", "polarity", "at")


@dataclass(frozen=True)
class EventRecord:
    """One line of the log: a resource or viewpoint append at sequence ``seq``."""

    seq: int
    kind: str  # "resource" | "viewpoint"
    payload: dict[str, Any]

    def to_json_line(self) -> str:
        body = {"seq": self.seq, "kind": self.kind, **self.payload}
        ordered = {key: body[key] for key in _KEY_ORDER if key in body}
        return json.dumps(ordered, ensure_ascii=False, separators=(",", ":"))


def record_for(event: Resource | Viewpoint) -> EventRecord:
    """The canonical event record of an appended resource or viewpoint."""
    if isinstance(event, Resource):
        payload: dict[str, Any] = {"id": event.id, "label": event.label, "rkind": event.kind.value}
        if event.agency is not None:
            payload["agency"] = event.agency.value
        payload["at"] = event.created_at
        return EventRecord(seq=event.seq, kind="resource", payload=payload)
    return EventRecord(
        seq=event.seq,
        kind="viewpoint",
        payload={
            "id": event.id,
            "emitter": event.emitter,
            "r2": event.pair[0],
            "r3": event.pair[1],
            "paradigm": event.vtype.paradigm.value,
            "polarity": event.vtype.polarity.value,
            "at": event.at,
        },
    )


class EventLog:
    """Exclusive writer over one log file. Lines are flushed before return."""

    def __init__(self, path: str | Path, last_seq: int = 0):
        self.path = Path(path)
        self.last_seq = last_seq
        self._fh: TextIO | None = None

    def __enter__(self) -> "EventLog":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    def _handle(self) -> TextIO:
        if self._fh is None:
            try:
                self._fh = open(self.path, "a", encoding="utf-8")
            except OSError as e:
                raise IoFailure(str(e)) from e
        return self._fh

    def append_event(self, record: EventRecord) -> None:
        """Append one record; seq must be exactly last seq + 1."""
        if record.seq != self.last_seq + 1:
            raise SequenceGap(f"seq {record.seq} after {self.last_seq}")
        fh = self._handle()
        try:
            fh.write(record.to_json_line() + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        except OSError as e:
            raise IoFailure(str(e)) from e
        self.last_seq = record.seq

    def append(self, event: Resource | Viewpoint) -> None:
        self.append_event(record_for(event))

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def write_graph(graph: KnowledgeGraph, path: str | Path) -> int:
    """Serialize a whole graph to a fresh log file; returns lines written."""
    log = EventLog(path)
    try:
        with open(path, "w", encoding="utf-8"):
            pass
    except OSError as e:
        raise IoFailure(str(e)) from e
    count = 0
    with log:
        for event in graph.events():
            log.append(event)
            count += 1
    return count


def iter_records(path: str | Path) -> Iterator[EventRecord]:
    """Parse a log file line by line, enforcing the contiguous-seq invariant.

    Raises:
        CorruptLine: a line is not valid JSON or violates the schema
            (1-based line number reported).
        SequenceGap: seq numbers are not 1, 2, 3, ...
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().split("\n")
    except OSError as e:
        raise IoFailure(str(e)) from e
    expected = 1
    for lineno, line in enumerate(lines, start=1):
        if line == "":
            continue
        try:
            body = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorruptLine(lineno, f"invalid JSON: {e.msg}") from None
        if not isinstance(body, dict):
            raise CorruptLine(lineno, "line is not a JSON object")
        try:
            seq = int(body.pop("seq"))
            kind = str(body.pop("kind"))
        except (KeyError, TypeError, ValueError):
            raise CorruptLine(lineno, "missing or bad seq/kind") from None
        if kind not in ("resource", "viewpoint"):
            raise CorruptLine(lineno, f"unknown record kind {kind!r}")
        if seq != expected:
            raise SequenceGap(f"seq {seq} at line {lineno}, expected {expected}")
        expected += 1
        yield EventRecord(seq=seq, kind=kind, payload=body)


def replay(path: str | Path) -> KnowledgeGraph:
    """Rebuild the exact graph that produced a log.

    Resources, viewpoint order, ids, timestamps and the version counter all
    come back identical, so any downstream query gives identical answers.
    """
    graph = KnowledgeGraph()
    for record in iter_records(path):
        p = record.payload
        try:
            if record.kind == "resource":
                graph.add_resource(
                    kind=Kind(p["rkind"]),
                    label=p["label"],
                    agency=Agency(p["agency"]) if "agency" in p else None,
                    id=p["id"],
                    at=int(p["at"]),
                )
            else:
                graph.add_viewpoint(
                    emitter=p["emitter"],
                    r2=p["r2"],
                    r3=p["r3"],
                    vtype=ViewpointType(Paradigm(p["paradigm"]), Polarity(p["polarity"])),
                    at=int(p["at"]),
                    id=p["id"],
                )
        except (KeyError, ValueError, TypeError) as e:
            raise CorruptLine(record.seq, f"bad {record.kind} payload: {e}") from None
    return graph


def tail_records(events: Iterable[Resource | Viewpoint], since: int) -> list[EventRecord]:
    """Event records with seq strictly greater than ``since``."""
    return [record_for(ev) for ev in events if ev.seq > since]
