"""Byte-deterministic knowledge-map exports (DOT and JSON)."""

from __future__ import annotations

import json
from typing import Any

from .perspective import KnowledgeMap


def _node_rows(map: KnowledgeMap) -> list[dict[str, Any]]:
    rows = []
    for rid in sorted(map.nodes):
        res = map.graph.resource(rid)
        rows.append({"id": rid, "kind": res.kind.value, "label": res.label})
    return rows


def map_to_json_obj(map: KnowledgeMap) -> dict[str, Any]:
    """The JSON object form: nodes plus (a, b, strength, distance) edges."""
    edges = []
    for (a, b), strength in sorted(map.edges.items()):
        edges.append({"a": a, "b": b, "strength": strength, "distance": 1.0 / strength})
    return {
        "version": map.source_version,
        "now": map.now,
        "nodes": _node_rows(map),
        "edges": edges,
    }


def export_map(map: KnowledgeMap, format: str = "json") -> bytes:
    """Serialize a map; identical maps yield identical bytes.

    ``json``: the object from :func:`map_to_json_obj`, compact separators.
    ``dot``: an undirected graphviz document, node labels from resource
    labels, one ``distance`` attribute per edge fixed at 6 decimal places.
    """
    if format == "json":
        return (json.dumps(map_to_json_obj(map), ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")
    if format == "dot":
        lines = ["graph knowledge_map {"]
        for row in _node_rows(map):
            lines.append(f'  "{row["id"]}" [label="{row["label"]}", kind="{row["kind"]}"];')
        for (a, b), strength in sorted(map.edges.items()):
            lines.append(f'  "{a}" -- "{b}" [distance={1.0 / strength:.6f}];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {format!r}")
