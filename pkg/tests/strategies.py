"""Hypothesis strategies for small random graphs and perspectives."""

from __future__ import annotations

from hypothesis import strategies as st

from beamgraph import Agency, Kind, KnowledgeGraph, Paradigm, Perspective, Polarity, ViewpointType


@st.composite
def graphs(draw: st.DrawFn, max_resources: int = 8, max_viewpoints: int = 25) -> KnowledgeGraph:
    g = KnowledgeGraph()
    n = draw(st.integers(min_value=2, max_value=max_resources))
    n_agents = draw(st.integers(min_value=1, max_value=max(1, n // 2)))
    ids = []
    for i in range(n):
        if i < n_agents:
            rid = f"a{i}"
            g.add_resource(Kind.AGENT, rid, agency=Agency.HUMAN, id=rid, at=0)
        else:
            rid = f"n{i}"
            g.add_resource(draw(st.sampled_from([Kind.DOCUMENT, Kind.TOPIC])), rid, id=rid, at=0)
        ids.append(rid)
    n_vps = draw(st.integers(min_value=0, max_value=max_viewpoints))
    for _ in range(n_vps):
        pair = draw(st.lists(st.sampled_from(ids), min_size=2, max_size=2, unique=True))
        g.add_viewpoint(
            emitter=draw(st.sampled_from(ids[:n_agents])),
            r2=pair[0],
            r3=pair[1],
            vtype=ViewpointType(
                draw(st.sampled_from(list(Paradigm))),
                draw(st.sampled_from([Polarity.POSITIVE, Polarity.POSITIVE, Polarity.NEGATIVE])),
            ),
            at=draw(st.integers(min_value=0, max_value=4)),
        )
    return g


@st.composite
def perspectives(draw: st.DrawFn) -> Perspective:
    weight = st.floats(min_value=0.0, max_value=3.0, allow_nan=False)
    return Perspective(
        paradigm_weights={p: draw(weight) for p in Paradigm},
        trust_default=draw(st.floats(min_value=0.1, max_value=2.0)),
        half_life=draw(st.one_of(st.none(), st.floats(min_value=0.5, max_value=20.0))),
        clamp_negative=draw(st.booleans()),
    )
