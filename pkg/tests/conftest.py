from __future__ import annotations

import pytest

from beamgraph import (
    Agency,
    FeedbackEvent,
    Kind,
    KnowledgeGraph,
    Paradigm,
    Perspective,
    Polarity,
    ViewpointType,
    record_feedback,
)

LOGIC_POS = ViewpointType(Paradigm.LOGIC, Polarity.POSITIVE)
MINE_POS = ViewpointType(Paradigm.MINE, Polarity.POSITIVE)
FEEL_POS = ViewpointType(Paradigm.FEEL, Polarity.POSITIVE)
FEEL_NEG = ViewpointType(Paradigm.FEEL, Polarity.NEGATIVE)


def apple_graph(upto_step: int) -> KnowledgeGraph:
    """The co-learning example graph after the given step (1..5).

    Step 1 wires three co-learners and three mined documents; steps 2-4 add
    the learners' feedback; step 5 appends nothing (it only re-queries).
    """
    g = KnowledgeGraph()
    for agent in ("ITS", "miner"):
        g.add_resource(Kind.AGENT, agent, agency=Agency.ARTIFICIAL, id=agent, at=1)
    for agent in ("A", "B", "C"):
        g.add_resource(Kind.AGENT, agent, agency=Agency.HUMAN, id=agent, at=1)
    for doc in ("D1", "D2", "D3"):
        g.add_resource(Kind.DOCUMENT, doc, id=doc, at=1)
    g.add_resource(Kind.TOPIC, "apple", id="apple", at=1)
    g.add_viewpoint("ITS", "A", "B", LOGIC_POS, at=1)
    g.add_viewpoint("ITS", "A", "C", LOGIC_POS, at=1)
    g.add_viewpoint("ITS", "B", "C", LOGIC_POS, at=1)
    for doc in ("D1", "D2", "D3"):
        g.add_viewpoint("miner", doc, "apple", MINE_POS, at=1)
    if upto_step >= 2:
        record_feedback(g, FeedbackEvent("A", "D1", Polarity.POSITIVE, at=2, topic="apple"))
        record_feedback(g, FeedbackEvent("A", "D2", Polarity.POSITIVE, at=2, topic="apple"))
    if upto_step >= 3:
        record_feedback(g, FeedbackEvent("B", "D1", Polarity.POSITIVE, at=3, topic="apple"))
    if upto_step >= 4:
        record_feedback(g, FeedbackEvent("C", "D3", Polarity.POSITIVE, at=4, topic="apple"))
    return g


@pytest.fixture
def neutral() -> Perspective:
    return Perspective()


@pytest.fixture
def step1() -> KnowledgeGraph:
    return apple_graph(1)


@pytest.fixture
def step2() -> KnowledgeGraph:
    return apple_graph(2)


@pytest.fixture
def step3() -> KnowledgeGraph:
    return apple_graph(3)


@pytest.fixture
def step4() -> KnowledgeGraph:
    return apple_graph(4)
