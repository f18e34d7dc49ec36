"""Walk the five-step co-learning story by hand, printing each map change.

Three learners (A, B, C) chase the topic 'apple' through three documents.
A tutoring system links the learners; a mining agent links the documents to
the topic. Feedback then reshapes everyone's distances — and at the end, B
swaps perspectives to escape his own echo chamber.

Run: python3 demos/apple_walkthrough.py
"""

from beamgraph import (
    Agency,
    FeedbackEvent,
    Kind,
    KnowledgeGraph,
    Paradigm,
    Perspective,
    Polarity,
    ViewpointType,
    build_map,
    record_feedback,
    shortest_paths,
)

LOGIC = ViewpointType(Paradigm.LOGIC, Polarity.POSITIVE)
MINE = ViewpointType(Paradigm.MINE, Polarity.POSITIVE)


def show(title, kmap, source, target):
    answer = shortest_paths(kmap, source, target)
    print(f"\n{title}")
    if answer.best_length is None:
        print(f"  {source} -> {target}: unreachable")
        return
    for path in answer.paths:
        print(f"  {source} -> {target}: {' - '.join(path.nodes)}  (length {path.length:.4f})")


g = KnowledgeGraph()

# -- step 1: the initial state of knowledge ------------------------------
for rid in ("ITS", "miner"):
    g.add_resource(Kind.AGENT, rid, agency=Agency.ARTIFICIAL, id=rid, at=1)
for rid in ("A", "B", "C"):
    g.add_resource(Kind.AGENT, rid, agency=Agency.HUMAN, id=rid, at=1)
for rid in ("D1", "D2", "D3"):
    g.add_resource(Kind.DOCUMENT, rid, id=rid, at=1)
g.add_resource(Kind.TOPIC, "apple", id="apple", at=1)

g.add_viewpoint("ITS", "A", "B", LOGIC, at=1)
g.add_viewpoint("ITS", "A", "C", LOGIC, at=1)
g.add_viewpoint("ITS", "B", "C", LOGIC, at=1)
for doc in ("D1", "D2", "D3"):
    g.add_viewpoint("miner", doc, "apple", MINE, at=1)

neutral = Perspective()
show("step 1: B cannot reach the topic yet", build_map(g, neutral, 1), "B", "apple")

# -- step 2: A browses and likes D1 and D2 -------------------------------
record_feedback(g, FeedbackEvent("A", "D1", Polarity.POSITIVE, at=2, topic="apple"))
record_feedback(g, FeedbackEvent("A", "D2", Polarity.POSITIVE, at=2, topic="apple"))
show("step 2: B gets a double answer through A", build_map(g, neutral, 2), "B", "apple")

# -- step 3: B's own positive feedback on D1 -----------------------------
record_feedback(g, FeedbackEvent("B", "D1", Polarity.POSITIVE, at=3, topic="apple"))
show("step 3: the reinforced path wins alone", build_map(g, neutral, 3), "B", "apple")

# -- step 4: C explores and likes D3 -------------------------------------
record_feedback(g, FeedbackEvent("C", "D3", Polarity.POSITIVE, at=4, topic="apple"))
kmap = build_map(g, neutral, 4)
for agent in ("A", "B", "C"):
    show(f"step 4: {agent}'s view", kmap, agent, "apple")

# -- step 5: B discards his own feelings to discover new sources ---------
fresh_eyes = Perspective(exclude_emitters=frozenset({"B"}))
show(
    "step 5: without his own viewpoints, three documents tie",
    build_map(g, fresh_eyes, 5),
    "B",
    "apple",
)
