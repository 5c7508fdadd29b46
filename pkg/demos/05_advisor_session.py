"""The interactive advisor, driven in-process: create a demo session, read
the proposal, enter experiment outcomes, inspect the diff, and explore
what-if intervention sets - the same HTTP surface the web UI consumes.

Run: python demos/05_advisor_session.py
"""
from fastapi.testclient import TestClient

from causalplan import load_fixture, validate_dag
from causalplan.oracle import answer_simulated
from causalplan.knowledge import test_from_id
from causalplan.service import create_app

client = TestClient(create_app())

truth = validate_dag(3, [(0, 1), (1, 2)])
created = client.post("/sessions", json={
    "mode": "demo",
    "truth": {"n": truth.n, "edges": sorted(list(e) for e in truth.edges)},
    "config": {"k_max": 1, "seed": 5},
}).json()
session = created["id"]
print("session", session, "ambiguity", created["ambiguity"])

proposal = client.get(f"/sessions/{session}/proposal").json()
print("proposed intervention:", proposal["intervention"], "gain", proposal["gain"])
print("pending tests:", [t["id"] for t in proposal["tests"]])

# What-if: how much would a different choice teach us?
for vertices in ([0], [2]):
    alt = client.post(f"/sessions/{session}/whatif", json={"vertices": vertices}).json()
    print(f"what-if intervene {vertices}: gain {alt['gain']:g}")

# Enter outcomes as the lab experiments complete; here the demo truth answers.
intervened = frozenset(proposal["intervention"])
outcomes = []
for tdoc in proposal["tests"]:
    (answer,) = answer_simulated(truth, intervened, [test_from_id(tdoc["id"])])
    outcomes.append({"id": tdoc["id"], "result": "present" if answer.present else "absent"})
print("submitting:", outcomes)

closed = client.post(f"/sessions/{session}/outcomes", json={"outcomes": outcomes}).json()
print("round closed; transitions:", closed["transitions"])
print("oriented by propagation:", closed["meek_oriented"])
print("ambiguity now:", closed["ambiguity"])

state = client.get(f"/sessions/{session}").json()
print("done:", state["done"], "- final known edges:", state["pkg"]["known"])
