"""Record service-produced fixtures for the UI contract tests.

Everything here flows through the advisor's HTTP surface (in-process ASGI
client), so the saved documents are byte-identical to live responses:

* pkg_states.json       10 knowledge-state documents from varied sessions
* chain_walkthrough.json   full request/response transcript of the chain demo
* chain_headless_final.json  the headless planner's final document for the
                             same truth/seed, for the round-trip comparison
"""
import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from causalplan import PlannerConfig, run_simulation, validate_dag
from causalplan.knowledge import test_from_id, to_doc
from causalplan.oracle import answer_simulated
from causalplan.service import create_app

OUT_DIR = Path(__file__).resolve().parent.parent / "test" / "fixtures"

CHAIN = {"n": 3, "edges": [[0, 1], [1, 2]]}
DIAMOND = {"n": 4, "edges": [[0, 1], [0, 2], [1, 3], [2, 3]]}
CHAIN5 = {"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4]]}
BRANCH = {"n": 4, "edges": [[0, 1], [1, 2], [1, 3], [2, 3]]}


def answers_for(client, session_id, truth_edges):
    truth = validate_dag(max(max(e) for e in truth_edges) + 1,
                         [tuple(e) for e in truth_edges])
    proposal = client.get(f"/sessions/{session_id}/proposal").json()
    intervened = frozenset(proposal["intervention"])
    outcomes = []
    for tdoc in proposal["tests"]:
        (ans,) = answer_simulated(truth, intervened, [test_from_id(tdoc["id"])])
        outcomes.append({"id": tdoc["id"], "result": "present" if ans.present else "absent"})
    return proposal, outcomes


def record_states(client):
    """Ten knowledge states captured at several stages of several sessions;
    together they exercise every edge class the renderer must encode."""
    states = []

    def keep(label, pkg_doc):
        states.append({"label": label, "pkg": pkg_doc})

    plan = (
        ("chain", CHAIN, 1, 2),       # start + 1 round
        ("diamond", DIAMOND, 1, 2),   # start + 1 round
        ("chain5", CHAIN5, 1, 3),     # start + 2 rounds
        ("branch", BRANCH, 1, 2),     # start + first round only
    )
    for label, truth, k_max, max_states in plan:
        created = client.post("/sessions", json={
            "mode": "demo", "truth": truth, "config": {"k_max": k_max, "seed": 5},
        }).json()
        keep(f"{label}-start", created["pkg"])
        taken = 1
        while taken < max_states:
            state = client.get(f"/sessions/{created['id']}").json()
            if state["done"]:
                break
            _, outcomes = answers_for(client, created["id"], truth["edges"])
            closed = client.post(f"/sessions/{created['id']}/outcomes",
                                 json={"outcomes": outcomes}).json()
            keep(f"{label}-round{taken - 1}", closed["pkg"])
            taken += 1

    # an interactive session carries semi-directed and unknown pairs too
    mixed = client.post("/sessions", json={
        "mode": "interactive",
        "pkg": {"n": 5, "known": [[0, 1]], "adjacent": [[1, 2]],
                "semidirected": [[3, 2]], "unknown": [[3, 4], [0, 4]]},
    }).json()
    keep("mixed-classes", mixed["pkg"])
    return states


def record_walkthrough(client):
    """Request/response transcript of a full chain demo round trip."""
    transcript = []

    def call(method, path, body=None):
        response = client.post(path, json=body) if method == "POST" else client.get(path)
        entry = {"method": method, "path": path, "body": body,
                 "status": response.status_code, "response": response.json()}
        transcript.append(entry)
        return entry["response"]

    created = call("POST", "/sessions", {
        "mode": "demo", "truth": CHAIN, "config": {"k_max": 1, "seed": 21},
    })
    sid = created["id"]
    for _ in range(10):
        state = call("GET", f"/sessions/{sid}")
        if state["done"]:
            break
        call("GET", f"/sessions/{sid}/proposal")
        _, outcomes = answers_for(client, sid, CHAIN["edges"])
        call("POST", f"/sessions/{sid}/whatif", {"vertices": [0]})
        call("POST", f"/sessions/{sid}/outcomes", {"outcomes": outcomes})
    call("GET", f"/sessions/{sid}/history")
    return {"session_id": sid, "transcript": transcript}


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    states = record_states(client)
    assert len(states) == 10, f"expected 10 states, got {len(states)}"
    (OUT_DIR / "pkg_states.json").write_text(json.dumps(states, indent=2) + "\n")

    walkthrough = record_walkthrough(client)
    (OUT_DIR / "chain_walkthrough.json").write_text(json.dumps(walkthrough, indent=2) + "\n")

    truth = validate_dag(3, [(0, 1), (1, 2)])
    record = run_simulation(truth, PlannerConfig(strategy="ip", k_max=1, seed=21))
    (OUT_DIR / "chain_headless_final.json").write_text(
        json.dumps(to_doc(record.final), indent=2) + "\n")

    print(f"wrote fixtures to {OUT_DIR}")


if __name__ == "__main__":
    sys.exit(main())
