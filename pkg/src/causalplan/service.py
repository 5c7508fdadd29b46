"""Session-oriented HTTP advisor for the interactive discovery loop.

A session holds the current knowledge state and walks the loop round by
round: the service proposes an intervention set with its pending tests, the
experimenter posts outcomes as experiments complete (partial submissions are
buffered), and the service applies the transitions plus rule propagation and
returns the diff. Every session appends its events to a JSONL log so a
restarted service reloads identical state.
"""
from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .dag import Dag, validate_dag
from .errors import (
    CausalPlanError,
    IncompleteRoundError,
    NotFoundError,
    NotViableError,
    SessionDoneError,
    UnknownTestError,
    ValidationError,
)
from .ip import build_instance, indicator_assignment, instance_gain, solve
from .knowledge import (
    Outcome,
    PartialGraph,
    Test,
    apply_outcomes,
    from_doc,
    test_from_id,
    to_doc,
    transitions_applied,
)
from .mec import cpdag_of
from .meek import meek_closure
from .oracle import answer_simulated
from .planner import PlannerConfig, enabled_tests
from .util import derive_rng


@dataclass
class PendingRound:
    index: int
    batches: tuple[frozenset[int], ...]
    tests: tuple[Test, ...]
    gain: float
    answers: dict[str, bool] = field(default_factory=dict)


@dataclass
class Session:
    id: str
    mode: str                       # "interactive" | "demo"
    pkg: PartialGraph
    config: PlannerConfig
    truth: Dag | None = None
    accept_contradictions: bool = False
    rounds_closed: int = 0
    pending: PendingRound | None = None
    history: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def done(self) -> bool:
        return self.pkg.resolved


def _config_from_doc(doc: dict) -> PlannerConfig:
    try:
        return PlannerConfig(
            strategy="ip",
            k_max=int(doc.get("k_max", 1)),
            budget=doc.get("budget"),
            k_batch=int(doc.get("k_batch", 1)),
            seed=int(doc.get("seed", 0)),
        )
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad config: {exc}") from exc


def _config_doc(config: PlannerConfig) -> dict:
    return {"k_max": config.k_max, "budget": config.budget,
            "k_batch": config.k_batch, "seed": config.seed}


class SessionStore:
    """All live sessions plus their on-disk event logs."""

    def __init__(self, data_dir: str | Path | None = None):
        self.data_dir = Path(data_dir) if data_dir else None
        self.sessions: dict[str, Session] = {}
        if self.data_dir:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            for logfile in sorted(self.data_dir.glob("*.jsonl")):
                session = self._replay(logfile)
                if session:
                    self.sessions[session.id] = session

    # --- event log ---

    def _append(self, session_id: str, event: dict) -> None:
        if not self.data_dir:
            return
        with open(self.data_dir / f"{session_id}.jsonl", "a") as fh:
            fh.write(json.dumps(event) + "\n")

    def _replay(self, logfile: Path) -> Session | None:
        session: Session | None = None
        for line in logfile.read_text().splitlines():
            event = json.loads(line)
            kind = event["event"]
            if kind == "created":
                truth = None
                if event.get("truth") is not None:
                    tdoc = event["truth"]
                    truth = validate_dag(tdoc["n"], [tuple(e) for e in tdoc["edges"]])
                session = Session(
                    id=event["id"],
                    mode=event["mode"],
                    pkg=from_doc(event["pkg"]),
                    config=_config_from_doc(event["config"]),
                    truth=truth,
                    accept_contradictions=event.get("accept_contradictions", False),
                )
            elif kind == "proposed" and session:
                session.pending = PendingRound(
                    index=event["round"],
                    batches=tuple(frozenset(b) for b in event["batches"]),
                    tests=tuple(test_from_id(t) for t in event["tests"]),
                    gain=event["gain"],
                )
            elif kind == "outcome" and session and session.pending:
                session.pending.answers[event["test"]] = event["present"]
            elif kind == "closed" and session:
                session.pkg = from_doc(event["pkg"])
                session.rounds_closed = event["round"] + 1
                session.pending = None
                session.history.append(event["summary"])
        return session

    # --- operations ---

    def create_session(self, body: dict) -> Session:
        mode = body.get("mode", "interactive")
        if mode not in ("interactive", "demo"):
            raise ValidationError(f"mode must be 'interactive' or 'demo', got {mode!r}")
        truth = None
        if mode == "demo":
            tdoc = body.get("truth")
            if not isinstance(tdoc, dict) or "n" not in tdoc or "edges" not in tdoc:
                raise ValidationError("demo mode needs truth: {n, edges}")
            try:
                truth = validate_dag(int(tdoc["n"]), [tuple(e) for e in tdoc["edges"]])
            except (CausalPlanError, IndexError, TypeError, ValueError) as exc:
                raise ValidationError(f"bad truth graph: {exc}") from exc
        if body.get("pkg") is not None:
            pkg = from_doc(body["pkg"])
            if truth is not None and pkg.n != truth.n:
                raise ValidationError("truth and knowledge state disagree on n")
        elif truth is not None:
            pkg = cpdag_of(truth)
        else:
            raise ValidationError("interactive mode needs a pkg document")
        config = _config_from_doc(body.get("config", {}))
        session = Session(
            id=uuid.uuid4().hex[:12],
            mode=mode,
            pkg=pkg,
            config=config,
            truth=truth,
            accept_contradictions=bool(body.get("accept_contradictions", False)),
        )
        self.sessions[session.id] = session
        self._append(session.id, {
            "event": "created",
            "id": session.id,
            "mode": mode,
            "pkg": to_doc(pkg),
            "config": _config_doc(config),
            "truth": None if truth is None else {"n": truth.n, "edges": sorted(truth.edges)},
            "accept_contradictions": session.accept_contradictions,
        })
        return session

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"no session {session_id!r}")
        return session

    def proposal(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            if session.done:
                raise SessionDoneError("discovery is complete; nothing to propose")
            if session.pending is None:
                rng = derive_rng(session.config.seed, "round", session.rounds_closed)
                instance = build_instance(
                    session.pkg, session.config.costs,
                    k_max=session.config.k_max, budget=session.config.budget,
                    objective=session.config.objective, k_batch=session.config.k_batch,
                )
                solution = solve(instance, rng)
                tests: list[Test] = []
                for x in solution.batches:
                    tests.extend(t for t in enabled_tests(session.pkg, x) if t not in tests)
                session.pending = PendingRound(
                    index=session.rounds_closed,
                    batches=solution.batches,
                    tests=tuple(tests),
                    gain=solution.objective_value,
                )
                self._append(session.id, {
                    "event": "proposed",
                    "round": session.pending.index,
                    "batches": [sorted(b) for b in solution.batches],
                    "tests": [t.id for t in tests],
                    "gain": solution.objective_value,
                })
            return self._proposal_doc(session)

    def _proposal_doc(self, session: Session) -> dict:
        pending = session.pending
        return {
            "round": pending.index,
            "intervention": sorted(set().union(*pending.batches)) if pending.batches else [],
            "batches": [sorted(b) for b in pending.batches],
            "gain": pending.gain,
            "tests": [_test_doc(t, t.id in pending.answers) for t in pending.tests],
        }

    def submit_outcomes(self, session_id: str, outcomes: list[dict]) -> dict:
        session = self.get(session_id)
        with session.lock:
            if session.pending is None:
                raise IncompleteRoundError("no open round; fetch a proposal first")
            pending = session.pending
            issued = {t.id: t for t in pending.tests}
            staged: dict[str, bool] = {}
            for item in outcomes:
                token = item.get("id") if isinstance(item, dict) else None
                if token is None or "result" not in item:
                    raise ValidationError("each outcome needs 'id' and 'result'")
                if token not in issued:
                    raise UnknownTestError(f"test {token!r} was not issued this round")
                if item["result"] not in ("present", "absent"):
                    raise ValidationError("result must be 'present' or 'absent'")
                staged[token] = item["result"] == "present"

            warnings = []
            if session.mode == "demo" and not session.accept_contradictions:
                for token, present in staged.items():
                    test = issued[token]
                    truthful = answer_simulated(
                        session.truth, _context_of(test, pending.batches), [test]
                    )[0].present
                    if truthful != present:
                        warnings.append(
                            f"outcome for {token} contradicts the demo truth"
                            f" (expected {'present' if truthful else 'absent'})"
                        )
                if warnings:
                    return {"status": "warning", "warnings": warnings, "applied": False,
                            "pending_tests": len(pending.tests) - len(pending.answers)}

            for token, present in staged.items():
                if pending.answers.get(token) not in (None, present):
                    raise ValidationError(f"test {token} already answered differently")
                if token not in pending.answers:
                    pending.answers[token] = present
                    self._append(session.id, {"event": "outcome", "test": token,
                                              "present": present})

            if len(pending.answers) < len(pending.tests):
                return {
                    "status": "buffered",
                    "applied": False,
                    "pending_tests": len(pending.tests) - len(pending.answers),
                }
            return self._close_round(session)

    def _close_round(self, session: Session) -> dict:
        pending = session.pending
        issued = {t.id: t for t in pending.tests}
        before = session.pkg
        current = before
        for x in pending.batches:
            batch_tests = set(enabled_tests(before, x))
            outcomes = [
                Outcome(issued[token], present)
                for token, present in pending.answers.items()
                if issued[token] in batch_tests
            ]
            from .planner import _still_applicable

            current = apply_outcomes(
                current, [o for o in outcomes if _still_applicable(current, o)]
            )
        closed = meek_closure(current)
        summary = {
            "round": pending.index,
            "transitions": [[list(p), old.value, new.value]
                            for p, old, new in transitions_applied(before, current)],
            "meek_oriented": sorted([list(e) for e in closed.known - current.known]),
            "ambiguity": closed.ambiguity(),
            "pkg": to_doc(closed),
        }
        session.pkg = closed
        session.rounds_closed = pending.index + 1
        session.pending = None
        session.history.append(summary)
        self._append(session.id, {
            "event": "closed",
            "round": summary["round"],
            "pkg": summary["pkg"],
            "summary": summary,
        })
        return {"status": "closed", "applied": True, **summary}

    def whatif(self, session_id: str, vertices) -> dict:
        session = self.get(session_id)
        with session.lock:
            viable = session.pkg.viable()
            x = frozenset(int(v) for v in vertices)
            stray = sorted(x - viable)
            if stray:
                raise NotViableError(f"vertices {stray} are not viable for intervention")
            instance = build_instance(
                session.pkg, session.config.costs,
                k_max=max(1, len(x)), objective=session.config.objective,
            )
            value = instance_gain(instance, x)
            ind = indicator_assignment(instance, x)
            breakdown = []
            for p in instance.unknown_pairs:
                breakdown.append(_breakdown_row(p, "unknown", p in ind.updated_unknown, x))
            for e in instance.semi_edges:
                breakdown.append(_breakdown_row(e, "semidirected", e in ind.updated_semi, x))
            for p in instance.adjacent_pairs:
                breakdown.append(_breakdown_row(p, "adjacent", p in ind.updated_adjacent, x))
            return {"vertices": sorted(x), "gain": value, "edges": breakdown}

    def state_doc(self, session_id: str) -> dict:
        session = self.get(session_id)
        return {
            "id": session.id,
            "mode": session.mode,
            "config": _config_doc(session.config),
            "round": session.rounds_closed,
            "ambiguity": session.pkg.ambiguity(),
            "done": session.done,
            "open_round": session.pending is not None,
            "pkg": to_doc(session.pkg),
        }


def _context_of(test: Test, batches) -> frozenset[int]:
    """The batch intervention set under which this test was issued."""
    from .knowledge import OrientationTest

    for x in batches:
        if isinstance(test, OrientationTest):
            if test.source in x and test.target not in x:
                return x
        elif test.a not in x and test.b not in x:
            return x
    return frozenset()


def _test_doc(test: Test, answered: bool) -> dict:
    from .knowledge import OrientationTest

    if isinstance(test, OrientationTest):
        doc = {"id": test.id, "type": "orientation",
               "source": test.source, "target": test.target}
    else:
        doc = {"id": test.id, "type": "adjacency", "pair": [test.a, test.b]}
    doc["answered"] = answered
    return doc


def _breakdown_row(edge, cls: str, counted: bool, x: frozenset[int]) -> dict:
    i, j = edge
    if cls == "adjacent":
        test = f"O:{i}->{j}" if i in x else (f"O:{j}->{i}" if j in x else None)
        test = test if counted else None
    elif cls == "semidirected":
        test = (f"O:{i}->{j}" if i in x else f"A:{min(i, j)}-{max(i, j)}") if counted else None
    else:
        if counted:
            test = f"O:{i}->{j}" if i in x else (f"O:{j}->{i}" if j in x else f"A:{i}-{j}")
        else:
            test = None
    return {"pair": [i, j], "class": cls, "counted": counted, "test": test}


# --- FastAPI wiring ---

def create_app(data_dir: str | Path | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="causalplan advisor", version="0.1.0")
    store = SessionStore(data_dir)
    app.state.store = store

    _status = {
        "NotFoundError": 404,
        "SessionDoneError": 409,
        "IncompleteRoundError": 409,
        "UnknownTestError": 400,
        "NotViableError": 400,
        "ValidationError": 400,
        "ConfigError": 400,
    }

    @app.exception_handler(CausalPlanError)
    async def _handle(request: Request, exc: CausalPlanError):
        return JSONResponse(
            status_code=_status.get(exc.code, 400),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "sessions": len(store.sessions)}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.json()
        session = store.create_session(body)
        return store.state_doc(session.id)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return store.state_doc(session_id)

    @app.get("/sessions/{session_id}/proposal")
    def get_proposal(session_id: str):
        return store.proposal(session_id)

    @app.post("/sessions/{session_id}/outcomes")
    async def post_outcomes(session_id: str, request: Request):
        body = await request.json()
        outcomes = body.get("outcomes", body if isinstance(body, list) else [])
        return store.submit_outcomes(session_id, outcomes)

    @app.post("/sessions/{session_id}/whatif")
    async def post_whatif(session_id: str, request: Request):
        body = await request.json()
        return store.whatif(session_id, body.get("vertices", []))

    @app.get("/sessions/{session_id}/history")
    def get_history(session_id: str):
        session = store.get(session_id)
        return {"id": session.id, "rounds": session.rounds_closed,
                "history": session.history}

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
