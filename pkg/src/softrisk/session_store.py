"""Durable elicitation sessions: questions, experts, submitted estimates.

One JSON document per session in a data directory, written via
write-to-temp-then-rename so a crash never leaves a torn file.  Mutations are
serialized per session; reads observe the last completed write.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from .aggregation import ExpertEstimate, PooledDensity, aggregate
from .errors import (
    BoundsViolation,
    InvalidQuestion,
    NoEstimates,
    NoQuestions,
    SessionClosed,
    UnknownQuestion,
    UnknownSession,
)
from .jsonio import canonical_json, estimate_from_json, estimate_to_json

__all__ = ["Question", "Session", "SessionStore"]

DomainKind = Literal["probability", "utility"]
SessionStatus = Literal["open", "closed"]


@dataclass(frozen=True)
class Question:
    """One uncertain quantity to elicit; probability questions are pinned to [0, 1]."""

    question_id: str
    prompt: str
    domain_kind: DomainKind
    bounds: Tuple[float, float] = (0.0, 1.0)
    scenario_label: Optional[str] = None

    def __post_init__(self):
        if self.domain_kind not in ("probability", "utility"):
            raise InvalidQuestion(
                f"domain_kind must be 'probability' or 'utility', got {self.domain_kind!r}"
            )
        if self.domain_kind == "probability":
            object.__setattr__(self, "bounds", (0.0, 1.0))
        else:
            try:
                lo, hi = float(self.bounds[0]), float(self.bounds[1])
            except (TypeError, ValueError, IndexError):
                raise InvalidQuestion(f"bounds must be a [lo, hi] pair, got {self.bounds!r}")
            if not lo < hi:
                raise InvalidQuestion(f"bounds must satisfy lo < hi, got [{lo}, {hi}]")
            object.__setattr__(self, "bounds", (lo, hi))


@dataclass
class Session:
    """Elicitation state for one panel: questions, estimates, open/closed."""

    session_id: str
    questions: List[Question]
    estimates: Dict[Tuple[str, str], ExpertEstimate] = field(default_factory=dict)
    status: SessionStatus = "open"
    created_at: str = ""

    @property
    def experts(self) -> List[str]:
        return sorted({expert_id for (_, expert_id) in self.estimates})

    def question(self, question_id: str) -> Question:
        for q in self.questions:
            if q.question_id == question_id:
                return q
        raise UnknownQuestion(f"no question {question_id!r} in session {self.session_id}")


def _question_to_json(q: Question) -> dict:
    return {
        "question_id": q.question_id,
        "prompt": q.prompt,
        "domain_kind": q.domain_kind,
        "bounds": [q.bounds[0], q.bounds[1]],
        "scenario_label": q.scenario_label,
    }


def _question_from_json(obj: dict) -> Question:
    return Question(
        question_id=obj["question_id"],
        prompt=obj["prompt"],
        domain_kind=obj["domain_kind"],
        bounds=tuple(obj["bounds"]),
        scenario_label=obj.get("scenario_label"),
    )


def session_to_document(session: Session) -> dict:
    """Canonical serializable form; estimates sorted by (question, expert)."""
    estimates = [
        {"question_id": qid, **estimate_to_json(est)}
        for (qid, _), est in sorted(session.estimates.items())
    ]
    return {
        "session_id": session.session_id,
        "status": session.status,
        "created_at": session.created_at,
        "questions": [_question_to_json(q) for q in session.questions],
        "estimates": estimates,
    }


def session_from_document(doc: dict) -> Session:
    estimates: Dict[Tuple[str, str], ExpertEstimate] = {}
    for entry in doc.get("estimates", ()):
        est = estimate_from_json(entry)
        estimates[(entry["question_id"], est.expert_id)] = est
    return Session(
        session_id=doc["session_id"],
        questions=[_question_from_json(q) for q in doc.get("questions", ())],
        estimates=estimates,
        status=doc.get("status", "open"),
        created_at=doc.get("created_at", ""),
    )


class SessionStore:
    """Read-through cache over one-JSON-file-per-session persistence."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: Dict[str, Session] = {}
        self._meta_lock = threading.Lock()
        self._session_locks: Dict[str, threading.Lock] = {}

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._meta_lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def _persist(self, session: Session) -> None:
        payload = canonical_json(session_to_document(session))
        target = self._path(session.session_id)
        fd, tmp_path = tempfile.mkstemp(dir=self.data_dir, prefix=".session_", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
            os.replace(tmp_path, target)
        except BaseException:
            Path(tmp_path).unlink(missing_ok=True)
            raise

    def _load(self, session_id: str) -> Session:
        if session_id in self._sessions:
            return self._sessions[session_id]
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        session = session_from_document(json.loads(path.read_text(encoding="utf-8")))
        self._sessions[session_id] = session
        return session

    def list_session_ids(self) -> List[str]:
        on_disk = {p.stem for p in self.data_dir.glob("*.json")}
        return sorted(on_disk | set(self._sessions))

    def create_session(
        self, questions: Sequence[Question], session_id: Optional[str] = None
    ) -> Session:
        if not questions:
            raise NoQuestions("a session needs at least one question")
        session = Session(
            session_id=session_id or uuid.uuid4().hex,
            questions=list(questions),
            status="open",
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        with self._lock_for(session.session_id):
            self._sessions[session.session_id] = session
            self._persist(session)
        return session

    def get_session(self, session_id: str) -> Session:
        return self._load(session_id)

    def submit_estimate(
        self, session_id: str, question_id: str, estimate: ExpertEstimate
    ) -> Session:
        """Store (or replace) one expert's estimate for one question."""
        with self._lock_for(session_id):
            session = self._load(session_id)
            if session.status != "open":
                raise SessionClosed(f"session {session_id} is closed")
            question = session.question(question_id)
            lo, hi = question.bounds
            if estimate.params.low < lo or estimate.params.high > hi:
                raise BoundsViolation(
                    f"estimate [{estimate.params.low}, {estimate.params.high}] exceeds "
                    f"question bounds [{lo}, {hi}]"
                )
            session.estimates[(question_id, estimate.expert_id)] = estimate
            self._persist(session)
        return session

    def close_session(self, session_id: str) -> Session:
        with self._lock_for(session_id):
            session = self._load(session_id)
            session.status = "closed"
            self._persist(session)
        return session

    def estimates_for(self, session_id: str, question_id: str) -> List[ExpertEstimate]:
        session = self._load(session_id)
        session.question(question_id)
        return [est for (qid, _), est in sorted(session.estimates.items()) if qid == question_id]

    def get_aggregate(
        self,
        session_id: str,
        question_id: str,
        weighted: bool = False,
        n_points: int = 1001,
    ) -> PooledDensity:
        estimates = self.estimates_for(session_id, question_id)
        if not estimates:
            raise NoEstimates(f"question {question_id!r} has no estimates yet")
        return aggregate(estimates, weighted=weighted, n_points=n_points)

    def export_session(self, session_id: str) -> str:
        """Canonical JSON text of the full session state; byte-stable."""
        return canonical_json(session_to_document(self._load(session_id)))
