"""
Execution transcripts and their NDJSON serialization.
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterator, List, Optional


@dataclass(frozen=True)
class TranscriptEvent:
    round: int
    attempt: int
    sender: str
    kind: str          # classical | quantum | loss | restart | invoke | measure | note | abort | undelivered
    summary: str = ""
    lost: bool = False
    restart: bool = False
    data: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        if d["data"] is None:
            del d["data"]
        return d


@dataclass
class Transcript:
    protocol: str
    seed: int
    events: List[TranscriptEvent] = field(default_factory=list)
    final_state: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, event: TranscriptEvent):
        if event.restart and not (self.events and (self.events[-1].lost or self.events[-1].kind == "loss")):
            raise ValueError("restart markers must follow a loss event")
        self.events.append(event)

    def __iter__(self) -> Iterator[TranscriptEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    @property
    def restart_count(self) -> int:
        return sum(1 for e in self.events if e.restart)

    @property
    def loss_events(self) -> List[TranscriptEvent]:
        return [e for e in self.events if e.lost or e.kind == "loss"]

    def notes(self, label: str) -> List[TranscriptEvent]:
        """Local notes with a given label, e.g. per-attempt randomness draws."""
        return [e for e in self.events if e.kind == "note" and e.summary == label]

    def messages(self) -> List[TranscriptEvent]:
        return [e for e in self.events if e.kind in ("classical", "quantum", "loss")]

    def to_ndjson(self) -> str:
        """One JSON object per line: a header line, then every event, then the final state."""
        lines = [json.dumps({"protocol": self.protocol, "seed": self.seed}, sort_keys=True)]
        lines.extend(json.dumps(e.to_dict(), sort_keys=True) for e in self.events)
        lines.append(json.dumps({"final_state": self.final_state}, sort_keys=True))
        return "\n".join(lines) + "\n"
