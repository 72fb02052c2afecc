"""Certificates: a verdict plus replayable evidence, serialized as JSON."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from . import __version__

SCHEMA = 1


class Verdict(str, enum.Enum):
    NOT_RATIONAL = "NOT_RATIONAL"
    INCONCLUSIVE = "INCONCLUSIVE"
    NONDEGENERATE = "NONDEGENERATE"
    DEGENERATE_FAMILY = "DEGENERATE_FAMILY"
    NO_BIRATIONAL_MAP = "NO_BIRATIONAL_MAP"
    PROJECTIVE_EQUIVALENCE = "PROJECTIVE_EQUIVALENCE"
    NO_POINT_ON_SLICE = "NO_POINT_ON_SLICE"
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"


class ExitCode(enum.IntEnum):
    POSITIVE = 0
    NEGATIVE = 1
    INCONCLUSIVE = 2
    USAGE = 3
    GUARD = 4


EXIT_FOR = {
    Verdict.NOT_RATIONAL: ExitCode.POSITIVE,
    Verdict.NONDEGENERATE: ExitCode.POSITIVE,
    Verdict.NO_BIRATIONAL_MAP: ExitCode.POSITIVE,
    Verdict.PROJECTIVE_EQUIVALENCE: ExitCode.POSITIVE,
    Verdict.NO_POINT_ON_SLICE: ExitCode.POSITIVE,
    Verdict.VERIFIED: ExitCode.POSITIVE,
    Verdict.INCONCLUSIVE: ExitCode.INCONCLUSIVE,
    Verdict.DEGENERATE_FAMILY: ExitCode.NEGATIVE,
    Verdict.REFUTED: ExitCode.NEGATIVE,
}


class GuardExceeded(RuntimeError):
    """A desk-scale resource bound would be exceeded."""


@dataclass
class Certificate:
    command: str
    arguments: dict
    verdict: Verdict
    evidence: dict
    claims: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "ratlab",
            "version": __version__,
            "command": self.command,
            "arguments": self.arguments,
            "verdict": self.verdict.value,
            "claims": list(self.claims),
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @property
    def exit_code(self) -> int:
        return int(EXIT_FOR[self.verdict])


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
