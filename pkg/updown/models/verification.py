"""Reports produced by chain verification and the invariant suite."""

from dataclasses import dataclass, field
from enum import StrEnum

from mashumaro.mixins.orjson import DataClassORJSONMixin


class AnchorKind(StrEnum):
    INTERVAL = "C"
    CONJUGATE = "C*"


@dataclass
class EntryCheck(DataClassORJSONMixin):
    """Checks for the family at index m of a chain."""

    m: int
    size: int
    convex: bool
    updown: int
    phi: int
    nested: bool

    @property
    def is_witness(self) -> bool:
        return self.updown == self.phi

    @property
    def ok(self) -> bool:
        return self.size == self.m and self.convex and self.is_witness and self.nested


@dataclass
class AnchorCheck(DataClassORJSONMixin):
    kind: AnchorKind
    a: int
    index: int
    ok: bool


@dataclass
class VerificationReport(DataClassORJSONMixin):
    n: int
    complete: bool
    entries: list[EntryCheck]
    anchors: list[AnchorCheck]

    @property
    def ok(self) -> bool:
        return (
            self.complete
            and all(entry.ok for entry in self.entries)
            and all(anchor.ok for anchor in self.anchors)
        )

    def failures(self) -> list[int]:
        """Indices m whose entry fails any check."""
        return [entry.m for entry in self.entries if not entry.ok]

    def wrong_sizes(self) -> list[int]:
        return [entry.m for entry in self.entries if entry.size != entry.m]

    def non_convex(self) -> list[int]:
        return [entry.m for entry in self.entries if not entry.convex]

    def non_witnesses(self) -> list[int]:
        return [entry.m for entry in self.entries if not entry.is_witness]

    def not_nested(self) -> list[int]:
        return [entry.m for entry in self.entries if not entry.nested]

    def misplaced_anchors(self) -> list[AnchorCheck]:
        return [anchor for anchor in self.anchors if not anchor.ok]


@dataclass
class SuiteCheck(DataClassORJSONMixin):
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport(DataClassORJSONMixin):
    max_n: int
    oracle_max: int
    checks: list[SuiteCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> list[SuiteCheck]:
        return [check for check in self.checks if not check.passed]
