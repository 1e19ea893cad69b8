"""Structured exports of families and witness chains."""

from collections.abc import Iterator
from dataclasses import dataclass
from typing import TYPE_CHECKING

from mashumaro.mixins.orjson import DataClassORJSONMixin

from ..family import Family, format_family, mask_of

if TYPE_CHECKING:
    from ..witness import Chain


@dataclass
class FamilyExport(DataClassORJSONMixin):
    """A family as its ground size and its member sets (1-based, ascending masks)."""

    n: int
    sets: list[list[int]]

    @classmethod
    def from_family(cls, family: Family) -> "FamilyExport":
        return cls(n=family.n, sets=[list(members) for members in family.to_sets()])

    def to_family(self) -> Family:
        return Family.from_masks(self.n, (mask_of(members) for members in self.sets))


@dataclass
class ChainHeader(DataClassORJSONMixin):
    n: int
    length: int


@dataclass
class ChainRecord(DataClassORJSONMixin):
    m: int
    family: str


def chain_lines(chain: "Chain") -> Iterator[str]:
    """JSON Lines export: a header record, then one record per index m."""
    yield ChainHeader(n=chain.n, length=len(chain.families)).to_json()
    for m, family in enumerate(chain.families):
        yield ChainRecord(m=m, family=format_family(family)).to_json()
