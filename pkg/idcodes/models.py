from enum import Enum
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class Property(str, Enum):
    DOM = "dom"
    ID = "id"
    SID = "sid"
    SLD = "sld"


class VerificationReport(BaseModel):
    property: Property
    holds: bool
    code_size: int
    checked: int = 0
    witness: Optional[list[Any]] = None
    witness_kind: Optional[str] = None
    min_i_set: Optional[int] = None
    max_i_set: Optional[int] = None
    method: str = "definition"


class TripleCover(BaseModel):
    """How the I-set of one vertex of K_q^3 sits relative to the pipes."""

    kind: Literal["empty", "unique", "pair", "pipe"]
    i_set: list[Any]
    partner: Optional[Any] = None
    container: Optional[Any] = None


class LatinCheck(BaseModel):
    valid: bool
    violation: Optional[str] = None


class LayerStats(BaseModel):
    axis: int
    index: int
    layer_code: list[Any] = Field(default_factory=list)
    a: int
    f: int
    k: int
    x_set: list[Any] = Field(default_factory=list)
    y_set: list[Any] = Field(default_factory=list)
    corners: list[Any] = Field(default_factory=list)
    fellows: list[Any] = Field(default_factory=list)
    m_set: list[Any] = Field(default_factory=list)


class CodewordRole(BaseModel):
    codeword: Any
    role: Literal["corner", "fellow", "plain"]
    layers_cornered: list[tuple[int, int]] = Field(default_factory=list)


class LayerAnalysis(BaseModel):
    q: int
    layers: list[LayerStats]
    roles: list[CodewordRole]
    x_size: int
    y_size: int


class LemmaCheck(BaseModel):
    name: str
    holds: bool
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    detail: Optional[str] = None


class LemmaReport(BaseModel):
    q: int
    code_size: int
    checks: list[LemmaCheck]

    def all_hold(self) -> bool:
        return all(check.holds for check in self.checks)

    def failures(self) -> list[LemmaCheck]:
        return [check for check in self.checks if not check.holds]


class BoundsRecord(BaseModel):
    q: int
    n: int
    karpovsky: int
    sphere: int
    sid_lower: int
    sld_lower: int
    dom2: Optional[int] = None
    dom3: Optional[int] = None
    id3_new: Optional[int] = None
    id3_old: Optional[int] = None
    sld3: Optional[int] = None
    id3_best_known_upper: Optional[int] = None


class RatioReport(BaseModel):
    q: int
    k: int
    n: int
    upper: int
    lower: int
    ratio: float
    within_three_halves: bool
    lower_at_least_two_thirds_upper: bool


class SearchResult(BaseModel):
    graph: str
    property: Property
    size: int
    exists: bool
    witness: Optional[list[Any]] = None
    nodes: int = 0
    optimal: bool = False
    symmetry: bool = True
