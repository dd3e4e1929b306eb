"""
Pydantic models for the trace and verdict wire formats
"""

import math
from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..backends import DecisionBackend, get_backend
from ..core import mdl
from ..core.btl import BtlFormula
from ..core.models import TimedState, VerdictRecord
from ..core.props import PropTable
from ..core.rational import format_rational, parse_rational
from ..core.translate import translate, translate_positive
from ..exceptions import RationalOverflowError


def format_time(value) -> str:
    """Render a time, or "inf" for math.inf"""
    if value == math.inf:
        return "inf"
    return format_rational(value)


class TraceEvent(BaseModel):
    """One line of a trace: a timestamp and the propositions holding from it"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t: Fraction
    props: List[str] = Field(default_factory=list)

    @field_validator("t", mode="before")
    @classmethod
    def _exact_time(cls, value):
        try:
            result = parse_rational(value)
        except (TypeError, RationalOverflowError) as e:
            raise ValueError(str(e)) from e
        if result < 0:
            raise ValueError(f"timestamps must be non-negative, got {result}")
        return result

    @field_validator("props")
    @classmethod
    def _names(cls, value: List[str]) -> List[str]:
        for name in value:
            if not name or not name.replace("_", "a").isalnum():
                raise ValueError(f"not a proposition name: {name!r}")
        return value

    def to_timed_state(self, props: PropTable) -> TimedState:
        return TimedState(frozenset(props.declare_all(self.props)), self.t)


class VerdictEvent(BaseModel):
    """One line of the verdict stream"""

    t: str
    verdict: Literal["undetermined", "fulfilled", "failed"]
    source: Literal["initial", "event", "timer"]

    @classmethod
    def from_record(cls, record: VerdictRecord) -> "VerdictEvent":
        return cls(**record.to_dict())

    def to_record(self) -> VerdictRecord:
        return VerdictRecord.from_dict(self.model_dump())


class MonitorConfig(BaseModel):
    """Per-run monitor settings"""

    timer: bool = False
    backend: Literal["ddd", "oracle"] = "ddd"
    max_timer_injections: int = Field(default=16, gt=0)
    explain: bool = False

    def make_backend(self) -> DecisionBackend:
        return get_backend(self.backend)


class ExplainReport(BaseModel):
    """What the monitor will work on for a formula"""

    formula: str
    translation: str
    positive_form: str
    pfp: List[str]
    nfp: List[str]
    homogeneous: bool
    timely_complete: bool

    @classmethod
    def of(
        cls, psi: BtlFormula, text: str, props: Optional[PropTable] = None
    ) -> "ExplainReport":
        positive = translate_positive(psi)
        pfp, nfp = mdl.polarity_sets(positive)
        homogeneous = mdl.is_homogeneous(positive)
        return cls(
            formula=text.strip(),
            translation=mdl.format_mdl(translate(psi), props),
            positive_form=mdl.format_mdl(positive, props),
            pfp=_names(pfp, props),
            nfp=_names(nfp, props),
            homogeneous=homogeneous,
            # the difference-logic loop decides homogeneous formulas on time
            timely_complete=homogeneous,
        )


def _names(indices, props: Optional[PropTable]) -> List[str]:
    if props is None:
        return [f"p{i}" for i in sorted(indices)]
    return props.names(indices)


class CheckReport(BaseModel):
    """Outcome of cross-checking a monitor run against the reference evaluators"""

    formula: str
    horizon: str
    verdict: Literal["undetermined", "fulfilled", "failed"]
    t: str
    evaluation: Literal["true", "false", "unknown"]
    completion: bool
    agrees: bool


class TimerReport(BaseModel):
    """Earliest tautology and unsatisfiability times from a state"""

    state: List[str]
    t: str
    ett: str
    eut: str
