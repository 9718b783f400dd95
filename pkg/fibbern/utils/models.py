"""
Pydantic models for the identity verification system.
"""
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exact import DensePoly, QuadExt


class IdentityId(str, Enum):
    """Catalog tags, in catalog order."""
    L1A = "L1A"
    L1B = "L1B"
    L1C = "L1C"
    T1A = "T1A"
    T1B = "T1B"
    T1C = "T1C"
    SPEC_J1_A = "SPEC_J1_A"
    SPEC_J1_B = "SPEC_J1_B"
    SPEC_J1_C = "SPEC_J1_C"
    REM1_A = "REM1_A"
    REM1_B = "REM1_B"
    REM1_C = "REM1_C"
    T2A = "T2A"
    T2A_PART = "T2A_PART"
    T2B = "T2B"
    T2B_PART = "T2B_PART"
    T2_CONSEQ = "T2_CONSEQ"
    T3A = "T3A"
    T3B = "T3B"
    T3A_EVEN = "T3A_EVEN"
    FBPOL1 = "FBPOL1"
    FBPOL2 = "FBPOL2"
    T7A = "T7A"
    T7B = "T7B"
    C8A = "C8A"
    C8B = "C8B"
    T9A = "T9A"
    T9B = "T9B"
    C10A = "C10A"
    C10B = "C10B"
    C10C = "C10C"
    C10D = "C10D"
    T11A = "T11A"
    T11B = "T11B"
    T12A = "T12A"
    T12B = "T12B"
    T13 = "T13"
    C21 = "C21"
    C22A = "C22A"
    C22B = "C22B"
    EX_J3 = "EX_J3"
    EX_BETA = "EX_BETA"
    C23 = "C23"
    EX_Q2_GEN = "EX_Q2_GEN"
    EX_Q2_J1 = "EX_Q2_J1"
    EX_Q3_GEN = "EX_Q3_GEN"
    EX_Q3_J1 = "EX_Q3_J1"
    LEM6_F = "LEM6_F"
    LEM6_L = "LEM6_L"

    @property
    def position(self) -> int:
        return _ID_POSITION[self]


_ID_POSITION = {tag: i for i, tag in enumerate(IdentityId)}


class FunctionalEquation(str, Enum):
    """Generating-function equations checked coefficient by coefficient."""
    EGF_F_SQ = "EGF_F_SQ"
    EGF_L_SQ = "EGF_L_SQ"
    FL_ID = "FL_ID"
    TANH_FORM = "TANH_FORM"
    COTH_FORM = "COTH_FORM"
    H_RELATION = "H_RELATION"


class VerdictStatus(str, Enum):
    EQUAL = "Equal"
    UNEQUAL = "Unequal"
    NOT_APPLICABLE = "NotApplicable"


class IdentityParams(BaseModel):
    """Parameter tuple for one identity evaluation; unused fields stay None."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: Optional[int] = Field(None, ge=0, description="Summation bound")
    j: Optional[int] = Field(None, description="Index multiplier")
    m: Optional[int] = Field(None, description="Index offset")
    q: Optional[int] = Field(None, description="Raabe multiplier")
    x: Optional[QuadExt] = Field(None, description="Bernoulli polynomial argument")
    z: Optional[QuadExt] = Field(None, description="Transform variable")
    sign: Optional[Literal["+", "-"]] = Field(None, description="Branch of a +/- identity")

    @property
    def sign_value(self) -> int:
        return -1 if self.sign == "-" else 1

    def sort_key(self) -> Tuple[Any, ...]:
        def slot(value: Any) -> Tuple[int, Any]:
            if value is None:
                return (0, 0)
            if isinstance(value, QuadExt):
                return (1, value.sort_key())
            return (1, value)

        return (
            slot(self.n), slot(self.j), slot(self.m), slot(self.q),
            slot(self.sign), slot(self.x), slot(self.z),
        )

    def label(self) -> str:
        """Compact "n=2;j=1" rendering of the fields in use."""
        parts = []
        for name in ("n", "j", "m", "q", "sign", "x", "z"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        return ";".join(parts)


Value = Union[QuadExt, DensePoly]


class IdentityVerdict(BaseModel):
    """Exact LHS/RHS for one parameter tuple and the resulting status."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: IdentityId
    params: IdentityParams
    lhs: Optional[Value] = None
    rhs: Optional[Value] = None
    status: VerdictStatus
    note: Optional[str] = None

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.id.position, self.params.sort_key())


class IdentitySummary(BaseModel):
    identity: IdentityId
    equal: int = 0
    unequal: int = 0
    not_applicable: int = 0

    @property
    def total(self) -> int:
        return self.equal + self.unequal + self.not_applicable


class OracleSummary(BaseModel):
    """Agreement between direct evaluation and the alternate derivation."""
    identity: IdentityId
    path: str = Field(..., description="'egf' or 'binet'")
    agree: int = 0
    disagree: int = 0
    disagreements: List[str] = Field(default_factory=list, description="Parameter labels that disagreed")


class VerificationReport(BaseModel):
    """Deterministically ordered outcome of a grid run."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    records: List[IdentityVerdict] = Field(default_factory=list)
    summaries: List[IdentitySummary] = Field(default_factory=list)
    oracle: Optional[List[OracleSummary]] = None

    @property
    def total_equal(self) -> int:
        return sum(s.equal for s in self.summaries)

    @property
    def total_unequal(self) -> int:
        return sum(s.unequal for s in self.summaries)

    @property
    def total_not_applicable(self) -> int:
        return sum(s.not_applicable for s in self.summaries)

    @property
    def oracle_disagreements(self) -> int:
        return sum(o.disagree for o in self.oracle or [])

    def unequal_records(self) -> List[IdentityVerdict]:
        return [r for r in self.records if r.status is VerdictStatus.UNEQUAL]

    def has_failures(self) -> bool:
        return self.total_unequal > 0 or self.oracle_disagreements > 0


class FamilyCaps(BaseModel):
    """Tighter ranges for identities that are expensive per grid point."""
    n_max: int = Field(..., ge=0)
    j_max: int = Field(..., ge=1)
    m_min: int
    m_max: int


class GridSpec(BaseModel):
    """Per-parameter ranges for verify_grid."""
    n_min: int = Field(0, ge=0)
    n_max: int = Field(30, ge=0)
    j_min: int = Field(1, ge=1)
    j_max: int = Field(8, ge=1)
    m_min: int = -5
    m_max: int = 5
    q_min: int = Field(2, ge=2)
    q_max: int = Field(6, ge=2)
    x_samples: List[str] = Field(default_factory=lambda: ["0", "1", "1/2", "-1", "2/3", "alpha", "beta"])
    z_samples: List[str] = Field(default_factory=lambda: ["1/L", "-1/L", "2/L", "1"])
    polynomial: FamilyCaps = Field(default_factory=lambda: FamilyCaps(n_max=20, j_max=6, m_min=-3, m_max=3))
    pointwise: FamilyCaps = Field(default_factory=lambda: FamilyCaps(n_max=8, j_max=4, m_min=-2, m_max=2))

    @model_validator(mode="after")
    def _check_ranges(self) -> "GridSpec":
        for low, high in (("n_min", "n_max"), ("j_min", "j_max"), ("m_min", "m_max"), ("q_min", "q_max")):
            if getattr(self, low) > getattr(self, high):
                raise ValueError(f"{low}={getattr(self, low)} exceeds {high}={getattr(self, high)}")
        return self

    def caps_for(self, family: str) -> Dict[str, int]:
        """Effective n/j/m bounds for a catalog family, clamped to the global ranges."""
        bounds = {
            "n_max": self.n_max, "j_max": self.j_max,
            "m_min": self.m_min, "m_max": self.m_max,
        }
        caps = {"polynomial": self.polynomial, "pointwise": self.pointwise}.get(family)
        if caps is not None:
            bounds["n_max"] = min(bounds["n_max"], caps.n_max)
            bounds["j_max"] = min(bounds["j_max"], caps.j_max)
            bounds["m_min"] = max(bounds["m_min"], caps.m_min)
            bounds["m_max"] = min(bounds["m_max"], caps.m_max)
        return bounds


class LedgerEvidence(BaseModel):
    """Machine evidence collected for one ledger entry."""
    grid: str = Field(..., description="Human-readable evidence grid")
    corrected_equal: int = 0
    corrected_total: int = 0
    printed_unequal: int = 0
    printed_total: int = 0
    oracle_agree: int = 0
    oracle_total: int = 0
    first_printed_failure: Optional[str] = None

    @property
    def confirmed(self) -> bool:
        return (
            self.corrected_total > 0
            and self.corrected_equal == self.corrected_total
            and self.oracle_agree == self.oracle_total
        )


class DiscrepancyEntry(BaseModel):
    """One documented difference between a printed formula and the verified one."""
    id: IdentityId
    kind: str = Field(..., description="sign, missing-equality, stray-factor, domain, exponent or index")
    printed_form: str
    corrected_form: str
    oracle_evidence: str = Field("", description="Summary of the oracle run backing the correction")
    evidence: Optional[LedgerEvidence] = None


class SeriesVerdict(BaseModel):
    """Outcome of a coefficient-wise functional-equation check."""
    equation: FunctionalEquation
    j: int
    order: int
    x: Optional[str] = None
    confirmed: bool
    checked_through: int
    first_mismatch: Optional[int] = None
    principal: Tuple[str, str] = Field(..., description="LHS coefficients of z^-2 and z^-1")


class CliConfig(BaseModel):
    """Validated command-line configuration."""
    command: Literal["verify", "series", "table", "bench", "ledger"]
    ids: List[IdentityId] = Field(default_factory=list)
    grid: Optional[GridSpec] = None
    order: int = Field(32, ge=4)
    format: Literal["text", "json", "csv"] = "text"
    out: Optional[str] = None
    jobs: int = Field(1, ge=1)
    oracle: bool = False
