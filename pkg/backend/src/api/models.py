'''
Pydantic schemas shared by the services and the command line.
Region / matrix specifications are validated here once, so the computational
services can assume well-formed input. The canonical JSON wire format for
Laurent polynomials lives here as well.
'''
from math import gcd
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, field_validator, model_validator

VARIABLE = "q"


class DentSequence(BaseModel):
    model_config = ConfigDict(frozen=True)

    values: tuple[int, ...]

    @field_validator("values")
    @classmethod
    def _strictly_increasing(cls, values):
        for left, right in zip(values, values[1:]):
            if left >= right:
                raise ValueError(f"dent sequence must be strictly increasing, got {list(values)}")
        return tuple(values)

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def of(cls, *values: int) -> "DentSequence":
        return cls(values=tuple(values))

    @classmethod
    def parse(cls, text: str) -> "DentSequence":
        # "0,1,3" -> (0, 1, 3); the empty string is the empty sequence
        text = text.strip()
        if not text:
            return cls(values=())
        return cls(values=tuple(int(part) for part in text.split(",")))


class RegionSpec(BaseModel):
    '''
    Quartered hexagon with dents: m paths, height parameter k, and the
    terminal y-coordinates a_1 < ... < a_m of the paths.
    '''
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    k: int = Field(ge=0)
    dents: DentSequence

    @model_validator(mode="after")
    def _dent_count(self):
        if len(self.dents) != self.m:
            raise ValueError(f"expected {self.m} dents, got {len(self.dents)}")
        return self

    @property
    def window(self) -> range:
        # dent positions that correspond to cells of the region's base line
        return range(-(self.m + self.k - 1), self.m)

    @property
    def in_window(self) -> bool:
        return all(a in self.window for a in self.dents.values)

    @property
    def last_path_feasible(self) -> bool:
        # path m starts at height m-1 and can only move down
        return self.dents.values[-1] <= self.m - 1

    @classmethod
    def of(cls, m: int, k: int, dents) -> "RegionSpec":
        return cls(m=m, k=k, dents=DentSequence(values=tuple(dents)))

    def start(self, i: int) -> tuple[int, int]:
        # initial point of path i (1-based)
        return (2 * i - 1, i - 1)

    def end(self, j: int) -> tuple[int, int]:
        return (2 * self.m - 1 + self.k, self.dents.values[j - 1])


class PropMatrixSpec(BaseModel):
    # no dent window here: any strictly increasing sequence is allowed
    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=0)
    a: DentSequence

    @property
    def m(self) -> int:
        return len(self.a)

    @classmethod
    def of(cls, k: int, a) -> "PropMatrixSpec":
        return cls(k=k, a=DentSequence(values=tuple(a)))


class TermModel(BaseModel):
    # parsing never coerces: "1" or 1.0 for an exponent is rejected, as are unknown keys
    model_config = ConfigDict(frozen=True, extra="forbid")

    exp: StrictInt
    num: StrictStr
    den: StrictStr

    @model_validator(mode="after")
    def _reduced(self):
        num, den = int(self.num), int(self.den)
        # decimal strings only, no "+", no leading zeros, no whitespace
        if str(num) != self.num or str(den) != self.den:
            raise ValueError(f"non-canonical decimal in term {self}")
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num == 0:
            raise ValueError("zero coefficients are not serialized")
        if gcd(abs(num), den) != 1:
            raise ValueError(f"coefficient {num}/{den} is not reduced")
        return self


class LaurentPolyModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    var: StrictStr
    terms: List[TermModel]

    @field_validator("var")
    @classmethod
    def _variable(cls, var):
        if var != VARIABLE:
            raise ValueError(f"unsupported variable {var!r}")
        return var

    @field_validator("terms")
    @classmethod
    def _ascending(cls, terms):
        exps = [t.exp for t in terms]
        if any(left >= right for left, right in zip(exps, exps[1:])):
            raise ValueError("terms must be strictly ascending by exponent")
        return terms


class RationalFnModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    num: LaurentPolyModel
    den: LaurentPolyModel


class CaseFailure(BaseModel):
    case: str
    detail: str


class SuiteReport(BaseModel):
    suite: str
    cases: int = 0
    passed: int = 0
    skipped: int = 0
    failed: int = 0
    first_failure: Optional[CaseFailure] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0
