"""Pydantic request/response models for the HTTP service.

The wire formats mirror the package's JSON conventions: rational coefficients
as "p/q" strings, symbols as {"family", "index"} objects (index omitted for c).
"""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, Field, model_validator

AlgebraName = Literal["vir", "witt", "w22", "w22-centerless"]
ProblemName = Literal["biderivation", "derivation", "commuting", "symmetric-biderivation"]
CheckName = Literal[
    "biderivation", "derivation", "commuting", "symmetric-biderivation", "postlie"
]


class SymbolModel(BaseModel):
    family: Literal["L", "H", "c"]
    index: int | None = None

    @model_validator(mode="after")
    def _index_presence(self):
        if self.family == "c":
            self.index = None
        elif self.index is None:
            raise ValueError(f"symbol family {self.family!r} requires an index")
        return self


class TermModel(SymbolModel):
    coeff: str


class MapEntryModel(BaseModel):
    arg: Union[SymbolModel, list[SymbolModel]]
    value: list[TermModel]


class MapFileModel(BaseModel):
    algebra: AlgebraName
    window: int = Field(ge=0)
    kind: Literal["linear", "bilinear"]
    entries: list[MapEntryModel]


class ClassifyRequest(BaseModel):
    algebra: AlgebraName
    problem: ProblemName
    window: int = Field(default=5, ge=1)
    value_radius: int | None = Field(default=None, description="defaults to 2*window")
    core: int = Field(default=2, ge=1)
    workers: int = Field(default=1, ge=1, le=16)

    @model_validator(mode="after")
    def _window_shape(self):
        if self.core > self.window:
            raise ValueError("core radius must not exceed the window radius")
        if self.value_radius is not None and self.value_radius < 2 * self.window:
            raise ValueError("value radius must be at least twice the window radius")
        return self


class ParameterPairModel(BaseModel):
    lam: str = Field(alias="lambda")
    mu: str

    model_config = {"populate_by_name": True}


class ClassifyResponse(BaseModel):
    algebra: str
    problem: str
    N: int
    M: int
    K: int
    raw_dimension: int
    core_dimension: int
    core_basis: list[MapFileModel]
    parameters: list[ParameterPairModel] | None = None
    analysis: dict
    residual_check: Union[str, dict]
    timings_ms: dict[str, float]


class VerifyMapRequest(BaseModel):
    check: CheckName
    map: MapFileModel


class VerifyMapResponse(BaseModel):
    algebra: str
    window: int
    kind: str
    check: str
    status: Literal["pass", "fail"]
    failure_count: int
    failures: list[dict]
    nested_out_of_window: list[dict] | None = None
    nested_out_of_window_count: int | None = None


class CenterRequest(BaseModel):
    algebra: AlgebraName
    window: int = Field(default=4, ge=1)
    core: int | None = Field(default=None, ge=0)


class CenterResponse(BaseModel):
    algebra: str
    problem: str
    N: int
    K: int
    window_dimension: int
    window_basis: list[list[TermModel]]
    core_dimension: int
    core_basis: list[list[TermModel]]
    core_basis_text: list[str]


class BracketRequest(BaseModel):
    algebra: AlgebraName
    x: list[TermModel]
    y: list[TermModel]


class ElementResponse(BaseModel):
    terms: list[TermModel]
    text: str


class InfoResponse(BaseModel):
    service: str
    version: str
    algebras: list[str]
    problems: list[str]
    checks: list[str]
