"""
Pydantic models for the JSON interchange formats.

Laws, Poisson tables, reconstructed algebras and reports are all exchanged
as JSON; these models validate the shape, the domain modules convert them
to and from their own value types.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime


class ComulTermModel(BaseModel):
    left: List[int]
    right: List[int]
    coeff: int


class BlockModel(BaseModel):
    kind: Literal["additive", "multiplicative", "custom"]
    coords: List[str] = Field(min_length=1)


class LawModel(BaseModel):
    """Custom formal group law description."""
    p: int
    cap: int = Field(ge=1)
    coords: List[str] = Field(min_length=1)
    blocks: List[BlockModel] = Field(min_length=1)
    comul: Dict[str, List[ComulTermModel]]

    @field_validator("p")
    @classmethod
    def _prime(cls, value: int) -> int:
        if value < 2 or not isprime(value):
            raise ValueError(f"{value} is not prime")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "LawModel":
        n = len(self.coords)
        if len(set(self.coords)) != n:
            raise ValueError("coordinate names must be unique")
        if set(self.comul) != set(self.coords):
            raise ValueError("comul must give exactly one series per coordinate")
        for name, terms in self.comul.items():
            for term in terms:
                if len(term.left) != n or len(term.right) != n:
                    raise ValueError(f"term of m({name}) has the wrong index length")
                if min(term.left + term.right) < 0:
                    raise ValueError(f"term of m({name}) has a negative exponent")
                if not 0 <= term.coeff < self.p:
                    raise ValueError(f"coefficient {term.coeff} of m({name}) is not in [0, p)")
        covered = [c for block in self.blocks for c in block.coords]
        if covered != self.coords:
            raise ValueError("blocks must list the coordinates contiguously and in order")
        return self


class TermModel(BaseModel):
    """One term of a linear combination: a monomial in text syntax and its residue."""
    monomial: str
    coeff: int


class TableEntryModel(BaseModel):
    eta: str
    zeta: str
    value: List[TermModel] = Field(default_factory=list)


class PoissonTableModel(BaseModel):
    """A splay (its commutative block laws) plus bracket values on generators."""
    level: int = Field(ge=0)
    blocks: List[LawModel] = Field(min_length=1)
    entries: List[TableEntryModel] = Field(default_factory=list)


class ProductModel(BaseModel):
    left: str
    right: str
    value: List[TermModel]


class CoproductTermModel(BaseModel):
    left: str
    right: str
    coeff: int


class CoproductModel(BaseModel):
    element: str
    terms: List[CoproductTermModel]


class AlgebraModel(BaseModel):
    """Reconstructed algebra: PBW basis, structure constants and coproduct."""
    level: int = Field(ge=0)
    blocks: List[LawModel] = Field(min_length=1)
    table: List[TableEntryModel] = Field(default_factory=list)
    basis: List[str]
    products: List[ProductModel]
    comul: List[CoproductModel]


class CheckModel(BaseModel):
    name: str
    passed: bool
    witness: Optional[str] = None
    detail: str = ""


class ReportModel(BaseModel):
    title: str
    passed: bool
    results: List[CheckModel]
    facts: Dict[str, Any] = Field(default_factory=dict)
