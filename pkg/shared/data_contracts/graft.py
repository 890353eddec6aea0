"""Graft document contracts and schemas."""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class GraftDocument(BaseModel):
    """Serialized graft: named vertices, an edge list and a terminal set."""

    vertices: List[str] = Field(..., description="Vertex names in index order")
    edges: List[Tuple[str, str]] = Field(
        default_factory=list,
        description="Edges as name pairs; repeats are parallel edges",
    )
    terminals: List[str] = Field(
        default_factory=list, description="Terminal vertex names"
    )
    allow_disconnected: bool = Field(
        False, description="Accept a disconnected graph with per-component parity"
    )

    @field_validator('vertices')
    @classmethod
    def validate_vertices(cls, v: List[str]) -> List[str]:
        """Vertex names must be non-empty and distinct."""
        if not v:
            raise ValueError("a graft needs at least one vertex")
        if any(not name.strip() for name in v):
            raise ValueError("vertex names cannot be empty")
        if len(set(v)) != len(v):
            raise ValueError("duplicate vertex names")
        return v

    @model_validator(mode='after')
    def validate_references(self) -> "GraftDocument":
        """Edges and terminals only name declared vertices."""
        known = set(self.vertices)
        for u, w in self.edges:
            if u not in known or w not in known:
                raise ValueError(f"edge {u}-{w} names an unknown vertex")
            if u == w:
                raise ValueError(f"loop at {u}")
        unknown = [t for t in self.terminals if t not in known]
        if unknown:
            raise ValueError(f"unknown terminals: {', '.join(unknown)}")
        if len(set(self.terminals)) != len(self.terminals):
            raise ValueError("duplicate terminals")
        return self


class JoinResult(BaseModel):
    """Output of the solve command."""

    nu: int = Field(..., ge=0, description="Minimum join size")
    join: List[str] = Field(
        ..., description="Edge labels of the lexicographically smallest minimum join"
    )
    allowed: List[str] = Field(..., description="Edge labels in some minimum join")


class DistanceRow(BaseModel):
    """Distances from one root to every vertex."""

    root: str
    distances: List[Tuple[str, int]]
    path: Optional[List[str]] = Field(
        None, description="Shortest path witness when a target is given"
    )


class ComponentRecord(BaseModel):
    index: int
    vertices: List[str]
    capital: bool


class DecompositionResult(BaseModel):
    """Output of the decompose command."""

    root: str
    distances: List[Tuple[str, int]]
    components: List[ComponentRecord]
    initial: List[str]
    a: List[str]
    d: List[str]
    c: List[str]


class ClassRecord(BaseModel):
    klass: List[str] = Field(..., description="Vertices of one class")
    critical: Optional[List[str]] = Field(None, description="Critical set of the class")
    neicomp: Optional[List[List[str]]] = Field(
        None, description="D-components adjacent by allowed edges"
    )


class PartitionResult(BaseModel):
    """Output of the kl and critical commands."""

    classes: List[ClassRecord]
    factor_components: List[List[str]]
    root: Optional[str] = None


class RootlizationResult(BaseModel):
    """Output of the rootlize command."""

    mount: List[str]
    graft: GraftDocument
    nu: int
    extended_nu: int
    root_distances: List[Tuple[str, int]]
    a: List[str]
    d: List[str]
