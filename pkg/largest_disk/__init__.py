"""Largest disk containing a query point: three planar maps plus ray shooting."""

from largest_disk.models import (
    Disk,
    Frame,
    Point,
    QueryAnswer,
    Tolerance,
    ValidationReport,
)
from largest_disk.engine import Structure, oracle_query, preprocess, query, validate

__all__ = [
    "Structure",
    "preprocess",
    "query",
    "oracle_query",
    "validate",
    "Disk",
    "Point",
    "Frame",
    "QueryAnswer",
    "Tolerance",
    "ValidationReport",
]
