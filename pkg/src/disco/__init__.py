"""Standoff discourse-relation annotations: agreement and dependency analysis."""

from .model import (
    AnnotatedDocument,
    Corpus,
    DiscourseRelation,
    RealizationType,
    SensePath,
    extent,
    sort_key,
    validate_relation,
)
from .spans import CharInterval, Span

__all__ = [
    "AnnotatedDocument",
    "CharInterval",
    "Corpus",
    "DiscourseRelation",
    "RealizationType",
    "SensePath",
    "Span",
    "extent",
    "sort_key",
    "validate_relation",
]
__version__ = "0.1.0"
