"""Rule-based information extraction: names, coreference, entity and event records."""

from infoextract.errors import (
    BoundsError,
    ConsistencyError,
    DateNormalizationError,
    ResourceError,
)
from infoextract.text import Document, Sentence, Span, Token, span_text, split_sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "BoundsError",
    "ConsistencyError",
    "DateNormalizationError",
    "Document",
    "ResourceError",
    "Sentence",
    "Span",
    "Token",
    "span_text",
    "split_sentences",
    "tokenize",
]
