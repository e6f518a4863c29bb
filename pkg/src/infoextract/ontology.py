"""Closed set of entity class names and which of them may corefer."""

ENTITY_CLASSES = frozenset(
    [
        "person",
        "organisation",
        "company",
        "bank",
        "location",
        "date",
        "time",
        "money",
        "telephone",
        "drug",
        "legislation",
        "activity",
        "transport",
        # reserved: named as interests but never produced by the shipped resources
        "financial-entity",
        "locality",
        "place",
    ]
)

NORMALIZED_CLASSES = frozenset(["date", "time", "money"])
ORGANISATION_CLASSES = frozenset(["organisation", "company", "bank"])


def compatible(a: str, b: str) -> bool:
    """Whether mentions of class `a` and `b` may denote the same object."""
    if a == b:
        return True
    return a in ORGANISATION_CLASSES and b in ORGANISATION_CLASSES


def check_class(name: str) -> str:
    if name not in ENTITY_CLASSES:
        raise ValueError(f"unknown entity class {name!r}")
    return name
