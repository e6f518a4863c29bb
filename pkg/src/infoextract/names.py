"""Small string helpers for comparing proper names."""

CORPORATE_SUFFIXES = ("Inc.", "Ltd.", "Corp.", "Co.", "plc", "PLC", "GmbH", "LLC")


def strip_corporate_suffix(words):
    """Drop trailing corporate designators (and a comma before them)."""
    words = list(words)
    while words and (words[-1] in CORPORATE_SUFFIXES or words[-1] == ","):
        words.pop()
    return words


def has_corporate_suffix(words) -> bool:
    return bool(words) and words[-1] in CORPORATE_SUFFIXES


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


def acronym(words) -> str:
    return "".join(w[0] for w in words if w[:1].isupper())
