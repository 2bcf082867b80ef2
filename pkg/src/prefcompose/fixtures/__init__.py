"""Bundled example instances."""

from importlib import resources

NAMES = (
    "courses",
    "intransitive_importance",
    "interleave_unsound",
    "tradeoff_compromise",
    "single_attribute_unsound",
)


def fixture_path(name: str) -> str:
    """Filesystem path of a bundled instance by short name."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return str(resources.files(__package__).joinpath(f"{name}.json"))
