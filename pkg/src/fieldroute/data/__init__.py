"""Bundled benchmark instances, a synthetic fleet scenario, and bench suites."""
from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    """Filesystem path of a bundled data file by name, e.g. 'eil51.tsp'."""
    candidate = resources.files(__name__) / name
    if not candidate.is_file():
        raise FileNotFoundError(f"no bundled data file named {name!r}")
    return Path(str(candidate))


def read_text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")
