"""The shipped example specifications and negative fixtures."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

__all__ = ["corpus_dir", "corpus_paths", "fixture_path"]


def corpus_dir() -> Path:
    return Path(str(resources.files("braided_forge").joinpath("corpus")))


def corpus_paths() -> list[Path]:
    """Every spec that is expected to pass all checks, sorted by file name."""
    return sorted(corpus_dir().glob("*.json"))


def fixture_path(name: str) -> Path:
    p = corpus_dir() / "fixtures" / (name if name.endswith(".json") else f"{name}.json")
    if not p.exists():
        raise FileNotFoundError(p)
    return p
