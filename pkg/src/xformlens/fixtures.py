"""Access to the bundled fixture corpus under fixtures/ at the repo root.

The corpus holds the constraint-programming pivot metamodel excerpt and
five endogenous transformations over it, plus golden outputs used by the
test suite.
"""
from __future__ import annotations

from pathlib import Path

from .metamodel import Metamodel, parse_metamodel
from .transformation import Transformation, parse_transformation

FIXTURE_NAMES = (
    "classInstantiation",
    "enumRemoval",
    "forallRemoval",
    "recordRemoval",
    "uselessIfRemoval",
)


def corpus_dir() -> Path:
    root = Path(__file__).resolve().parents[2] / "fixtures"
    if not root.is_dir():
        raise FileNotFoundError(
            f"fixture corpus not found at {root}; it ships in the repository "
            "next to src/ and is not installed into site-packages"
        )
    return root


def fixture_corpus() -> tuple[Metamodel, tuple[Transformation, ...]]:
    """Parse and return the pivot metamodel and the five transformations."""
    root = corpus_dir()
    pivot = root / "pivot.cmm"
    mm = parse_metamodel(pivot.read_text(encoding="utf-8"), path=str(pivot))
    transformations = []
    for name in FIXTURE_NAMES:
        path = root / f"{name}.tfm"
        transformations.append(
            parse_transformation(path.read_text(encoding="utf-8"), path=str(path))
        )
    return mm, tuple(transformations)
