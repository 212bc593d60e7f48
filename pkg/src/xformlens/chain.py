"""Chain validation and planning over analyzed transformations.

A chain step is valid when its whole input concept set lies inside the
step's refined domain. Concept sets move through a chain via propagate,
which applies the per-concept profiles: copied concepts survive,
mutation products are added, and unmatched concepts disappear.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .analyzer import AnalysisReport


class ChainCompatibilityError(ValueError):
    """Adjacent chain steps disagree on the intermediate metamodel."""


@dataclass(frozen=True)
class ChainStep:
    transformation: str
    input_set: frozenset[str]
    output_set: frozenset[str]
    valid: bool
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class ChainPlan:
    initial_set: frozenset[str]
    steps: tuple[ChainStep, ...]
    goal_met: bool

    @property
    def final_set(self) -> frozenset[str]:
        return self.steps[-1].output_set if self.steps else self.initial_set


def propagate(s: Iterable[str], report: AnalysisReport) -> frozenset[str]:
    """Image of a concept set under one transformation's profiles."""
    out: set[str] = set()
    for c in s:
        profile = report.profiles.get(c)
        if profile is None:
            continue
        if profile.copy_modes:
            out.add(c)
        out |= profile.produced_as
    return frozenset(out)


def check_chain(
    initial: Iterable[str], chain: Sequence[AnalysisReport]
) -> ChainPlan:
    """Fold a concept set through an ordered chain of reports.

    goal_met is True when every step is valid. A warning is attached to
    any step that introduces a concept some later step drops again.
    """
    initial_set = frozenset(initial)
    current = initial_set
    inputs: list[frozenset[str]] = []
    outputs: list[frozenset[str]] = []
    for i, report in enumerate(chain):
        if i > 0 and chain[i - 1].target_mm != report.source_mm:
            raise ChainCompatibilityError(
                f"step {i} produces metamodel '{chain[i - 1].target_mm}' but "
                f"step {i + 1} ('{report.transformation}') reads "
                f"'{report.source_mm}'"
            )
        inputs.append(current)
        current = propagate(current, report)
        outputs.append(current)

    warnings: list[list[str]] = [[] for _ in chain]
    for i, report in enumerate(chain):
        introduced = outputs[i] - inputs[i]
        for c in report.target_concepts:
            if c not in introduced:
                continue
            for j in range(i + 1, len(chain)):
                if c not in outputs[j]:
                    warnings[i].append(
                        f"useless step: '{c}' is introduced here and dropped "
                        f"by step {j + 1} ('{chain[j].transformation}')"
                    )
                    break

    steps = tuple(
        ChainStep(
            report.transformation,
            inputs[i],
            outputs[i],
            inputs[i] <= report.refined_domain,
            tuple(warnings[i]),
        )
        for i, report in enumerate(chain)
    )
    return ChainPlan(initial_set, steps, all(s.valid for s in steps))


def plan_chain(
    library: Iterable[AnalysisReport],
    initial: Iterable[str],
    required: Iterable[str],
    forbidden: Iterable[str],
    max_len: int = 8,
) -> ChainPlan | None:
    """Breadth-first search for a shortest valid chain meeting the goal.

    The goal holds for a set S when required ⊆ S and S ∩ forbidden = ∅.
    Ties between equally short chains go to the lexicographically
    smallest transformation-name sequence; returns None when no valid
    chain of at most max_len steps reaches the goal.
    """
    initial_set = frozenset(initial)
    required_set = frozenset(required)
    forbidden_set = frozenset(forbidden)
    reports = sorted(library, key=lambda r: r.transformation)

    def goal(s: frozenset[str]) -> bool:
        return required_set <= s and not (s & forbidden_set)

    if goal(initial_set):
        return check_chain(initial_set, [])

    # States pair the current metamodel with the concept set; the start
    # state carries no metamodel, so any library entry may begin the chain.
    start: tuple[str | None, frozenset[str]] = (None, initial_set)
    visited = {start}
    queue: deque[tuple[tuple[str | None, frozenset[str]], tuple[AnalysisReport, ...]]]
    queue = deque([(start, ())])
    while queue:
        (mm, s), path = queue.popleft()
        if len(path) >= max_len:
            continue
        for report in reports:
            if mm is not None and report.source_mm != mm:
                continue
            if not s <= report.refined_domain:
                continue
            out = propagate(s, report)
            state = (report.target_mm, out)
            if state in visited:
                continue
            visited.add(state)
            extended = path + (report,)
            if goal(out):
                return check_chain(initial_set, list(extended))
            queue.append((state, extended))
    return None
