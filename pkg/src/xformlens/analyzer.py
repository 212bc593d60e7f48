"""Static analysis of transformations against their metamodels.

Each rule is classified as a copy or a mutation with an application mode
(always, conditionally, lazily). Aggregating classifications per source
concept yields concept profiles, the ignored-in/ignored-out sets, the
refined domain and codomain, a fixed-point verdict, and diagnostics.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .metamodel import Metamodel, concrete_concepts
from .transformation import Expression, Rule, Transformation


class MetamodelMismatchError(ValueError):
    """Transformation header names a metamodel other than the one supplied."""


class Mode(Enum):
    ALWAYS = "always"
    CONDITIONALLY = "conditionally"
    LAZILY = "lazily"

    @property
    def label(self) -> str:
        # Table-style abbreviation; only "conditionally" is shortened.
        return "cond." if self is Mode.CONDITIONALLY else self.value


# Canonical order for serialized mode sets.
MODE_ORDER = (Mode.ALWAYS, Mode.CONDITIONALLY, Mode.LAZILY)


@dataclass(frozen=True)
class RuleClassification:
    action: str  # "copy" | "mutation"
    mode: Mode
    source: str
    targets: tuple[str, ...]


@dataclass(frozen=True)
class ConceptProfile:
    concept: str
    copy_modes: frozenset[Mode] = frozenset()
    mutation_modes: frozenset[Mode] = frozenset()
    produced_as: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Lint:
    kind: str  # unknown_concept | never_processed | ignored_in | ignored_out
    subject: str
    message: str
    file: str | None = None
    line: int | None = None
    column: int | None = None


@dataclass(frozen=True)
class FixedPointVerdict:
    flag: bool
    explanation: str
    focal: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.flag


@dataclass(frozen=True)
class AnalysisReport:
    transformation: str
    source_mm: str
    target_mm: str
    profiles: dict[str, ConceptProfile]  # keyed by concrete source concepts, declaration order
    target_concepts: tuple[str, ...]
    ignored_in: frozenset[str]
    ignored_out: frozenset[str]
    refined_domain: frozenset[str]
    refined_codomain: frozenset[str]
    fixed_point_candidate: bool
    diagnostics: tuple[Lint, ...] = ()

    @property
    def source_concepts(self) -> tuple[str, ...]:
        return tuple(self.profiles)


def classify_rule(rule: Rule) -> RuleClassification:
    """Classify one rule lexically, without resolving concepts.

    A rule is a copy when its first target pattern names the same concept
    as its source pattern, a mutation otherwise. The lazy keyword takes
    precedence over a guard when determining the mode.
    """
    targets = tuple(dict.fromkeys(t.concept.name for t in rule.targets))
    action = "copy" if targets[0] == rule.source_concept.name else "mutation"
    if rule.lazy:
        mode = Mode.LAZILY
    elif rule.guard is not None:
        mode = Mode.CONDITIONALLY
    else:
        mode = Mode.ALWAYS
    return RuleClassification(action, mode, rule.source_concept.name, targets)


def analyze(
    t: Transformation, source_mm: Metamodel, target_mm: Metamodel
) -> AnalysisReport:
    """Compute the full analysis report for one transformation.

    Unresolvable concept references never abort the analysis: each one
    becomes an unknown_concept diagnostic, and a rule whose source or
    target pattern fails to resolve is left out of the profiles.
    """
    if t.source_metamodel != source_mm.name:
        raise MetamodelMismatchError(
            f"transformation '{t.name}' reads from '{t.source_metamodel}' "
            f"but metamodel '{source_mm.name}' was supplied"
        )
    if t.target_metamodel != target_mm.name:
        raise MetamodelMismatchError(
            f"transformation '{t.name}' writes to '{t.target_metamodel}' "
            f"but metamodel '{target_mm.name}' was supplied"
        )

    source_concepts = concrete_concepts(source_mm)
    target_concepts = concrete_concepts(target_mm)
    target_concrete = frozenset(target_concepts)

    unknown: list[Lint] = []
    mentioned_source: set[str] = set()
    mentioned_target: set[str] = set()

    def resolve(expr: Expression, owner: str, count: bool = True) -> None:
        for ref in expr.refs:
            if ref.metamodel == source_mm.name and ref.name in source_mm.concept_names:
                if count:
                    mentioned_source.add(ref.name)
            else:
                unknown.append(
                    Lint(
                        "unknown_concept",
                        ref.qualified,
                        f"{owner} references unknown concept '{ref.qualified}'",
                        t.source_path,
                        ref.line,
                        ref.column,
                    )
                )

    for h in t.helpers:
        # Context and result type are checked for typos only; a concept
        # mentioned nowhere else stays ignored-in.
        if h.context is not None:
            resolve(Expression("", (h.context,)), f"helper '{h.name}'", count=False)
        resolve(h.result_type, f"helper '{h.name}'", count=False)
        resolve(h.body, f"helper '{h.name}'")

    copy_modes: dict[str, set[Mode]] = {c: set() for c in source_concepts}
    mutation_modes: dict[str, set[Mode]] = {c: set() for c in source_concepts}
    produced_as: dict[str, set[str]] = {c: set() for c in source_concepts}

    for r in t.rules:
        owner = f"rule '{r.name}'"
        patterns_ok = True

        src = r.source_concept
        if src.name in source_mm.concept_names:
            mentioned_source.add(src.name)
        else:
            patterns_ok = False
            unknown.append(
                Lint(
                    "unknown_concept",
                    src.qualified,
                    f"{owner} references unknown concept '{src.qualified}'",
                    t.source_path,
                    src.line,
                    src.column,
                )
            )
        if r.guard is not None:
            resolve(r.guard, owner)
        for tp in r.targets:
            ref = tp.concept
            if ref.metamodel == target_mm.name and ref.name in target_mm.concept_names:
                mentioned_target.add(ref.name)
            else:
                patterns_ok = False
                unknown.append(
                    Lint(
                        "unknown_concept",
                        ref.qualified,
                        f"{owner} references unknown concept '{ref.qualified}'",
                        t.source_path,
                        ref.line,
                        ref.column,
                    )
                )
            for b in tp.bindings:
                resolve(b.value, owner)

        if not patterns_ok or src.name not in copy_modes:
            continue
        cls = classify_rule(r)
        produced = cls.targets[1:] if cls.action == "copy" else cls.targets
        if cls.action == "copy":
            copy_modes[src.name].add(cls.mode)
        else:
            mutation_modes[src.name].add(cls.mode)
        produced_as[src.name].update(n for n in produced if n in target_concrete)

    profiles = {
        c: ConceptProfile(
            c,
            frozenset(copy_modes[c]),
            frozenset(mutation_modes[c]),
            frozenset(produced_as[c]),
        )
        for c in source_concepts
    }

    ignored_in = frozenset(c for c in source_concepts if c not in mentioned_source)
    ignored_out = frozenset(c for c in target_concepts if c not in mentioned_target)

    diagnostics = sorted(unknown, key=lambda l: (l.line, l.column))
    for c in source_concepts:
        p = profiles[c]
        if not p.copy_modes and not p.mutation_modes and c in mentioned_source:
            diagnostics.append(
                Lint(
                    "never_processed",
                    c,
                    f"concept '{c}' is referenced but never copied or mutated",
                )
            )
    for c in source_concepts:
        if c in ignored_in:
            diagnostics.append(
                Lint(
                    "ignored_in",
                    c,
                    f"concept '{c}' appears in no source pattern, guard, "
                    "binding, or helper body",
                )
            )
    for c in target_concepts:
        if c in ignored_out:
            diagnostics.append(
                Lint("ignored_out", c, f"concept '{c}' appears in no target pattern")
            )

    report = AnalysisReport(
        transformation=t.name,
        source_mm=source_mm.name,
        target_mm=target_mm.name,
        profiles=profiles,
        target_concepts=target_concepts,
        ignored_in=ignored_in,
        ignored_out=ignored_out,
        refined_domain=frozenset(source_concepts) - ignored_in,
        refined_codomain=frozenset(target_concepts) - ignored_out,
        fixed_point_candidate=False,
        diagnostics=tuple(diagnostics),
    )
    if source_mm.name == target_mm.name:
        report = replace(report, fixed_point_candidate=bool(detect_fixed_point(report)))
    return report


def detect_fixed_point(report: AnalysisReport) -> FixedPointVerdict:
    """Decide whether a transformation is a fixed-point candidate.

    True when the refined codomain equals the refined domain, at least
    one focal concept is both conditionally-or-lazily copied and
    conditionally mutated, and no other concept is mutated at all.
    Undefined (raises ValueError) for exogenous transformations.
    """
    if report.source_mm != report.target_mm:
        raise ValueError(
            "fixed-point detection requires an endogenous transformation; "
            f"'{report.transformation}' maps '{report.source_mm}' "
            f"to '{report.target_mm}'"
        )
    if report.refined_domain != report.refined_codomain:
        domain_only = [
            c for c in report.source_concepts
            if c in report.refined_domain and c not in report.refined_codomain
        ]
        codomain_only = [
            c for c in report.target_concepts
            if c in report.refined_codomain and c not in report.refined_domain
        ]
        parts = []
        if domain_only:
            parts.append("domain only: " + ", ".join(domain_only))
        if codomain_only:
            parts.append("codomain only: " + ", ".join(codomain_only))
        return FixedPointVerdict(
            False, "refined domain and refined codomain differ (" + "; ".join(parts) + ")"
        )

    focal = tuple(
        c
        for c, p in report.profiles.items()
        if (Mode.CONDITIONALLY in p.copy_modes or Mode.LAZILY in p.copy_modes)
        and Mode.CONDITIONALLY in p.mutation_modes
    )
    if not focal:
        return FixedPointVerdict(
            False,
            "no concept is both conditionally or lazily copied "
            "and conditionally mutated",
        )
    stray = [
        c
        for c, p in report.profiles.items()
        if c not in focal and p.mutation_modes
    ]
    if stray:
        return FixedPointVerdict(
            False,
            f"concepts outside the focal set ({', '.join(focal)}) are "
            f"mutated: {', '.join(stray)}",
            focal,
        )
    return FixedPointVerdict(
        True,
        "refined codomain equals refined domain and mutation is confined "
        f"to focal concepts: {', '.join(focal)}",
        focal,
    )


def lint(
    t: Transformation, source_mm: Metamodel, target_mm: Metamodel
) -> tuple[Lint, ...]:
    """Diagnostics only; identical to analyze(...).diagnostics."""
    return analyze(t, source_mm, target_mm).diagnostics
