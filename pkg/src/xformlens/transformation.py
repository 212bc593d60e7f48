"""Transformation dialect (.tfm): parsing and validation.

A module header names the target and source metamodels, followed by
helpers and rules. Expressions (guards, binding values, helper bodies)
are captured as balanced token runs, not parsed into syntax trees; the
analysis only needs the qualified concept references inside them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import ParseError, Token, TokenKind, TokenStream, capture_balanced
from .metamodel import Metamodel


@dataclass(frozen=True)
class ConceptRef:
    """A qualified reference METAMODEL!CONCEPT with its source position."""

    metamodel: str
    name: str
    line: int
    column: int

    @property
    def qualified(self) -> str:
        return f"{self.metamodel}!{self.name}"


@dataclass(frozen=True)
class Expression:
    """An opaque expression: raw source text plus extracted concept refs."""

    raw: str
    refs: tuple[ConceptRef, ...] = ()

    @property
    def referenced_concepts(self) -> frozenset[str]:
        return frozenset(ref.qualified for ref in self.refs)


@dataclass(frozen=True)
class Binding:
    feature: str
    value: Expression


@dataclass(frozen=True)
class TargetPattern:
    var: str
    concept: ConceptRef
    bindings: tuple[Binding, ...] = ()


@dataclass(frozen=True)
class Rule:
    name: str
    source_var: str
    source_concept: ConceptRef
    targets: tuple[TargetPattern, ...]
    guard: Expression | None = None
    lazy: bool = False
    parent_rule: str | None = None


@dataclass(frozen=True)
class Helper:
    name: str
    result_type: Expression
    body: Expression
    context: ConceptRef | None = None


@dataclass(frozen=True)
class Transformation:
    name: str
    source_metamodel: str
    target_metamodel: str
    helpers: tuple[Helper, ...] = ()
    rules: tuple[Rule, ...] = ()
    source_path: str | None = field(default=None, compare=False)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


def parse_transformation(
    source_text: str, *, path: str | None = None
) -> Transformation:
    """Parse and validate a transformation file.

    Raises ParseError on syntax errors, duplicate rule names, unknown
    parent rules, and source patterns that match against a metamodel
    other than the one the module reads from. Target patterns are not
    resolved here; unknown target concepts surface as analysis
    diagnostics instead.
    """
    ts = TokenStream(source_text, path)
    ts.expect_word("module")
    name = ts.expect_ident("module name").text
    ts.expect_symbol(";")

    ts.expect_word("create")
    ts.expect_ident("target model name")
    ts.expect_symbol(":")
    target_mm = ts.expect_ident("target metamodel name").text
    ts.expect_word("from")
    ts.expect_ident("source model name")
    ts.expect_symbol(":")
    source_mm = ts.expect_ident("source metamodel name").text
    ts.expect_symbol(";")

    helpers: list[Helper] = []
    while ts.at_word("helper"):
        helpers.append(_parse_helper(ts))

    rules: list[Rule] = []
    seen: dict[str, Token] = {}
    parent_refs: list[Token] = []
    while ts.at_word("rule") or ts.at_word("lazy"):
        rule, name_tok, parent_tok = _parse_rule(ts)
        if rule.name in seen:
            raise ts.error(f"duplicate rule name '{rule.name}'", name_tok)
        seen[rule.name] = name_tok
        if parent_tok is not None:
            parent_refs.append(parent_tok)
        if rule.source_concept.metamodel != source_mm:
            ref = rule.source_concept
            raise ParseError(
                f"source pattern of rule '{rule.name}' matches metamodel "
                f"'{ref.metamodel}' but the module reads from '{source_mm}'",
                ref.line,
                ref.column,
                path,
            )
        rules.append(rule)
    ts.expect_eof()

    for parent_tok in parent_refs:
        if parent_tok.text not in seen:
            raise ts.error(f"unknown parent rule '{parent_tok.text}'", parent_tok)

    return Transformation(
        name, source_mm, target_mm, tuple(helpers), tuple(rules), source_path=path
    )


def _parse_helper(ts: TokenStream) -> Helper:
    ts.expect_word("helper")
    context = None
    if ts.accept_word("context"):
        context = _parse_qref(ts)
    ts.expect_word("def")
    ts.expect_symbol(":")
    name = ts.expect_ident("helper name").text
    ts.expect_symbol(":")
    type_run = capture_balanced(ts, frozenset({"="}), "helper result type")
    result_type = _expression(ts, type_run)
    ts.expect_symbol("=")
    body_run = capture_balanced(ts, frozenset({";"}), "helper body")
    body = _expression(ts, body_run)
    ts.expect_symbol(";")
    return Helper(name, result_type, body, context)


def _parse_rule(ts: TokenStream) -> tuple[Rule, Token, Token | None]:
    lazy = ts.accept_word("lazy")
    ts.expect_word("rule")
    name_tok = ts.expect_ident("rule name")
    parent_tok = None
    if ts.accept_word("extends"):
        parent_tok = ts.expect_ident("parent rule name")
    ts.expect_symbol("{")

    ts.expect_word("from")
    source_var = ts.expect_ident("source variable name").text
    ts.expect_symbol(":")
    source_concept = _parse_qref(ts)
    guard = None
    if ts.accept_symbol("("):
        run = capture_balanced(ts, frozenset({")"}), "guard expression")
        guard = _expression(ts, run)
        ts.expect_symbol(")")

    ts.expect_word("to")
    targets = [_parse_target(ts)]
    while ts.accept_symbol(","):
        targets.append(_parse_target(ts))
    ts.expect_symbol("}")

    rule = Rule(
        name_tok.text,
        source_var,
        source_concept,
        tuple(targets),
        guard,
        lazy,
        parent_tok.text if parent_tok is not None else None,
    )
    return rule, name_tok, parent_tok


def _parse_target(ts: TokenStream) -> TargetPattern:
    var = ts.expect_ident("target variable name").text
    ts.expect_symbol(":")
    concept = _parse_qref(ts)
    ts.expect_symbol("(")
    bindings: list[Binding] = []
    if not ts.at_symbol(")"):
        while True:
            feature = ts.expect_ident("feature name").text
            ts.expect_symbol("<-")
            run = capture_balanced(ts, frozenset({",", ")"}), "binding expression")
            bindings.append(Binding(feature, _expression(ts, run)))
            if not ts.accept_symbol(","):
                break
    ts.expect_symbol(")")
    return TargetPattern(var, concept, tuple(bindings))


def _parse_qref(ts: TokenStream) -> ConceptRef:
    mm_tok = ts.expect_ident("metamodel name")
    ts.expect_symbol("!")
    name_tok = ts.expect_ident("concept name")
    return ConceptRef(mm_tok.text, name_tok.text, mm_tok.line, mm_tok.column)


def _expression(ts: TokenStream, run: list[Token]) -> Expression:
    raw = ts.slice(run[0], run[-1])
    refs = []
    for a, b, c in zip(run, run[1:], run[2:]):
        if (
            a.kind is TokenKind.IDENT
            and b.kind is TokenKind.SYMBOL
            and b.text == "!"
            and c.kind is TokenKind.IDENT
        ):
            refs.append(ConceptRef(a.text, c.text, a.line, a.column))
    return Expression(raw, tuple(refs))


def referenced_concepts(
    expr: Expression, mm: Metamodel
) -> tuple[frozenset[str], frozenset[str]]:
    """Split an expression's refs into resolved names and unknown refs.

    Returns (known concept names in mm, unresolved qualified names).
    A ref resolves only when its qualifier equals the metamodel name and
    the concept exists there; there is no fuzzy or unqualified matching.
    """
    known: set[str] = set()
    unknown: set[str] = set()
    for ref in expr.refs:
        if ref.metamodel == mm.name and ref.name in mm.concept_names:
            known.add(ref.name)
        else:
            unknown.add(ref.qualified)
    return frozenset(known), frozenset(unknown)
