"""Metamodel dialect (.cmm): parsing, validation, and pretty-printing.

A metamodel is a named set of concepts (classes) with optional abstractness
and multiple inheritance. Attributes and references are parsed and carried
along, but only names, abstractness, and inheritance matter to analysis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .lexer import ParseError, Token, TokenStream, capture_balanced


@dataclass(frozen=True)
class Feature:
    kind: str  # "attr" | "ref"
    name: str
    type_name: str
    multiplicity: str | None = None


@dataclass(frozen=True)
class Concept:
    name: str
    abstract: bool = False
    supertypes: tuple[str, ...] = ()
    features: tuple[Feature, ...] = ()


@dataclass(frozen=True)
class Metamodel:
    name: str
    concepts: tuple[Concept, ...] = ()
    source_path: str | None = field(default=None, compare=False)

    @cached_property
    def concept_names(self) -> frozenset[str]:
        return frozenset(c.name for c in self.concepts)

    def concept(self, name: str) -> Concept:
        for c in self.concepts:
            if c.name == name:
                return c
        raise KeyError(name)


def parse_metamodel(source_text: str, *, path: str | None = None) -> Metamodel:
    """Parse and validate a metamodel file.

    Raises ParseError (with line and column) on syntax errors, duplicate
    concept names, unknown supertypes, and inheritance cycles.
    """
    ts = TokenStream(source_text, path)
    ts.expect_word("metamodel")
    name = ts.expect_ident("metamodel name").text
    ts.expect_symbol("{")

    concepts: list[Concept] = []
    decl_tokens: dict[str, Token] = {}
    super_tokens: list[tuple[str, Token]] = []
    while not ts.accept_symbol("}"):
        abstract = ts.accept_word("abstract")
        ts.expect_word("class")
        name_tok = ts.expect_ident("class name")
        if name_tok.text in decl_tokens:
            raise ts.error(f"duplicate concept name '{name_tok.text}'", name_tok)
        decl_tokens[name_tok.text] = name_tok

        supertypes: list[str] = []
        if ts.accept_word("extends"):
            while True:
                st = ts.expect_ident("supertype name")
                supertypes.append(st.text)
                super_tokens.append((name_tok.text, st))
                if not ts.accept_symbol(","):
                    break

        ts.expect_symbol("{")
        features: list[Feature] = []
        while not ts.accept_symbol("}"):
            features.append(_parse_feature(ts))
        concepts.append(
            Concept(name_tok.text, abstract, tuple(supertypes), tuple(features))
        )
    ts.expect_eof()

    _validate_inheritance(ts, concepts, decl_tokens, super_tokens)
    return Metamodel(name, tuple(concepts), source_path=path)


def _parse_feature(ts: TokenStream) -> Feature:
    tok = ts.peek()
    if not (ts.at_word("attr") or ts.at_word("ref")):
        raise ts.error(f"expected 'attr', 'ref', or '}}', found {tok.describe()}")
    kind = ts.advance().text
    fname = ts.expect_ident("feature name").text
    ts.expect_symbol(":")
    ftype = ts.expect_ident("feature type").text
    multiplicity = None
    if ts.accept_symbol("["):
        run = capture_balanced(ts, frozenset("]"), "multiplicity")
        multiplicity = ts.slice(run[0], run[-1])
        ts.expect_symbol("]")
    ts.expect_symbol(";")
    return Feature(kind, fname, ftype, multiplicity)


def _validate_inheritance(
    ts: TokenStream,
    concepts: list[Concept],
    decl_tokens: dict[str, Token],
    super_tokens: list[tuple[str, Token]],
) -> None:
    known = {c.name for c in concepts}
    for owner, st in super_tokens:
        if st.text not in known:
            raise ts.error(
                f"unknown supertype '{st.text}' of concept '{owner}'", st
            )

    # Three-color DFS over the extends edges; a back edge is a cycle.
    supers = {c.name: c.supertypes for c in concepts}
    color: dict[str, int] = {}
    stack_path: list[str] = []

    def visit(node: str) -> None:
        color[node] = 1
        stack_path.append(node)
        for parent in supers[node]:
            state = color.get(parent, 0)
            if state == 1:
                cycle = stack_path[stack_path.index(parent) :] + [parent]
                raise ts.error(
                    "inheritance cycle: " + " -> ".join(cycle),
                    decl_tokens[parent],
                )
            if state == 0:
                visit(parent)
        stack_path.pop()
        color[node] = 2

    for c in concepts:
        if color.get(c.name, 0) == 0:
            visit(c.name)


def concrete_concepts(mm: Metamodel) -> tuple[str, ...]:
    """Names of non-abstract concepts, in declaration order."""
    return tuple(c.name for c in mm.concepts if not c.abstract)


def pretty_print(mm: Metamodel) -> str:
    """Render a metamodel back to canonical source text.

    Re-parsing the output yields a structurally identical Metamodel.
    """
    lines = [f"metamodel {mm.name} {{"]
    for c in mm.concepts:
        head = "abstract class" if c.abstract else "class"
        head = f"{head} {c.name}"
        if c.supertypes:
            head += " extends " + ", ".join(c.supertypes)
        if not c.features:
            lines.append(f"  {head} {{}}")
            continue
        lines.append(f"  {head} {{")
        for f in c.features:
            decl = f"    {f.kind} {f.name} : {f.type_name}"
            if f.multiplicity is not None:
                decl += f" [{f.multiplicity}]"
            lines.append(decl + ";")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
