"""Test utilities: reference rule snippets, harnesses, and naive oracles.

The oracles in this module are deliberately independent re-derivations
of the library behavior, so the tests compare two implementations
instead of an implementation with itself.
"""
from __future__ import annotations

import random
from itertools import product

RULE_COPY_ALWAYS = """rule DataType {
	from
		s : CPPivot!DataType
	to
		t : CPPivot!DataType(
			name <- s.name
		)
}"""

RULE_COPY_GUARDED = """rule SetDomain {
	from
		s : CPPivot!SetDomain (
			not s.parent.oclIsTypeOf(CPPivot!IndexVariable)
		)
	to
		t : CPPivot!SetDomain (
			values <- s.values
		)
}"""

RULE_COPY_LAZY = """lazy rule lazyBoolVal extends lazyExpression {
	from
		b : CPPivot!BoolVal
	to
		t : CPPivot!BoolVal(
			value <- b.value
		)
}"""

RULE_MUTATION_GUARDED = """rule VariableExpr2IntVal {
	from
		s : CPPivot!VariableExpr(
			s.declaration.oclIsTypeOf(CPPivot!EnumLiteral)
		)
	to
		t : CPPivot!IntVal(
			value <- s.declaration.getEnumPos
		)
}"""

LAZY_PARENT_STUB = """lazy rule lazyExpression {
	from
		e : CPPivot!Expression
	to
		t : CPPivot!Expression()
}"""


def wrap_rules(body, name="probe", source_mm="CPPivot", target_mm=None):
    """Embed rule text into a minimal module skeleton."""
    target_mm = target_mm or source_mm
    return (
        f"module {name};\n"
        f"create OUT : {target_mm} from IN : {source_mm};\n\n"
        f"{body}\n"
    )


def random_metamodel_text(rng: random.Random, max_concepts: int = 12) -> str:
    """Random but always well-formed metamodel source named MM."""
    n = rng.randint(1, max_concepts)
    flags = [rng.random() < 0.2 for _ in range(n)]
    if all(flags):
        flags[rng.randrange(n)] = False
    lines = ["metamodel MM {"]
    for i in range(n):
        head = "abstract class" if flags[i] else "class"
        sup = f" extends C{rng.randrange(i)}" if i and rng.random() < 0.4 else ""
        feats = []
        for f in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                feats.append(f"attr a{f} : String;")
            else:
                mult = rng.choice(["", " [0..1]", " [0..*]", " [1..*]"])
                feats.append(f"ref r{f} : C{rng.randrange(n)}{mult};")
        body = " " + " ".join(feats) + " " if feats else ""
        lines.append(f"\t{head} C{i}{sup} {{{body}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _random_expr(rng: random.Random, names: list[str]) -> str:
    if rng.random() < 0.4:
        return f"s.f{rng.randrange(3)}"
    concept = rng.choice(names + ["Ghost"])
    return f"s.f.oclIsTypeOf(MM!{concept})"


def random_transformation_text(
    rng: random.Random, concept_names: list[str], max_rules: int = 8
) -> str:
    """Random module over metamodel MM; may reference unknown concepts."""
    parts = [f"module t{rng.randrange(10_000)};", "create OUT : MM from IN : MM;", ""]
    for h in range(rng.randint(0, 2)):
        ctx = ""
        if rng.random() < 0.5:
            ctx = f"context MM!{rng.choice(concept_names + ['Ghost'])} "
        parts.append(
            f"helper {ctx}def : h{h} : Boolean = {_random_expr(rng, concept_names)};"
        )
    for i in range(rng.randint(0, max_rules)):
        lazy = "lazy " if rng.random() < 0.15 else ""
        source = rng.choice(concept_names + ["Ghost"])
        guard = ""
        if rng.random() < 0.5:
            guard = f" ({_random_expr(rng, concept_names)})"
        targets = []
        for j in range(rng.randint(1, 3)):
            concept = rng.choice(concept_names + ["Ghost"])
            bindings = ", ".join(
                f"b{b} <- {_random_expr(rng, concept_names)}"
                for b in range(rng.randint(0, 2))
            )
            targets.append(f"t{j} : MM!{concept}({bindings})")
        parts.append(
            f"{lazy}rule r{i} {{ from s : MM!{source}{guard} to "
            + ", ".join(targets)
            + " }"
        )
    return "\n".join(parts) + "\n"


def naive_profiles(transformation, source_mm, target_mm):
    """Reference profile fold, written independently of the analyzer.

    Returns {concept: (copy_modes, mutation_modes, produced_as)} over the
    concrete source concepts, with mode names as plain strings.
    """
    source_names = {c.name for c in source_mm.concepts}
    target_names = {c.name for c in target_mm.concepts}
    concrete_src = [c.name for c in source_mm.concepts if not c.abstract]
    concrete_tgt = {c.name for c in target_mm.concepts if not c.abstract}
    result = {c: (set(), set(), []) for c in concrete_src}
    for rule in transformation.rules:
        src = rule.source_concept
        if src.metamodel != source_mm.name or src.name not in source_names:
            continue
        if any(
            t.concept.metamodel != target_mm.name or t.concept.name not in target_names
            for t in rule.targets
        ):
            continue
        if src.name not in result:
            continue
        if rule.lazy:
            mode = "lazily"
        elif rule.guard is not None:
            mode = "conditionally"
        else:
            mode = "always"
        targets = list(dict.fromkeys(t.concept.name for t in rule.targets))
        copy_modes, mutation_modes, produced = result[src.name]
        if targets[0] == src.name:
            copy_modes.add(mode)
            extras = targets[1:]
        else:
            mutation_modes.add(mode)
            extras = targets
        for name in extras:
            if name in concrete_tgt and name not in produced:
                produced.append(name)
    return result


def naive_propagate(concepts, report):
    """Reference image computation from the report profiles."""
    out = set()
    for c in concepts:
        profile = report.profiles.get(c)
        if profile is None:
            continue
        if profile.copy_modes:
            out.add(c)
        out.update(profile.produced_as)
    return frozenset(out)


def enumerate_best_plan_length(reports, initial, required, forbidden, max_len):
    """Shortest valid goal-reaching sequence length by brute force.

    Returns the length, or None when no sequence of length <= max_len
    works. Mirrors the planner contract: every step input must sit
    inside that step's refined domain, metamodels must chain, and the
    goal is judged on the final concept set.
    """
    initial = frozenset(initial)
    required = frozenset(required)
    forbidden = frozenset(forbidden)

    def goal(s):
        return required <= s and not (s & forbidden)

    if goal(initial):
        return 0
    for length in range(1, max_len + 1):
        for seq in product(reports, repeat=length):
            s = initial
            mm = None
            feasible = True
            for rep in seq:
                if mm is not None and rep.source_mm != mm:
                    feasible = False
                    break
                if not s <= rep.refined_domain:
                    feasible = False
                    break
                s = naive_propagate(s, rep)
                mm = rep.target_mm
            if feasible and goal(s):
                return length
    return None
