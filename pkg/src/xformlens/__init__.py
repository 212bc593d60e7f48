"""Static analysis and chain planning for rule-based model transformations."""

from .analyzer import (
    AnalysisReport,
    ConceptProfile,
    FixedPointVerdict,
    Lint,
    MetamodelMismatchError,
    Mode,
    RuleClassification,
    analyze,
    classify_rule,
    detect_fixed_point,
    lint,
)
from .chain import (
    ChainCompatibilityError,
    ChainPlan,
    ChainStep,
    check_chain,
    plan_chain,
    propagate,
)
from .fixtures import FIXTURE_NAMES, corpus_dir, fixture_corpus
from .lexer import ParseError
from .metamodel import (
    Concept,
    Feature,
    Metamodel,
    concrete_concepts,
    parse_metamodel,
    pretty_print,
)
from .report import (
    ProfileGroup,
    Table,
    ignored_table,
    profile_groups,
    referenced_table,
    render,
    report_table,
    report_to_json,
    table_from_json,
)
from .transformation import (
    Binding,
    ConceptRef,
    Expression,
    Helper,
    Rule,
    TargetPattern,
    Transformation,
    parse_transformation,
    referenced_concepts,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Binding",
    "ChainCompatibilityError",
    "ChainPlan",
    "ChainStep",
    "Concept",
    "ConceptProfile",
    "ConceptRef",
    "Expression",
    "FIXTURE_NAMES",
    "Feature",
    "FixedPointVerdict",
    "Helper",
    "Lint",
    "Metamodel",
    "MetamodelMismatchError",
    "Mode",
    "ParseError",
    "ProfileGroup",
    "Rule",
    "RuleClassification",
    "Table",
    "TargetPattern",
    "Transformation",
    "analyze",
    "check_chain",
    "classify_rule",
    "concrete_concepts",
    "corpus_dir",
    "detect_fixed_point",
    "fixture_corpus",
    "ignored_table",
    "lint",
    "parse_metamodel",
    "parse_transformation",
    "plan_chain",
    "pretty_print",
    "profile_groups",
    "propagate",
    "referenced_concepts",
    "referenced_table",
    "render",
    "report_table",
    "report_to_json",
    "table_from_json",
]
