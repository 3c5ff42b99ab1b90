"""Solidity AST toolkit: load compiler output, query, rewrite, regenerate.

Typical flow: :func:`load_ast` (or :func:`compile_source`) produces a
:class:`SourceUnit`; analyses and transforms consume it; :func:`emit_source`
turns any unit back into Solidity text.
"""

from .analyses import (
    FALSE_BRANCH,
    TRUE_BRANCH,
    BasicBlock,
    CallGraph,
    Cfg,
    CfgEdge,
    Difference,
    FunctionSummary,
    LoopCensus,
    ast_diff,
    build_call_graph,
    build_cfg,
    count_loops,
    find_function,
    graph_to_dot,
    list_functions,
)
from .codegen import FormatConfig, emit_node, emit_source
from .errors import (
    ArityError,
    CompilerError,
    CompilerNotFoundError,
    CompilerTimeoutError,
    FieldTypeError,
    HookError,
    IdCollisionError,
    MissingBodyError,
    NoInjectableFunctionError,
    ParseError,
    RenameCollisionWarning,
    SolsiftError,
    TargetNotFoundError,
    UnknownFieldError,
    UnknownKindError,
    ValidationError,
)
from .ingest import (
    CompilerConfig,
    Diagnostic,
    SOLC_ENV_VAR,
    compile_source,
    find_compiler,
    load_ast,
    load_ast_file,
    validate,
)
from .nodes import (
    AstNode,
    NodeKind,
    SourceUnit,
    Span,
    arity_errors,
    check_arity,
    clone_with_fresh_ids,
    comparable_fields,
    duplicate_ids,
    graft,
    structurally_equal,
    tree_arity_errors,
)
from .transforms import (
    GUARD_CLASSES,
    GuardSite,
    InstrumentationReport,
    SeedResult,
    VULNERABILITIES,
    insert_assertions,
    make_signed,
    rename,
    seed_fault,
)
from .traverse import Cursor, Hooks, TraversalOutcome, walk

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "AstNode",
    "BasicBlock",
    "CallGraph",
    "Cfg",
    "CfgEdge",
    "CompilerConfig",
    "CompilerError",
    "CompilerNotFoundError",
    "CompilerTimeoutError",
    "Cursor",
    "Diagnostic",
    "Difference",
    "FALSE_BRANCH",
    "FieldTypeError",
    "FormatConfig",
    "FunctionSummary",
    "GUARD_CLASSES",
    "GuardSite",
    "HookError",
    "Hooks",
    "IdCollisionError",
    "InstrumentationReport",
    "LoopCensus",
    "MissingBodyError",
    "NoInjectableFunctionError",
    "NodeKind",
    "ParseError",
    "RenameCollisionWarning",
    "SOLC_ENV_VAR",
    "SeedResult",
    "SolsiftError",
    "SourceUnit",
    "Span",
    "TRUE_BRANCH",
    "TargetNotFoundError",
    "TraversalOutcome",
    "UnknownFieldError",
    "UnknownKindError",
    "VULNERABILITIES",
    "ValidationError",
    "arity_errors",
    "ast_diff",
    "build_call_graph",
    "build_cfg",
    "check_arity",
    "clone_with_fresh_ids",
    "comparable_fields",
    "compile_source",
    "count_loops",
    "duplicate_ids",
    "emit_node",
    "emit_source",
    "find_compiler",
    "find_function",
    "graft",
    "graph_to_dot",
    "insert_assertions",
    "list_functions",
    "load_ast",
    "load_ast_file",
    "make_signed",
    "rename",
    "seed_fault",
    "structurally_equal",
    "tree_arity_errors",
    "validate",
    "walk",
]
