"""In-memory Solidity syntax tree: node kinds, field schemas, editing, equality.

Every node is a uniform kind-tagged record (:class:`AstNode`) rather than one
class per syntactic category.  The per-kind field schema lives in
:data:`KIND_FIELDS` and the child-count rules in :data:`ARITY`; together they
double as the reference documentation for what each kind stores.

Trees have value semantics: operations that transform a unit work on a copy
and hand back fresh values, nothing is shared behind the caller's back.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional

from .errors import (
    ArityError,
    FieldTypeError,
    IdCollisionError,
    UnknownFieldError,
)


class NodeKind(str, Enum):
    """Closed set of supported Solidity syntactic categories.

    Ingesting a document that names a kind outside this set is an error,
    never a silent skip.
    """

    SOURCE_UNIT = "SourceUnit"
    PRAGMA_DIRECTIVE = "PragmaDirective"
    IMPORT_DIRECTIVE = "ImportDirective"
    CONTRACT_DEFINITION = "ContractDefinition"
    STRUCT_DEFINITION = "StructDefinition"
    ENUM_DEFINITION = "EnumDefinition"
    ENUM_VALUE = "EnumValue"
    STATE_VARIABLE_DECLARATION = "StateVariableDeclaration"
    FUNCTION_DEFINITION = "FunctionDefinition"
    MODIFIER_DEFINITION = "ModifierDefinition"
    MODIFIER_INVOCATION = "ModifierInvocation"
    EVENT_DEFINITION = "EventDefinition"
    USING_FOR_DIRECTIVE = "UsingForDirective"
    PARAMETER_LIST = "ParameterList"
    PARAMETER = "Parameter"
    BLOCK = "Block"
    IF_STATEMENT = "IfStatement"
    WHILE_STATEMENT = "WhileStatement"
    DO_WHILE_STATEMENT = "DoWhileStatement"
    FOR_STATEMENT = "ForStatement"
    RETURN = "Return"
    BREAK = "Break"
    CONTINUE = "Continue"
    THROW = "Throw"
    EMIT_STATEMENT = "EmitStatement"
    EXPRESSION_STATEMENT = "ExpressionStatement"
    VARIABLE_DECLARATION_STATEMENT = "VariableDeclarationStatement"
    INLINE_ASSEMBLY = "InlineAssembly"
    ASSIGNMENT = "Assignment"
    BINARY_OPERATION = "BinaryOperation"
    UNARY_OPERATION = "UnaryOperation"
    CONDITIONAL = "Conditional"
    TUPLE_EXPRESSION = "TupleExpression"
    INDEX_ACCESS = "IndexAccess"
    MEMBER_ACCESS = "MemberAccess"
    FUNCTION_CALL = "FunctionCall"
    NEW_EXPRESSION = "NewExpression"
    IDENTIFIER = "Identifier"
    ELEMENTARY_TYPE_NAME = "ElementaryTypeName"
    USER_DEFINED_TYPE_NAME = "UserDefinedTypeName"
    FUNCTION_TYPE_NAME = "FunctionTypeName"
    MAPPING_TYPE_NAME = "MappingTypeName"
    ARRAY_TYPE_NAME = "ArrayTypeName"
    LITERAL = "Literal"
    PLACEHOLDER_STATEMENT = "PlaceholderStatement"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


K = NodeKind

#: Kinds that occur in statement position inside a function body.
STATEMENT_KINDS = frozenset(
    {
        K.BLOCK,
        K.IF_STATEMENT,
        K.WHILE_STATEMENT,
        K.DO_WHILE_STATEMENT,
        K.FOR_STATEMENT,
        K.RETURN,
        K.BREAK,
        K.CONTINUE,
        K.THROW,
        K.EMIT_STATEMENT,
        K.EXPRESSION_STATEMENT,
        K.VARIABLE_DECLARATION_STATEMENT,
        K.INLINE_ASSEMBLY,
        K.PLACEHOLDER_STATEMENT,
    }
)

EXPRESSION_KINDS = frozenset(
    {
        K.ASSIGNMENT,
        K.BINARY_OPERATION,
        K.UNARY_OPERATION,
        K.CONDITIONAL,
        K.TUPLE_EXPRESSION,
        K.INDEX_ACCESS,
        K.MEMBER_ACCESS,
        K.FUNCTION_CALL,
        K.NEW_EXPRESSION,
        K.IDENTIFIER,
        K.LITERAL,
        K.ELEMENTARY_TYPE_NAME,
    }
)

TYPE_NAME_KINDS = frozenset(
    {
        K.ELEMENTARY_TYPE_NAME,
        K.USER_DEFINED_TYPE_NAME,
        K.FUNCTION_TYPE_NAME,
        K.MAPPING_TYPE_NAME,
        K.ARRAY_TYPE_NAME,
    }
)

LOOP_KINDS = frozenset({K.WHILE_STATEMENT, K.DO_WHILE_STATEMENT, K.FOR_STATEMENT})

#: Per-kind schema of named scalar fields.  All fields are optional storage;
#: get/set reject names outside the kind's row.
KIND_FIELDS: dict[NodeKind, dict[str, type]] = {
    K.SOURCE_UNIT: {"path": str},
    K.PRAGMA_DIRECTIVE: {"text": str},
    K.IMPORT_DIRECTIVE: {"file": str, "unit_alias": str, "symbol_aliases": str},
    K.CONTRACT_DEFINITION: {"name": str, "contract_kind": str},
    K.STRUCT_DEFINITION: {"name": str},
    K.ENUM_DEFINITION: {"name": str},
    K.ENUM_VALUE: {"name": str},
    K.STATE_VARIABLE_DECLARATION: {
        "name": str,
        "visibility": str,
        "constant": bool,
    },
    K.FUNCTION_DEFINITION: {
        "name": str,
        "visibility": str,
        "state_mutability": str,
        "is_constructor": bool,
    },
    K.MODIFIER_DEFINITION: {"name": str},
    K.MODIFIER_INVOCATION: {},
    K.EVENT_DEFINITION: {"name": str, "anonymous": bool},
    K.USING_FOR_DIRECTIVE: {"wildcard": bool},
    K.PARAMETER_LIST: {},
    K.PARAMETER: {"name": str, "storage_location": str, "indexed": bool},
    K.BLOCK: {},
    K.IF_STATEMENT: {"instrumented": bool},
    K.WHILE_STATEMENT: {},
    K.DO_WHILE_STATEMENT: {},
    K.FOR_STATEMENT: {
        "has_init": bool,
        "has_condition": bool,
        "has_loop_expression": bool,
    },
    K.RETURN: {},
    K.BREAK: {},
    K.CONTINUE: {},
    K.THROW: {},
    K.EMIT_STATEMENT: {},
    K.EXPRESSION_STATEMENT: {"instrumented": bool},
    K.VARIABLE_DECLARATION_STATEMENT: {},
    K.INLINE_ASSEMBLY: {"operations": str},
    K.ASSIGNMENT: {"operator": str},
    K.BINARY_OPERATION: {"operator": str},
    K.UNARY_OPERATION: {"operator": str, "prefix": bool},
    K.CONDITIONAL: {},
    K.TUPLE_EXPRESSION: {"is_inline_array": bool},
    K.INDEX_ACCESS: {},
    K.MEMBER_ACCESS: {"member_name": str, "referenced_declaration": int},
    K.FUNCTION_CALL: {"call_kind": str, "argument_names": str},
    K.NEW_EXPRESSION: {},
    K.IDENTIFIER: {"name": str, "referenced_declaration": int},
    K.ELEMENTARY_TYPE_NAME: {"name": str, "signedness": str},
    K.USER_DEFINED_TYPE_NAME: {"name": str, "referenced_declaration": int},
    K.FUNCTION_TYPE_NAME: {"visibility": str, "state_mutability": str},
    K.MAPPING_TYPE_NAME: {},
    K.ARRAY_TYPE_NAME: {},
    K.LITERAL: {"kind": str, "value": str, "subdenomination": str},
    K.PLACEHOLDER_STATEMENT: {},
}

#: Fields that hold node ids.  They are bookkeeping, not syntax, so they are
#: excluded from structural equality and from diff reports: a consistently
#: renumbered tree must compare equal to the original.
ID_VALUED_FIELDS = frozenset({"referenced_declaration"})

#: Child count bounds per kind (min, max); None means unbounded.
ARITY: dict[NodeKind, tuple[int, Optional[int]]] = {
    K.SOURCE_UNIT: (0, None),
    K.PRAGMA_DIRECTIVE: (0, 0),
    K.IMPORT_DIRECTIVE: (0, 0),
    K.CONTRACT_DEFINITION: (0, None),
    K.STRUCT_DEFINITION: (0, None),
    K.ENUM_DEFINITION: (0, None),
    K.ENUM_VALUE: (0, 0),
    K.STATE_VARIABLE_DECLARATION: (1, 2),
    K.FUNCTION_DEFINITION: (2, None),
    K.MODIFIER_DEFINITION: (2, 2),
    K.MODIFIER_INVOCATION: (1, None),
    K.EVENT_DEFINITION: (1, 1),
    K.USING_FOR_DIRECTIVE: (1, 2),
    K.PARAMETER_LIST: (0, None),
    K.PARAMETER: (0, 1),
    K.BLOCK: (0, None),
    K.IF_STATEMENT: (2, 3),
    K.WHILE_STATEMENT: (2, 2),
    K.DO_WHILE_STATEMENT: (2, 2),
    K.FOR_STATEMENT: (1, 4),
    K.RETURN: (0, 1),
    K.BREAK: (0, 0),
    K.CONTINUE: (0, 0),
    K.THROW: (0, 0),
    K.EMIT_STATEMENT: (1, 1),
    K.EXPRESSION_STATEMENT: (1, 1),
    K.VARIABLE_DECLARATION_STATEMENT: (1, None),
    K.INLINE_ASSEMBLY: (0, 0),
    K.ASSIGNMENT: (2, 2),
    K.BINARY_OPERATION: (2, 2),
    K.UNARY_OPERATION: (1, 1),
    K.CONDITIONAL: (3, 3),
    K.TUPLE_EXPRESSION: (0, None),
    K.INDEX_ACCESS: (1, 2),
    K.MEMBER_ACCESS: (1, 1),
    K.FUNCTION_CALL: (1, None),
    K.NEW_EXPRESSION: (1, 1),
    K.IDENTIFIER: (0, 0),
    K.ELEMENTARY_TYPE_NAME: (0, 0),
    K.USER_DEFINED_TYPE_NAME: (0, 0),
    K.FUNCTION_TYPE_NAME: (2, 2),
    K.MAPPING_TYPE_NAME: (2, 2),
    K.ARRAY_TYPE_NAME: (1, 2),
    K.LITERAL: (0, 0),
    K.PLACEHOLDER_STATEMENT: (0, 0),
}


def check_field(kind: NodeKind, name: str, value: Any) -> None:
    """Reject a field assignment that the kind's schema does not allow."""
    schema = KIND_FIELDS[kind]
    if name not in schema:
        raise UnknownFieldError(kind.value, name)
    expected = schema[name]
    # bool is a subclass of int; keep the two apart anyway.
    if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
        raise FieldTypeError(
            f"field {name!r} of {kind.value} expects "
            f"{expected.__name__}, got {type(value).__name__}"
        )


@dataclass(frozen=True)
class Span:
    """Source location: byte offset, length, and source file index."""

    offset: int
    length: int
    file: int = 0

    def __str__(self) -> str:
        return f"{self.offset}:{self.length}:{self.file}"

    @classmethod
    def parse(cls, text: str) -> "Span":
        offset, length, file = (int(part) for part in text.split(":"))
        return cls(offset, length, file)


@dataclass
class AstNode:
    """One syntax tree node: id, kind, named scalar fields, ordered children.

    The span is absent on synthesized nodes.  Fields live in a plain dict
    checked against :data:`KIND_FIELDS` by :meth:`get` and :meth:`set`.
    """

    id: int
    kind: NodeKind
    attributes: dict[str, Any] = field(default_factory=dict)
    children: list["AstNode"] = field(default_factory=list)
    span: Optional[Span] = None

    def __post_init__(self) -> None:
        for name, value in self.attributes.items():
            check_field(self.kind, name, value)

    # -- field access -------------------------------------------------

    def get(self, name: str, default: Any = None) -> Any:
        """Return the stored field value, or ``default`` when unset."""
        schema = KIND_FIELDS[self.kind]
        if name not in schema:
            raise UnknownFieldError(self.kind.value, name)
        return self.attributes.get(name, default)

    def set(self, name: str, value: Any) -> "AstNode":
        """Replace a field value in place; id, kind and children unchanged."""
        check_field(self.kind, name, value)
        self.attributes[name] = value
        return self

    @property
    def name(self) -> Optional[str]:
        return self.attributes.get("name")

    # -- structural editing -------------------------------------------

    def _check_index(self, index: int, *, insert: bool = False) -> None:
        limit = len(self.children) + (1 if insert else 0)
        if not 0 <= index < limit:
            raise IndexError(
                f"child index {index} out of range for {self.kind.value} "
                f"with {len(self.children)} children"
            )

    def add_child(self, node: "AstNode") -> "AstNode":
        self.children.append(node)
        return self

    def insert_child(self, index: int, node: "AstNode") -> "AstNode":
        """Insert before ``index``; ``insert_child(i + 1, n)`` inserts after."""
        self._check_index(index, insert=True)
        self.children.insert(index, node)
        return self

    def remove_child(self, index: int) -> "AstNode":
        self._check_index(index)
        del self.children[index]
        return self

    def replace_child(self, index: int, node: "AstNode") -> "AstNode":
        self._check_index(index)
        self.children[index] = node
        return self

    # -- iteration ----------------------------------------------------

    def walk(self) -> Iterator["AstNode"]:
        """Pre-order iterator over this subtree, self first."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def find_all(self, kind: NodeKind, name: Optional[str] = None) -> Iterator["AstNode"]:
        for node in self.walk():
            if node.kind is kind and (name is None or node.name == name):
                yield node

    def find(self, kind: NodeKind, name: Optional[str] = None) -> Optional["AstNode"]:
        """First descendant of the given kind (and name, when given), or None."""
        return next(self.find_all(kind, name), None)

    def clone(self) -> "AstNode":
        return copy.deepcopy(self)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<{self.kind.value}#{self.id}{label} [{len(self.children)}]>"


@dataclass
class SourceUnit:
    """One Solidity file's worth of declarations plus an id allocator."""

    root: AstNode
    solidity_version: Optional[str] = None
    origin: str = "synthetic"
    _next_id: int = field(default=0, repr=False)

    def __post_init__(self) -> None:
        top = max((node.id for node in self.root.walk()), default=-1)
        if self._next_id <= top:
            self._next_id = top + 1

    def nodes(self) -> Iterator[AstNode]:
        return self.root.walk()

    def node_by_id(self, node_id: int) -> Optional[AstNode]:
        for node in self.root.walk():
            if node.id == node_id:
                return node
        return None

    def fresh_id(self) -> int:
        """Allocate an id strictly greater than any id seen so far."""
        value = self._next_id
        self._next_id += 1
        return value

    def ids(self) -> list[int]:
        return [node.id for node in self.root.walk()]

    def clone(self) -> "SourceUnit":
        return SourceUnit(
            root=self.root.clone(),
            solidity_version=self.solidity_version,
            origin=self.origin,
            _next_id=self._next_id,
        )


# -- structural equality ----------------------------------------------


def comparable_fields(node: AstNode) -> dict[str, Any]:
    return {
        key: value
        for key, value in node.attributes.items()
        if key not in ID_VALUED_FIELDS and value is not None
    }


def structurally_equal(a: AstNode | SourceUnit, b: AstNode | SourceUnit) -> bool:
    """True iff kinds, fields and child sequences match recursively.

    Node ids, spans and id-valued fields are excluded, so a consistently
    renumbered copy compares equal.
    """
    if isinstance(a, SourceUnit):
        a = a.root
    if isinstance(b, SourceUnit):
        b = b.root
    if a.kind is not b.kind:
        return False
    if comparable_fields(a) != comparable_fields(b):
        return False
    if len(a.children) != len(b.children):
        return False
    return all(
        structurally_equal(ca, cb) for ca, cb in zip(a.children, b.children)
    )


# -- arity ------------------------------------------------------------


def arity_errors(node: AstNode) -> list[str]:
    """Rule violations for one node (not recursive)."""
    low, high = ARITY[node.kind]
    count = len(node.children)
    problems: list[str] = []
    if count < low or (high is not None and count > high):
        bound = f"{low}" if high == low else f"{low}..{'*' if high is None else high}"
        problems.append(
            f"{node.kind.value} (id {node.id}) has {count} children, expected {bound}"
        )
        return problems

    def child_kinds(expected: frozenset[NodeKind] | set[NodeKind], what: str) -> None:
        for child in node.children:
            if child.kind not in expected:
                problems.append(
                    f"{node.kind.value} (id {node.id}) holds a "
                    f"{child.kind.value} child; expected {what}"
                )

    if node.kind is K.SOURCE_UNIT:
        child_kinds(
            {K.PRAGMA_DIRECTIVE, K.IMPORT_DIRECTIVE, K.CONTRACT_DEFINITION},
            "top-level declarations",
        )
    elif node.kind is K.CONTRACT_DEFINITION:
        members = {
            K.STATE_VARIABLE_DECLARATION,
            K.FUNCTION_DEFINITION,
            K.MODIFIER_DEFINITION,
            K.EVENT_DEFINITION,
            K.STRUCT_DEFINITION,
            K.ENUM_DEFINITION,
            K.USING_FOR_DIRECTIVE,
        }
        in_members = False
        for child in node.children:
            if child.kind is K.USER_DEFINED_TYPE_NAME and not in_members:
                continue
            in_members = True
            if child.kind not in members:
                problems.append(
                    f"ContractDefinition (id {node.id}) holds a "
                    f"{child.kind.value} child; expected contract members"
                )
    elif node.kind is K.STRUCT_DEFINITION:
        child_kinds({K.PARAMETER}, "member declarations")
    elif node.kind is K.ENUM_DEFINITION:
        child_kinds({K.ENUM_VALUE}, "enum values")
    elif node.kind is K.PARAMETER_LIST:
        child_kinds({K.PARAMETER}, "parameters")
    elif node.kind is K.FUNCTION_DEFINITION:
        if (
            node.children[0].kind is not K.PARAMETER_LIST
            or node.children[1].kind is not K.PARAMETER_LIST
        ):
            problems.append(
                f"FunctionDefinition (id {node.id}) must start with its "
                "parameter and return lists"
            )
        body_seen = False
        for child in node.children[2:]:
            if child.kind is K.MODIFIER_INVOCATION:
                if body_seen:
                    problems.append(
                        f"FunctionDefinition (id {node.id}) has a modifier "
                        "after its body"
                    )
            elif child.kind is K.BLOCK:
                if body_seen:
                    problems.append(
                        f"FunctionDefinition (id {node.id}) has two bodies"
                    )
                body_seen = True
            else:
                problems.append(
                    f"FunctionDefinition (id {node.id}) holds a "
                    f"{child.kind.value} child"
                )
    elif node.kind is K.MODIFIER_DEFINITION:
        if (
            node.children[0].kind is not K.PARAMETER_LIST
            or node.children[1].kind is not K.BLOCK
        ):
            problems.append(
                f"ModifierDefinition (id {node.id}) must hold a parameter "
                "list and a body"
            )
    elif node.kind is K.MODIFIER_INVOCATION:
        if node.children[0].kind is not K.IDENTIFIER:
            problems.append(
                f"ModifierInvocation (id {node.id}) must start with its name"
            )
    elif node.kind is K.EVENT_DEFINITION:
        child_kinds({K.PARAMETER_LIST}, "a parameter list")
    elif node.kind is K.USING_FOR_DIRECTIVE:
        if node.children[0].kind is not K.USER_DEFINED_TYPE_NAME:
            problems.append(
                f"UsingForDirective (id {node.id}) must name a library first"
            )
    elif node.kind is K.FUNCTION_TYPE_NAME:
        child_kinds({K.PARAMETER_LIST}, "parameter lists")
    elif node.kind is K.VARIABLE_DECLARATION_STATEMENT:
        declared = list(
            itertools.takewhile(lambda c: c.kind is K.PARAMETER, node.children)
        )
        rest = node.children[len(declared) :]
        if not declared:
            problems.append(
                f"VariableDeclarationStatement (id {node.id}) declares nothing"
            )
        elif len(rest) > 1 or any(c.kind is K.PARAMETER for c in rest):
            problems.append(
                f"VariableDeclarationStatement (id {node.id}) must be "
                "declarations followed by at most one initial value"
            )
    elif node.kind is K.FOR_STATEMENT:
        flags = sum(
            bool(node.attributes.get(flag))
            for flag in ("has_init", "has_condition", "has_loop_expression")
        )
        if len(node.children) != flags + 1:
            problems.append(
                f"ForStatement (id {node.id}) has {len(node.children)} "
                f"children but its header flags promise {flags + 1}"
            )
    return problems


def tree_arity_errors(root: AstNode) -> list[str]:
    problems: list[str] = []
    for node in root.walk():
        problems.extend(arity_errors(node))
    return problems


def check_arity(root: AstNode) -> None:
    """Raise :class:`ArityError` if any node in the subtree breaks its rule."""
    problems = tree_arity_errors(root)
    if problems:
        raise ArityError("; ".join(problems))


# -- id management ----------------------------------------------------


def duplicate_ids(root: AstNode) -> list[int]:
    seen: set[int] = set()
    dupes: list[int] = []
    for node in root.walk():
        if node.id in seen and node.id not in dupes:
            dupes.append(node.id)
        seen.add(node.id)
    return dupes


def graft(unit: SourceUnit, parent: AstNode, index: int, subtree: AstNode) -> None:
    """Insert ``subtree`` under ``parent`` checking id disjointness first."""
    existing = set(unit.ids())
    incoming = {node.id for node in subtree.walk()}
    clash = existing & incoming
    if clash:
        raise IdCollisionError(
            f"subtree ids {sorted(clash)} already present in unit"
        )
    parent.insert_child(index, subtree)
    unit._next_id = max(unit._next_id, max(incoming) + 1)


def clone_with_fresh_ids(unit: SourceUnit, node: AstNode) -> AstNode:
    """Deep-copy a subtree, giving every copied node an id fresh to ``unit``."""
    duplicate = node.clone()
    for copied in duplicate.walk():
        copied.id = unit.fresh_id()
        copied.span = None
    return duplicate
