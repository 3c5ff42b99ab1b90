"""Load Solidity compiler AST output into :class:`~solsift.nodes.SourceUnit`.

The input format is the compiler's compact JSON AST (``solc
--ast-compact-json``), as produced by the 0.4/0.5 line.  Ingestion is strict:
an unrecognised node kind or a malformed document raises instead of being
skipped, so a loaded tree is always fully understood.

:func:`compile_source` shells out to a real compiler when one is available;
the executable is found through an explicit path, the ``SIF_SOLC``
environment variable, or ``solc`` on PATH, in that order.
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

from .errors import (
    CompilerError,
    CompilerNotFoundError,
    CompilerTimeoutError,
    ParseError,
    UnknownKindError,
    ValidationError,
)
from .nodes import (
    AstNode,
    NodeKind as K,
    SourceUnit,
    Span,
    duplicate_ids,
    tree_arity_errors,
)

SOLC_ENV_VAR = "SIF_SOLC"

_OPERATOR_HEADS = set("^><=~!")


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding.  ``error`` blocks loading, ``warning`` does not."""

    severity: str
    message: str
    node_id: Optional[int] = None

    def __str__(self) -> str:
        where = f" (node {self.node_id})" if self.node_id is not None else ""
        return f"{self.severity}: {self.message}{where}"


# -- JSON -> tree -------------------------------------------------------


def _span(raw: dict[str, Any]) -> Optional[Span]:
    src = raw.get("src")
    if not isinstance(src, str):
        return None
    try:
        return Span.parse(src)
    except ValueError:
        return None


def _node_id(raw: dict[str, Any]) -> int:
    node_id = raw.get("id")
    if not isinstance(node_id, int):
        raise ParseError(f"node of type {raw.get('nodeType')!r} lacks an integer id")
    return node_id


def _require(raw: dict[str, Any], name: str) -> dict[str, Any]:
    value = raw.get(name)
    if not isinstance(value, dict):
        raise ParseError(
            f"{raw.get('nodeType')} node {raw.get('id')} lacks required "
            f"field {name!r}"
        )
    return value


def _require_str(raw: dict[str, Any], name: str) -> str:
    value = raw.get(name)
    if not isinstance(value, str):
        raise ParseError(
            f"{raw.get('nodeType')} node {raw.get('id')} lacks required "
            f"field {name!r}"
        )
    return value


def _pragma_text(literals: list[str]) -> str:
    parts: list[str] = []
    previous = ""
    for token in literals:
        if not parts:
            parts.append(token)
        elif token[:1] in _OPERATOR_HEADS or previous[:1] not in _OPERATOR_HEADS:
            parts.append(" " + token)
        else:
            parts.append(token)
        previous = token
    return "".join(parts)


def _symbol_aliases(raw: Any) -> str:
    """Flatten import symbol aliases to ``name`` / ``name as alias`` text."""
    rendered: list[str] = []
    for entry in raw or []:
        if isinstance(entry, dict):
            foreign = entry.get("foreign")
            name = foreign.get("name") if isinstance(foreign, dict) else foreign
            local = entry.get("local")
        elif isinstance(entry, (list, tuple)) and entry:
            name = entry[0]
            local = entry[1] if len(entry) > 1 else None
        else:
            raise ParseError(f"unsupported import symbol alias shape: {entry!r}")
        if not isinstance(name, str):
            raise ParseError(f"unsupported import symbol alias shape: {entry!r}")
        rendered.append(f"{name} as {local}" if local else name)
    return ", ".join(rendered)


class _Ingester:
    """Single-document conversion state (pragma capture only)."""

    def __init__(self) -> None:
        self.solidity_version: Optional[str] = None

    # Each handler returns a fully built node for one raw JSON object.

    def convert(self, raw: Any) -> AstNode:
        if not isinstance(raw, dict):
            raise ParseError(f"expected a JSON object node, got {type(raw).__name__}")
        tag = raw.get("nodeType")
        if not isinstance(tag, str):
            raise ParseError("node without a nodeType tag")
        handler = self._handlers.get(tag)
        if handler is None:
            raise UnknownKindError(tag)
        return handler(self, raw)

    def _many(self, raw_list: Any) -> list[AstNode]:
        return [self.convert(item) for item in raw_list or []]

    def _opt(self, raw: dict[str, Any], name: str) -> Optional[AstNode]:
        value = raw.get(name)
        return self.convert(value) if isinstance(value, dict) else None

    def _make(
        self,
        raw: dict[str, Any],
        kind: K,
        fields: dict[str, Any] | None = None,
        children: list[AstNode] | None = None,
    ) -> AstNode:
        node = AstNode(id=_node_id(raw), kind=kind, span=_span(raw))
        for name, value in (fields or {}).items():
            if value is not None:
                node.set(name, value)
        node.children = children or []
        return node

    # -- directives ----------------------------------------------------

    def _source_unit(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.SOURCE_UNIT,
            {"path": raw.get("absolutePath")},
            self._many(raw.get("nodes")),
        )

    def _pragma(self, raw: dict[str, Any]) -> AstNode:
        literals = raw.get("literals")
        if not isinstance(literals, list) or not literals:
            raise ParseError(f"pragma node {raw.get('id')} has no literals")
        text = _pragma_text([str(item) for item in literals])
        if literals[0] == "solidity" and self.solidity_version is None:
            self.solidity_version = text[len("solidity") :].strip()
        return self._make(raw, K.PRAGMA_DIRECTIVE, {"text": text})

    def _import(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.IMPORT_DIRECTIVE,
            {
                "file": raw.get("file"),
                "unit_alias": raw.get("unitAlias") or None,
                "symbol_aliases": _symbol_aliases(raw.get("symbolAliases")) or None,
            },
        )

    # -- declarations ---------------------------------------------------

    def _contract(self, raw: dict[str, Any]) -> AstNode:
        bases: list[AstNode] = []
        for spec in raw.get("baseContracts") or []:
            if spec.get("nodeType") != "InheritanceSpecifier":
                raise ParseError(
                    f"unexpected base contract entry {spec.get('nodeType')!r}"
                )
            if spec.get("arguments"):
                raise ParseError(
                    "inheritance specifiers with constructor arguments are "
                    "not supported"
                )
            bases.append(self.convert(_require(spec, "baseName")))
        return self._make(
            raw,
            K.CONTRACT_DEFINITION,
            {
                "name": _require_str(raw, "name"),
                "contract_kind": raw.get("contractKind") or "contract",
            },
            bases + self._many(raw.get("nodes")),
        )

    def _struct(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw, K.STRUCT_DEFINITION, {"name": raw.get("name")},
            self._many(raw.get("members")),
        )

    def _enum(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw, K.ENUM_DEFINITION, {"name": raw.get("name")},
            self._many(raw.get("members")),
        )

    def _enum_value(self, raw: dict[str, Any]) -> AstNode:
        return self._make(raw, K.ENUM_VALUE, {"name": raw.get("name")})

    def _variable(self, raw: dict[str, Any]) -> AstNode:
        type_name = self._opt(raw, "typeName")
        if raw.get("stateVariable"):
            if type_name is None:
                raise ParseError(
                    f"state variable {raw.get('name')!r} has no type name"
                )
            children = [type_name]
            value = self._opt(raw, "value")
            if value is not None:
                children.append(value)
            return self._make(
                raw,
                K.STATE_VARIABLE_DECLARATION,
                {
                    "name": raw.get("name"),
                    "visibility": raw.get("visibility"),
                    "constant": bool(raw.get("constant")) or None,
                },
                children,
            )
        location = raw.get("storageLocation")
        return self._make(
            raw,
            K.PARAMETER,
            {
                "name": raw.get("name") or None,
                "storage_location": location if location not in (None, "default") else None,
                "indexed": True if raw.get("indexed") else None,
            },
            [type_name] if type_name is not None else [],
        )

    def _function(self, raw: dict[str, Any]) -> AstNode:
        mutability = raw.get("stateMutability")
        if mutability is None:
            if raw.get("payable"):
                mutability = "payable"
            elif raw.get("constant"):
                mutability = "view"
            else:
                mutability = "nonpayable"
        is_constructor = bool(raw.get("isConstructor")) or raw.get("kind") == "constructor"
        children = [
            self.convert(_require(raw, "parameters")),
            self.convert(_require(raw, "returnParameters")),
        ]
        children.extend(self._many(raw.get("modifiers")))
        body = self._opt(raw, "body")
        if body is not None:
            children.append(body)
        return self._make(
            raw,
            K.FUNCTION_DEFINITION,
            {
                "name": raw.get("name") or "",
                "visibility": raw.get("visibility"),
                "state_mutability": mutability,
                "is_constructor": is_constructor or None,
            },
            children,
        )

    def _modifier(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.MODIFIER_DEFINITION,
            {"name": raw.get("name")},
            [
                self.convert(_require(raw, "parameters")),
                self.convert(_require(raw, "body")),
            ],
        )

    def _modifier_invocation(self, raw: dict[str, Any]) -> AstNode:
        children = [self.convert(_require(raw, "modifierName"))]
        children.extend(self._many(raw.get("arguments")))
        return self._make(raw, K.MODIFIER_INVOCATION, {}, children)

    def _event(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.EVENT_DEFINITION,
            {
                "name": raw.get("name"),
                "anonymous": True if raw.get("anonymous") else None,
            },
            [self.convert(_require(raw, "parameters"))],
        )

    def _using_for(self, raw: dict[str, Any]) -> AstNode:
        children = [self.convert(_require(raw, "libraryName"))]
        type_name = self._opt(raw, "typeName")
        if type_name is not None:
            children.append(type_name)
        return self._make(
            raw,
            K.USING_FOR_DIRECTIVE,
            {"wildcard": True if type_name is None else None},
            children,
        )

    def _parameter_list(self, raw: dict[str, Any]) -> AstNode:
        return self._make(raw, K.PARAMETER_LIST, {}, self._many(raw.get("parameters")))

    # -- statements -------------------------------------------------------

    def _block(self, raw: dict[str, Any]) -> AstNode:
        return self._make(raw, K.BLOCK, {}, self._many(raw.get("statements")))

    def _if(self, raw: dict[str, Any]) -> AstNode:
        children = [
            self.convert(_require(raw, "condition")),
            self.convert(_require(raw, "trueBody")),
        ]
        false_body = self._opt(raw, "falseBody")
        if false_body is not None:
            children.append(false_body)
        return self._make(raw, K.IF_STATEMENT, {}, children)

    def _while(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.WHILE_STATEMENT,
            {},
            [self.convert(_require(raw, "condition")), self.convert(_require(raw, "body"))],
        )

    def _do_while(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.DO_WHILE_STATEMENT,
            {},
            [self.convert(_require(raw, "condition")), self.convert(_require(raw, "body"))],
        )

    def _for(self, raw: dict[str, Any]) -> AstNode:
        init = self._opt(raw, "initializationExpression")
        condition = self._opt(raw, "condition")
        loop_expression = self._opt(raw, "loopExpression")
        children = [part for part in (init, condition, loop_expression) if part]
        children.append(self.convert(_require(raw, "body")))
        return self._make(
            raw,
            K.FOR_STATEMENT,
            {
                "has_init": init is not None or None,
                "has_condition": condition is not None or None,
                "has_loop_expression": loop_expression is not None or None,
            },
            children,
        )

    def _return(self, raw: dict[str, Any]) -> AstNode:
        expression = self._opt(raw, "expression")
        return self._make(raw, K.RETURN, {}, [expression] if expression else [])

    def _emit(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw, K.EMIT_STATEMENT, {}, [self.convert(_require(raw, "eventCall"))]
        )

    def _expression_statement(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.EXPRESSION_STATEMENT,
            {},
            [self.convert(_require(raw, "expression"))],
        )

    def _variable_statement(self, raw: dict[str, Any]) -> AstNode:
        declarations = raw.get("declarations")
        if not isinstance(declarations, list) or not declarations:
            raise ParseError(
                f"declaration statement {raw.get('id')} declares nothing"
            )
        if any(item is None for item in declarations):
            raise ParseError(
                "tuple declarations with omitted components are not supported"
            )
        children = self._many(declarations)
        initial = self._opt(raw, "initialValue")
        if initial is not None:
            children.append(initial)
        return self._make(raw, K.VARIABLE_DECLARATION_STATEMENT, {}, children)

    def _inline_assembly(self, raw: dict[str, Any]) -> AstNode:
        operations = raw.get("operations")
        if not isinstance(operations, str):
            raise ParseError(
                f"inline assembly node {raw.get('id')} has no textual body"
            )
        return self._make(raw, K.INLINE_ASSEMBLY, {"operations": operations.strip()})

    # -- expressions ------------------------------------------------------

    def _assignment(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.ASSIGNMENT,
            {"operator": raw.get("operator")},
            [
                self.convert(_require(raw, "leftHandSide")),
                self.convert(_require(raw, "rightHandSide")),
            ],
        )

    def _binary(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.BINARY_OPERATION,
            {"operator": raw.get("operator")},
            [
                self.convert(_require(raw, "leftExpression")),
                self.convert(_require(raw, "rightExpression")),
            ],
        )

    def _unary(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.UNARY_OPERATION,
            {"operator": raw.get("operator"), "prefix": bool(raw.get("prefix"))},
            [self.convert(_require(raw, "subExpression"))],
        )

    def _conditional(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.CONDITIONAL,
            {},
            [
                self.convert(_require(raw, "condition")),
                self.convert(_require(raw, "trueExpression")),
                self.convert(_require(raw, "falseExpression")),
            ],
        )

    def _tuple(self, raw: dict[str, Any]) -> AstNode:
        components = raw.get("components") or []
        if any(item is None for item in components):
            raise ParseError("tuples with omitted components are not supported")
        return self._make(
            raw,
            K.TUPLE_EXPRESSION,
            {"is_inline_array": True if raw.get("isInlineArray") else None},
            self._many(components),
        )

    def _index(self, raw: dict[str, Any]) -> AstNode:
        children = [self.convert(_require(raw, "baseExpression"))]
        index = self._opt(raw, "indexExpression")
        if index is not None:
            children.append(index)
        return self._make(raw, K.INDEX_ACCESS, {}, children)

    def _member(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.MEMBER_ACCESS,
            {
                "member_name": raw.get("memberName"),
                "referenced_declaration": raw.get("referencedDeclaration"),
            },
            [self.convert(_require(raw, "expression"))],
        )

    def _call(self, raw: dict[str, Any]) -> AstNode:
        children = [self.convert(_require(raw, "expression"))]
        children.extend(self._many(raw.get("arguments")))
        names = [name for name in raw.get("names") or [] if name]
        return self._make(
            raw,
            K.FUNCTION_CALL,
            {
                "call_kind": raw.get("kind") or "functionCall",
                "argument_names": ", ".join(names) or None,
            },
            children,
        )

    def _new(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw, K.NEW_EXPRESSION, {}, [self.convert(_require(raw, "typeName"))]
        )

    def _identifier(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.IDENTIFIER,
            {
                "name": raw.get("name"),
                "referenced_declaration": raw.get("referencedDeclaration"),
            },
        )

    def _elementary_type(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.ELEMENTARY_TYPE_NAME,
            {"name": raw.get("name"), "signedness": _signedness(raw.get("name"))},
        )

    def _elementary_type_expression(self, raw: dict[str, Any]) -> AstNode:
        # Type used in expression position, e.g. a conversion callee.
        name = raw.get("typeName")
        if isinstance(name, dict):
            name = name.get("name")
        if not isinstance(name, str):
            raise ParseError(
                f"type expression node {raw.get('id')} has no resolvable name"
            )
        return self._make(
            raw,
            K.ELEMENTARY_TYPE_NAME,
            {"name": name, "signedness": _signedness(name)},
        )

    def _user_defined_type(self, raw: dict[str, Any]) -> AstNode:
        name = raw.get("name")
        if name is None:
            path = raw.get("pathNode")
            if isinstance(path, dict):
                name = path.get("name")
        return self._make(
            raw,
            K.USER_DEFINED_TYPE_NAME,
            {
                "name": name,
                "referenced_declaration": raw.get("referencedDeclaration"),
            },
        )

    def _function_type(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.FUNCTION_TYPE_NAME,
            {
                "visibility": raw.get("visibility"),
                "state_mutability": raw.get("stateMutability"),
            },
            [
                self.convert(_require(raw, "parameterTypes")),
                self.convert(_require(raw, "returnParameterTypes")),
            ],
        )

    def _mapping(self, raw: dict[str, Any]) -> AstNode:
        return self._make(
            raw,
            K.MAPPING_TYPE_NAME,
            {},
            [
                self.convert(_require(raw, "keyType")),
                self.convert(_require(raw, "valueType")),
            ],
        )

    def _array_type(self, raw: dict[str, Any]) -> AstNode:
        children = [self.convert(_require(raw, "baseType"))]
        length = self._opt(raw, "length")
        if length is not None:
            children.append(length)
        return self._make(raw, K.ARRAY_TYPE_NAME, {}, children)

    def _literal(self, raw: dict[str, Any]) -> AstNode:
        value = raw.get("value")
        if value is None:
            raise ParseError(
                f"literal node {raw.get('id')} carries no printable value"
            )
        return self._make(
            raw,
            K.LITERAL,
            {
                "kind": raw.get("kind"),
                "value": value,
                "subdenomination": raw.get("subdenomination"),
            },
        )

    _handlers: dict[str, Callable[["_Ingester", dict[str, Any]], AstNode]] = {}


def _signedness(type_name: Any) -> Optional[str]:
    if not isinstance(type_name, str):
        return None
    if type_name.startswith("uint"):
        return "unsigned"
    if type_name.startswith("int"):
        return "signed"
    return None


def _simple_handler(kind: K) -> Callable[[_Ingester, dict[str, Any]], AstNode]:
    def build(self: _Ingester, raw: dict[str, Any]) -> AstNode:
        return self._make(raw, kind)

    return build


_Ingester._handlers = {
    "SourceUnit": _Ingester._source_unit,
    "PragmaDirective": _Ingester._pragma,
    "ImportDirective": _Ingester._import,
    "ContractDefinition": _Ingester._contract,
    "StructDefinition": _Ingester._struct,
    "EnumDefinition": _Ingester._enum,
    "EnumValue": _Ingester._enum_value,
    "VariableDeclaration": _Ingester._variable,
    "FunctionDefinition": _Ingester._function,
    "ModifierDefinition": _Ingester._modifier,
    "ModifierInvocation": _Ingester._modifier_invocation,
    "EventDefinition": _Ingester._event,
    "UsingForDirective": _Ingester._using_for,
    "ParameterList": _Ingester._parameter_list,
    "Block": _Ingester._block,
    "IfStatement": _Ingester._if,
    "WhileStatement": _Ingester._while,
    "DoWhileStatement": _Ingester._do_while,
    "ForStatement": _Ingester._for,
    "Return": _Ingester._return,
    "Break": _simple_handler(K.BREAK),
    "Continue": _simple_handler(K.CONTINUE),
    "Throw": _simple_handler(K.THROW),
    "EmitStatement": _Ingester._emit,
    "ExpressionStatement": _Ingester._expression_statement,
    "VariableDeclarationStatement": _Ingester._variable_statement,
    "InlineAssembly": _Ingester._inline_assembly,
    "Assignment": _Ingester._assignment,
    "BinaryOperation": _Ingester._binary,
    "UnaryOperation": _Ingester._unary,
    "Conditional": _Ingester._conditional,
    "TupleExpression": _Ingester._tuple,
    "IndexAccess": _Ingester._index,
    "MemberAccess": _Ingester._member,
    "FunctionCall": _Ingester._call,
    "NewExpression": _Ingester._new,
    "Identifier": _Ingester._identifier,
    "ElementaryTypeName": _Ingester._elementary_type,
    "ElementaryTypeNameExpression": _Ingester._elementary_type_expression,
    "UserDefinedTypeName": _Ingester._user_defined_type,
    "FunctionTypeName": _Ingester._function_type,
    "Mapping": _Ingester._mapping,
    "ArrayTypeName": _Ingester._array_type,
    "Literal": _Ingester._literal,
    "PlaceholderStatement": _simple_handler(K.PLACEHOLDER_STATEMENT),
}


# -- public API ----------------------------------------------------------


def load_ast(text: str, origin: str = "<memory>") -> SourceUnit:
    """Parse one compact JSON AST document into a validated unit.

    Raises :class:`ParseError` for malformed JSON or unsupported structure,
    :class:`UnknownKindError` for a nodeType outside the supported set, and
    :class:`ValidationError` when the loaded tree breaks a structural rule.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {origin}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{origin}: top level must be a JSON object")
    if raw.get("nodeType") != "SourceUnit":
        raise ParseError(
            f"{origin}: document root is {raw.get('nodeType')!r}, "
            "expected SourceUnit"
        )
    ingester = _Ingester()
    root = ingester.convert(raw)
    unit = SourceUnit(
        root=root,
        solidity_version=ingester.solidity_version,
        origin=origin,
    )
    errors = [d for d in validate(unit) if d.severity == "error"]
    if errors:
        raise ValidationError(errors)
    return unit


def load_ast_file(path: str | Path) -> SourceUnit:
    path = Path(path)
    return load_ast(path.read_text(encoding="utf-8"), origin=str(path))


def validate(unit: SourceUnit) -> list[Diagnostic]:
    """Structural findings: id uniqueness, arity rules, reference integrity.

    Dangling declaration references are warnings: compiler builtins resolve
    to ids living outside the exported document.
    """
    findings: list[Diagnostic] = []
    if unit.root.kind is not K.SOURCE_UNIT:
        findings.append(
            Diagnostic("error", f"root node is {unit.root.kind.value}, not SourceUnit")
        )
    for node_id in duplicate_ids(unit.root):
        findings.append(Diagnostic("error", f"duplicate node id {node_id}"))
    for problem in tree_arity_errors(unit.root):
        findings.append(Diagnostic("error", problem))
    known = {node.id for node in unit.nodes()}
    for node in unit.nodes():
        target = node.attributes.get("referenced_declaration")
        if target is not None and target not in known:
            findings.append(
                Diagnostic(
                    "warning",
                    f"reference to declaration {target} outside this unit",
                    node.id,
                )
            )
    return findings


# -- external compiler ----------------------------------------------------


@dataclass(frozen=True)
class CompilerConfig:
    """How to reach the external Solidity compiler."""

    executable: Optional[str] = None
    extra_flags: tuple[str, ...] = ()
    timeout: float = 30.0

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("compiler timeout must be positive")


def find_compiler(config: CompilerConfig | str | None = None) -> str:
    """Resolve the compiler executable; raise when nothing is configured."""
    if isinstance(config, str):
        config = CompilerConfig(executable=config)
    config = config or CompilerConfig()
    for candidate in (config.executable, os.environ.get(SOLC_ENV_VAR)):
        if candidate:
            return candidate
    found = shutil.which("solc")
    if found:
        return found
    raise CompilerNotFoundError(
        f"no Solidity compiler found; set {SOLC_ENV_VAR} or pass an explicit path"
    )


def _extract_ast_json(stdout: str) -> str:
    """Strip the compiler's section framing and return the JSON document."""
    lines = stdout.splitlines()
    for index, line in enumerate(lines):
        if line.startswith("=======") and index + 1 < len(lines):
            body: list[str] = []
            for rest in lines[index + 1 :]:
                if rest.startswith("======="):
                    break
                body.append(rest)
            text = "\n".join(body).strip()
            if text:
                return text
    return stdout.strip()


def compile_source(path: str | Path, config: CompilerConfig | None = None) -> SourceUnit:
    """Run the external compiler on a ``.sol`` file and load the result."""
    config = config or CompilerConfig()
    executable = find_compiler(config)
    command = [executable, "--ast-compact-json", *config.extra_flags, str(path)]
    try:
        result = subprocess.run(
            command,
            capture_output=True,
            text=True,
            timeout=config.timeout,
        )
    except FileNotFoundError as exc:
        raise CompilerNotFoundError(f"compiler executable not found: {executable}") from exc
    except subprocess.TimeoutExpired as exc:
        raise CompilerTimeoutError(
            f"compiler timed out after {config.timeout:.0f}s on {path}"
        ) from exc
    if result.returncode != 0:
        raise CompilerError(
            f"compiler exited with status {result.returncode} on {path}",
            stderr=result.stderr,
        )
    return load_ast(_extract_ast_json(result.stdout), origin=str(path))
