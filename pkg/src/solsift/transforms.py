"""Tree rewrites: renaming, fault seeding, arithmetic guards, sign flips.

Every transform takes a unit and returns a new one; inputs are never
modified.  Rewrites that touch many nodes ride on the traversal API so each
edit goes through the same staging and validation path as user hooks.
"""

from __future__ import annotations

import copy
import re
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .analyses import find_function, qualified_name
from .codegen import emit_node
from .errors import (
    MissingBodyError,
    NoInjectableFunctionError,
    RenameCollisionWarning,
    TargetNotFoundError,
)
from .nodes import AstNode, NodeKind as K, SourceUnit
from .traverse import Cursor, Hooks, walk

Fresh = Callable[[], int]


# -- small node factories ---------------------------------------------------


def _identifier(fresh: Fresh, name: str, ref: Optional[int] = None) -> AstNode:
    node = AstNode(id=fresh(), kind=K.IDENTIFIER).set("name", name)
    if ref is not None:
        node.set("referenced_declaration", ref)
    return node


def _number(fresh: Fresh, value: int) -> AstNode:
    magnitude = (
        AstNode(id=fresh(), kind=K.LITERAL)
        .set("kind", "number")
        .set("value", str(abs(value)))
    )
    if value >= 0:
        return magnitude
    negated = (
        AstNode(id=fresh(), kind=K.UNARY_OPERATION)
        .set("operator", "-")
        .set("prefix", True)
    )
    negated.add_child(magnitude)
    return negated


def _type_name(fresh: Fresh, name: str) -> AstNode:
    node = AstNode(id=fresh(), kind=K.ELEMENTARY_TYPE_NAME).set("name", name)
    signedness = "unsigned" if name.startswith("uint") else "signed"
    return node.set("signedness", signedness)


def _binary(fresh: Fresh, operator: str, left: AstNode, right: AstNode) -> AstNode:
    node = AstNode(id=fresh(), kind=K.BINARY_OPERATION).set("operator", operator)
    node.add_child(left)
    node.add_child(right)
    return node


def _grouped(fresh: Fresh, inner: AstNode) -> AstNode:
    """Explicit parentheses: a one-component tuple around the expression."""
    node = AstNode(id=fresh(), kind=K.TUPLE_EXPRESSION)
    node.add_child(inner)
    return node


def _declare(
    fresh: Fresh, type_name: str, variable: str, value: AstNode
) -> tuple[AstNode, int]:
    """``<type> <variable> = <value>;`` plus the declaration's node id."""
    parameter = AstNode(id=fresh(), kind=K.PARAMETER).set("name", variable)
    parameter.add_child(_type_name(fresh, type_name))
    statement = AstNode(id=fresh(), kind=K.VARIABLE_DECLARATION_STATEMENT)
    statement.add_child(parameter)
    statement.add_child(value)
    return statement, parameter.id


def _guard_call(fresh: Fresh, callee: str, argument: AstNode) -> AstNode:
    """``assert(...)`` / ``require(...)`` statement marked as instrumentation."""
    call = (
        AstNode(id=fresh(), kind=K.FUNCTION_CALL).set("call_kind", "functionCall")
    )
    call.add_child(_identifier(fresh, callee))
    call.add_child(argument)
    statement = AstNode(id=fresh(), kind=K.EXPRESSION_STATEMENT).set(
        "instrumented", True
    )
    statement.add_child(call)
    return statement


def _clone_expression(fresh: Fresh, node: AstNode) -> AstNode:
    duplicate = copy.deepcopy(node)
    for part in duplicate.walk():
        part.id = fresh()
        part.span = None
    return duplicate


# -- rename -------------------------------------------------------------------

_RENAME_DECLARATIONS: dict[str, tuple[K, ...]] = {
    "contract": (K.CONTRACT_DEFINITION,),
    "function": (K.FUNCTION_DEFINITION,),
    "modifier": (K.MODIFIER_DEFINITION,),
    "event": (K.EVENT_DEFINITION,),
    "struct": (K.STRUCT_DEFINITION,),
    "enum": (K.ENUM_DEFINITION,),
    "variable": (K.STATE_VARIABLE_DECLARATION, K.PARAMETER),
}


def rename(
    unit: SourceUnit, kind: str, old: str, new: str
) -> tuple[SourceUnit, int]:
    """Rename every declaration of ``kind`` named ``old``, plus its uses.

    Uses are matched through declaration references when present and by
    name otherwise.  Returns the rewritten unit and the number of nodes
    changed; raises :class:`TargetNotFoundError` when no declaration
    matches.  A pre-existing declaration already named ``new`` triggers a
    :class:`RenameCollisionWarning`.
    """
    if kind not in _RENAME_DECLARATIONS:
        raise ValueError(
            f"unknown rename kind {kind!r}; expected one of "
            f"{', '.join(sorted(_RENAME_DECLARATIONS))}"
        )
    declaration_kinds = _RENAME_DECLARATIONS[kind]
    targets: set[int] = set()
    collision = False
    for node in unit.nodes():
        if node.kind in declaration_kinds:
            if node.name == old:
                targets.add(node.id)
            elif node.name == new:
                collision = True
    if kind == "contract":
        # Old-style constructors share the contract's name.
        for contract in unit.root.children:
            if contract.kind is K.CONTRACT_DEFINITION and contract.name == old:
                for member in contract.children:
                    if (
                        member.kind is K.FUNCTION_DEFINITION
                        and member.name == old
                    ):
                        targets.add(member.id)
    if not targets:
        raise TargetNotFoundError(f"no {kind} named {old!r} in this unit")
    if collision:
        warnings.warn(
            f"a {kind} named {new!r} already exists; rename may merge names",
            RenameCollisionWarning,
            stacklevel=2,
        )

    counter = {"changed": 0}

    def visit(cursor: Cursor) -> None:
        node = cursor.node
        if node.id in targets:
            cursor.set("name", new)
            counter["changed"] += 1
            return
        ref = node.attributes.get("referenced_declaration")
        if node.kind is K.IDENTIFIER:
            if ref in targets or (ref is None and node.name == old):
                cursor.set("name", new)
                counter["changed"] += 1
        elif node.kind is K.MEMBER_ACCESS:
            if ref in targets or (ref is None and node.get("member_name") == old):
                cursor.set("member_name", new)
                counter["changed"] += 1
        elif node.kind is K.USER_DEFINED_TYPE_NAME:
            name = str(node.name or "")
            parts = name.split(".")
            if ref in targets or old in parts:
                replaced = ".".join(new if part == old else part for part in parts)
                if replaced != name:
                    cursor.set("name", replaced)
                    counter["changed"] += 1

    outcome = walk(unit, Hooks(visit=visit))
    return outcome.unit, counter["changed"]


# -- fault seeding -------------------------------------------------------------

#: vulnerability -> (type, (name, value), (name, value), operator)
_FAULT_RECIPES: dict[str, tuple[str, tuple[str, int], tuple[str, int], str]] = {
    "unsigned-underflow": ("uint256", ("minuend", 20), ("subtrahend", 250), "-"),
    "unsigned-overflow": ("uint8", ("augend", 255), ("addend", 10), "+"),
    "signed-underflow": ("int8", ("minuend", -120), ("subtrahend", 100), "-"),
    "division-by-zero": ("uint256", ("numerator", 20), ("divisor", 0), "/"),
}

VULNERABILITIES = tuple(sorted(_FAULT_RECIPES))


@dataclass
class SeedResult:
    unit: SourceUnit
    function: str
    vulnerability: str
    statement_ids: tuple[int, ...]


def seed_fault(
    unit: SourceUnit, vulnerability: str, function: Optional[str] = None
) -> SeedResult:
    """Plant a small arithmetic fault at the top of one function body.

    The fault is three local declarations whose last line performs the
    faulty operation.  Nothing else in the tree changes and existing node
    ids are preserved.
    """
    if vulnerability not in _FAULT_RECIPES:
        raise ValueError(
            f"unknown vulnerability {vulnerability!r}; expected one of "
            f"{', '.join(VULNERABILITIES)}"
        )
    working = unit.clone()
    if function is not None:
        owner, definition = find_function(working, function)
        if definition.children[-1].kind is not K.BLOCK:
            raise MissingBodyError(
                f"function {qualified_name(owner, definition)} has no body"
            )
    else:
        owner = definition = None  # type: ignore[assignment]
        for contract in working.root.children:
            if contract.kind is not K.CONTRACT_DEFINITION:
                continue
            for member in contract.children:
                if (
                    member.kind is K.FUNCTION_DEFINITION
                    and member.children[-1].kind is K.BLOCK
                ):
                    owner, definition = contract, member
                    break
            if definition is not None:
                break
        if definition is None:
            raise NoInjectableFunctionError(
                "no function with a body to seed in this unit"
            )

    type_name, (first_name, first_value), (second_name, second_value), operator = (
        _FAULT_RECIPES[vulnerability]
    )
    fresh = working.fresh_id
    first, first_id = _declare(
        fresh, type_name, first_name, _number(fresh, first_value)
    )
    second, second_id = _declare(
        fresh, type_name, second_name, _number(fresh, second_value)
    )
    operation = _binary(
        fresh,
        operator,
        _identifier(fresh, first_name, first_id),
        _identifier(fresh, second_name, second_id),
    )
    result, _ = _declare(fresh, type_name, "result", operation)
    body = definition.children[-1]
    for index, statement in enumerate((first, second, result)):
        body.insert_child(index, statement)
    return SeedResult(
        unit=working,
        function=qualified_name(owner, definition),
        vulnerability=vulnerability,
        statement_ids=(first.id, second.id, result.id),
    )


# -- arithmetic assertion guards ------------------------------------------------

_GUARD_CLASSES = {
    "/": "division",
    "+": "addition",
    "-": "subtraction",
    "*": "multiplication",
}

GUARD_CLASSES = tuple(sorted(set(_GUARD_CLASSES.values())))

_SIMPLE_OPERANDS = (K.IDENTIFIER, K.LITERAL)


@dataclass(frozen=True)
class GuardSite:
    """One arithmetic statement the guard pass looked at."""

    function: str
    statement_id: int
    operator: str
    signedness: Optional[str]
    action: str
    reason: Optional[str] = None
    guards: tuple[str, ...] = ()


@dataclass
class InstrumentationReport:
    unit: SourceUnit
    sites: list[GuardSite] = field(default_factory=list)

    @property
    def guarded(self) -> int:
        return sum(1 for site in self.sites if site.action == "guarded")

    @property
    def skipped(self) -> int:
        return sum(1 for site in self.sites if site.action == "skipped")


@dataclass
class _Site:
    statement: AstNode
    operator: str
    target: Optional[AstNode]  # identifier naming the assigned variable
    target_ref: Optional[int]
    left: Optional[AstNode]
    right: Optional[AstNode]
    reason: Optional[str] = None


def _classify(statement: AstNode) -> Optional[_Site]:
    """Recognise ``a = b OP c`` shapes; None when not arithmetic at all."""
    if statement.kind is K.EXPRESSION_STATEMENT:
        expression = statement.children[0]
        if expression.kind is not K.ASSIGNMENT:
            return None
        operator = str(expression.get("operator"))
        lhs, rhs = expression.children
        if operator == "=":
            if rhs.kind is not K.BINARY_OPERATION:
                return None
            binary_op = str(rhs.get("operator"))
            if binary_op not in _GUARD_CLASSES:
                return None
            site = _Site(statement, binary_op, None, None, *rhs.children)
            if any(c.kind not in _SIMPLE_OPERANDS for c in rhs.children):
                site.reason = "operand-not-identifier-or-literal"
            elif lhs.kind is not K.IDENTIFIER:
                site.reason = "target-not-identifier"
            else:
                site.target = lhs
                site.target_ref = lhs.attributes.get("referenced_declaration")
            return site
        compound = operator.rstrip("=")
        if operator.endswith("=") and compound in _GUARD_CLASSES:
            site = _Site(statement, compound, None, None, lhs, rhs)
            if rhs.kind not in _SIMPLE_OPERANDS:
                site.reason = "operand-not-identifier-or-literal"
            elif lhs.kind is not K.IDENTIFIER:
                site.reason = "target-not-identifier"
            else:
                site.target = lhs
                site.target_ref = lhs.attributes.get("referenced_declaration")
            return site
        return None
    if statement.kind is K.VARIABLE_DECLARATION_STATEMENT:
        declarations = [c for c in statement.children if c.kind is K.PARAMETER]
        if len(statement.children) == len(declarations):
            return None
        initial = statement.children[-1]
        if initial.kind is not K.BINARY_OPERATION:
            return None
        binary_op = str(initial.get("operator"))
        if binary_op not in _GUARD_CLASSES:
            return None
        site = _Site(statement, binary_op, None, None, *initial.children)
        if any(c.kind not in _SIMPLE_OPERANDS for c in initial.children):
            site.reason = "operand-not-identifier-or-literal"
        elif len(declarations) != 1:
            site.reason = "target-not-identifier"
        else:
            declaration = declarations[0]
            site.target = declaration
            site.target_ref = declaration.id
        return site
    return None


def _declared_signedness(index: dict[int, AstNode], ref: Optional[int]) -> Optional[str]:
    if ref is None:
        return None
    declaration = index.get(ref)
    if declaration is None or not declaration.children:
        return None
    type_name = declaration.children[0]
    if type_name.kind is not K.ELEMENTARY_TYPE_NAME:
        return None
    return type_name.get("signedness")


def _build_guards(
    fresh: Fresh, site: _Site, signedness: str
) -> tuple[list[AstNode], list[AstNode]]:
    """(statements before site, statements after site)."""

    def a() -> AstNode:
        target = site.target
        assert target is not None
        if target.kind is K.PARAMETER:
            return _identifier(fresh, str(target.name), target.id)
        return _clone_expression(fresh, target)

    def b() -> AstNode:
        assert site.left is not None
        return _clone_expression(fresh, site.left)

    def c() -> AstNode:
        assert site.right is not None
        return _clone_expression(fresh, site.right)

    def cmp(op: str, lhs: AstNode, rhs: AstNode) -> AstNode:
        return _binary(fresh, op, lhs, rhs)

    def zero() -> AstNode:
        return _number(fresh, 0)

    operator = site.operator
    if operator == "/":
        return [_guard_call(fresh, "require", cmp("!=", c(), zero()))], []
    if operator == "+":
        if signedness == "signed":
            check = _binary(
                fresh,
                "||",
                _grouped(fresh, _binary(fresh, "&&", cmp(">=", c(), zero()), cmp(">=", a(), b()))),
                _grouped(fresh, _binary(fresh, "&&", cmp("<", c(), zero()), cmp("<", a(), b()))),
            )
        else:
            check = _binary(fresh, "&&", cmp(">=", a(), b()), cmp(">=", a(), c()))
        return [], [_guard_call(fresh, "assert", check)]
    if operator == "-":
        if signedness == "signed":
            check = _binary(
                fresh,
                "||",
                _grouped(fresh, _binary(fresh, "&&", cmp(">=", c(), zero()), cmp("<=", a(), b()))),
                _grouped(fresh, _binary(fresh, "&&", cmp("<", c(), zero()), cmp(">", a(), b()))),
            )
        else:
            check = _binary(fresh, "&&", cmp(">=", b(), a()), cmp(">=", b(), c()))
        return [], [_guard_call(fresh, "assert", check)]
    # multiplication: zero factors legitimately produce zero, so the
    # magnitude check only applies when both factors are non-zero.
    condition = _binary(
        fresh, "&&", cmp("!=", b(), zero()), cmp("!=", c(), zero())
    )
    if signedness == "signed":
        positive = _binary(
            fresh,
            "&&",
            _grouped(fresh, cmp("==", _binary(fresh, "/", a(), b()), c())),
            _grouped(fresh, cmp("==", _binary(fresh, "/", a(), c()), b())),
        )
    else:
        positive = _binary(fresh, "&&", cmp(">=", a(), b()), cmp(">=", a(), c()))
    then_part = _guard_call(fresh, "assert", positive)
    else_part = _guard_call(fresh, "assert", cmp("==", a(), zero()))
    guard = AstNode(id=fresh(), kind=K.IF_STATEMENT).set("instrumented", True)
    guard.add_child(condition)
    guard.add_child(then_part)
    guard.add_child(else_part)
    return [], [guard]


def insert_assertions(
    unit: SourceUnit, only: Optional[Iterable[str]] = None
) -> InstrumentationReport:
    """Guard simple arithmetic statements against overflow and zero division.

    Recognised sites are assignments and single declarations whose value is
    one ``+``, ``-``, ``*`` or ``/`` over identifiers or literals.  Division
    gets a ``require`` on the divisor before the site; the other operators
    get an ``assert`` relating operands and result after it, with signed and
    unsigned variants chosen from the assigned variable's declared type.
    Already guarded sites are reported and left alone, so the pass is safe
    to run twice.  ``only`` limits the pass to the named guard classes.
    """
    if only is not None:
        only = set(only)
        unknown = only - set(GUARD_CLASSES)
        if unknown:
            raise ValueError(
                f"unknown guard classes: {', '.join(sorted(unknown))}"
            )
    declaration_index = {node.id: node for node in unit.nodes()}
    sites: list[GuardSite] = []

    def enclosing(cursor: Cursor) -> Optional[str]:
        definition = None
        owner = None
        for ancestor in cursor.ancestors:
            if ancestor.kind is K.CONTRACT_DEFINITION:
                owner = ancestor
            elif ancestor.kind in (K.FUNCTION_DEFINITION, K.MODIFIER_DEFINITION):
                definition = ancestor
        if owner is None or definition is None:
            return None
        return qualified_name(owner, definition)

    def visit(cursor: Cursor) -> None:
        node = cursor.node
        if node.kind in (K.EXPRESSION_STATEMENT, K.VARIABLE_DECLARATION_STATEMENT):
            parent = cursor.parent
            if parent is not None and parent.kind is not K.BLOCK:
                site = _classify(node)
                if site is not None and _wanted(site, only):
                    where = enclosing(cursor) or "<unknown>"
                    sites.append(
                        GuardSite(
                            function=where,
                            statement_id=node.id,
                            operator=site.operator,
                            signedness=None,
                            action="skipped",
                            reason="not-in-statement-list",
                        )
                    )
            return
        if node.kind is not K.BLOCK:
            return
        where = enclosing(cursor)
        if where is None:
            return
        insertions: list[tuple[int, list[AstNode], list[AstNode]]] = []
        for index, statement in enumerate(node.children):
            site = _classify(statement)
            if site is None or not _wanted(site, only):
                continue
            if site.reason is not None:
                sites.append(
                    GuardSite(
                        function=where,
                        statement_id=statement.id,
                        operator=site.operator,
                        signedness=None,
                        action="skipped",
                        reason=site.reason,
                    )
                )
                continue
            if _already_guarded(node, index, site.operator):
                sites.append(
                    GuardSite(
                        function=where,
                        statement_id=statement.id,
                        operator=site.operator,
                        signedness=None,
                        action="skipped",
                        reason="already-guarded",
                    )
                )
                continue
            declared = _declared_signedness(declaration_index, site.target_ref)
            signedness = declared or "unsigned"
            label = declared or ("unsigned" if site.operator == "/" else "assumed-unsigned")
            before, after = _build_guards(cursor.fresh_id, site, signedness)
            insertions.append((index, before, after))
            sites.append(
                GuardSite(
                    function=where,
                    statement_id=statement.id,
                    operator=site.operator,
                    signedness=None if site.operator == "/" else label,
                    action="guarded",
                    guards=tuple(
                        emit_node(guard) for guard in before + after
                    ),
                )
            )
        for index, before, after in reversed(insertions):
            for offset, guard in enumerate(after):
                cursor.insert_child(index + 1 + offset, guard)
            for offset, guard in enumerate(before):
                cursor.insert_child(index + offset, guard)

    outcome = walk(unit, Hooks(visit=visit))
    return InstrumentationReport(unit=outcome.unit, sites=sites)


def _wanted(site: _Site, only: Optional[set[str]]) -> bool:
    return only is None or _GUARD_CLASSES[site.operator] in only


def _already_guarded(block: AstNode, index: int, operator: str) -> bool:
    if operator == "/":
        return index > 0 and bool(
            block.children[index - 1].attributes.get("instrumented")
        )
    return index + 1 < len(block.children) and bool(
        block.children[index + 1].attributes.get("instrumented")
    )


# -- unsigned to signed ----------------------------------------------------------

_UNSIGNED_TYPE = re.compile(r"^uint(\d*)$")


def make_signed(unit: SourceUnit) -> tuple[SourceUnit, int]:
    """Turn every unsigned integer type into its signed counterpart.

    Conversion expressions like ``uint(x)`` and allocation types under
    ``new`` keep their meaning and are left alone; declaration, mapping,
    array and parameter types are rewritten.
    """
    counter = {"changed": 0}

    def visit(cursor: Cursor) -> None:
        node = cursor.node
        if node.kind is not K.ELEMENTARY_TYPE_NAME:
            return
        match = _UNSIGNED_TYPE.match(str(node.get("name") or ""))
        if match is None:
            return
        if any(ancestor.kind is K.NEW_EXPRESSION for ancestor in cursor.ancestors):
            return
        parent = cursor.parent
        if (
            parent is not None
            and parent.kind is K.FUNCTION_CALL
            and parent.children[0] is node
        ):
            return
        cursor.set("name", "int" + match.group(1))
        cursor.set("signedness", "signed")
        counter["changed"] += 1

    outcome = walk(unit, Hooks(visit=visit))
    return outcome.unit, counter["changed"]
