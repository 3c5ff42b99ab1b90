"""Regenerate Solidity source text from a syntax tree.

Output is canonical rather than layout-preserving: four-space indentation,
one statement per line, a single space around binary operators.  Emitting an
unmodified tree and re-ingesting its output reproduces the same tree, which
is the round-trip property the test corpus locks down.

Parenthesised sub-expressions arrive from the compiler as one-component
tuple nodes, so regenerated source keeps the author's grouping.  For
synthesized trees the emitter additionally inserts parentheses wherever
operator precedence would otherwise change the parse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import AstNode, NodeKind as K, SourceUnit, STATEMENT_KINDS

#: Binding strength per operator; larger binds tighter.
_BINARY_PRECEDENCE = {
    "||": 3,
    "&&": 4,
    "==": 5,
    "!=": 5,
    "<": 6,
    ">": 6,
    "<=": 6,
    ">=": 6,
    "|": 7,
    "^": 8,
    "&": 9,
    "<<": 10,
    ">>": 10,
    "+": 11,
    "-": 11,
    "*": 12,
    "/": 12,
    "%": 12,
    "**": 13,
}

_ASSIGN_PREC = 1
_COND_PREC = 2
_UNARY_PREC = 14
_POSTFIX_PREC = 15
_ATOM_PREC = 16

_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


@dataclass(frozen=True)
class FormatConfig:
    indent: str = "    "
    newline: str = "\n"


class Emitter:
    def __init__(self, config: FormatConfig | None = None) -> None:
        self.config = config or FormatConfig()

    # -- public -----------------------------------------------------------

    def emit_source(self, unit: SourceUnit) -> str:
        nl = self.config.newline
        chunks = [nl.join(self._declaration(child, 0)) for child in unit.root.children]
        return (nl * 2).join(chunks) + nl if chunks else nl

    def emit_node(self, node: AstNode) -> str:
        """Render any single node: expressions inline, statements with
        their terminators, declarations as full definitions."""
        if node.kind is K.SOURCE_UNIT:
            return self.emit_source(SourceUnit(root=node))
        if node.kind in STATEMENT_KINDS:
            return self.config.newline.join(self._stmt(node, 0))
        if node.kind is K.PARAMETER:
            return self._parameter(node)
        if node.kind is K.PARAMETER_LIST:
            return self._parameters(node)
        if node.kind is K.MODIFIER_INVOCATION:
            return self._modifier_invocation(node)
        if node.kind is K.ENUM_VALUE:
            return str(node.name)
        if node.kind in _DECLARATION_KINDS:
            return self.config.newline.join(self._declaration(node, 0))
        return self._expr(node)

    # -- declarations -------------------------------------------------------

    def _declaration(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        if node.kind is K.PRAGMA_DIRECTIVE:
            return [f"{pad}pragma {node.get('text')};"]
        if node.kind is K.IMPORT_DIRECTIVE:
            return [pad + self._import(node)]
        if node.kind is K.CONTRACT_DEFINITION:
            return self._contract(node, level)
        if node.kind is K.STRUCT_DEFINITION:
            lines = [f"{pad}struct {node.name} {{"]
            inner = self.config.indent * (level + 1)
            lines.extend(f"{inner}{self._parameter(member)};" for member in node.children)
            lines.append(pad + "}")
            return lines
        if node.kind is K.ENUM_DEFINITION:
            values = ", ".join(str(value.name) for value in node.children)
            return [f"{pad}enum {node.name} {{ {values} }}"]
        if node.kind is K.STATE_VARIABLE_DECLARATION:
            return [pad + self._state_variable(node)]
        if node.kind is K.FUNCTION_DEFINITION:
            return self._function(node, level)
        if node.kind is K.MODIFIER_DEFINITION:
            return self._modifier(node, level)
        if node.kind is K.EVENT_DEFINITION:
            params = self._parameters(node.children[0])
            anonymous = " anonymous" if node.get("anonymous") else ""
            return [f"{pad}event {node.name}({params}){anonymous};"]
        if node.kind is K.USING_FOR_DIRECTIVE:
            target = "*" if node.get("wildcard") else self._expr(node.children[1])
            return [f"{pad}using {node.children[0].name} for {target};"]
        raise ValueError(f"not a declaration kind: {node.kind.value}")

    def _import(self, node: AstNode) -> str:
        file = node.get("file")
        aliases = node.get("symbol_aliases")
        if aliases:
            return f'import {{{aliases}}} from "{file}";'
        unit_alias = node.get("unit_alias")
        if unit_alias:
            return f'import "{file}" as {unit_alias};'
        return f'import "{file}";'

    def _contract(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        bases: list[str] = []
        members: list[AstNode] = []
        for child in node.children:
            if child.kind is K.USER_DEFINED_TYPE_NAME and not members:
                bases.append(str(child.name))
            else:
                members.append(child)
        header = f"{pad}{node.get('contract_kind')} {node.name}"
        if bases:
            header += " is " + ", ".join(bases)
        if not members:
            return [header + " {}"]
        lines = [header + " {"]
        for member in members:
            lines.extend(self._declaration(member, level + 1))
        lines.append(pad + "}")
        return lines

    def _state_variable(self, node: AstNode) -> str:
        pieces = [self._expr(node.children[0])]
        visibility = node.get("visibility")
        if visibility in ("public", "private"):
            pieces.append(visibility)
        if node.get("constant"):
            pieces.append("constant")
        pieces.append(str(node.name))
        text = " ".join(pieces)
        if len(node.children) > 1:
            text += f" = {self._expr(node.children[1])}"
        return text + ";"

    def _function(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        params = self._parameters(node.children[0])
        name = node.get("name") or ""
        if node.get("is_constructor") and not name:
            header = f"{pad}constructor({params})"
        elif name:
            header = f"{pad}function {name}({params})"
        else:
            header = f"{pad}function({params})"
        visibility = node.get("visibility")
        if visibility:
            header += f" {visibility}"
        mutability = node.get("state_mutability")
        if mutability and mutability != "nonpayable":
            header += f" {mutability}"
        body: AstNode | None = None
        for child in node.children[2:]:
            if child.kind is K.MODIFIER_INVOCATION:
                header += " " + self._modifier_invocation(child)
            else:
                body = child
        returns = node.children[1]
        if returns.children:
            header += f" returns ({self._parameters(returns)})"
        if body is None:
            return [header + ";"]
        return self._attach_block(header, body, level)

    def _modifier(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        header = f"{pad}modifier {node.name}"
        if node.children[0].children:
            header += f"({self._parameters(node.children[0])})"
        return self._attach_block(header, node.children[1], level)

    def _modifier_invocation(self, node: AstNode) -> str:
        name = str(node.children[0].name)
        if len(node.children) == 1:
            return name
        args = ", ".join(self._expr(arg) for arg in node.children[1:])
        return f"{name}({args})"

    def _parameters(self, parameter_list: AstNode) -> str:
        return ", ".join(self._parameter(p) for p in parameter_list.children)

    def _parameter(self, node: AstNode) -> str:
        pieces = [self._expr(node.children[0]) if node.children else "var"]
        location = node.get("storage_location")
        if location:
            pieces.append(location)
        if node.get("indexed"):
            pieces.append("indexed")
        if node.name:
            pieces.append(str(node.name))
        return " ".join(pieces)

    # -- statements -----------------------------------------------------------

    def _attach_block(self, header: str, block: AstNode, level: int) -> list[str]:
        """Open a braced body on the header line."""
        pad = self.config.indent * level
        lines = [header + " {"]
        for statement in block.children:
            lines.extend(self._stmt(statement, level + 1))
        lines.append(pad + "}")
        return lines

    def _stmt(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        kind = node.kind
        if kind is K.BLOCK:
            lines = [pad + "{"]
            for statement in node.children:
                lines.extend(self._stmt(statement, level + 1))
            lines.append(pad + "}")
            return lines
        if kind is K.IF_STATEMENT:
            return self._if(node, level)
        if kind is K.WHILE_STATEMENT:
            header = f"{pad}while ({self._expr(node.children[0])})"
            return self._body_after(header, node.children[1], level)
        if kind is K.DO_WHILE_STATEMENT:
            condition = self._expr(node.children[0])
            body = node.children[1]
            if body.kind is K.BLOCK:
                lines = self._attach_block(pad + "do", body, level)
                lines[-1] += f" while ({condition});"
                return lines
            return [f"{pad}do {self._inline_stmt(body)} while ({condition});"]
        if kind is K.FOR_STATEMENT:
            return self._for(node, level)
        if kind is K.RETURN:
            if node.children:
                return [f"{pad}return {self._expr(node.children[0])};"]
            return [pad + "return;"]
        if kind is K.BREAK:
            return [pad + "break;"]
        if kind is K.CONTINUE:
            return [pad + "continue;"]
        if kind is K.THROW:
            return [pad + "throw;"]
        if kind is K.EMIT_STATEMENT:
            return [f"{pad}emit {self._expr(node.children[0])};"]
        if kind is K.EXPRESSION_STATEMENT:
            return [f"{pad}{self._expr(node.children[0])};"]
        if kind is K.VARIABLE_DECLARATION_STATEMENT:
            return [pad + self._variable_statement(node)]
        if kind is K.INLINE_ASSEMBLY:
            return [f"{pad}assembly {node.get('operations')}"]
        if kind is K.PLACEHOLDER_STATEMENT:
            return [pad + "_;"]
        raise ValueError(f"not a statement kind: {kind.value}")

    def _inline_stmt(self, node: AstNode) -> str:
        """Single non-block statement rendered without indentation."""
        return " ".join(line.strip() for line in self._stmt(node, 0))

    def _if(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        header = f"{pad}if ({self._expr(node.children[0])})"
        then = node.children[1]
        orelse = node.children[2] if len(node.children) > 2 else None
        if then.kind is K.BLOCK:
            lines = self._attach_block(header, then, level)
            if orelse is not None:
                lines[-1:] = self._else(lines[-1], orelse, level)
            return lines
        line = f"{header} {self._inline_stmt(then)}"
        if orelse is None:
            return [line]
        if orelse.kind is K.BLOCK:
            return self._attach_block(line + " else", orelse, level)
        return [f"{line} else {self._inline_stmt(orelse)}"]

    def _else(self, closing: str, orelse: AstNode, level: int) -> list[str]:
        """Continue after a closing brace with the else branch."""
        if orelse.kind is K.BLOCK:
            return self._attach_block(closing + " else", orelse, level)
        if orelse.kind is K.IF_STATEMENT:
            nested = self._if(orelse, level)
            nested[0] = closing + " else " + nested[0].strip()
            return nested
        return [f"{closing} else {self._inline_stmt(orelse)}"]

    def for_head(self, node: AstNode) -> str:
        """The ``for (init; cond; step)`` part without body or indent."""
        parts = list(node.children[:-1])
        init = parts.pop(0) if node.get("has_init") else None
        condition = parts.pop(0) if node.get("has_condition") else None
        loop_expression = parts.pop(0) if node.get("has_loop_expression") else None
        head = self._inline_stmt(init) if init is not None else ";"
        if condition is not None:
            head += f" {self._expr(condition)};"
        else:
            head += ";"
        if loop_expression is not None:
            text = (
                self._expr(loop_expression.children[0])
                if loop_expression.kind is K.EXPRESSION_STATEMENT
                else self._expr(loop_expression)
            )
            head += f" {text}"
        return f"for ({head})"

    def _for(self, node: AstNode, level: int) -> list[str]:
        pad = self.config.indent * level
        header = pad + self.for_head(node)
        return self._body_after(header, node.children[-1], level)

    def _body_after(self, header: str, body: AstNode, level: int) -> list[str]:
        if body.kind is K.BLOCK:
            return self._attach_block(header, body, level)
        return [f"{header} {self._inline_stmt(body)}"]

    def _variable_statement(self, node: AstNode) -> str:
        declarations = [c for c in node.children if c.kind is K.PARAMETER]
        initial = node.children[len(declarations)] if len(node.children) > len(declarations) else None
        if len(declarations) == 1:
            text = self._parameter(declarations[0])
        else:
            text = "(" + ", ".join(self._parameter(d) for d in declarations) + ")"
        if initial is not None:
            text += f" = {self._expr(initial)}"
        return text + ";"

    # -- expressions ---------------------------------------------------------

    def _prec(self, node: AstNode) -> int:
        kind = node.kind
        if kind is K.ASSIGNMENT:
            return _ASSIGN_PREC
        if kind is K.CONDITIONAL:
            return _COND_PREC
        if kind is K.BINARY_OPERATION:
            return _BINARY_PRECEDENCE.get(str(node.get("operator")), 11)
        if kind is K.UNARY_OPERATION:
            return _UNARY_PREC if node.get("prefix") else _POSTFIX_PREC
        if kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS, K.FUNCTION_CALL, K.NEW_EXPRESSION):
            return _POSTFIX_PREC
        return _ATOM_PREC

    def _wrap(self, node: AstNode, floor: int) -> str:
        text = self._expr(node)
        if self._prec(node) < floor:
            return f"({text})"
        return text

    def _expr(self, node: AstNode) -> str:
        kind = node.kind
        if kind is K.ASSIGNMENT:
            operator = node.get("operator")
            left = self._wrap(node.children[0], _COND_PREC)
            right = self._wrap(node.children[1], _ASSIGN_PREC)
            return f"{left} {operator} {right}"
        if kind is K.BINARY_OPERATION:
            operator = str(node.get("operator"))
            rank = _BINARY_PRECEDENCE.get(operator, 11)
            if operator == "**":
                left = self._wrap(node.children[0], rank + 1)
                right = self._wrap(node.children[1], rank)
            else:
                left = self._wrap(node.children[0], rank)
                right = self._wrap(node.children[1], rank + 1)
            return f"{left} {operator} {right}"
        if kind is K.UNARY_OPERATION:
            operator = str(node.get("operator"))
            operand = node.children[0]
            if node.get("prefix"):
                text = self._wrap(operand, _UNARY_PREC)
                if operator.isalpha():
                    return f"{operator} {text}"
                if (
                    operand.kind is K.UNARY_OPERATION
                    and operand.get("prefix")
                    and str(operand.get("operator"))[:1] == operator[:1]
                ):
                    text = f"({text})"
                return operator + text
            return self._wrap(operand, _POSTFIX_PREC) + operator
        if kind is K.CONDITIONAL:
            condition = self._wrap(node.children[0], _COND_PREC + 1)
            true_part = self._wrap(node.children[1], _COND_PREC)
            false_part = self._wrap(node.children[2], _COND_PREC)
            return f"{condition} ? {true_part} : {false_part}"
        if kind is K.TUPLE_EXPRESSION:
            inner = ", ".join(self._expr(part) for part in node.children)
            if node.get("is_inline_array"):
                return f"[{inner}]"
            return f"({inner})"
        if kind is K.INDEX_ACCESS:
            base = self._wrap(node.children[0], _POSTFIX_PREC)
            index = self._expr(node.children[1]) if len(node.children) > 1 else ""
            return f"{base}[{index}]"
        if kind is K.MEMBER_ACCESS:
            return f"{self._wrap(node.children[0], _POSTFIX_PREC)}.{node.get('member_name')}"
        if kind is K.FUNCTION_CALL:
            callee = self._wrap(node.children[0], _POSTFIX_PREC)
            arguments = node.children[1:]
            names = node.get("argument_names")
            if names:
                labels = names.split(", ")
                paired = ", ".join(
                    f"{label}: {self._expr(argument)}"
                    for label, argument in zip(labels, arguments)
                )
                return f"{callee}({{{paired}}})"
            return f"{callee}({', '.join(self._expr(a) for a in arguments)})"
        if kind is K.NEW_EXPRESSION:
            return f"new {self._expr(node.children[0])}"
        if kind is K.IDENTIFIER:
            return str(node.name)
        if kind is K.LITERAL:
            return self._literal(node)
        if kind is K.ELEMENTARY_TYPE_NAME:
            return str(node.get("name"))
        if kind is K.USER_DEFINED_TYPE_NAME:
            return str(node.get("name"))
        if kind is K.FUNCTION_TYPE_NAME:
            return self._function_type(node)
        if kind is K.MAPPING_TYPE_NAME:
            key = self._expr(node.children[0])
            value = self._expr(node.children[1])
            return f"mapping({key} => {value})"
        if kind is K.ARRAY_TYPE_NAME:
            base = self._expr(node.children[0])
            length = self._expr(node.children[1]) if len(node.children) > 1 else ""
            return f"{base}[{length}]"
        raise ValueError(f"not an expression kind: {kind.value}")

    def _function_type(self, node: AstNode) -> str:
        text = f"function ({self._parameters(node.children[0])})"
        visibility = node.get("visibility")
        if visibility and visibility != "internal":
            text += f" {visibility}"
        mutability = node.get("state_mutability")
        if mutability and mutability != "nonpayable":
            text += f" {mutability}"
        if node.children[1].children:
            text += f" returns ({self._parameters(node.children[1])})"
        return text

    def _literal(self, node: AstNode) -> str:
        value = str(node.get("value"))
        if node.get("kind") == "string":
            escaped = "".join(_ESCAPES.get(ch, ch) for ch in value)
            return f'"{escaped}"'
        sub = node.get("subdenomination")
        return f"{value} {sub}" if sub else value


_DECLARATION_KINDS = frozenset(
    {
        K.PRAGMA_DIRECTIVE,
        K.IMPORT_DIRECTIVE,
        K.CONTRACT_DEFINITION,
        K.STRUCT_DEFINITION,
        K.ENUM_DEFINITION,
        K.STATE_VARIABLE_DECLARATION,
        K.FUNCTION_DEFINITION,
        K.MODIFIER_DEFINITION,
        K.EVENT_DEFINITION,
        K.USING_FOR_DIRECTIVE,
    }
)


def emit_source(unit: SourceUnit, config: FormatConfig | None = None) -> str:
    """Full Solidity text for a unit, ending in one newline."""
    return Emitter(config).emit_source(unit)


def emit_node(node: AstNode, config: FormatConfig | None = None) -> str:
    """Solidity text for any single node."""
    return Emitter(config).emit_node(node)
