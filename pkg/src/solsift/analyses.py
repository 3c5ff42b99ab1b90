"""Read-only analyses: function listing, call graph, control flow, diffing.

All results are plain data with deterministic ordering (declaration order
for definitions, creation order for control-flow blocks), so their rendered
forms are stable across runs and safe to freeze in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .codegen import Emitter
from .errors import MissingBodyError, TargetNotFoundError
from .nodes import (
    AstNode,
    LOOP_KINDS,
    NodeKind as K,
    SourceUnit,
    comparable_fields,
)

TRUE_BRANCH = "True Branch"
FALSE_BRANCH = "False Branch"


def display_name(definition: AstNode) -> str:
    """A function's listing name; unnamed definitions get their role."""
    name = definition.name
    if name:
        return str(name)
    if definition.kind is K.FUNCTION_DEFINITION and definition.get("is_constructor"):
        return "constructor"
    return "fallback"


def _contracts(unit: SourceUnit) -> Iterator[AstNode]:
    for child in unit.root.children:
        if child.kind is K.CONTRACT_DEFINITION:
            yield child


def _definitions(unit: SourceUnit) -> Iterator[tuple[AstNode, AstNode]]:
    """(contract, function-or-modifier) pairs in declaration order."""
    for contract in _contracts(unit):
        for member in contract.children:
            if member.kind in (K.FUNCTION_DEFINITION, K.MODIFIER_DEFINITION):
                yield contract, member


def qualified_name(contract: AstNode, definition: AstNode) -> str:
    return f"{contract.name}.{display_name(definition)}"


# -- function listing ------------------------------------------------------


@dataclass(frozen=True)
class FunctionSummary:
    """One function signature as seen from outside."""

    contract: str
    name: str
    parameters: tuple[str, ...]
    returns: tuple[str, ...]
    node_id: int

    @property
    def rendered(self) -> str:
        params = ", ".join(self.parameters)
        rets = ", ".join(self.returns)
        return f"[In {self.contract}] {self.name}({params}) returns ({rets})"


def list_functions(unit: SourceUnit) -> list[FunctionSummary]:
    """Signatures of every function, in declaration order."""
    emitter = Emitter()
    summaries: list[FunctionSummary] = []
    for contract, definition in _definitions(unit):
        if definition.kind is not K.FUNCTION_DEFINITION:
            continue
        summaries.append(
            FunctionSummary(
                contract=str(contract.name),
                name=display_name(definition),
                parameters=tuple(
                    emitter.emit_node(p) for p in definition.children[0].children
                ),
                returns=tuple(
                    emitter.emit_node(p) for p in definition.children[1].children
                ),
                node_id=definition.id,
            )
        )
    return summaries


# -- call graph -------------------------------------------------------------


@dataclass
class CallGraph:
    """Qualified function and modifier names plus caller -> callee pairs."""

    nodes: list[str] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)


def build_call_graph(unit: SourceUnit) -> CallGraph:
    """Static call graph over this unit's functions and modifiers.

    Calls are resolved by declaration reference when the tree carries one,
    falling back to name lookup (same contract first).  Builtins, externals
    and type conversions resolve to nothing and produce no edge.
    """
    by_id: dict[int, tuple[AstNode, AstNode]] = {}
    by_name: dict[str, list[tuple[AstNode, AstNode]]] = {}
    graph = CallGraph()
    for contract, definition in _definitions(unit):
        by_id[definition.id] = (contract, definition)
        by_name.setdefault(str(definition.name), []).append((contract, definition))
        graph.nodes.append(qualified_name(contract, definition))

    def resolve(callee: AstNode, home: AstNode) -> Optional[str]:
        if callee.kind is K.IDENTIFIER:
            ref = callee.attributes.get("referenced_declaration")
            name = callee.name
        elif callee.kind is K.MEMBER_ACCESS:
            ref = callee.attributes.get("referenced_declaration")
            base = callee.children[0]
            # this.f() and super.f() stay inside the unit; other bases
            # are external objects.
            if base.kind is K.IDENTIFIER and base.name in ("this", "super"):
                name = callee.get("member_name")
            else:
                name = None
        else:
            return None
        if ref is not None:
            found = by_id.get(ref)
            return qualified_name(*found) if found else None
        candidates = by_name.get(str(name), []) if name else []
        for contract, definition in candidates:
            if contract is home:
                return qualified_name(contract, definition)
        if candidates:
            return qualified_name(*candidates[0])
        return None

    seen: set[tuple[str, str]] = set()
    for contract, definition in _definitions(unit):
        caller = qualified_name(contract, definition)
        for node in definition.walk():
            target: Optional[str] = None
            if node.kind is K.FUNCTION_CALL and node.get("call_kind") == "functionCall":
                target = resolve(node.children[0], contract)
            elif node.kind is K.MODIFIER_INVOCATION and node is not definition:
                target = resolve(node.children[0], contract)
            if target is None:
                continue
            edge = (caller, target)
            if edge not in seen:
                seen.add(edge)
                graph.edges.append(edge)
    return graph


# -- control flow -----------------------------------------------------------


@dataclass(frozen=True)
class BlockStatement:
    node_id: int
    text: str


@dataclass
class BasicBlock:
    index: int
    statements: list[BlockStatement] = field(default_factory=list)
    unreachable: bool = False

    @property
    def name(self) -> str:
        return f"B{self.index}"


@dataclass(frozen=True)
class CfgEdge:
    source: int
    target: int
    label: Optional[str] = None


@dataclass
class Cfg:
    function: str
    blocks: list[BasicBlock]
    edges: list[CfgEdge]


def find_function(
    unit: SourceUnit, name: str, contract: Optional[str] = None
) -> tuple[AstNode, AstNode]:
    """Locate a function by plain or ``Contract.function`` name."""
    wanted_contract = contract
    wanted = name
    if "." in name and contract is None:
        wanted_contract, wanted = name.split(".", 1)
    for owner, definition in _definitions(unit):
        if definition.kind is not K.FUNCTION_DEFINITION:
            continue
        if wanted_contract is not None and owner.name != wanted_contract:
            continue
        if display_name(definition) == wanted or definition.name == wanted:
            return owner, definition
    raise TargetNotFoundError(f"no function named {name!r} in this unit")


class _CfgBuilder:
    def __init__(self, semantic_returns: bool) -> None:
        self.semantic_returns = semantic_returns
        self.blocks: list[BasicBlock] = []
        self.edges: list[CfgEdge] = []
        self.loops: list[tuple[int, int]] = []
        self.returning: list[int] = []
        self.current = self.new_block()
        self.closed = False
        self.emitter = Emitter()

    def new_block(self) -> int:
        self.blocks.append(BasicBlock(index=len(self.blocks)))
        return len(self.blocks) - 1

    def edge(self, source: int, target: int, label: Optional[str] = None) -> None:
        self.edges.append(CfgEdge(source, target, label))

    def put(self, node: AstNode, text: str) -> None:
        if self.closed:
            self.current = self.new_block()
            self.closed = False
        self.blocks[self.current].statements.append(BlockStatement(node.id, text))

    def enter(self, node: AstNode, text: str) -> int:
        """Open a new block holding a structured statement's header."""
        if self.closed:
            self.current = self.new_block()
            self.closed = False
            block = self.current
        else:
            block = self.new_block()
            self.edge(self.current, block)
            self.current = block
        self.blocks[block].statements.append(BlockStatement(node.id, text))
        return block

    # -- statement dispatch ---------------------------------------------

    def sequence(self, statements: list[AstNode]) -> None:
        for statement in statements:
            self.statement(statement)

    def statement(self, node: AstNode) -> None:
        kind = node.kind
        if kind is K.BLOCK:
            self.sequence(node.children)
        elif kind is K.IF_STATEMENT:
            self._if(node)
        elif kind is K.WHILE_STATEMENT:
            self._while(node)
        elif kind is K.DO_WHILE_STATEMENT:
            self._do_while(node)
        elif kind is K.FOR_STATEMENT:
            self._for(node)
        elif kind is K.BREAK:
            self.put(node, "break;")
            if self.loops:
                self.edge(self.current, self.loops[-1][1])
            self.closed = True
        elif kind is K.CONTINUE:
            self.put(node, "continue;")
            if self.loops:
                self.edge(self.current, self.loops[-1][0])
            self.closed = True
        elif kind is K.RETURN:
            self.put(node, self.emitter.emit_node(node))
            if self.semantic_returns:
                self.returning.append(self.current)
                self.closed = True
        else:
            self.put(node, self.emitter.emit_node(node))

    def _if(self, node: AstNode) -> None:
        condition_text = f"if ({self.emitter.emit_node(node.children[0])})"
        condition = self.enter(node, condition_text)
        then_branch = node.children[1]
        else_branch = node.children[2] if len(node.children) > 2 else None
        then_block = self.new_block()
        self.edge(condition, then_block, TRUE_BRANCH)
        if else_branch is None:
            join = self.new_block()
            self.edge(condition, join, FALSE_BRANCH)
            self.current, self.closed = then_block, False
            self.statement(then_branch)
            if not self.closed:
                self.edge(self.current, join)
        else:
            else_block = self.new_block()
            self.edge(condition, else_block, FALSE_BRANCH)
            self.current, self.closed = then_block, False
            self.statement(then_branch)
            then_end, then_closed = self.current, self.closed
            self.current, self.closed = else_block, False
            self.statement(else_branch)
            else_end, else_closed = self.current, self.closed
            join = self.new_block()
            if not then_closed:
                self.edge(then_end, join)
            if not else_closed:
                self.edge(else_end, join)
        self.current, self.closed = join, False

    def _while(self, node: AstNode) -> None:
        condition_text = f"while ({self.emitter.emit_node(node.children[0])})"
        condition = self.enter(node, condition_text)
        body_block = self.new_block()
        self.edge(condition, body_block, TRUE_BRANCH)
        after = self.new_block()
        self.edge(condition, after, FALSE_BRANCH)
        self.loops.append((condition, after))
        self.current, self.closed = body_block, False
        self.statement(node.children[1])
        if not self.closed:
            self.edge(self.current, condition)
        self.loops.pop()
        self.current, self.closed = after, False

    def _do_while(self, node: AstNode) -> None:
        body_block = self.new_block()
        if not self.closed:
            self.edge(self.current, body_block)
        condition = self.new_block()
        condition_text = f"do while ({self.emitter.emit_node(node.children[0])})"
        self.blocks[condition].statements.append(BlockStatement(node.id, condition_text))
        after = self.new_block()
        self.loops.append((condition, after))
        self.current, self.closed = body_block, False
        self.statement(node.children[1])
        if not self.closed:
            self.edge(self.current, condition)
        self.edge(condition, body_block, TRUE_BRANCH)
        self.edge(condition, after, FALSE_BRANCH)
        self.loops.pop()
        self.current, self.closed = after, False

    def _for(self, node: AstNode) -> None:
        parts = list(node.children[:-1])
        init = parts.pop(0) if node.get("has_init") else None
        has_condition = bool(node.get("has_condition"))
        if has_condition:
            parts.pop(0)
        loop_expression = parts.pop(0) if node.get("has_loop_expression") else None
        if init is not None:
            self.put(init, self.emitter.emit_node(init))
        condition = self.enter(node, self.emitter.for_head(node))
        body_block = self.new_block()
        self.edge(condition, body_block, TRUE_BRANCH if has_condition else None)
        after = self.new_block()
        if has_condition:
            self.edge(condition, after, FALSE_BRANCH)
        self.loops.append((condition, after))
        self.current, self.closed = body_block, False
        self.statement(node.children[-1])
        if loop_expression is not None:
            # The step runs on the way back to the condition, so it joins
            # the body's last block (or its own block when the body ended
            # in a jump).
            self.put(loop_expression, self.emitter.emit_node(loop_expression))
        if not self.closed:
            self.edge(self.current, condition)
        self.loops.pop()
        self.current, self.closed = after, False


def build_cfg(
    unit: SourceUnit,
    function: str,
    contract: Optional[str] = None,
    semantic_returns: bool = False,
) -> Cfg:
    """Basic-block control flow graph for one function body.

    Blocks are numbered in creation order starting at the entry block B0;
    branch edges carry ``True Branch`` / ``False Branch`` labels.  By
    default a ``return`` simply ends its block and control continues to the
    textually following block; with ``semantic_returns`` every return is
    wired to a synthetic exit block appended after all others.
    """
    owner, definition = find_function(unit, function, contract)
    body = definition.children[-1]
    if body.kind is not K.BLOCK:
        raise MissingBodyError(
            f"function {qualified_name(owner, definition)} has no body"
        )
    builder = _CfgBuilder(semantic_returns)
    builder.sequence(body.children)
    if semantic_returns:
        exit_block = builder.new_block()
        for source in builder.returning:
            builder.edge(source, exit_block)
        if not builder.closed and builder.current != exit_block:
            builder.edge(builder.current, exit_block)
    cfg = Cfg(
        function=qualified_name(owner, definition),
        blocks=builder.blocks,
        edges=builder.edges,
    )
    _mark_unreachable(cfg)
    return cfg


def _mark_unreachable(cfg: Cfg) -> None:
    successors: dict[int, list[int]] = {}
    for edge in cfg.edges:
        successors.setdefault(edge.source, []).append(edge.target)
    reached = {0}
    frontier = [0]
    while frontier:
        block = frontier.pop()
        for target in successors.get(block, []):
            if target not in reached:
                reached.add(target)
                frontier.append(target)
    for block in cfg.blocks:
        block.unreachable = block.index not in reached


# -- loop census -------------------------------------------------------------


@dataclass
class LoopCensus:
    whiles: int = 0
    do_whiles: int = 0
    fors: int = 0
    by_function: list[tuple[str, int]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.whiles + self.do_whiles + self.fors


def count_loops(unit: SourceUnit) -> LoopCensus:
    """Loop statements per kind and per function/modifier."""
    census = LoopCensus()
    for contract, definition in _definitions(unit):
        local = 0
        for node in definition.walk():
            if node.kind not in LOOP_KINDS:
                continue
            local += 1
            if node.kind is K.WHILE_STATEMENT:
                census.whiles += 1
            elif node.kind is K.DO_WHILE_STATEMENT:
                census.do_whiles += 1
            else:
                census.fors += 1
        if local:
            census.by_function.append((qualified_name(contract, definition), local))
    return census


# -- diff ---------------------------------------------------------------------


@dataclass(frozen=True)
class Difference:
    """One structural divergence between two trees.

    ``path`` is the child-index route from the root to the node; categories
    are ``kind-mismatch``, ``field-mismatch``, ``missing-left`` (right has a
    node the left lacks) and ``missing-right``.
    """

    path: tuple[int, ...]
    category: str
    detail: str

    def __str__(self) -> str:
        where = "/".join(str(step) for step in self.path) or "root"
        return f"{self.category} at {where}: {self.detail}"


def ast_diff(
    a: Union[AstNode, SourceUnit], b: Union[AstNode, SourceUnit]
) -> list[Difference]:
    """Positional structural comparison; ids and spans never count."""
    left = a.root if isinstance(a, SourceUnit) else a
    right = b.root if isinstance(b, SourceUnit) else b
    differences: list[Difference] = []
    _diff_into(left, right, (), differences)
    return differences


def _diff_into(
    left: AstNode,
    right: AstNode,
    path: tuple[int, ...],
    out: list[Difference],
) -> None:
    if left.kind is not right.kind:
        out.append(
            Difference(path, "kind-mismatch", f"{left.kind.value} != {right.kind.value}")
        )
        return
    fields_left = comparable_fields(left)
    fields_right = comparable_fields(right)
    for name in sorted(set(fields_left) | set(fields_right)):
        value_left = fields_left.get(name)
        value_right = fields_right.get(name)
        if value_left != value_right:
            out.append(
                Difference(
                    path,
                    "field-mismatch",
                    f"{name}: {value_left!r} != {value_right!r}",
                )
            )
    common = min(len(left.children), len(right.children))
    for index in range(common):
        _diff_into(left.children[index], right.children[index], path + (index,), out)
    for index in range(common, len(left.children)):
        out.append(
            Difference(
                path + (index,),
                "missing-right",
                left.children[index].kind.value,
            )
        )
    for index in range(common, len(right.children)):
        out.append(
            Difference(
                path + (index,),
                "missing-left",
                right.children[index].kind.value,
            )
        )


# -- DOT rendering -------------------------------------------------------------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(graph: Union[Cfg, CallGraph]) -> str:
    """Graphviz text for a control flow graph or call graph."""
    lines: list[str] = []
    if isinstance(graph, Cfg):
        lines.append("digraph cfg {")
        for block in graph.blocks:
            label = block.name
            if block.statements:
                label += ": " + " ".join(s.text for s in block.statements)
            style = " style=dashed" if block.unreachable else ""
            lines.append(f'    {block.name} [label="{_dot_escape(label)}"{style}];')
        for edge in graph.edges:
            source = graph.blocks[edge.source].name
            target = graph.blocks[edge.target].name
            if edge.label:
                lines.append(f'    {source} -> {target} [label="{edge.label}"];')
            else:
                lines.append(f"    {source} -> {target};")
    else:
        lines.append("digraph callgraph {")
        for node in graph.nodes:
            lines.append(f'    "{_dot_escape(node)}";')
        for source, target in graph.edges:
            lines.append(f'    "{_dot_escape(source)}" -> "{_dot_escape(target)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
