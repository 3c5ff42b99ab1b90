"""Hook-driven tree traversal with staged, abort-safe mutation.

:func:`walk` visits every node in pre-order, calling the ``before``,
``visit`` and ``after`` hooks around each node's children.  Hooks edit the
tree only through the :class:`Cursor`, which stages changes to the current
node and applies them atomically once the hook returns.  Children staged in
``before``/``visit`` are therefore part of the child list by the time the
walk descends, so freshly inserted subtrees are themselves traversed.

The walk operates on a private clone: if a hook raises, the caller's unit is
untouched and the error surfaces as :class:`~solsift.errors.HookError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import HookError, IdCollisionError, ValidationError
from .ingest import validate
from .nodes import AstNode, SourceUnit, check_field

Hook = Callable[["Cursor"], None]


@dataclass
class Hooks:
    """Callbacks around each node; any subset may be provided.

    ``before`` and ``visit`` both run before the children (``before`` is the
    place for bookkeeping such as scope tracking, ``visit`` for the node's
    real work); ``after`` runs once the whole subtree is done.
    """

    before: Optional[Hook] = None
    visit: Optional[Hook] = None
    after: Optional[Hook] = None


@dataclass
class TraversalOutcome:
    """What a walk produced: the edited unit, user state, and visit count."""

    unit: SourceUnit
    state: Any
    visited: int


class Cursor:
    """Hook-side view of the current node plus staged edits against it."""

    def __init__(self, unit: SourceUnit, node: AstNode, ancestors: tuple[AstNode, ...]) -> None:
        self._unit = unit
        self.node = node
        self.ancestors = ancestors
        self.state: Any = None
        self._staged: list[Callable[[], None]] = []

    @property
    def parent(self) -> Optional[AstNode]:
        return self.ancestors[-1] if self.ancestors else None

    @property
    def depth(self) -> int:
        return len(self.ancestors)

    def fresh_id(self) -> int:
        """Allocate a node id unused anywhere in the walked unit."""
        return self._unit.fresh_id()

    # -- staged edits ----------------------------------------------------

    def set(self, name: str, value: Any) -> None:
        """Stage a field update on the current node."""
        check_field(self.node.kind, name, value)
        self._staged.append(lambda: self.node.set(name, value))

    def add_child(self, child: AstNode) -> None:
        self._check_ids(child)
        self._staged.append(lambda: self.node.add_child(child))

    def insert_child(self, index: int, child: AstNode) -> None:
        self._check_ids(child)
        self._staged.append(lambda: self.node.insert_child(index, child))

    def remove_child(self, index: int) -> None:
        self._staged.append(lambda: self.node.remove_child(index))

    def replace_child(self, index: int, child: AstNode) -> None:
        self._check_ids(child)
        self._staged.append(lambda: self.node.replace_child(index, child))

    def _check_ids(self, subtree: AstNode) -> None:
        incoming = {node.id for node in subtree.walk()}
        existing = set(self._unit.ids())
        clash = existing & incoming
        if clash:
            raise IdCollisionError(
                f"staged subtree reuses ids {sorted(clash)}; allocate with "
                "fresh_id or clone_with_fresh_ids"
            )

    def _flush(self) -> None:
        staged, self._staged = self._staged, []
        for apply_edit in staged:
            apply_edit()


def _run_hook(hook: Optional[Hook], cursor: Cursor, phase: str) -> None:
    if hook is None:
        return
    try:
        hook(cursor)
    except Exception as exc:
        raise HookError(
            f"{phase} hook failed at {cursor.node.kind.value} "
            f"(id {cursor.node.id}): {exc}"
        ) from exc
    cursor._flush()


def walk(unit: SourceUnit, hooks: Hooks, state: Any = None) -> TraversalOutcome:
    """Traverse a copy of ``unit`` pre-order, applying hook edits.

    Returns the edited copy; the input unit is never modified.  The edited
    tree is re-validated, so a walk cannot hand back a structurally broken
    unit.
    """
    working = unit.clone()
    counter = [0]
    if state is None:
        state = {}

    def descend(node: AstNode, ancestors: tuple[AstNode, ...]) -> None:
        cursor = Cursor(working, node, ancestors)
        cursor.state = state
        _run_hook(hooks.before, cursor, "before")
        _run_hook(hooks.visit, cursor, "visit")
        counter[0] += 1
        below = ancestors + (node,)
        index = 0
        while index < len(node.children):
            descend(node.children[index], below)
            index += 1
        _run_hook(hooks.after, cursor, "after")

    descend(working.root, ())
    problems = [d for d in validate(working) if d.severity == "error"]
    if problems:
        raise ValidationError(problems)
    return TraversalOutcome(unit=working, state=state, visited=counter[0])
