"""Traversal engine: hook ordering, staged mutation, and failure isolation."""

import pytest

from solsift import (
    AstNode,
    HookError,
    Hooks,
    NodeKind,
    ValidationError,
    structurally_equal,
    walk,
)

from conftest import load_fixture

K = NodeKind


def test_hook_order_is_before_visit_after_per_node():
    unit = load_fixture("do_nothing")
    events = []
    hooks = Hooks(
        before=lambda c: events.append(("before", c.node.id)),
        visit=lambda c: events.append(("visit", c.node.id)),
        after=lambda c: events.append(("after", c.node.id)),
    )
    outcome = walk(unit, hooks)
    root_id = unit.root.id
    assert events[0] == ("before", root_id)
    assert events[1] == ("visit", root_id)
    assert events[-1] == ("after", root_id)
    for nid in (n.id for n in unit.nodes()):
        b = events.index(("before", nid))
        v = events.index(("visit", nid))
        a = events.index(("after", nid))
        assert b < v < a
    assert outcome.visited == sum(1 for _ in unit.nodes())


def test_original_unit_never_mutated():
    unit = load_fixture("legacy_throw")

    def rename(cursor):
        if cursor.node.kind is K.CONTRACT_DEFINITION:
            cursor.set("name", "Altered")

    outcome = walk(unit, Hooks(visit=rename))
    assert unit.root.find(K.CONTRACT_DEFINITION, "LegacyGate") is not None
    assert outcome.unit.root.find(K.CONTRACT_DEFINITION, "Altered") is not None
    assert not structurally_equal(unit.root, outcome.unit.root)


def test_cursor_exposes_ancestry_and_state():
    unit = load_fixture("do_nothing")
    depths = {}

    def visit(cursor):
        depths[cursor.node.id] = cursor.depth
        if cursor.parent is not None:
            assert cursor.ancestors[-1] is cursor.parent
        cursor.state.setdefault("count", 0)
        cursor.state["count"] += 1

    outcome = walk(unit, Hooks(visit=visit), state={})
    assert depths[unit.root.id] == 0
    assert outcome.state["count"] == outcome.visited


def test_staged_insertion_is_traversed():
    unit = load_fixture("legacy_throw")
    seen = []

    def before(cursor):
        if cursor.node.kind is K.BLOCK and cursor.parent.kind is K.FUNCTION_DEFINITION:
            if not cursor.state.get("done"):
                cursor.state["done"] = True
                stmt = AstNode(cursor.fresh_id(), K.CONTINUE, {})
                cursor.insert_child(0, stmt)

    def visit(cursor):
        if cursor.node.kind is K.CONTINUE:
            seen.append(cursor.node.id)

    outcome = walk(unit, Hooks(before=before, visit=visit), state={})
    assert len(seen) == 1
    body = outcome.unit.root.find(K.FUNCTION_DEFINITION, "guarded").children[-1]
    assert body.children[0].kind is K.CONTINUE


def test_staged_removal_skips_descent():
    unit = load_fixture("loops_gallery")
    visited_loops = []

    def before(cursor):
        if cursor.node.kind is K.FUNCTION_DEFINITION and cursor.node.name == "drain":
            cursor.remove_child(len(cursor.node.children) - 1)

    def visit(cursor):
        if cursor.node.kind is K.WHILE_STATEMENT:
            visited_loops.append(cursor.node.id)

    outcome = walk(unit, Hooks(before=before, visit=visit))
    drained = outcome.unit.root.find(K.FUNCTION_DEFINITION, "drain")
    assert all(c.kind is not K.BLOCK for c in drained.children)
    original_whiles = sum(1 for n in unit.nodes() if n.kind is K.WHILE_STATEMENT)
    assert len(visited_loops) == original_whiles - 1


def test_replace_child_swaps_subtree():
    unit = load_fixture("do_nothing")

    def before(cursor):
        if cursor.node.kind is K.SOURCE_UNIT:
            replacement = AstNode(
                cursor.fresh_id(),
                K.CONTRACT_DEFINITION,
                {"name": "Swapped", "contract_kind": "contract"},
            )
            cursor.replace_child(len(cursor.node.children) - 1, replacement)

    outcome = walk(unit, Hooks(before=before))
    assert outcome.unit.root.find(K.CONTRACT_DEFINITION, "Swapped") is not None
    assert outcome.unit.root.find(K.CONTRACT_DEFINITION, "DoNothing") is None


def test_set_rejects_bad_field_eagerly():
    unit = load_fixture("do_nothing")

    def visit(cursor):
        if cursor.node.kind is K.CONTRACT_DEFINITION:
            cursor.set("name", 12)

    with pytest.raises(HookError) as excinfo:
        walk(unit, Hooks(visit=visit))
    assert "ContractDefinition" in str(excinfo.value)


def test_hook_exception_wrapped_and_input_intact():
    unit = load_fixture("do_nothing")

    def visit(cursor):
        if cursor.node.kind is K.CONTRACT_DEFINITION:
            raise RuntimeError("exploded")

    with pytest.raises(HookError) as excinfo:
        walk(unit, Hooks(visit=visit))
    assert "exploded" in str(excinfo.value)
    assert "visit hook failed" in str(excinfo.value)
    assert unit.root.find(K.CONTRACT_DEFINITION, "DoNothing") is not None


def test_inserted_id_collision_rejected():
    unit = load_fixture("do_nothing")
    taken = unit.root.id

    def before(cursor):
        if cursor.node.kind is K.CONTRACT_DEFINITION:
            cursor.add_child(AstNode(taken, K.ENUM_DEFINITION, {"name": "E"}))

    with pytest.raises(HookError):
        walk(unit, Hooks(before=before))


def test_structural_damage_caught_after_walk():
    unit = load_fixture("do_nothing")

    def before(cursor):
        if cursor.node.kind is K.CONTRACT_DEFINITION:
            cursor.add_child(AstNode(cursor.fresh_id(), K.PARAMETER_LIST, {}))

    with pytest.raises(ValidationError):
        walk(unit, Hooks(before=before))


def test_state_defaults_to_fresh_dict():
    unit = load_fixture("do_nothing")
    outcome = walk(unit, Hooks())
    assert outcome.state == {}
