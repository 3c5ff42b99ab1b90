"""Node model: schema enforcement, equality, arity, and id management."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solsift import (
    ArityError,
    AstNode,
    FieldTypeError,
    IdCollisionError,
    NodeKind,
    SourceUnit,
    Span,
    UnknownFieldError,
    arity_errors,
    check_arity,
    clone_with_fresh_ids,
    comparable_fields,
    duplicate_ids,
    graft,
    structurally_equal,
    tree_arity_errors,
)

K = NodeKind


def ident(nid, name, ref=None):
    attrs = {"name": name}
    if ref is not None:
        attrs["referenced_declaration"] = ref
    return AstNode(nid, K.IDENTIFIER, attrs)


def number(nid, value):
    return AstNode(nid, K.LITERAL, {"kind": "number", "value": str(value)})


def binop(nid, op, left, right):
    return AstNode(nid, K.BINARY_OPERATION, {"operator": op}, [left, right])


# -- field schema ---------------------------------------------------------------


def test_set_rejects_unknown_field():
    node = ident(1, "x")
    with pytest.raises(UnknownFieldError):
        node.set("no_such_field", 1)


def test_set_rejects_wrong_type():
    node = ident(1, "x")
    with pytest.raises(FieldTypeError):
        node.set("name", 42)


def test_bool_not_accepted_for_int_field():
    node = ident(1, "x")
    with pytest.raises(FieldTypeError):
        node.set("referenced_declaration", True)


def test_get_returns_default_for_absent_field():
    node = AstNode(1, K.FUNCTION_DEFINITION, {"name": "f"})
    assert node.get("visibility") is None
    assert node.get("visibility", "public") == "public"


def test_constructor_validates_attributes():
    with pytest.raises(UnknownFieldError):
        AstNode(1, K.IDENTIFIER, {"bogus": 1})


def test_span_roundtrip():
    span = Span.parse("12:34:0")
    assert (span.offset, span.length, span.file) == (12, 34, 0)
    assert str(span) == "12:34:0"


# -- children management ----------------------------------------------------------


def test_child_edits():
    left = number(2, 1)
    right = number(3, 2)
    node = binop(1, "+", left, right)
    swapped = number(4, 9)
    node.replace_child(1, swapped)
    assert node.children == [left, swapped]
    node.remove_child(0)
    assert node.children == [swapped]
    node.insert_child(0, left)
    assert node.children == [left, swapped]
    with pytest.raises(IndexError):
        node.remove_child(5)


def test_walk_is_preorder():
    tree = binop(1, "+", binop(2, "*", number(3, 1), number(4, 2)), number(5, 3))
    assert [n.id for n in tree.walk()] == [1, 2, 3, 4, 5]


def test_find_by_kind_and_name():
    tree = binop(1, "+", ident(2, "alpha"), ident(3, "beta"))
    assert tree.find(K.IDENTIFIER, "beta").id == 3
    assert tree.find(K.LITERAL) is None


# -- structural equality -----------------------------------------------------------


def expression_trees():
    leaves = st.one_of(
        st.integers(0, 3).map(lambda v: lambda nid: number(nid, v)),
        st.sampled_from("abc").map(lambda s: lambda nid: ident(nid, s)),
    )

    return st.recursive(
        leaves,
        lambda inner: st.tuples(st.sampled_from("+-*"), inner, inner).map(
            lambda t: lambda nid: binop(
                nid, t[0], t[1](nid * 2 + 100), t[2](nid * 2 + 101)
            )
        ),
        max_leaves=6,
    )


@given(expression_trees())
@settings(max_examples=60, deadline=None)
def test_equality_ignores_ids_and_spans(make):
    a = make(1)
    b = make(7919)
    for node in b.walk():
        node.span = Span(offset=node.id * 3, length=5)
    assert structurally_equal(a, b)


@given(expression_trees())
@settings(max_examples=60, deadline=None)
def test_equality_is_reflexive(make):
    tree = make(1)
    assert structurally_equal(tree, tree)
    assert structurally_equal(tree, tree.clone())


@given(expression_trees(), expression_trees())
@settings(max_examples=60, deadline=None)
def test_equality_is_symmetric(make_a, make_b):
    a, b = make_a(1), make_b(1)
    assert structurally_equal(a, b) == structurally_equal(b, a)


def test_equality_ignores_reference_targets():
    a = ident(1, "x", ref=10)
    b = ident(2, "x", ref=99)
    assert structurally_equal(a, b)
    assert "referenced_declaration" not in comparable_fields(a)


def test_equality_detects_field_change():
    assert not structurally_equal(number(1, 1), number(1, 2))
    assert not structurally_equal(ident(1, "x"), number(1, 1))


def test_equality_detects_child_count_change():
    a = binop(1, "+", number(2, 1), number(3, 2))
    b = AstNode(1, K.BINARY_OPERATION, {"operator": "+"}, [number(2, 1)])
    assert not structurally_equal(a, b)


@given(expression_trees())
@settings(max_examples=40, deadline=None)
def test_edit_then_revert_restores_equality(make):
    original = make(1)
    edited = original.clone()
    target = next(n for n in edited.walk() if n.kind is K.LITERAL or n.kind is K.IDENTIFIER)
    if target.kind is K.LITERAL:
        old = target.get("value")
        target.set("value", old + "9")
        assert not structurally_equal(original, edited)
        target.set("value", old)
    else:
        old = target.get("name")
        target.set("name", old + "_renamed")
        assert not structurally_equal(original, edited)
        target.set("name", old)
    assert structurally_equal(original, edited)


# -- arity -----------------------------------------------------------------------


def test_binary_arity_enforced():
    bad = AstNode(1, K.BINARY_OPERATION, {"operator": "+"}, [number(2, 1)])
    problems = arity_errors(bad)
    assert problems
    with pytest.raises(ArityError):
        check_arity(bad)


def test_leaf_must_have_no_children():
    bad = AstNode(1, K.IDENTIFIER, {"name": "x"}, [number(2, 1)])
    assert arity_errors(bad)


def test_tree_arity_walks_descendants():
    bad_leaf = AstNode(3, K.BREAK, {}, [number(4, 1)])
    tree = AstNode(1, K.BLOCK, {}, [AstNode(2, K.BLOCK, {}, [bad_leaf])])
    assert tree_arity_errors(tree)


def test_function_definition_structure_checked():
    plist = lambda nid: AstNode(nid, K.PARAMETER_LIST, {})
    ok = AstNode(
        1,
        K.FUNCTION_DEFINITION,
        {"name": "f", "visibility": "public", "state_mutability": "nonpayable"},
        [plist(2), plist(3), AstNode(4, K.BLOCK, {})],
    )
    assert not arity_errors(ok)
    missing_returns = AstNode(
        5,
        K.FUNCTION_DEFINITION,
        {"name": "f", "visibility": "public", "state_mutability": "nonpayable"},
        [plist(6)],
    )
    assert arity_errors(missing_returns)


# -- documents and ids -------------------------------------------------------------


def make_unit():
    body = AstNode(4, K.BLOCK, {})
    fn = AstNode(
        3,
        K.FUNCTION_DEFINITION,
        {"name": "f", "visibility": "public", "state_mutability": "nonpayable"},
        [AstNode(5, K.PARAMETER_LIST, {}), AstNode(6, K.PARAMETER_LIST, {}), body],
    )
    contract = AstNode(
        2, K.CONTRACT_DEFINITION, {"name": "C", "contract_kind": "contract"}, [fn]
    )
    root = AstNode(1, K.SOURCE_UNIT, {"path": "c.sol"}, [contract])
    return SourceUnit(root)


def test_fresh_ids_are_unique():
    unit = make_unit()
    seen = set(unit.ids())
    for _ in range(5):
        new = unit.fresh_id()
        assert new not in seen
        seen.add(new)


def test_node_by_id_lookup():
    unit = make_unit()
    assert unit.node_by_id(3).get("name") == "f"
    assert unit.node_by_id(999) is None


def test_duplicate_ids_detected():
    unit = make_unit()
    unit.root.children[0].children[0].id = 1
    assert 1 in duplicate_ids(unit.root)


def test_graft_rejects_id_collisions():
    unit = make_unit()
    body = unit.node_by_id(4)
    with pytest.raises(IdCollisionError):
        graft(unit, body, 0, AstNode(3, K.BREAK, {}))


def test_graft_inserts_and_bumps_counter():
    unit = make_unit()
    body = unit.node_by_id(4)
    stmt = AstNode(40, K.BREAK, {})
    graft(unit, body, 0, stmt)
    assert unit.node_by_id(40) is stmt
    assert unit.fresh_id() > 40


def test_clone_with_fresh_ids_renumbers_and_matches():
    unit = make_unit()
    fn = unit.node_by_id(3)
    copy = clone_with_fresh_ids(unit, fn)
    assert structurally_equal(fn, copy)
    assert not set(n.id for n in copy.walk()) & set(unit.ids())
    assert all(n.span is None for n in copy.walk())


def test_unit_clone_is_deep():
    unit = make_unit()
    twin = unit.clone()
    twin.node_by_id(3).set("name", "g")
    assert unit.node_by_id(3).get("name") == "f"
    assert structurally_equal(unit.root.children[0], twin.root.children[0]) is False
