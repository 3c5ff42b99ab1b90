"""Source regeneration: golden files, precedence, and statement forms."""

import pytest

from solsift import AstNode, NodeKind, emit_node, emit_source

from conftest import fixture_names, golden_path, load_fixture

K = NodeKind

_ids = iter(range(10_000, 99_999))


def ident(name):
    return AstNode(next(_ids), K.IDENTIFIER, {"name": name})


def num(value):
    return AstNode(next(_ids), K.LITERAL, {"kind": "number", "value": str(value)})


def bin_(op, left, right):
    return AstNode(next(_ids), K.BINARY_OPERATION, {"operator": op}, [left, right])


def un_(op, sub, prefix=True):
    return AstNode(
        next(_ids), K.UNARY_OPERATION, {"operator": op, "prefix": prefix}, [sub]
    )


def ternary(c, t, f):
    return AstNode(next(_ids), K.CONDITIONAL, {}, [c, t, f])


def group(inner):
    return AstNode(next(_ids), K.TUPLE_EXPRESSION, {"is_inline_array": False}, [inner])


@pytest.mark.parametrize("name", fixture_names())
def test_corpus_golden_files_match(name):
    unit = load_fixture(name)
    assert emit_source(unit) == golden_path(name).read_text(encoding="utf-8")


@pytest.mark.parametrize("name", fixture_names())
def test_emission_is_deterministic(name):
    unit = load_fixture(name)
    assert emit_source(unit) == emit_source(unit)
    assert emit_source(unit.clone()) == emit_source(unit)


def test_goldens_end_with_single_newline():
    for name in fixture_names():
        text = golden_path(name).read_text(encoding="utf-8")
        assert text.endswith("\n") and not text.endswith("\n\n")


# -- expression precedence ----------------------------------------------------------


@pytest.mark.parametrize(
    "build, expected",
    [
        (lambda: bin_("+", bin_("*", ident("a"), ident("b")), ident("c")), "a * b + c"),
        (lambda: bin_("*", bin_("+", ident("a"), ident("b")), ident("c")), "(a + b) * c"),
        (lambda: bin_("-", ident("a"), bin_("-", ident("b"), ident("c"))), "a - (b - c)"),
        (lambda: bin_("-", bin_("-", ident("a"), ident("b")), ident("c")), "a - b - c"),
        (lambda: bin_("**", ident("a"), bin_("**", ident("b"), ident("c"))), "a ** b ** c"),
        (lambda: bin_("**", bin_("**", ident("a"), ident("b")), ident("c")), "(a ** b) ** c"),
        (
            lambda: bin_("||", bin_("&&", ident("a"), ident("b")), ident("c")),
            "a && b || c",
        ),
        (
            lambda: bin_("&&", ident("a"), bin_("||", ident("b"), ident("c"))),
            "a && (b || c)",
        ),
        (lambda: un_("-", bin_("+", ident("a"), ident("b"))), "-(a + b)"),
        (lambda: un_("-", un_("-", ident("a"))), "-(-a)"),
        (lambda: un_("!", un_("!", ident("a"))), "!(!a)"),
        (lambda: un_("~", un_("-", ident("a"))), "~-a"),
        (lambda: bin_("+", un_("-", ident("a")), ident("b")), "-a + b"),
        (
            lambda: ternary(ident("c"), ident("a"), ternary(ident("d"), ident("x"), ident("y"))),
            "c ? a : d ? x : y",
        ),
        (
            lambda: bin_("+", group(ternary(ident("c"), ident("a"), ident("b"))), num(1)),
            "(c ? a : b) + 1",
        ),
        (lambda: group(bin_("+", ident("a"), ident("b"))), "(a + b)"),
        (
            lambda: bin_("==", bin_("<", ident("a"), ident("b")), ident("ok")),
            "a < b == ok",
        ),
        (
            lambda: bin_(">>", ident("a"), bin_("+", ident("b"), num(2))),
            "a >> b + 2",
        ),
        (
            lambda: bin_("+", bin_(">>", ident("a"), ident("b")), num(2)),
            "(a >> b) + 2",
        ),
    ],
)
def test_expression_rendering(build, expected):
    assert emit_node(build()) == expected


def test_delete_operator_spaced():
    assert emit_node(un_("delete", ident("x"))) == "delete x"


def test_postfix_operators():
    assert emit_node(un_("++", ident("i"), prefix=False)) == "i++"
    assert emit_node(un_("--", ident("i"), prefix=False)) == "i--"


def test_string_literal_escaping():
    lit = AstNode(
        next(_ids), K.LITERAL, {"kind": "string", "value": 'he said "hi"\n\tdone\\'}
    )
    assert emit_node(lit) == '"he said \\"hi\\"\\n\\tdone\\\\"'


def test_subdenomination_rendered():
    lit = AstNode(
        next(_ids),
        K.LITERAL,
        {"kind": "number", "value": "2", "subdenomination": "ether"},
    )
    assert emit_node(lit) == "2 ether"


# -- statement and declaration forms ------------------------------------------------


def test_inline_if_single_statement():
    unit = load_fixture("item_uint2str")
    text = emit_source(unit)
    assert '        if (i == 0) return "0";\n' in text


def test_else_chain_layout():
    unit = load_fixture("enum_shapes")
    text = emit_source(unit)
    assert "        } else if (stage == Stage.Locked) {\n" in text


def test_interface_functions_end_with_semicolon():
    text = golden_path("interface_token").read_text(encoding="utf-8")
    assert "function transfer(address to, uint256 value) external returns (bool);" in text
    assert "function totalSupply() external view returns (uint256);" in text


def test_modern_constructor_keyword():
    text = golden_path("constructor_modern").read_text(encoding="utf-8")
    assert "    constructor(uint256 seedValue) public {\n" in text


def test_fallback_function_has_no_name():
    text = golden_path("fallback_machine").read_text(encoding="utf-8")
    assert "    function() public payable {\n" in text


def test_degenerate_for_header():
    text = golden_path("loops_gallery").read_text(encoding="utf-8")
    assert "for (;;) {" in text


def test_do_while_layout():
    text = golden_path("loops_gallery").read_text(encoding="utf-8")
    assert "        do {\n" in text
    assert "        } while (x < 10);\n" in text


def test_assembly_block_rendered():
    text = golden_path("assembly_box").read_text(encoding="utf-8")
    assert "assembly { result := add(x, y) }" in text


def test_placeholder_statement():
    text = golden_path("state_machine").read_text(encoding="utf-8")
    assert "        _;\n" in text


def test_empty_contract_body_is_inline():
    text = golden_path("do_nothing").read_text(encoding="utf-8")
    assert "contract DoNothing {}" in text
