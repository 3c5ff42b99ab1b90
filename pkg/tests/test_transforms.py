"""Transforms: rename, fault seeding, arithmetic guards, type widening."""

import warnings

import pytest

from solsift import (
    GUARD_CLASSES,
    VULNERABILITIES,
    NodeKind,
    NoInjectableFunctionError,
    RenameCollisionWarning,
    TargetNotFoundError,
    ast_diff,
    emit_node,
    emit_source,
    insert_assertions,
    make_signed,
    rename,
    seed_fault,
    structurally_equal,
)

from conftest import load_fixture

K = NodeKind


def body_lines(unit, function, count=None):
    text = emit_source(unit)
    lines = text.splitlines()
    start = next(
        i for i, l in enumerate(lines) if l.lstrip().startswith(f"function {function}(")
    )
    indent = len(lines[start]) - len(lines[start].lstrip())
    closer = " " * indent + "}"
    out = []
    for line in lines[start + 1 :]:
        if line == closer:
            break
        out.append(line.strip())
    return out[:count] if count else out


# -- rename -------------------------------------------------------------------------


def test_rename_variable_rebinds_all_uses():
    unit = load_fixture("aztra_token")
    renamed, count = rename(unit, "variable", "balanceOf", "holdings")
    assert count >= 10
    text = emit_source(renamed)
    assert "balanceOf" not in text
    assert "mapping(address => uint256) public holdings;" in text
    assert "holdings[_from] -= _value;" in text


def test_rename_roundtrip_restores_structure():
    unit = load_fixture("aztra_token")
    once, _ = rename(unit, "function", "_transfer", "_move")
    back, _ = rename(once, "function", "_move", "_transfer")
    assert structurally_equal(unit.root, back.root)
    assert ast_diff(unit, back) == []


def test_rename_contract_updates_old_style_constructor():
    unit = load_fixture("aztra_token")
    renamed, _ = rename(unit, "contract", "AztraToken", "ZintraToken")
    text = emit_source(renamed)
    assert "contract ZintraToken {" in text
    assert "function ZintraToken() public {" in text
    assert "AztraToken" not in text


def test_rename_updates_using_directive_and_member_call():
    unit = load_fixture("using_for_lib")
    renamed, _ = rename(unit, "contract", "SafeOps", "CheckedOps")
    text = emit_source(renamed)
    assert "library CheckedOps {" in text
    assert "using CheckedOps for uint256;" in text
    assert "SafeOps" not in text

    unit = load_fixture("using_for_lib")
    renamed, _ = rename(unit, "function", "safeAdd", "checkedAdd")
    text = emit_source(renamed)
    assert "function checkedAdd(uint256 a, uint256 b)" in text
    assert "return x.checkedAdd(2);" in text


def test_rename_event_covers_bare_invocations():
    unit = load_fixture("aztra_token")
    renamed, _ = rename(unit, "event", "Transfer", "Moved")
    text = emit_source(renamed)
    assert "event Moved(address indexed from, address indexed to, uint256 value);" in text
    assert "Moved(_from, _to, _value);" in text
    assert "Transfer" not in text


def test_rename_missing_target_raises():
    unit = load_fixture("do_nothing")
    with pytest.raises(TargetNotFoundError):
        rename(unit, "function", "ghost", "spirit")


def test_rename_collision_warns_but_proceeds():
    unit = load_fixture("pure_math")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        renamed, _ = rename(unit, "function", "double", "bump")
    assert any(issubclass(w.category, RenameCollisionWarning) for w in caught)
    assert "function bump(uint256 x)" in emit_source(renamed)


def test_rename_leaves_input_untouched():
    unit = load_fixture("aztra_token")
    rename(unit, "variable", "owner", "admin")
    assert "owner" in emit_source(unit)


def test_rename_shadowed_name_distinguished_by_reference():
    unit = load_fixture("guard_rails")
    renamed, count = rename(unit, "variable", "total", "grandTotal")
    text = emit_source(renamed)
    assert "uint256 public grandTotal;" in text
    assert "grandTotal = grandTotal + x;" in text


# -- fault seeding ------------------------------------------------------------------


def test_vulnerability_catalogue():
    assert list(VULNERABILITIES) == [
        "division-by-zero",
        "signed-underflow",
        "unsigned-overflow",
        "unsigned-underflow",
    ]


def test_seed_unsigned_underflow_exact_lines():
    unit = load_fixture("aztra_token")
    result = seed_fault(unit, "unsigned-underflow", function="transfer")
    lines = body_lines(result.unit, "transfer", count=3)
    assert lines == [
        "uint256 minuend = 20;",
        "uint256 subtrahend = 250;",
        "uint256 result = minuend - subtrahend;",
    ]


def test_seed_is_minimal_and_preserves_ids():
    unit = load_fixture("aztra_token")
    before_ids = set(unit.ids())
    result = seed_fault(unit, "unsigned-underflow", function="transfer")
    after_ids = set(result.unit.ids())
    assert before_ids <= after_ids
    new_nodes = after_ids - before_ids
    assert len(new_nodes) == len(list(result.unit.nodes())) - len(list(unit.nodes()))
    assert list(result.statement_ids) == [
        s.id
        for s in result.unit.root.find(K.FUNCTION_DEFINITION, "transfer")
        .children[-1]
        .children[:3]
    ]
    # removing exactly the three injected statements restores the original tree
    pruned = result.unit.clone()
    body = pruned.root.find(K.FUNCTION_DEFINITION, "transfer").children[-1]
    for _ in range(3):
        body.remove_child(0)
    assert structurally_equal(unit.root, pruned.root)
    assert ast_diff(unit, pruned) == []


def test_seed_variants_render_expected_declarations():
    cases = {
        "unsigned-overflow": [
            "uint8 augend = 255;",
            "uint8 addend = 10;",
            "uint8 result = augend + addend;",
        ],
        "signed-underflow": [
            "int8 minuend = -120;",
            "int8 subtrahend = 100;",
            "int8 result = minuend - subtrahend;",
        ],
        "division-by-zero": [
            "uint256 numerator = 20;",
            "uint256 divisor = 0;",
            "uint256 result = numerator / divisor;",
        ],
    }
    for vuln, expected in cases.items():
        unit = load_fixture("loops_gallery")
        result = seed_fault(unit, vuln, function="drain")
        assert body_lines(result.unit, "drain", count=3) == expected


def test_seed_default_picks_first_function_with_body():
    unit = load_fixture("aztra_token")
    result = seed_fault(unit, "unsigned-overflow")
    assert result.function == "AztraToken.AztraToken"


def test_seed_rejects_unknown_vulnerability():
    unit = load_fixture("do_nothing")
    with pytest.raises(ValueError):
        seed_fault(unit, "stack-overflow")


def test_seed_requires_injectable_function():
    unit = load_fixture("do_nothing")
    with pytest.raises(NoInjectableFunctionError):
        seed_fault(unit, "unsigned-underflow")
    interface = load_fixture("interface_token")
    with pytest.raises(Exception):
        seed_fault(interface, "unsigned-underflow", function="transfer")


# -- arithmetic guards ---------------------------------------------------------------


def test_subtraction_guard_template():
    unit = load_fixture("guard_rails")
    report = insert_assertions(unit)
    lines = body_lines(report.unit, "carve")
    assert lines[0] == "uint256 k = len - 1;"
    assert lines[1] == "assert(len >= k && len >= 1);"


def test_division_guard_precedes_site():
    unit = load_fixture("guard_rails")
    report = insert_assertions(unit)
    lines = body_lines(report.unit, "split")
    assert lines[0] == "require(count != 0);"
    assert lines[1] == "uint256 share = pot / count;"


def test_addition_guard_for_compound_assignment():
    unit = load_fixture("aztra_token")
    report = insert_assertions(unit, only=["addition"])
    lines = body_lines(report.unit, "mintToken")
    site = lines.index("totalSupply += mintedAmount;")
    assert lines[site + 1] == "assert(totalSupply >= totalSupply && totalSupply >= mintedAmount);"
    # indexed-access targets are reported but left unguarded
    skipped = [
        s
        for s in report.sites
        if s.function.endswith("mintToken") and s.action == "skipped"
    ]
    assert any(s.reason == "target-not-identifier" for s in skipped)


def test_compound_assignment_guard_on_identifier_target():
    unit = load_fixture("expiry_mini")
    report = insert_assertions(unit, only=["addition"])
    lines = body_lines(report.unit, "extend")
    assert lines == [
        "deadline += extra;",
        "assert(deadline >= deadline && deadline >= extra);",
    ]


def test_multiplication_guard_emits_branching_check():
    unit = load_fixture("guard_rails")
    report = insert_assertions(unit, only=["multiplication"])
    lines = body_lines(report.unit, "surface")
    assert lines[0] == "uint256 area = w * h;"
    assert lines[1] == "if (w != 0 && h != 0) assert(area >= w && area >= h); else assert(area == 0);"


def test_signed_subtraction_guard():
    unit = load_fixture("signed_math")
    report = insert_assertions(unit, only=["subtraction"])
    lines = body_lines(report.unit, "measure")
    assert lines[0] == "int256 gap = ceiling - floorLevel;"
    assert lines[1] == "assert((floorLevel >= 0 && gap <= ceiling) || (floorLevel < 0 && gap > ceiling));"


def test_signed_addition_guard():
    unit = load_fixture("signed_math")
    report = insert_assertions(unit, only=["addition"])
    lines = body_lines(report.unit, "lift")
    assert lines[0] == "int256 top = ceiling + boost;"
    assert lines[1] == "assert((boost >= 0 && top >= ceiling) || (boost < 0 && top < ceiling));"


def test_signed_multiplication_guard():
    unit = load_fixture("signed_math")
    report = insert_assertions(unit, only=["multiplication"])
    lines = body_lines(report.unit, "amplify")
    assert lines[1].startswith("if (delta != 0 && 3 != 0) assert(")


def test_guard_sites_report_reasons():
    unit = load_fixture("guard_rails")
    report = insert_assertions(unit)
    by_fn = {}
    for site in report.sites:
        by_fn.setdefault(site.function.split(".")[-1], []).append(site)
    awkward = by_fn["awkward"]
    reasons = {s.reason for s in awkward if s.action == "skipped"}
    assert "operand-not-identifier-or-literal" in reasons
    assert "target-not-identifier" in reasons


def test_guard_pass_is_idempotent():
    unit = load_fixture("guard_rails")
    first = insert_assertions(unit)
    second = insert_assertions(first.unit)
    assert emit_source(second.unit) == emit_source(first.unit)
    assert all(s.action == "skipped" for s in second.sites if s.reason == "already-guarded")
    assert any(s.reason == "already-guarded" for s in second.sites)


def test_guard_class_filter_validated():
    unit = load_fixture("guard_rails")
    with pytest.raises(ValueError):
        insert_assertions(unit, only=["exponentiation"])
    assert set(GUARD_CLASSES) == {"addition", "subtraction", "multiplication", "division"}


def test_unsigned_guard_on_unannotated_types_assumes_unsigned():
    unit = load_fixture("item_uint2str")
    report = insert_assertions(unit, only=["subtraction"])
    lines = body_lines(report.unit, "uint2str")
    site = lines.index("uint k = len - 1;")
    assert lines[site + 1] == "assert(len >= k && len >= 1);"


# -- make-signed --------------------------------------------------------------------


def test_make_signed_widens_declarations():
    unit = load_fixture("guard_rails")
    changed, count = make_signed(unit)
    text = emit_source(changed)
    assert "int256 public total;" in text
    assert "function carve(int256 len) public pure returns (int256) {" in text
    assert count > 5


def test_make_signed_preserves_conversions_and_new():
    unit = load_fixture("mapping_bank")
    changed, _ = make_signed(unit)
    text = emit_source(changed)
    assert "return uint256(raw);" in text
    assert "function toUnits(int256 raw) public pure returns (int256) {" in text

    unit = load_fixture("arrays_store")
    changed, _ = make_signed(unit)
    text = emit_source(changed)
    assert "new uint256[](n)" in text
    assert "int256[] memory scratch" in text


def test_make_signed_handles_bare_uint():
    unit = load_fixture("item_uint2str")
    changed, _ = make_signed(unit)
    text = emit_source(changed)
    assert "function uint2str(int i) internal pure returns (string) {" in text
    assert "int j = i;" in text


def test_make_signed_already_signed_unchanged():
    unit = load_fixture("signed_math")
    changed, count = make_signed(unit)
    assert count == 0
    assert structurally_equal(unit.root, changed.root)


def test_guard_signedness_follows_declarations_after_widening():
    unit = load_fixture("guard_rails")
    widened, _ = make_signed(unit)
    report = insert_assertions(widened, only=["subtraction"])
    lines = body_lines(report.unit, "carve")
    assert lines[1] == "assert((1 >= 0 && k <= len) || (1 < 0 && k > len));"
