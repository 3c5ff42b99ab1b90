#!/usr/bin/env python3
"""Build the round-trip corpus: compiler-style AST fixtures plus goldens.

Each fixture is a compact JSON AST document shaped like ``solc
--ast-compact-json`` output.  The documents are described with small
builder helpers below; a finalize pass assigns node ids in pre-order,
fabricates source spans, and resolves declaration references (helpers
accept the referenced builder dict and the pass replaces it with its id).

Golden ``.sol`` files are produced by running the package's own loader and
emitter over each document, so building the corpus also proves every
fixture ingests cleanly.  Regenerate everything with:

    python3 scripts/build_corpus.py
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from solsift import emit_source, load_ast  # noqa: E402


# -- builder helpers -----------------------------------------------------------


def _n(node_type: str, **fields):
    return {"nodeType": node_type, **fields}


def su(path, *nodes):
    return _n("SourceUnit", absolutePath=path, nodes=list(nodes))


def pragma(*literals):
    return _n("PragmaDirective", literals=list(literals))


def imp(file, unit_alias="", aliases=None):
    symbol_aliases = [
        {"foreign": {"name": foreign}, "local": local} for foreign, local in aliases or []
    ]
    return _n(
        "ImportDirective", file=file, unitAlias=unit_alias, symbolAliases=symbol_aliases
    )


def contract(name, *members, kind="contract", bases=()):
    return _n(
        "ContractDefinition",
        name=name,
        contractKind=kind,
        baseContracts=[
            _n("InheritanceSpecifier", baseName=udtn(base), arguments=None)
            for base in bases
        ],
        nodes=list(members),
    )


def struct(name, *members):
    return _n("StructDefinition", name=name, members=list(members))


def enum(name, *values):
    return _n(
        "EnumDefinition", name=name, members=[_n("EnumValue", name=v) for v in values]
    )


def state_var(name, type_, visibility="internal", value=None, constant=False):
    return _n(
        "VariableDeclaration",
        name=name,
        stateVariable=True,
        visibility=visibility,
        constant=constant,
        typeName=type_,
        value=value,
    )


def param(name="", type_=None, storage="default", indexed=False):
    return _n(
        "VariableDeclaration",
        name=name,
        stateVariable=False,
        storageLocation=storage,
        indexed=indexed,
        typeName=type_,
    )


def plist(*parameters):
    return _n("ParameterList", parameters=list(parameters))


def func(
    name,
    params=None,
    returns=None,
    body=None,
    visibility="public",
    mutability="nonpayable",
    constructor=False,
    modifiers=None,
):
    return _n(
        "FunctionDefinition",
        name=name,
        isConstructor=constructor,
        visibility=visibility,
        stateMutability=mutability,
        parameters=plist(*(params or [])),
        returnParameters=plist(*(returns or [])),
        modifiers=list(modifiers or []),
        body=body,
    )


def modifier_def(name, body, params=None):
    return _n(
        "ModifierDefinition", name=name, parameters=plist(*(params or [])), body=body
    )


def mod_inv(name, ref=None, args=None):
    return _n(
        "ModifierInvocation", modifierName=ident(name, ref), arguments=args
    )


def event(name, *parameters, anonymous=False):
    return _n(
        "EventDefinition",
        name=name,
        anonymous=anonymous,
        parameters=plist(*parameters),
    )


def using(library, type_=None):
    return _n("UsingForDirective", libraryName=udtn(library), typeName=type_)


def block(*statements):
    return _n("Block", statements=list(statements))


def if_(condition, then, els=None):
    return _n("IfStatement", condition=condition, trueBody=then, falseBody=els)


def while_(condition, body):
    return _n("WhileStatement", condition=condition, body=body)


def do_while(body, condition):
    return _n("DoWhileStatement", condition=condition, body=body)


def for_(body, init=None, cond=None, loop=None):
    return _n(
        "ForStatement",
        initializationExpression=init,
        condition=cond,
        loopExpression=loop,
        body=body,
    )


def ret(expression=None):
    return _n("Return", expression=expression)


def brk():
    return _n("Break")


def cont():
    return _n("Continue")


def throw():
    return _n("Throw")


def emit_(event_call):
    return _n("EmitStatement", eventCall=event_call)


def estmt(expression):
    return _n("ExpressionStatement", expression=expression)


def vds(declarations, init=None):
    return _n(
        "VariableDeclarationStatement", declarations=declarations, initialValue=init
    )


def asm(operations):
    return _n("InlineAssembly", operations=operations)


def assign(lhs, rhs, op="="):
    return _n("Assignment", operator=op, leftHandSide=lhs, rightHandSide=rhs)


def bin_(op, left, right):
    return _n("BinaryOperation", operator=op, leftExpression=left, rightExpression=right)


def un_(op, sub, prefix=True):
    return _n("UnaryOperation", operator=op, prefix=prefix, subExpression=sub)


def ternary(condition, when_true, when_false):
    return _n(
        "Conditional",
        condition=condition,
        trueExpression=when_true,
        falseExpression=when_false,
    )


def tup(*components, inline=False):
    return _n("TupleExpression", components=list(components), isInlineArray=inline)


def idx(base, index=None):
    return _n("IndexAccess", baseExpression=base, indexExpression=index)


def mem(base, member, ref=None):
    node = _n("MemberAccess", expression=base, memberName=member)
    if ref is not None:
        node["referencedDeclaration"] = ref
    return node


def call(callee, *arguments, kind="functionCall", names=None):
    return _n(
        "FunctionCall",
        expression=callee,
        arguments=list(arguments),
        names=names or [],
        kind=kind,
    )


def new_(type_):
    return _n("NewExpression", typeName=type_)


def ident(name, ref=None):
    node = _n("Identifier", name=name)
    if ref is not None:
        node["referencedDeclaration"] = ref
    return node


def etn(name):
    return _n("ElementaryTypeName", name=name)


def etn_expr(name):
    return _n("ElementaryTypeNameExpression", typeName=name)


def udtn(name, ref=None):
    node = _n("UserDefinedTypeName", name=name)
    if ref is not None:
        node["referencedDeclaration"] = ref
    return node


def ftn(params=None, returns=None, visibility="internal", mutability="nonpayable"):
    return _n(
        "FunctionTypeName",
        parameterTypes=plist(*(params or [])),
        returnParameterTypes=plist(*(returns or [])),
        visibility=visibility,
        stateMutability=mutability,
    )


def mapping(key, value):
    return _n("Mapping", keyType=key, valueType=value)


def arr(base, length=None):
    return _n("ArrayTypeName", baseType=base, length=length)


def num(value, sub=None):
    node = _n("Literal", kind="number", value=str(value))
    if sub:
        node["subdenomination"] = sub
    return node


def s_lit(text):
    return _n("Literal", kind="string", value=text)


def b_lit(flag):
    return _n("Literal", kind="bool", value="true" if flag else "false")


def finalize(document):
    """Assign ids and spans pre-order, then resolve dict-valued references."""
    counter = itertools.count()
    seen = []

    def assign(node):
        node["id"] = next(counter)
        node["src"] = f"{node['id'] * 7}:5:0"
        seen.append(node)
        for key, value in node.items():
            if key == "referencedDeclaration":
                continue
            if isinstance(value, dict) and "nodeType" in value:
                assign(value)
            elif isinstance(value, list):
                for item in value:
                    if isinstance(item, dict) and "nodeType" in item:
                        assign(item)
                    elif isinstance(item, dict) and "foreign" in item:
                        pass

    assign(document)
    for node in seen:
        ref = node.get("referencedDeclaration")
        if isinstance(ref, dict):
            node["referencedDeclaration"] = ref["id"]
    return document


# -- fixtures -------------------------------------------------------------------


def fixture_aztra_token():
    owner = state_var("owner", etn("address"), visibility="public")
    total_supply = state_var("totalSupply", etn("uint256"), visibility="public")
    balance_of = state_var(
        "balanceOf", mapping(etn("address"), etn("uint256")), visibility="public"
    )
    allowance = state_var(
        "allowance",
        mapping(etn("address"), mapping(etn("address"), etn("uint256"))),
        visibility="public",
    )
    frozen = state_var(
        "frozenAccount", mapping(etn("address"), etn("bool")), visibility="public"
    )
    ev_transfer = event(
        "Transfer",
        param("from", etn("address"), indexed=True),
        param("to", etn("address"), indexed=True),
        param("value", etn("uint256")),
    )
    ev_burn = event(
        "Burn",
        param("from", etn("address"), indexed=True),
        param("value", etn("uint256")),
    )
    ev_frozen = event(
        "FrozenFunds", param("target", etn("address")), param("frozen", etn("bool"))
    )
    only_owner = modifier_def(
        "onlyOwner",
        block(
            estmt(
                call(
                    ident("require"),
                    bin_("==", mem(ident("msg"), "sender"), ident("owner", owner)),
                )
            ),
            _n("PlaceholderStatement"),
        ),
    )

    ctor = func(
        "AztraToken",
        body=block(
            estmt(
                assign(
                    idx(ident("balanceOf", balance_of), mem(ident("msg"), "sender")),
                    num(1000000),
                )
            ),
            estmt(assign(ident("owner", owner), mem(ident("msg"), "sender"))),
        ),
        constructor=True,
    )

    t_from = param("_from", etn("address"))
    t_to = param("_to", etn("address"))
    t_value = param("_value", etn("uint"))
    internal_transfer = func(
        "_transfer",
        params=[t_from, t_to, t_value],
        visibility="internal",
        body=block(
            estmt(call(ident("require"), bin_("!=", ident("_to", t_to), num("0x0")))),
            estmt(
                call(
                    ident("require"),
                    bin_(
                        ">=",
                        idx(ident("balanceOf", balance_of), ident("_from", t_from)),
                        ident("_value", t_value),
                    ),
                )
            ),
            estmt(
                call(
                    ident("require"),
                    un_("!", idx(ident("frozenAccount", frozen), ident("_from", t_from))),
                )
            ),
            estmt(
                assign(
                    idx(ident("balanceOf", balance_of), ident("_from", t_from)),
                    ident("_value", t_value),
                    op="-=",
                )
            ),
            estmt(
                assign(
                    idx(ident("balanceOf", balance_of), ident("_to", t_to)),
                    ident("_value", t_value),
                    op="+=",
                )
            ),
            estmt(
                call(
                    ident("Transfer", ev_transfer),
                    ident("_from", t_from),
                    ident("_to", t_to),
                    ident("_value", t_value),
                )
            ),
        ),
    )

    x_to = param("_to", etn("address"))
    x_value = param("_value", etn("uint256"))
    transfer = func(
        "transfer",
        params=[x_to, x_value],
        body=block(
            estmt(
                call(
                    ident("_transfer", internal_transfer),
                    mem(ident("msg"), "sender"),
                    ident("_to", x_to),
                    ident("_value", x_value),
                )
            )
        ),
    )

    f_from = param("_from", etn("address"))
    f_to = param("_to", etn("address"))
    f_value = param("_value", etn("uint256"))
    transfer_from = func(
        "transferFrom",
        params=[f_from, f_to, f_value],
        returns=[param("success", etn("bool"))],
        body=block(
            estmt(
                call(
                    ident("require"),
                    bin_(
                        "<=",
                        ident("_value", f_value),
                        idx(
                            idx(ident("allowance", allowance), ident("_from", f_from)),
                            mem(ident("msg"), "sender"),
                        ),
                    ),
                )
            ),
            estmt(
                assign(
                    idx(
                        idx(ident("allowance", allowance), ident("_from", f_from)),
                        mem(ident("msg"), "sender"),
                    ),
                    ident("_value", f_value),
                    op="-=",
                )
            ),
            estmt(
                call(
                    ident("_transfer", internal_transfer),
                    ident("_from", f_from),
                    ident("_to", f_to),
                    ident("_value", f_value),
                )
            ),
            ret(b_lit(True)),
        ),
    )

    a_spender = param("_spender", etn("address"))
    a_value = param("_value", etn("uint256"))
    approve = func(
        "approve",
        params=[a_spender, a_value],
        returns=[param("success", etn("bool"))],
        body=block(
            estmt(
                assign(
                    idx(
                        idx(ident("allowance", allowance), mem(ident("msg"), "sender")),
                        ident("_spender", a_spender),
                    ),
                    ident("_value", a_value),
                )
            ),
            ret(b_lit(True)),
        ),
    )

    b_value = param("_value", etn("uint256"))
    burn = func(
        "burn",
        params=[b_value],
        returns=[param("success", etn("bool"))],
        body=block(
            estmt(
                call(
                    ident("require"),
                    bin_(
                        ">=",
                        idx(ident("balanceOf", balance_of), mem(ident("msg"), "sender")),
                        ident("_value", b_value),
                    ),
                )
            ),
            estmt(
                assign(
                    idx(ident("balanceOf", balance_of), mem(ident("msg"), "sender")),
                    ident("_value", b_value),
                    op="-=",
                )
            ),
            estmt(
                assign(
                    ident("totalSupply", total_supply), ident("_value", b_value), op="-="
                )
            ),
            estmt(
                call(ident("Burn", ev_burn), mem(ident("msg"), "sender"), ident("_value", b_value))
            ),
            ret(b_lit(True)),
        ),
    )

    bf_from = param("_from", etn("address"))
    bf_value = param("_value", etn("uint256"))
    burn_from = func(
        "burnFrom",
        params=[bf_from, bf_value],
        returns=[param("success", etn("bool"))],
        body=block(
            estmt(
                call(
                    ident("require"),
                    bin_(
                        ">=",
                        idx(ident("balanceOf", balance_of), ident("_from", bf_from)),
                        ident("_value", bf_value),
                    ),
                )
            ),
            estmt(
                assign(
                    idx(ident("balanceOf", balance_of), ident("_from", bf_from)),
                    ident("_value", bf_value),
                    op="-=",
                )
            ),
            estmt(
                assign(
                    ident("totalSupply", total_supply),
                    ident("_value", bf_value),
                    op="-=",
                )
            ),
            estmt(
                call(ident("Burn", ev_burn), ident("_from", bf_from), ident("_value", bf_value))
            ),
            ret(b_lit(True)),
        ),
    )

    m_target = param("target", etn("address"))
    m_amount = param("mintedAmount", etn("uint256"))
    mint = func(
        "mintToken",
        params=[m_target, m_amount],
        modifiers=[mod_inv("onlyOwner", only_owner)],
        body=block(
            estmt(
                assign(
                    idx(ident("balanceOf", balance_of), ident("target", m_target)),
                    ident("mintedAmount", m_amount),
                    op="+=",
                )
            ),
            estmt(
                assign(
                    ident("totalSupply", total_supply),
                    ident("mintedAmount", m_amount),
                    op="+=",
                )
            ),
            estmt(
                call(
                    ident("Transfer", ev_transfer),
                    num("0x0"),
                    ident("target", m_target),
                    ident("mintedAmount", m_amount),
                )
            ),
        ),
    )

    z_target = param("target", etn("address"))
    z_freeze = param("freeze", etn("bool"))
    freeze_account = func(
        "freezeAccount",
        params=[z_target, z_freeze],
        modifiers=[mod_inv("onlyOwner", only_owner)],
        body=block(
            estmt(
                assign(
                    idx(ident("frozenAccount", frozen), ident("target", z_target)),
                    ident("freeze", z_freeze),
                )
            ),
            estmt(
                call(
                    ident("FrozenFunds", ev_frozen),
                    ident("target", z_target),
                    ident("freeze", z_freeze),
                )
            ),
        ),
    )

    o_new = param("newOwner", etn("address"))
    transfer_ownership = func(
        "transferOwnership",
        params=[o_new],
        modifiers=[mod_inv("onlyOwner", only_owner)],
        body=block(estmt(assign(ident("owner", owner), ident("newOwner", o_new)))),
    )

    return su(
        "aztra_token.sol",
        pragma("solidity", "^", "0.4.16"),
        contract(
            "AztraToken",
            owner,
            total_supply,
            balance_of,
            allowance,
            frozen,
            ev_transfer,
            ev_burn,
            ev_frozen,
            only_owner,
            ctor,
            internal_transfer,
            transfer,
            transfer_from,
            approve,
            burn,
            burn_from,
            mint,
            freeze_account,
            transfer_ownership,
        ),
    )


def fixture_item_uint2str():
    p_i = param("i", etn("uint"))
    d_j = param("j", etn("uint"))
    d_len = param("len", etn("uint"))
    d_bstr = param("bstr", etn("bytes"), storage="memory")
    d_k = param("k", etn("uint"))
    body = block(
        if_(bin_("==", ident("i", p_i), num(0)), ret(s_lit("0"))),
        vds([d_j], ident("i", p_i)),
        vds([d_len]),
        while_(
            bin_("!=", ident("j", d_j), num(0)),
            block(
                estmt(un_("++", ident("len", d_len), prefix=False)),
                estmt(assign(ident("j", d_j), num(10), op="/=")),
            ),
        ),
        vds([d_bstr], call(new_(etn("bytes")), ident("len", d_len))),
        vds([d_k], bin_("-", ident("len", d_len), num(1))),
        while_(
            bin_("!=", ident("i", p_i), num(0)),
            block(
                estmt(
                    assign(
                        idx(ident("bstr", d_bstr), un_("--", ident("k", d_k), prefix=False)),
                        call(
                            etn_expr("byte"),
                            bin_("+", num(48), bin_("%", ident("i", p_i), num(10))),
                            kind="typeConversion",
                        ),
                    )
                ),
                estmt(assign(ident("i", p_i), num(10), op="/=")),
            ),
        ),
        ret(call(etn_expr("string"), ident("bstr", d_bstr), kind="typeConversion")),
    )
    uint2str = func(
        "uint2str",
        params=[p_i],
        returns=[param("", etn("string"))],
        visibility="internal",
        mutability="pure",
        body=body,
    )
    helper = func(
        "describe",
        params=[param("count", etn("uint"))],
        returns=[param("", etn("string"))],
        visibility="public",
        mutability="pure",
        body=block(ret(call(ident("uint2str", uint2str), ident("count")))),
    )
    return su(
        "item_uint2str.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("Item", uint2str, helper),
    )


def fixture_request_struct():
    m_data = param("data", etn("bytes"))
    m_callback = param(
        "callback",
        ftn([param("", etn("bytes"), storage="memory")], visibility="external"),
    )
    request = struct("Request", m_data, m_callback)
    requests = state_var("requests", arr(udtn("Request", request)))
    q_data = param("data", etn("bytes"))
    q_callback = param(
        "callback",
        ftn([param("", etn("bytes"), storage="memory")], visibility="external"),
    )
    query = func(
        "query",
        params=[q_data, q_callback],
        body=block(
            estmt(
                call(
                    mem(ident("requests", requests), "push"),
                    call(
                        ident("Request", request),
                        ident("data", q_data),
                        ident("callback", q_callback),
                        kind="structConstructorCall",
                    ),
                )
            )
        ),
    )
    r_id = param("requestID", etn("uint"))
    r_resp = param("response", etn("bytes"))
    reply = func(
        "reply",
        params=[r_id, r_resp],
        body=block(
            estmt(
                call(
                    mem(
                        idx(ident("requests", requests), ident("requestID", r_id)),
                        "callback",
                    ),
                    ident("response", r_resp),
                )
            )
        ),
    )
    return su(
        "request_struct.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("Oracle", request, requests, query, reply),
    )


def fixture_enum_shapes():
    state_enum = enum("Stage", "Created", "Locked", "Inactive")
    current = state_var("stage", udtn("Stage", state_enum), visibility="public")
    advance = func(
        "advance",
        body=block(
            if_(
                bin_(
                    "==",
                    ident("stage", current),
                    mem(ident("Stage", state_enum), "Created"),
                ),
                block(
                    estmt(
                        assign(
                            ident("stage", current),
                            mem(ident("Stage", state_enum), "Locked"),
                        )
                    )
                ),
                if_(
                    bin_(
                        "==",
                        ident("stage", current),
                        mem(ident("Stage", state_enum), "Locked"),
                    ),
                    block(
                        estmt(
                            assign(
                                ident("stage", current),
                                mem(ident("Stage", state_enum), "Inactive"),
                            )
                        )
                    ),
                    block(
                        estmt(
                            assign(
                                ident("stage", current),
                                mem(ident("Stage", state_enum), "Created"),
                            )
                        )
                    ),
                ),
            )
        ),
    )
    reset = func(
        "reset",
        body=block(
            estmt(
                assign(
                    ident("stage", current), mem(ident("Stage", state_enum), "Created")
                )
            )
        ),
    )
    return su(
        "enum_shapes.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("Lifecycle", state_enum, current, advance, reset),
    )


def fixture_loops_gallery():
    n = param("n", etn("uint256"))
    acc = param("acc", etn("uint256"))
    i = param("i", etn("uint256"))
    countdown = func(
        "countdown",
        params=[n],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds([acc]),
            for_(
                block(
                    if_(bin_("==", ident("i", i), num(3)), cont()),
                    if_(bin_(">", ident("i", i), num(7)), brk()),
                    estmt(assign(ident("acc", acc), ident("i", i), op="+=")),
                ),
                init=vds([i], num(0)),
                cond=bin_("<", ident("i", i), ident("n", n)),
                loop=estmt(un_("++", ident("i", i), prefix=False)),
            ),
            ret(ident("acc", acc)),
        ),
    )
    x1 = param("x", etn("uint256"))
    drain = func(
        "drain",
        params=[x1],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            while_(
                bin_(">", ident("x", x1), num(0)),
                block(
                    if_(bin_("==", ident("x", x1), num(1)), brk()),
                    estmt(assign(ident("x", x1), num(2), op="-=")),
                ),
            ),
            ret(ident("x", x1)),
        ),
    )
    x2 = param("x", etn("uint256"))
    pulse = func(
        "pulse",
        params=[x2],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            do_while(
                block(estmt(assign(ident("x", x2), num(1), op="+="))),
                bin_("<", ident("x", x2), num(10)),
            ),
            ret(ident("x", x2)),
        ),
    )
    spin = func(
        "spin",
        mutability="pure",
        body=block(for_(block(brk()))),
    )
    return su(
        "loops_gallery.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("LoopGallery", countdown, drain, pulse, spin),
    )


def fixture_legacy_throw():
    owner = state_var("owner", etn("address"))
    guarded = func(
        "guarded",
        body=block(
            if_(
                bin_("!=", mem(ident("msg"), "sender"), ident("owner", owner)),
                throw(),
            ),
            estmt(assign(ident("owner", owner), mem(ident("msg"), "sender"))),
        ),
    )
    return su(
        "legacy_throw.sol",
        pragma("solidity", "^", "0.4.11"),
        contract("LegacyGate", owner, guarded),
    )


def fixture_assembly_box():
    x = param("x", etn("uint256"))
    y = param("y", etn("uint256"))
    result = param("result", etn("uint256"))
    fast_add = func(
        "fastAdd",
        params=[x, y],
        returns=[result],
        mutability="pure",
        body=block(asm("{ result := add(x, y) }")),
    )
    return su(
        "assembly_box.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("AssemblyBox", fast_add),
    )


def fixture_mapping_bank():
    balances = state_var(
        "balances", mapping(etn("address"), etn("uint256")), visibility="public"
    )
    approvals = state_var(
        "approvals",
        mapping(etn("address"), mapping(etn("address"), etn("bool"))),
    )
    deposit = func(
        "deposit",
        mutability="payable",
        body=block(
            estmt(
                assign(
                    idx(ident("balances", balances), mem(ident("msg"), "sender")),
                    mem(ident("msg"), "value"),
                    op="+=",
                )
            )
        ),
    )
    w_amount = param("amount", etn("uint256"))
    withdraw = func(
        "withdraw",
        params=[w_amount],
        body=block(
            estmt(
                call(
                    ident("require"),
                    bin_(
                        ">=",
                        idx(ident("balances", balances), mem(ident("msg"), "sender")),
                        ident("amount", w_amount),
                    ),
                )
            ),
            estmt(
                assign(
                    idx(ident("balances", balances), mem(ident("msg"), "sender")),
                    ident("amount", w_amount),
                    op="-=",
                )
            ),
        ),
    )
    raw = param("raw", etn("int256"))
    to_units = func(
        "toUnits",
        params=[raw],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            ret(call(etn_expr("uint256"), ident("raw", raw), kind="typeConversion"))
        ),
    )
    a_owner = param("holder", etn("address"))
    a_spender = param("spender", etn("address"))
    approve = func(
        "approveFor",
        params=[a_owner, a_spender],
        body=block(
            estmt(
                assign(
                    idx(
                        idx(ident("approvals", approvals), ident("holder", a_owner)),
                        ident("spender", a_spender),
                    ),
                    b_lit(True),
                )
            )
        ),
    )
    return su(
        "mapping_bank.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("MappingBank", balances, approvals, deposit, withdraw, to_units, approve),
    )


def fixture_arrays_store():
    values = state_var("values", arr(etn("uint256")), visibility="public")
    triple = state_var("triple", arr(etn("uint256"), num(3)))
    v = param("value", etn("uint256"))
    push_value = func(
        "pushValue",
        params=[v],
        body=block(
            estmt(call(mem(ident("values", values), "push"), ident("value", v)))
        ),
    )
    n = param("n", etn("uint256"))
    scratch = param("scratch", arr(etn("uint256")), storage="memory")
    expand = func(
        "expand",
        params=[n],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds([scratch], call(new_(arr(etn("uint256"))), ident("n", n))),
            ret(mem(ident("scratch", scratch), "length")),
        ),
    )
    head = func(
        "head",
        returns=[param("", etn("uint256"))],
        mutability="view",
        body=block(ret(idx(ident("values", values), num(0)))),
    )
    seed_triple = func(
        "seedTriple",
        body=block(
            estmt(assign(idx(ident("triple", triple), num(0)), num(7))),
            estmt(assign(idx(ident("triple", triple), num(1)), num(8))),
            estmt(assign(idx(ident("triple", triple), num(2)), num(9))),
        ),
    )
    return su(
        "arrays_store.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("ArrayStore", values, triple, push_value, expand, head, seed_triple),
    )


def fixture_imports_hub():
    ping = func(
        "ping", returns=[param("", etn("uint256"))], mutability="pure",
        body=block(ret(num(1))),
    )
    return su(
        "imports_hub.sol",
        pragma("solidity", "^", "0.4.24"),
        imp("./lib.sol"),
        imp("./math.sol", aliases=[("Mathy", "M"), ("Helper", None)]),
        imp("./all.sol", unit_alias="bundle"),
        contract("ImportsHub", ping),
    )


def fixture_using_for_lib():
    a = param("a", etn("uint256"))
    b = param("b", etn("uint256"))
    c = param("c", etn("uint256"))
    safe_add = func(
        "safeAdd",
        params=[a, b],
        returns=[param("", etn("uint256"))],
        visibility="internal",
        mutability="pure",
        body=block(
            vds([c], bin_("+", ident("a", a), ident("b", b))),
            estmt(call(ident("require"), bin_(">=", ident("c", c), ident("a", a)))),
            ret(ident("c", c)),
        ),
    )
    library = contract("SafeOps", safe_add, kind="library")
    x = param("x", etn("uint256"))
    grow = func(
        "grow",
        params=[x],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            ret(call(mem(ident("x", x), "safeAdd", ref=safe_add), num(2)))
        ),
    )
    wallet = contract(
        "Wallet", using("SafeOps", etn("uint256")), using("SafeOps"), grow
    )
    return su(
        "using_for_lib.sol", pragma("solidity", "^", "0.4.24"), library, wallet
    )


def fixture_interface_token():
    transfer = func(
        "transfer",
        params=[param("to", etn("address")), param("value", etn("uint256"))],
        returns=[param("", etn("bool"))],
        visibility="external",
    )
    total = func(
        "totalSupply",
        returns=[param("", etn("uint256"))],
        visibility="external",
        mutability="view",
    )
    return su(
        "interface_token.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("IToken", transfer, total, kind="interface"),
    )


def fixture_ternary_market():
    amount = param("amount", etn("uint256"))
    fee = param("fee", etn("uint256"))
    quote = func(
        "quote",
        params=[amount],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds(
                [fee],
                ternary(
                    bin_(">", ident("amount", amount), num(100)),
                    bin_("/", ident("amount", amount), num(50)),
                    num(1),
                ),
            ),
            ret(ident("fee", fee)),
        ),
    )
    a = param("a", etn("uint256"))
    b = param("b", etn("uint256"))
    clamp = func(
        "clamp",
        params=[a, b],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            ret(
                bin_(
                    "+",
                    tup(
                        ternary(
                            bin_(">", ident("a", a), ident("b", b)),
                            ident("a", a),
                            ident("b", b),
                        )
                    ),
                    num(1),
                )
            )
        ),
    )
    return su(
        "ternary_market.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("TernaryMarket", quote, clamp),
    )


def fixture_tuple_swap():
    lo = state_var("lo", etn("uint256"), visibility="public")
    hi = state_var("hi", etn("uint256"), visibility="public")
    bounds = func(
        "bounds",
        returns=[param("", etn("uint256")), param("", etn("uint256"))],
        mutability="pure",
        body=block(ret(tup(num(1), num(10)))),
    )
    a = param("a", etn("uint256"))
    b = param("b", etn("uint256"))
    seed = func(
        "seed",
        body=block(
            vds([a, b], call(ident("bounds", bounds))),
            estmt(assign(ident("lo", lo), ident("a", a))),
            estmt(assign(ident("hi", hi), ident("b", b))),
        ),
    )
    swap = func(
        "swap",
        body=block(
            estmt(
                assign(
                    tup(ident("lo", lo), ident("hi", hi)),
                    tup(ident("hi", hi), ident("lo", lo)),
                )
            )
        ),
    )
    return su(
        "tuple_swap.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("TupleSwap", lo, hi, bounds, seed, swap),
    )


def fixture_signed_math():
    floor_level = state_var("floorLevel", etn("int256"), visibility="public")
    ceiling = state_var("ceiling", etn("int256"), visibility="public")
    gap = param("gap", etn("int256"))
    measure = func(
        "measure",
        returns=[param("", etn("int256"))],
        mutability="view",
        body=block(
            vds(
                [gap],
                bin_("-", ident("ceiling", ceiling), ident("floorLevel", floor_level)),
            ),
            ret(ident("gap", gap)),
        ),
    )
    delta = param("delta", etn("int8"))
    scaled = param("scaled", etn("int8"))
    amplify = func(
        "amplify",
        params=[delta],
        returns=[param("", etn("int8"))],
        mutability="pure",
        body=block(
            vds([scaled], bin_("*", ident("delta", delta), num(3))),
            ret(ident("scaled", scaled)),
        ),
    )
    boost = param("boost", etn("int256"))
    top = param("top", etn("int256"))
    lift = func(
        "lift",
        params=[boost],
        returns=[param("", etn("int256"))],
        mutability="view",
        body=block(
            vds([top], bin_("+", ident("ceiling", ceiling), ident("boost", boost))),
            ret(ident("top", top)),
        ),
    )
    sink = func(
        "sink",
        body=block(
            estmt(assign(ident("floorLevel", floor_level), un_("-", num(40)))),
            estmt(assign(ident("ceiling", ceiling), num(25))),
        ),
    )
    return su(
        "signed_math.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("SignedMath", floor_level, ceiling, measure, amplify, lift, sink),
    )


def fixture_fallback_machine():
    total = state_var("total", etn("uint256"), visibility="public")
    fallback = func(
        "",
        mutability="payable",
        body=block(
            estmt(assign(ident("total", total), mem(ident("msg"), "value"), op="+="))
        ),
    )
    drain = func(
        "drain",
        returns=[param("", etn("uint256"))],
        body=block(
            vds([param("held", etn("uint256"))], ident("total", total)),
            estmt(assign(ident("total", total), num(0))),
            ret(ident("held")),
        ),
    )
    return su(
        "fallback_machine.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("FallbackMachine", total, fallback, drain),
    )


def fixture_constructor_modern():
    value = state_var("value", etn("uint256"), visibility="public")
    seed_value = param("seedValue", etn("uint256"))
    ctor = func(
        "",
        params=[seed_value],
        constructor=True,
        body=block(estmt(assign(ident("value", value), ident("seedValue", seed_value)))),
    )
    bump = func(
        "bump",
        body=block(estmt(assign(ident("value", value), num(1), op="+="))),
    )
    return su(
        "constructor_modern.sol",
        pragma("solidity", "^", "0.5.0"),
        contract("ModernSeed", value, ctor, bump),
    )


def fixture_inheritance_zoo():
    ping = func(
        "ping",
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(ret(num(1))),
    )
    base = contract("Base", ping)
    middle = contract("Middle", kind="contract", bases=("Base",))
    pong = func(
        "pong",
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(ret(call(ident("ping", ping)))),
    )
    app = contract("App", pong, bases=("Base", "Middle"))
    return su(
        "inheritance_zoo.sol", pragma("solidity", "^", "0.4.24"), base, middle, app
    )


def fixture_events_emitter():
    ev_ping = event(
        "Ping",
        param("source", etn("address"), indexed=True),
        param("payload", etn("uint256")),
    )
    ev_trace = event("Trace", param("blob", etn("bytes32")), anonymous=True)
    payload = param("payload", etn("uint256"))
    ping = func(
        "ping",
        params=[payload],
        body=block(
            emit_(
                call(
                    ident("Ping", ev_ping),
                    mem(ident("msg"), "sender"),
                    ident("payload", payload),
                )
            ),
            emit_(call(ident("Trace", ev_trace), idx(ident("blobs"), num(0)))),
        ),
    )
    blobs = state_var("blobs", arr(etn("bytes32")))
    return su(
        "events_emitter.sol",
        pragma("solidity", "^", "0.5.0"),
        contract("EventsEmitter", ev_ping, ev_trace, blobs, ping),
    )


def fixture_guard_rails():
    total = state_var("total", etn("uint256"), visibility="public")
    cells = state_var("cells", arr(etn("uint256")))
    length = param("len", etn("uint256"))
    k = param("k", etn("uint256"))
    carve = func(
        "carve",
        params=[length],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds([k], bin_("-", ident("len", length), num(1))),
            ret(ident("k", k)),
        ),
    )
    pot = param("pot", etn("uint256"))
    count = param("count", etn("uint256"))
    share = param("share", etn("uint256"))
    split = func(
        "split",
        params=[pot, count],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds([share], bin_("/", ident("pot", pot), ident("count", count))),
            ret(ident("share", share)),
        ),
    )
    w = param("w", etn("uint256"))
    h = param("h", etn("uint256"))
    area = param("area", etn("uint256"))
    surface = func(
        "surface",
        params=[w, h],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds([area], bin_("*", ident("w", w), ident("h", h))),
            ret(ident("area", area)),
        ),
    )
    x = param("x", etn("uint256"))
    tally = func(
        "tally",
        params=[x],
        body=block(
            estmt(
                assign(
                    ident("total", total),
                    bin_("+", ident("total", total), ident("x", x)),
                )
            )
        ),
    )
    a = param("a", etn("uint256"))
    b = param("b", etn("uint256"))
    awkward = func(
        "awkward",
        params=[a, b],
        body=block(
            vds(
                [param("bad", etn("uint256"))],
                bin_("+", mem(ident("msg"), "value"), num(1)),
            ),
            estmt(
                assign(
                    idx(ident("cells", cells), num(0)),
                    bin_("+", ident("a", a), ident("b", b)),
                )
            ),
        ),
        mutability="payable",
    )
    return su(
        "guard_rails.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("GuardRails", total, cells, carve, split, surface, tally, awkward),
    )


def fixture_pure_math():
    n = param("n", etn("uint256"))
    fib = func(
        "fib",
        params=[n],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            if_(bin_("<", ident("n", n), num(2)), ret(ident("n", n))),
            ret(None),
        ),
    )
    fib["body"]["statements"][1] = ret(
        bin_(
            "+",
            call(ident("fib", fib), bin_("-", ident("n", n), num(1))),
            call(ident("fib", fib), bin_("-", ident("n", n), num(2))),
        )
    )
    h = param("value", etn("uint256"))
    helper = func(
        "bump",
        params=[h],
        returns=[param("", etn("uint256"))],
        visibility="internal",
        mutability="pure",
        body=block(ret(bin_("+", ident("value", h), num(1)))),
    )
    d = param("x", etn("uint256"))
    double = func(
        "double",
        params=[d],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            ret(
                bin_(
                    "+",
                    call(ident("bump", helper), ident("x", d)),
                    call(ident("bump", helper), ident("x", d)),
                )
            )
        ),
    )
    c = param("seed", etn("uint256"))
    compose = func(
        "compose",
        params=[c],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            ret(
                bin_(
                    "+",
                    call(ident("double", double), ident("seed", c)),
                    call(ident("fib", fib), ident("seed", c)),
                )
            )
        ),
    )
    return su(
        "pure_math.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("PureMath", fib, helper, double, compose),
    )


def fixture_state_machine():
    is_locked = state_var("isLocked", etn("bool"), visibility="public")
    purchases = state_var("purchases", etn("uint256"), visibility="public")
    price = param("price", etn("uint256"))
    costs = modifier_def(
        "costs",
        block(
            estmt(
                call(
                    ident("require"),
                    bin_(">=", mem(ident("msg"), "value"), ident("price", price)),
                )
            ),
            _n("PlaceholderStatement"),
        ),
        params=[price],
    )
    locked = modifier_def(
        "locked",
        block(
            estmt(call(ident("require"), un_("!", ident("isLocked", is_locked)))),
            _n("PlaceholderStatement"),
        ),
    )
    buy = func(
        "buy",
        mutability="payable",
        modifiers=[mod_inv("costs", costs, args=[num(2, sub="ether")])],
        body=block(
            estmt(un_("++", ident("purchases", purchases), prefix=False))
        ),
    )
    toggle = func(
        "toggle",
        modifiers=[mod_inv("locked", locked)],
        body=block(
            estmt(
                assign(
                    ident("isLocked", is_locked), un_("!", ident("isLocked", is_locked))
                )
            )
        ),
    )
    return su(
        "state_machine.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("StateMachine", is_locked, purchases, costs, locked, buy, toggle),
    )


def fixture_string_bytes():
    motto = state_var(
        "motto", etn("string"), visibility="public", value=s_lit("line one\nline two")
    )
    quoted = state_var(
        "quoted", etn("string"), visibility="public", value=s_lit('say "hi"')
    )
    tag = state_var(
        "tag", etn("bytes32"), constant=True, value=num("0xff")
    )
    shout = func(
        "shout",
        returns=[param("", etn("string"))],
        mutability="view",
        body=block(ret(ident("motto", motto))),
    )
    return su(
        "string_bytes.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("StringBytes", motto, quoted, tag, shout),
    )


def fixture_unary_gallery():
    owner = state_var("owner", etn("address"))
    mask = param("mask", etn("uint256"))
    flag = param("flag", etn("bool"))
    x = param("x", etn("int256"))
    i = param("i", etn("uint256"))
    twists = func(
        "twists",
        params=[mask, flag, x],
        returns=[param("", etn("int256"))],
        mutability="pure",
        body=block(
            vds([i], num(0)),
            estmt(un_("++", ident("i", i))),
            estmt(un_("--", ident("i", i))),
            estmt(un_("++", ident("i", i), prefix=False)),
            estmt(un_("--", ident("i", i), prefix=False)),
            if_(un_("!", ident("flag", flag)), ret(un_("-", ident("x", x)))),
            vds([param("inverted", etn("uint256"))], un_("~", ident("mask", mask))),
            ret(un_("-", un_("-", ident("x", x)))),
        ),
    )
    reset = func(
        "reset", body=block(estmt(un_("delete", ident("owner", owner))))
    )
    return su(
        "unary_gallery.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("UnaryGallery", owner, twists, reset),
    )


def fixture_vds_flavors():
    source = param("source", etn("uint256"))
    untyped = param("j")
    data = param("data", etn("bytes"))
    buf = param("buf", etn("bytes"), storage="memory")
    echo = func(
        "echo",
        params=[source, data],
        returns=[param("", etn("uint256"))],
        mutability="pure",
        body=block(
            vds([untyped], ident("source", source)),
            vds([buf], ident("data", data)),
            ret(ident("j", untyped)),
        ),
    )
    return su(
        "vds_flavors.sol",
        pragma("solidity", "^", "0.4.24"),
        contract("VdsFlavors", echo),
    )


def fixture_expiry_mini():
    owner = state_var("owner", etn("address"), visibility="public")
    deadline = state_var("deadline", etn("uint256"), visibility="public")
    bids = state_var("bids", mapping(etn("address"), etn("uint256")), visibility="public")
    bidders = state_var("bidders", arr(etn("address")))
    highest = state_var("highest", etn("uint256"), visibility="public")
    winner = state_var("winner", etn("address"), visibility="public")
    ev_bid = event(
        "BidPlaced",
        param("who", etn("address"), indexed=True),
        param("amount", etn("uint256")),
    )
    only_owner = modifier_def(
        "onlyOwner",
        block(
            estmt(
                call(
                    ident("require"),
                    bin_("==", mem(ident("msg"), "sender"), ident("owner", owner)),
                )
            ),
            _n("PlaceholderStatement"),
        ),
    )
    window = param("window", etn("uint256"))
    ctor = func(
        "ExpiryMini",
        params=[window],
        constructor=True,
        body=block(
            estmt(assign(ident("owner", owner), mem(ident("msg"), "sender"))),
            estmt(
                assign(
                    ident("deadline", deadline),
                    bin_("+", ident("now"), ident("window", window)),
                )
            ),
        ),
    )
    place_bid = func(
        "placeBid",
        mutability="payable",
        body=block(
            estmt(
                call(
                    ident("require"), bin_("<", ident("now"), ident("deadline", deadline))
                )
            ),
            estmt(
                call(
                    ident("require"),
                    bin_(">", mem(ident("msg"), "value"), num(0)),
                )
            ),
            if_(
                bin_(
                    "==",
                    idx(ident("bids", bids), mem(ident("msg"), "sender")),
                    num(0),
                ),
                estmt(
                    call(
                        mem(ident("bidders", bidders), "push"),
                        mem(ident("msg"), "sender"),
                    )
                ),
            ),
            estmt(
                assign(
                    idx(ident("bids", bids), mem(ident("msg"), "sender")),
                    mem(ident("msg"), "value"),
                    op="+=",
                )
            ),
            if_(
                bin_(
                    ">",
                    idx(ident("bids", bids), mem(ident("msg"), "sender")),
                    ident("highest", highest),
                ),
                block(
                    estmt(
                        assign(
                            ident("highest", highest),
                            idx(ident("bids", bids), mem(ident("msg"), "sender")),
                        )
                    ),
                    estmt(assign(ident("winner", winner), mem(ident("msg"), "sender"))),
                ),
            ),
            emit_(
                call(
                    ident("BidPlaced", ev_bid),
                    mem(ident("msg"), "sender"),
                    mem(ident("msg"), "value"),
                )
            ),
        ),
    )
    i = param("i", etn("uint256"))
    count_above = func(
        "countAbove",
        params=[param("threshold", etn("uint256"))],
        returns=[param("matched", etn("uint256"))],
        mutability="view",
        body=block(
            for_(
                block(
                    if_(
                        bin_(
                            ">=",
                            idx(
                                ident("bids", bids),
                                idx(ident("bidders", bidders), ident("i", i)),
                            ),
                            ident("threshold"),
                        ),
                        estmt(un_("++", ident("matched"), prefix=False)),
                    )
                ),
                init=vds([i], num(0)),
                cond=bin_(
                    "<", ident("i", i), mem(ident("bidders", bidders), "length")
                ),
                loop=estmt(un_("++", ident("i", i), prefix=False)),
            ),
            ret(None),
        ),
    )
    sweep = func(
        "sweep",
        modifiers=[mod_inv("onlyOwner", only_owner)],
        body=block(
            estmt(
                call(
                    ident("require"),
                    bin_(">=", ident("now"), ident("deadline", deadline)),
                )
            ),
            estmt(
                call(
                    mem(ident("owner", owner), "transfer"),
                    mem(ident("this"), "balance"),
                )
            ),
        ),
    )
    extend = func(
        "extend",
        params=[param("extra", etn("uint256"))],
        modifiers=[mod_inv("onlyOwner", only_owner)],
        body=block(
            estmt(assign(ident("deadline", deadline), ident("extra"), op="+="))
        ),
    )
    status = func(
        "status",
        returns=[param("", etn("string"))],
        mutability="view",
        body=block(
            ret(
                ternary(
                    bin_("<", ident("now"), ident("deadline", deadline)),
                    s_lit("open"),
                    s_lit("closed"),
                )
            )
        ),
    )
    return su(
        "expiry_mini.sol",
        pragma("solidity", "^", "0.4.24"),
        contract(
            "ExpiryMini",
            owner,
            deadline,
            bids,
            bidders,
            highest,
            winner,
            ev_bid,
            only_owner,
            ctor,
            place_bid,
            count_above,
            sweep,
            extend,
            status,
        ),
    )


def fixture_do_nothing():
    return su(
        "do_nothing.sol", pragma("solidity", "^", "0.4.24"), contract("DoNothing")
    )


FIXTURES = {
    "aztra_token": fixture_aztra_token,
    "item_uint2str": fixture_item_uint2str,
    "request_struct": fixture_request_struct,
    "enum_shapes": fixture_enum_shapes,
    "loops_gallery": fixture_loops_gallery,
    "legacy_throw": fixture_legacy_throw,
    "assembly_box": fixture_assembly_box,
    "mapping_bank": fixture_mapping_bank,
    "arrays_store": fixture_arrays_store,
    "imports_hub": fixture_imports_hub,
    "using_for_lib": fixture_using_for_lib,
    "interface_token": fixture_interface_token,
    "ternary_market": fixture_ternary_market,
    "tuple_swap": fixture_tuple_swap,
    "signed_math": fixture_signed_math,
    "fallback_machine": fixture_fallback_machine,
    "constructor_modern": fixture_constructor_modern,
    "inheritance_zoo": fixture_inheritance_zoo,
    "events_emitter": fixture_events_emitter,
    "guard_rails": fixture_guard_rails,
    "pure_math": fixture_pure_math,
    "state_machine": fixture_state_machine,
    "string_bytes": fixture_string_bytes,
    "unary_gallery": fixture_unary_gallery,
    "vds_flavors": fixture_vds_flavors,
    "expiry_mini": fixture_expiry_mini,
    "do_nothing": fixture_do_nothing,
}


def main() -> int:
    corpus = REPO / "corpus"
    corpus.mkdir(exist_ok=True)
    for name, build in FIXTURES.items():
        document = finalize(build())
        text = json.dumps(document, indent=1)
        (corpus / f"{name}.ast.json").write_text(text + "\n", encoding="utf-8")
        unit = load_ast(text, origin=f"{name}.ast.json")
        (corpus / f"{name}.sol").write_text(emit_source(unit), encoding="utf-8")
        print(f"built {name}")
    print(f"{len(FIXTURES)} fixtures in {corpus}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
