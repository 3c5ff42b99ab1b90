"""Exception hierarchy shared by all solsift modules."""

from __future__ import annotations


class SolsiftError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SolsiftError):
    """The AST document is not well-formed JSON or lacks required fields."""


class UnknownKindError(SolsiftError):
    """The document contains a node type outside the supported set."""

    def __init__(self, tag: str) -> None:
        super().__init__(f"unknown node kind: {tag!r}")
        self.tag = tag


class UnknownFieldError(SolsiftError):
    """A field name is not defined for the node kind it was requested on."""

    def __init__(self, kind: str, field: str) -> None:
        super().__init__(f"kind {kind} has no field {field!r}")
        self.kind = kind
        self.field = field


class FieldTypeError(SolsiftError):
    """A field was assigned a value of the wrong type."""


class ArityError(SolsiftError):
    """A node's child count or child layout violates the rules of its kind."""


class IdCollisionError(SolsiftError):
    """A grafted subtree carries node ids already present in the unit."""


class ValidationError(SolsiftError):
    """A unit failed validation with error-level diagnostics."""

    def __init__(self, diagnostics) -> None:
        lines = "; ".join(d.message for d in diagnostics)
        super().__init__(f"unit failed validation: {lines}")
        self.diagnostics = list(diagnostics)


class HookError(SolsiftError):
    """A user hook raised during traversal; the input unit is untouched."""


class CompilerNotFoundError(SolsiftError):
    """No Solidity compiler could be resolved."""


class CompilerError(SolsiftError):
    """The compiler exited with a failure status."""

    def __init__(self, message: str, stderr: str = "") -> None:
        super().__init__(message)
        self.stderr = stderr


class CompilerTimeoutError(CompilerError):
    """The compiler did not finish within the configured timeout."""


class TargetNotFoundError(SolsiftError):
    """A named target (identifier, function) does not exist in the unit."""


class NoInjectableFunctionError(SolsiftError):
    """The unit has no function body a fault could be seeded into."""


class MissingBodyError(SolsiftError):
    """The operation requires a function body and the function has none."""


class RenameCollisionWarning(UserWarning):
    """The new name is already declared in a scope touched by the rename."""
