"""Exception hierarchy.

Every error carries the name of the module that raised it so the CLI can
print module-tagged diagnostics and pick an exit code.
"""

from __future__ import annotations


class CdgaError(Exception):
    module = "cdgakit"
    exit_code = 1

    def __str__(self) -> str:
        msg = self.args[0] if len(self.args) == 1 else super().__str__()
        return f"[{self.module}] {msg}"


class DimensionMismatch(CdgaError, ValueError):
    module = "exterior"


class FormSyntaxError(CdgaError, ValueError):
    module = "exterior"
    exit_code = 2

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        super().__init__(message)


class DerivationDegreeError(CdgaError, ValueError):
    module = "exterior"


class JacobiError(CdgaError):
    """The bracket fails the Jacobi identity, equivalently d∘d != 0."""

    module = "lie_cdga"
    exit_code = 3

    def __init__(self, message: str, triple=None, generator=None, witness=None):
        self.triple = triple
        self.generator = generator
        self.witness = witness
        super().__init__(message)


class NotADerivationError(CdgaError):
    module = "lie_cdga"
    exit_code = 3

    def __init__(self, message: str, pair=None):
        self.pair = pair
        super().__init__(message)


class NotClosedError(CdgaError):
    module = "cohomology"
    exit_code = 4

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NonCommutingError(CdgaError):
    module = "cohomology"
    exit_code = 4

    def __init__(self, message: str, generator=None, witness=None):
        self.generator = generator
        self.witness = witness
        super().__init__(message)


class StructureError(CdgaError):
    module = "structures"
    exit_code = 4


class DegenerateError(StructureError):
    pass


class PreconditionError(CdgaError):
    module = "massey"
    exit_code = 4


class NotNilpotentError(CdgaError):
    module = "massey"
    exit_code = 4


class TopologyInputError(CdgaError, ValueError):
    module = "topology_ops"
    exit_code = 2


class SpecParseError(CdgaError):
    module = "corpus_cli"
    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


class UnknownEntryError(CdgaError, KeyError):
    module = "corpus_cli"
    exit_code = 2
