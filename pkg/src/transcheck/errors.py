"""Exception types shared across the package."""


class TranscheckError(Exception):
    """Base class for all package errors."""


class MalformedSource(TranscheckError):
    """Source text could not be tokenized or parsed at all."""


class UnsupportedConstruct(TranscheckError):
    """Source parses in the host language but uses a construct outside the subset."""

    def __init__(self, construct: str, line: int | None = None):
        self.construct = construct
        self.line = line
        loc = f" (line {line})" if line else ""
        super().__init__(f"unsupported construct: {construct}{loc}")


class InspectionUnavailable(TranscheckError):
    """A program could not be inspected (e.g. the text does not parse)."""


class ToolchainMissing(TranscheckError):
    """An inspection needs an external toolchain that is not configured."""


class SandboxFailure(TranscheckError):
    """Executing a program failed for environmental reasons, not program behavior."""


class IncompatibleFunctions(TranscheckError):
    """Two functions cannot be merged (name or type conflicts)."""


class BackendUnavailable(TranscheckError):
    """The translation backend cannot be reached or refused the query."""


class BackendMalformedReply(TranscheckError):
    """The backend replied with a document violating the wire protocol."""


class EvalError(TranscheckError):
    """A property expression could not be evaluated over the given bindings."""
