"""Exception hierarchy shared by all modules."""


class MiSpectraError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"


class SymbolSyntaxError(MiSpectraError):
    code = "syntax"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnknownFunctionError(MiSpectraError):
    code = "unknown-function"


class ArityError(MiSpectraError):
    code = "arity"


class DomainError(MiSpectraError, ArithmeticError):
    code = "domain"


class ResonanceError(MiSpectraError):
    code = "resonance"


class KernelComponentError(MiSpectraError):
    code = "kernel-component"


class ConfigError(MiSpectraError):
    code = "config"


class StableCaseError(MiSpectraError):
    """Raised where a positive Whitham-Benjamin coefficient is required."""

    code = "stable"


class ConvergenceError(MiSpectraError):
    code = "convergence"


class NoSignChangeError(MiSpectraError):
    code = "no-sign-change"


class EmptyCloudError(MiSpectraError, ValueError):
    code = "empty-cloud"
