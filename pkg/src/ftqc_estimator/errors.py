"""Exception hierarchy shared by every layer of the estimator."""


class EstimatorError(Exception):
    """A domain error raised while computing an estimate.

    ``layer`` names the stack layer that failed (``"qec"``, ``"gsc"`` ...) so
    the engine can re-raise errors with their origin attached.
    """

    layer = "core"

    def __init__(self, message, layer=None):
        super().__init__(message)
        if layer is not None:
            self.layer = layer

    def __str__(self):
        return f"[{self.layer}] {super().__str__()}"


class ConfigError(Exception):
    """Unreadable or invalid configuration (maps to CLI exit status 2)."""


class QasmError(EstimatorError):
    layer = "profile"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QasmSyntaxError(QasmError):
    pass


class UnsupportedGateError(QasmError):
    pass


class OperandRangeError(QasmError):
    pass
