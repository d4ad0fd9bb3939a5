"""Exception types raised across the package."""


class ContractViolation(ValueError):
    """An argument broke an operation's precondition."""


class ResourceError(RuntimeError):
    """A request exceeds a configured size cap (qubits, matrix order, sequence length)."""


class NotBasisStateError(RuntimeError):
    """Deterministic measurement found the register in a superposition."""

    def __init__(self, message, top_probabilities=()):
        super().__init__(message)
        self.top_probabilities = tuple(top_probabilities)


class InternalConsistencyError(RuntimeError):
    """A build-time self check failed; indicates a convention bug."""
