"""Exception hierarchy for entwit."""


class EntwitError(Exception):
    """Base class for all library errors."""


class InvalidDimsError(EntwitError, ValueError):
    """Matrix size does not match the declared bipartite dimensions."""


class NotHermitianError(EntwitError, ValueError):
    """Input deviates from its adjoint by more than the allowed tolerance."""


class InvalidParamError(EntwitError, ValueError):
    """A state-family parameter is outside its admissible region."""


class NotAStateError(EntwitError, ValueError):
    """Operator is not positive semidefinite or not unit trace."""


class EigensolverError(EntwitError, RuntimeError):
    """Spectral decomposition failed or its residual is too large."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class PPTInputError(EntwitError, ValueError):
    """Source state has vanishing negativity, so the normalized negative part is undefined."""


class NotPureError(EntwitError, ValueError):
    """An operation requiring a pure state received a mixed one."""


class StateSpecError(EntwitError, ValueError):
    """Textual state descriptor could not be parsed.

    Attributes
    ----------
    token : str
        The offending token ('' when the problem is a missing token).
    position : int
        Character offset of the token within the descriptor string.
    """

    def __init__(self, message: str, token: str = "", position: int = 0):
        super().__init__(f"{message} (token {token!r} at position {position})")
        self.token = token
        self.position = position


class WitnessConfigError(EntwitError, ValueError):
    """Witness selector is not valid for the given state dimensions."""
