"""Exception hierarchy for graft computations.

Every error carries the process exit code the command line reports for it.
"""

from typing import Any, Dict, Optional


class GraftError(Exception):
    """Base class for all graft engine errors."""

    exit_code = 1


class ParseError(GraftError):
    """A graft document is malformed."""

    exit_code = 2


class ParityError(GraftError):
    """Some connected component holds an odd number of terminals."""

    exit_code = 3


class SizeCapError(GraftError):
    """An instance exceeds the cap of the requested computation."""

    exit_code = 4


class StructureViolation(GraftError):
    """A structural statement failed on a concrete instance."""

    exit_code = 5

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.witness = witness or {}


class NotBipartiteError(GraftError):
    """The graph has an odd circuit."""


class NotAJoinError(GraftError):
    """An edge set violates the parity condition of a join."""


class NonConservativeError(GraftError):
    """The F-weighting has a circuit of negative weight."""

    def __init__(self, message: str, circuit: int = 0) -> None:
        super().__init__(message)
        self.circuit = circuit


class NotExtremeError(GraftError):
    """A vertex set has a pair at negative distance."""


class NotHomogeneousError(GraftError):
    """A root set meets both color classes."""


class DisconnectedError(GraftError):
    """The graph is not connected."""


class InfeasibleError(GraftError):
    """The pair has no join (some component has odd terminal count)."""
