"""Exception hierarchy shared by the whole package.

The CLI maps these onto its documented exit codes, so raising the right
subclass matters more than the message text.
"""


class CmfplanError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(CmfplanError, ValueError):
    """Caller passed inconsistent shapes, counts, or out-of-range values."""


class DegenerateGeometryError(CmfplanError):
    """Point configuration too degenerate for a well-posed rigid fit."""


class InvariantViolationError(CmfplanError):
    """A domain-type invariant failed validation."""


class StateError(CmfplanError, RuntimeError):
    """Operation called out of order (e.g. backward before forward)."""


class TrainingDivergedError(CmfplanError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch: int, loss: float):
        super().__init__(f"training diverged at epoch {epoch} (loss={loss!r})")
        self.epoch = epoch
        self.loss = loss


class CheckpointMismatchError(CmfplanError):
    """Checkpoint architecture or role does not match what was requested."""


class UndefinedTestError(CmfplanError):
    """Statistical test is undefined for the given data (e.g. all-zero diffs)."""
