"""Exception types shared across the package."""


class SpaceFortressError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SpaceFortressError):
    """A configuration value violates one of its bounds."""


class ActionError(SpaceFortressError):
    """An action id is outside the action space of the configured game version."""


class LifecycleError(SpaceFortressError):
    """An operation was called in the wrong episode phase (e.g. step after done)."""


class ReplayError(SpaceFortressError):
    """A log cannot be replayed against the current configuration."""


class CheckpointError(SpaceFortressError):
    """A checkpoint is malformed or does not match the requested policy spec."""


class TrainingDiverged(SpaceFortressError):
    """An update produced a non-finite loss; carries the diagnostic stats."""

    def __init__(self, message: str, stats=None):
        super().__init__(message)
        self.stats = stats
