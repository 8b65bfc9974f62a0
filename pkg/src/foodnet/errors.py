"""Exception taxonomy. The CLI maps these onto its exit-code contract."""


class FoodnetError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(FoodnetError):
    """Tensor shapes are inconsistent with an operation's contract."""


class AllocationError(FoodnetError):
    """Requested tensor would overflow the platform's index range."""


class ParameterError(FoodnetError):
    """A configuration value is outside its legal range."""


class DataError(FoodnetError):
    """Dataset content is invalid: bad label, undecodable image, malformed manifest."""


class StateError(FoodnetError):
    """Operation called out of order (e.g. backward before forward)."""


class NumericsError(FoodnetError):
    """Training produced a non-finite value; carries the name of the first bad tensor."""


class CheckpointError(FoodnetError):
    """Base class for checkpoint load failures."""


class BadMagicError(CheckpointError):
    """File does not start with the checkpoint magic bytes."""


class VersionError(CheckpointError):
    """Checkpoint format version is not supported."""


class TruncatedError(CheckpointError):
    """Checkpoint payload ends before the declared contents."""


class CorruptError(CheckpointError):
    """Declared dims/counts are inconsistent with the payload."""
