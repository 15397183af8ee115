"""Exception types raised across the package."""


class DigitFeatError(ValueError):
    """Base class for all package errors."""


class EmptyImage(DigitFeatError):
    pass


class WrongFrameSize(DigitFeatError):
    pass


class DimensionMismatch(DigitFeatError):
    pass


class EmptyTestSet(DigitFeatError):
    pass


class ParseError(DigitFeatError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VersionMismatch(DigitFeatError):
    pass


class ImageError(DigitFeatError):
    def __init__(self, path, reason):
        self.path = path
        super().__init__(f"{path}: {reason}")


class EmptyManifest(DigitFeatError):
    pass


class InsufficientSamples(DigitFeatError):
    def __init__(self, label, have, need):
        self.label = label
        super().__init__(f"class {label} has {have} samples, {need} required")
