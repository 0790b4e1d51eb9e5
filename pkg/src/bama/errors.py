"""Exception hierarchy shared by every bama module."""


class BamaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModulusError(BamaError, ValueError):
    pass


class UndefinedRatioError(BamaError, ValueError):
    pass


class ConfigError(BamaError, ValueError):
    pass


class UnsupportedFormatError(BamaError):
    pass


class CorruptStreamError(BamaError):
    """Raised when an encoded stream cannot be decoded.

    ``codec`` names the coder that failed (if any) and ``offset`` is the byte
    offset into that coder's input where the problem was detected.
    """

    def __init__(self, message, codec=None, offset=None):
        self.codec = codec
        self.offset = offset
        details = []
        if codec is not None:
            details.append(f"codec={codec}")
        if offset is not None:
            details.append(f"offset={offset}")
        if details:
            message = f"{message} ({', '.join(details)})"
        super().__init__(message)


class VarintOverflowError(CorruptStreamError):
    pass
