"""Exception types shared across the library."""


class LumenError(Exception):
    """Base class for all library errors."""


class EmptyMask(LumenError):
    """A masked operation received a mask covering zero pixels."""


class DegenerateImage(LumenError):
    """The image is constant and cannot be segmented by illumination."""


class ImageTooSmall(LumenError):
    """The image is below the minimum size the operation supports."""


class TileTooLarge(LumenError):
    """A tile dimension exceeds the matching image dimension."""


class DimensionMismatch(LumenError):
    """Two images that must share dimensions do not."""


class ZeroContrastOriginal(LumenError):
    """The reference image has no measurable local contrast."""


class ChannelMismatch(LumenError):
    """Color channels do not share dimensions."""


class UnsupportedFormat(LumenError):
    """The file is not an 8-bit PGM or PNG this tool handles."""


class CorruptFile(LumenError):
    """The file does not parse as its declared format."""


class ConfigError(LumenError):
    """A configuration line could not be parsed or applied."""
