"""Exception hierarchy.

Every error raised by the library derives from :class:`StringTreeError`,
which is itself a ``ValueError`` so callers that only care about "bad input"
can catch that.
"""


class StringTreeError(ValueError):
    pass


# -- text parsers -----------------------------------------------------------

class ParseError(StringTreeError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class EmptyInput(ParseError):
    def __init__(self, message="empty input"):
        super().__init__(message)


class UnbalancedParens(ParseError):
    def __init__(self, position):
        super().__init__(f"unbalanced parenthesis at position {position}", position)


class TrailingGarbage(ParseError):
    def __init__(self, position):
        super().__init__(f"unexpected text after the root closes at position {position}", position)


class InvalidCharacter(ParseError):
    def __init__(self, char, position):
        super().__init__(f"invalid character {char!r} at position {position}", position)
        self.char = char


# -- edge lists ---------------------------------------------------------------

class EdgeListError(StringTreeError):
    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class CycleDetected(EdgeListError):
    def __init__(self, label=None):
        super().__init__("edge list contains a cycle", label)


class MultipleRoots(EdgeListError):
    def __init__(self, labels):
        super().__init__(f"edge list has several roots: {sorted(map(repr, labels))}")
        self.labels = labels


class DisconnectedNode(EdgeListError):
    def __init__(self, label):
        super().__init__(f"node {label!r} is not connected to the root", label)


class DuplicateChild(EdgeListError):
    def __init__(self, label):
        super().__init__(f"node {label!r} appears as a child more than once", label)


class InvalidSize(StringTreeError):
    pass


class TooLarge(StringTreeError):
    pass


# -- tree strings ---------------------------------------------------------------

class InvalidString(StringTreeError):
    """A tree string failed validation; ``report`` says where and why."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class InvalidResult(InvalidString):
    """A string operation produced text that is not a well-formed tree."""


class TraversalMismatch(StringTreeError):
    pass


class NotALeaf(StringTreeError):
    def __init__(self, position):
        super().__init__(f"position {position} is not a leaf")
        self.position = position


class IndexOutOfRange(StringTreeError, IndexError):
    def __init__(self, position, length):
        super().__init__(f"position {position} out of range for a {length}-node tree")
        self.position = position


# -- packed format ----------------------------------------------------------------

class PackedFormatError(StringTreeError):
    pass


class BadMagic(PackedFormatError):
    pass


class UnsupportedVersion(PackedFormatError):
    pass


class BadTraversalTag(PackedFormatError):
    pass


class LengthMismatch(PackedFormatError):
    pass


class NonzeroPadding(PackedFormatError):
    pass
