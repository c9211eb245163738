"""Exception types raised across the package."""


class AtomSpecError(Exception):
    """Base class for every error raised by atomspec."""


class CycleError(AtomSpecError):
    """The transitive closure of the given relations is not antisymmetric."""


class UnknownElement(AtomSpecError, KeyError):
    """A relation or subset references an identifier the space does not have."""

    def __str__(self):
        return Exception.__str__(self)


class SizeCapExceeded(AtomSpecError):
    """An exhaustive enumeration would exceed the configured point budget."""


class UnsupportedDescriptor(AtomSpecError):
    """A symbolic subset descriptor is malformed or outside the supported algebra."""


class UnsupportedForSymbolic(AtomSpecError):
    """The operation is only defined for finite spaces."""


class UnknownExtRead(AtomSpecError):
    """A computation needed an Ext entry the model only knows symbolically."""

    def __init__(self, degree, source, target):
        self.degree = degree
        self.source = source
        self.target = target
        super().__init__(
            f"Ext^{degree}({source!r}, {target!r}) is stored as unknown "
            "and cannot be used in a vanishing test"
        )


class NonConstantUnsupported(AtomSpecError):
    """An Ext entry without the eventual-constancy flag was consulted."""


class ParseError(AtomSpecError):
    """Malformed poset, quiver or descriptor input, with a location if known."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}".strip())
