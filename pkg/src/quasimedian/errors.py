"""Exception hierarchy shared by the whole package.

DomainError covers well-formed inputs that violate an operation's
preconditions or resource caps.  SchemaError covers malformed input
documents.  The CLI maps them to exit codes 1 and 2 respectively.
"""


class DomainError(Exception):
    """Valid data, invalid request: precondition or cap violations."""


class DisconnectedError(DomainError):
    """Operation requires a connected graph."""


class CapExceeded(DomainError):
    """An enumeration grew past its configured size cap."""


class InfiniteGroupError(DomainError):
    """Operation requires every vertex group to be finite."""


class SingleVertexError(DomainError):
    """Classification undefined for a single-vertex defining graph."""


class NotMedianError(DomainError):
    """Operation requires a median host graph."""


class AmalgamError(DomainError):
    """Gated amalgam input with a bad correspondence or non-gated side."""


class SchemaError(Exception):
    """Malformed input document: bad JSON shape, types, or ranges."""
