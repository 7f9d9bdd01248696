"""Exception hierarchy shared by every module of the package."""


class UMSTError(Exception):
    """Base class for all errors raised by umst."""


class MalformedArea(UMSTError, ValueError):
    pass


class EmptyArea(UMSTError, ValueError):
    pass


class InconsistentReveal(UMSTError, ValueError):
    pass


class MalformedGraph(UMSTError, ValueError):
    pass


class DisconnectedGraph(MalformedGraph):
    pass


class NotARealization(UMSTError, ValueError):
    pass


class WastedUpdate(UMSTError):
    """Raised when an already trivial area is asked to be updated."""


class NoSpanningTree(UMSTError):
    pass


class InvalidTree(UMSTError, ValueError):
    pass


class NoCycle(UMSTError):
    pass


class InstanceTooLarge(UMSTError):
    pass


class UnsupportedGeometry(UMSTError, ValueError):
    pass
