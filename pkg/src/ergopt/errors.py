"""Exception hierarchy shared by every layer of the package."""


class ErgoptError(ValueError):
    """Base class for all errors raised by ergopt."""


class EmptyRecurrentPart(ErgoptError):
    """The graph has no cycle, so it carries no invariant measure."""


class CapExceeded(ErgoptError):
    def __init__(self, count_so_far):
        super().__init__(f"more than {count_so_far - 1} simple cycles (stopped at {count_so_far})")
        self.count_so_far = count_so_far


class EdgeMismatch(ErgoptError):
    """A cycle references edges that do not belong to the graph."""


class EdgeSetMismatch(ErgoptError):
    """Two weightings are not defined on the same edge set."""


class InvalidInterval(ErgoptError):
    pass


class OutOfDomain(ErgoptError):
    pass


class InadmissiblePotential(ErgoptError):
    pass


class DegenerateSystem(ErgoptError):
    """The subshift is empty once symbols without a bi-infinite orbit are removed."""


class InvalidWindow(ErgoptError):
    pass


class InvalidGrid(ErgoptError):
    pass
