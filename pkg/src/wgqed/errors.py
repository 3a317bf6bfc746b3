"""Exception types raised by the wgqed package."""


class WgqedError(Exception):
    """Base class for all package errors."""


class InvalidParams(WgqedError):
    """Parameters failed validation; carries the offending report."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(c.name for c in report.checks if not c.ok)
        super().__init__(f"invalid parameters: {failed}")


class NoValidSolution(WgqedError):
    pass


class SingularSystem(WgqedError):
    pass


class GridNotConverged(WgqedError):
    pass


class PulseOverlap(WgqedError):
    pass


class AtomNotDisentangled(WgqedError):
    pass


class BadConfig(WgqedError):
    pass
