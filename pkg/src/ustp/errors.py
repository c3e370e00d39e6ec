"""Exception types shared across the package."""


class UstpError(Exception):
    """Base class for package exceptions."""


class InvalidModelError(UstpError):
    """A model document or in-memory model violates its invariants.

    Carries one diagnostic string per violation, each naming the offending
    key path with 1-based indices.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class InfeasibleModelError(UstpError):
    """The deterministic feasible region is empty."""
