"""Exception types shared across the package."""


class DegeneracyError(ArithmeticError):
    """Input is valid but geometrically degenerate (e.g. a net of wrong dimension)."""


class CertificateError(AssertionError):
    """An exact self-check failed; this always indicates a bug."""
