"""High-precision numerical verification of Mahler-measure identities for the
family a(x + 1/x) + b(y + 1/y) + c and the conductor-21 elliptic curve."""

from .numerics import DEFAULT_CTX, DomainError, NonConvergence, NumericsError, PrecisionContext

__all__ = ["DEFAULT_CTX", "DomainError", "NonConvergence", "NumericsError", "PrecisionContext"]
__version__ = "0.1.0"
